#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cptk {

/// A word is the sequence of its symbols; the empty string is the empty word.
using Word = std::string;

/// Ordered finite alphabet. The position of a symbol in `symbols()` is its
/// rank ω(x); every order-sensitive operation on words goes through here.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::string_view symbols);

    /// Same symbol set, ranked by `order` (order[k] is the rank of symbols[k]).
    static Alphabet permuted(std::string_view symbols, const std::vector<std::size_t>& order);

    const std::string& symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    char symbol(std::size_t rank) const { return symbols_.at(rank); }

    bool contains(char x) const noexcept { return rank_[static_cast<unsigned char>(x)] >= 0; }
    /// ω(x); throws AlphabetError for foreign symbols.
    std::size_t rank(char x) const;
    bool valid(std::string_view w) const noexcept;
    void require(std::string_view w) const;

    std::strong_ordering compare(std::string_view w, std::string_view v) const;
    Word succ(std::string_view w) const;
    Word lex(std::uint64_t i) const;
    /// Closed-form rank; throws std::overflow_error past 2^64.
    std::uint64_t ord(std::string_view w) const;
    /// Number of words of length < n, saturating at UINT64_MAX.
    std::uint64_t words_shorter_than(std::size_t n) const noexcept;

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

private:
    std::string symbols_;
    std::array<int, 256> rank_{};
    void index();
};

/// Renders 𝟏 for the empty word, the symbols otherwise.
std::string show(std::string_view w);

} // namespace cptk
