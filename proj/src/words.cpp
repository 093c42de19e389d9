#include "cptk/words.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "cptk/error.hpp"

namespace cptk {

Alphabet::Alphabet(std::string_view symbols) : symbols_(symbols) {
    index();
}

Alphabet Alphabet::permuted(std::string_view symbols, const std::vector<std::size_t>& order) {
    if (order.size() != symbols.size())
        throw AlphabetError("alphabet order has " + std::to_string(order.size()) + " ranks for " +
                            std::to_string(symbols.size()) + " symbols");
    std::string ranked(symbols.size(), '\0');
    std::vector<bool> used(symbols.size(), false);
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        if (order[k] >= symbols.size() || used[order[k]])
            throw AlphabetError("alphabet order is not a permutation");
        used[order[k]] = true;
        ranked[order[k]] = symbols[k];
    }
    return Alphabet(ranked);
}

void Alphabet::index() {
    if (symbols_.empty()) throw AlphabetError("alphabet must be nonempty");
    rank_.fill(-1);
    for (std::size_t k = 0; k < symbols_.size(); ++k) {
        auto& slot = rank_[static_cast<unsigned char>(symbols_[k])];
        if (slot >= 0) throw AlphabetError(std::string("duplicate alphabet symbol '") + symbols_[k] + "'");
        slot = static_cast<int>(k);
    }
}

std::size_t Alphabet::rank(char x) const {
    int r = rank_[static_cast<unsigned char>(x)];
    if (r < 0) throw AlphabetError(std::string("symbol '") + x + "' not in alphabet \"" + symbols_ + "\"");
    return static_cast<std::size_t>(r);
}

bool Alphabet::valid(std::string_view w) const noexcept {
    return std::all_of(w.begin(), w.end(), [this](char x) { return contains(x); });
}

void Alphabet::require(std::string_view w) const {
    for (char x : w) rank(x);
}

std::strong_ordering Alphabet::compare(std::string_view w, std::string_view v) const {
    require(w);
    require(v);
    if (w.size() != v.size()) return w.size() <=> v.size();
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k] != v[k]) return rank(w[k]) <=> rank(v[k]);
    return std::strong_ordering::equal;
}

Word Alphabet::succ(std::string_view w) const {
    require(w);
    Word next(w);
    // odometer: the last symbol is least significant
    for (std::size_t k = next.size(); k-- > 0;) {
        std::size_t r = rank(next[k]);
        if (r + 1 < size()) {
            next[k] = symbols_[r + 1];
            return next;
        }
        next[k] = symbols_[0];
    }
    return Word(next.size() + 1, symbols_[0]);
}

std::uint64_t Alphabet::words_shorter_than(std::size_t n) const noexcept {
    constexpr auto top = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0, power = 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (total > top - power) return top;
        total += power;
        if (j + 1 < n && power > top / size()) return top;
        power *= size();
    }
    return total;
}

Word Alphabet::lex(std::uint64_t i) const {
    const std::uint64_t b = size();
    std::size_t len = 0;
    std::uint64_t block = 1; // b^len
    while (i >= block) {
        i -= block;
        ++len;
        if (block > std::numeric_limits<std::uint64_t>::max() / b) break;
        block *= b;
    }
    Word w(len, symbols_[0]);
    for (std::size_t k = len; k-- > 0;) {
        w[k] = symbols_[i % b];
        i /= b;
    }
    return w;
}

std::uint64_t Alphabet::ord(std::string_view w) const {
    std::uint64_t offset = words_shorter_than(w.size());
    if (offset == std::numeric_limits<std::uint64_t>::max())
        throw std::overflow_error("word too long to rank in 64 bits");
    std::uint64_t value = 0;
    for (char x : w) {
        if (__builtin_mul_overflow(value, size(), &value) || __builtin_add_overflow(value, rank(x), &value))
            throw std::overflow_error("word too long to rank in 64 bits");
    }
    if (__builtin_add_overflow(value, offset, &value))
        throw std::overflow_error("word too long to rank in 64 bits");
    return value;
}

std::string show(std::string_view w) {
    return w.empty() ? std::string("𝟏") : std::string(w);
}

} // namespace cptk
