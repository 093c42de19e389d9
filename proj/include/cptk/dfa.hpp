#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "cptk/words.hpp"

namespace cptk {

/// Complete deterministic finite automaton over an Alphabet.
///
/// Transitions are stored row-major: `delta[q * |X| + ω(x)]`. Every state has
/// exactly one successor per symbol, so complementation just flips the
/// accepting set.
class Dfa {
public:
    using State = std::uint32_t;

    Dfa() = default;
    /// Validates that the table is total and in range; throws PreconditionError otherwise.
    Dfa(Alphabet alphabet, State initial, std::vector<State> delta, std::vector<bool> accepting);

    static Dfa empty(const Alphabet& alphabet);
    static Dfa universal(const Alphabet& alphabet);
    /// Trie automaton for a finite word list.
    static Dfa from_words(const Alphabet& alphabet, const std::vector<Word>& words);
    /// {w : |w| = n}
    static Dfa length_exactly(const Alphabet& alphabet, std::size_t n);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t state_count() const noexcept { return accepting_.size(); }
    State initial() const noexcept { return initial_; }
    State next(State q, std::size_t symbol_rank) const { return delta_[q * alphabet_.size() + symbol_rank]; }
    bool accepting(State q) const { return accepting_[q]; }
    const std::vector<State>& table() const noexcept { return delta_; }
    const std::vector<bool>& accepting_set() const noexcept { return accepting_; }

    /// Runs from `from`; symbols outside the alphabet throw AlphabetError.
    State run(State from, std::string_view w) const;
    bool accepts(std::string_view w) const { return accepting_[run(initial_, w)]; }

    Dfa complement() const;
    /// x·L
    Dfa left_mark(char x) const;
    /// u⁻¹L
    Dfa left_quotient(std::string_view u) const;

    /// Minimal automaton with states numbered in breadth-first order (symbols
    /// in rank order). Two automata accept the same language iff their
    /// canonical forms compare equal.
    Dfa canonical() const;
    bool is_canonical() const noexcept { return canonical_; }

    bool is_empty() const;
    bool is_universal() const { return complement().is_empty(); }
    /// Length-lexicographically least accepted word.
    std::optional<Word> least_word() const;

    struct Finiteness {
        bool finite = true;
        /// Number of accepted words when finite (saturating).
        std::uint64_t count = 0;
        /// When infinite, prefix·cycleⁿ·suffix is accepted for every n.
        Word prefix, cycle, suffix;
    };
    Finiteness finiteness() const;

    /// All accepted words, in length-lex order; only for finite languages.
    std::vector<Word> words() const;

    std::size_t hash() const noexcept;
    friend bool operator==(const Dfa& a, const Dfa& b) {
        return a.alphabet_ == b.alphabet_ && a.initial_ == b.initial_ && a.delta_ == b.delta_ &&
               a.accepting_ == b.accepting_;
    }

private:
    Alphabet alphabet_;
    State initial_ = 0;
    std::vector<State> delta_;
    std::vector<bool> accepting_;
    bool canonical_ = false;

    std::vector<bool> reachable() const;
    std::vector<bool> coreachable() const;
};

enum class BoolOp { And, Or, Minus, Xor };

/// Reachable product automaton; the result is canonical.
Dfa product(const Dfa& a, const Dfa& b, BoolOp op);

inline bool equivalent(const Dfa& a, const Dfa& b) {
    return a.canonical() == b.canonical();
}
/// L(a) ⊆ L(b)
inline bool included(const Dfa& a, const Dfa& b) {
    return product(a, b, BoolOp::Minus).is_empty();
}

struct DfaHash {
    std::size_t operator()(const Dfa& d) const noexcept { return d.hash(); }
};

} // namespace cptk
