#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cptk/dfa.hpp"
#include "cptk/verdict.hpp"
#include "cptk/words.hpp"

namespace cptk {

/// Immutable symbolic language. Copies share the expression tree.
///
/// Leaves are finite word sets, automata, or named total predicates; inner
/// nodes are union, intersection, complement (relative to X*), left marks xL
/// and left quotients u⁻¹L.
class LangExpr {
public:
    enum class Kind { Finite, Automaton, Predicate, Union, Intersect, Complement, LeftMark, LeftQuotient };

    LangExpr();  // ∅

    static LangExpr finite(std::vector<Word> words);
    static LangExpr automaton(Dfa dfa);
    /// Throws UnknownPredicate for names outside the built-in set.
    static LangExpr predicate(std::string name);
    static LangExpr empty() { return finite({}); }
    static LangExpr universe() { return complement(empty()); }
    static LangExpr unite(std::vector<LangExpr> parts);
    static LangExpr intersect(std::vector<LangExpr> parts);
    static LangExpr complement(LangExpr inner);
    static LangExpr left_mark(char x, LangExpr inner);
    static LangExpr left_quotient(Word u, LangExpr inner);

    Kind kind() const noexcept;
    const std::vector<Word>& words() const;
    const Dfa& dfa() const;
    const std::string& name() const;
    char marker() const;
    const Word& prefix() const;
    const std::vector<LangExpr>& children() const;
    const LangExpr& child() const { return children().front(); }

    /// No predicate leaves; convertible by to_automaton.
    bool regular() const noexcept;
    /// Shared-node identity: equal identities denote the same language.
    const void* identity() const noexcept { return node_.get(); }

    struct Node;

private:
    explicit LangExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
    friend struct LangAccess;
};

inline LangExpr operator|(LangExpr a, LangExpr b) { return LangExpr::unite({std::move(a), std::move(b)}); }
inline LangExpr operator&(LangExpr a, LangExpr b) { return LangExpr::intersect({std::move(a), std::move(b)}); }
inline LangExpr operator~(LangExpr a) { return LangExpr::complement(std::move(a)); }

/// Names accepted by LangExpr::predicate: "square-length", "prime-length" and
/// "equal-counts-xy" for any two distinct symbols x, y.
bool known_predicate(std::string_view name);
bool predicate_holds(std::string_view name, std::string_view w);

bool member(const LangExpr& lang, std::string_view w);

/// Minimal canonical automaton; throws NonRegularLeaf on predicate leaves.
/// Results are memoized per expression node.
Dfa to_automaton(const LangExpr& lang, const Alphabet& alphabet);

/// Regular bounds lower ⊆ L ⊆ upper.
///
/// Each predicate occurrence is keyed by the word it actually consults (the
/// left marks and quotients above it). For every word the tree evaluates as
/// it would with each key replaced by ∅ or X*, so the intersection over all
/// substitutions is a lower bound and the union an upper bound. Occurrences
/// sharing a key are substituted together, which is what makes xA ∪ xAᶜ
/// collapse to xX*. Words up to kApproximationExactLength keep their true
/// membership, so only the long-word part of each key is guessed.
struct Approximation {
    Dfa lower;
    Dfa upper;
    bool exact = false;       // lower == upper == L
    std::size_t keys = 0;     // distinct predicate keys
    bool trivial = false;     // too many keys: lower = ∅, upper = X*
};

/// At most this many distinct predicate keys are expanded (2^keys substitutions).
inline constexpr std::size_t kMaxApproximationKeys = 10;
inline constexpr std::size_t kApproximationExactLength = 3;

Approximation approximate(const LangExpr& lang, const Alphabet& alphabet);

/// Membership bits for lex(0..horizon), inclusive.
boost::dynamic_bitset<> fingerprint(const LangExpr& lang, const Alphabet& alphabet, std::uint64_t horizon);

/// Certified = L is empty; Refuted carries the least member.
Verdict emptiness(const LangExpr& lang, const Alphabet& alphabet, std::uint64_t horizon);

FinitenessVerdict is_finite(const LangExpr& lang, const Alphabet& alphabet, std::uint64_t horizon);

/// Certified, or Refuted with the least word of L1 \ L2, or unknown up to horizon.
Verdict subset_of(const LangExpr& l1, const LangExpr& l2, const Alphabet& alphabet, std::uint64_t horizon);

inline Verdict disjoint(const LangExpr& l1, const LangExpr& l2, const Alphabet& alphabet, std::uint64_t horizon) {
    return emptiness(l1 & l2, alphabet, horizon);
}
/// Refuted witness lies in the symmetric difference.
Verdict equal(const LangExpr& l1, const LangExpr& l2, const Alphabet& alphabet, std::uint64_t horizon);

/// Compact one-line rendering, e.g. "(a·P[square-length] ∪ b·¬P[square-length])".
std::string describe(const LangExpr& lang);

} // namespace cptk
