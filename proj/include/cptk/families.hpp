#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cptk/codec.hpp"
#include "cptk/json_io.hpp"
#include "cptk/lang.hpp"

namespace cptk {

/// Closure properties a family is declared to have. Searches that rely on a
/// property check the flag instead of trying to prove it.
struct FamilyFlags {
    bool union_closed = false;
    bool intersection_closed = false;
    bool complement_closed = false;
    /// ∅ and X* are members and the family is closed under finite variation.
    bool nontrivial = false;
};

/// Denumerable family e: ℕ → languages over one alphabet.
///
/// Generators are pure. Results for indices below 2^64 are memoized so that
/// repeated lookups return the same expression node (and share its automaton
/// cache).
class FamilyEnum {
public:
    using Generator = std::function<LangExpr(const BigCode&)>;
    /// Partial inverse: an index whose member accepts exactly L(dfa), if one is known.
    using Locator = std::function<std::optional<BigCode>(const Dfa&)>;

    FamilyEnum(std::string name, Alphabet alphabet, Generator generator, bool exact, FamilyFlags flags = {},
               Locator locator = {});

    const std::string& name() const noexcept { return name_; }
    const Alphabet& alphabet() const noexcept { return alphabet_; }
    /// Every member converts to an automaton.
    bool exact() const noexcept { return exact_; }
    const FamilyFlags& flags() const noexcept { return flags_; }

    LangExpr operator()(std::uint64_t i) const;
    LangExpr operator()(const BigCode& i) const;

    /// nullopt means "not found", which is not a proof of absence.
    std::optional<BigCode> locate(const Dfa& dfa) const;
    bool can_locate() const noexcept { return static_cast<bool>(locator_); }

private:
    struct Cache;
    std::string name_;
    Alphabet alphabet_;
    Generator generator_;
    bool exact_;
    FamilyFlags flags_;
    Locator locator_;
    std::shared_ptr<Cache> cache_;
};

/// "lex(j) ∈ e(i)"
bool word_e(const FamilyEnum& family, const BigCode& i, std::uint64_t j);

/// All complete automata ordered by state count, then transition table read
/// row by row as base-n digits (first entry most significant), then the
/// rejecting states as a bit mask (bit q set = state q rejects). State 0 is
/// initial, so e(0) = X* and e(1) = ∅.
FamilyEnum regular_family(const Alphabet& alphabet);
Dfa regular_automaton(const Alphabet& alphabet, const BigCode& index);
/// Least index whose automaton accepts the same language as `dfa`.
BigCode regular_index(const Dfa& dfa);

/// e(i) = {lex(k) : bit k of i is set}.
FamilyEnum finite_family(const Alphabet& alphabet);
/// e(i) = {w : |w| = i}.
FamilyEnum length_family(const Alphabet& alphabet);
/// e(i) = members[i mod n].
FamilyEnum list_family(const Alphabet& alphabet, std::vector<LangExpr> members, FamilyFlags flags = {},
                       std::string name = "list");

/// e'(code[i₁..iₙ]) = e(i₁) ∪ … ∪ e(iₙ)
FamilyEnum close_u(const FamilyEnum& family);
/// e'(code[i₁..iₙ]) = e(i₁) ∩ … ∩ e(iₙ)
FamilyEnum close_s(const FamilyEnum& family);
/// e'(i) = e(i)ᶜ
FamilyEnum close_co(const FamilyEnum& family);
/// e'(2i) = e(i), e'(2i + 1) = e(i)ᶜ
FamilyEnum close_cc(const FamilyEnum& family);
/// ((Fᶜᶜ)ˢ)ᵘ
FamilyEnum close_b(const FamilyEnum& family);

/// Applies a closure by name: "u", "s", "co", "cc" or "b".
FamilyEnum apply_closure(const FamilyEnum& family, const std::string& op);

/// {"builtin":"regular"|"finite"|"length","alphabet":"ab"} or
/// {"alphabet":"ab","list":[LangExpr...],"closure":["u","co",...],"flags":{...}}.
FamilyEnum family_from_json(const json& doc);

struct BitsHash {
    std::size_t operator()(const boost::dynamic_bitset<>& bits) const noexcept;
};

/// Members e(0), …, e(index_bound − 1) grouped by language.
///
/// Members of exact families are grouped by canonical automaton. Opaque
/// members fall back to expression identity, so equal languages written
/// differently stay apart. Every member also carries its membership bits
/// on lex(0..horizon).
class Catalog {
public:
    struct Class {
        std::uint64_t index;                 // least member index
        std::vector<std::uint64_t> members;  // ascending
        LangExpr lang;
        std::optional<Dfa> dfa;              // canonical, when regular
        boost::dynamic_bitset<> bits;
    };

    Catalog(const FamilyEnum& family, std::uint64_t index_bound, std::uint64_t horizon);

    const FamilyEnum& family() const noexcept { return family_; }
    std::uint64_t index_bound() const noexcept { return index_bound_; }
    std::uint64_t horizon() const noexcept { return horizon_; }
    const std::vector<Class>& classes() const noexcept { return classes_; }
    /// Class of member index i < index_bound.
    std::size_t class_of(std::uint64_t i) const { return class_of_.at(i); }
    /// Class with exactly this canonical automaton.
    std::optional<std::size_t> find(const Dfa& canonical) const;
    /// Classes whose bits equal `bits`, ascending.
    std::vector<std::size_t> find_bits(const boost::dynamic_bitset<>& bits) const;

private:
    FamilyEnum family_;
    std::uint64_t index_bound_;
    std::uint64_t horizon_;
    std::vector<Class> classes_;
    std::vector<std::size_t> class_of_;
    std::unordered_map<Dfa, std::size_t, DfaHash> by_dfa_;
    std::unordered_map<boost::dynamic_bitset<>, std::vector<std::size_t>, BitsHash> by_bits_;
};

enum class Status { Exact, CheckedToHorizon };
std::string to_string(Status s);

/// e(i) = e(j)ᶜ, proven on automata (Exact) or agreeing on lex(0..horizon).
struct DcMember {
    std::uint64_t i, j;
    Status status;
    std::uint64_t horizon;  // 0 when exact
};

/// Complementary classes c, d of a catalog (every member of c pairs with
/// every member of d). Both orientations are listed.
struct DcClassPair {
    std::size_t c, d;
    Status status;
    std::uint64_t horizon;
};

/// Ordered by the Cantor code of the least member indices.
std::vector<DcClassPair> dc_classes(const Catalog& catalog);

/// All such pairs with i, j < index_bound, ordered by Cantor code π(i, j).
std::vector<DcMember> dc_members(const FamilyEnum& family, std::uint64_t index_bound, std::uint64_t horizon);
std::vector<DcMember> dc_members(const Catalog& catalog);

enum class Law { Distributivity, DeMorgan, CcDcFixpoint, CoInvolution, NontrivialityPreservation };
/// "distributivity", "deMorgan", "cc-dc-fixpoint", "co-involution", "nontriviality-preservation".
Law law_from_string(const std::string& id);
std::string to_string(Law law);

struct LawReport {
    Law law;
    std::size_t samples = 0;
    std::size_t agreements = 0;
    std::size_t disagreements = 0;
    /// Samples whose two sides were compared as automata.
    std::size_t exact = 0;
    std::uint64_t horizon = 0;
    /// First disagreement: sample number and least distinguishing word.
    std::optional<std::size_t> failing_sample;
    std::optional<Word> counterexample;
    std::vector<std::string> notes;
};

/// Samples constituent indices below `index_bound` with a fixed seed and
/// compares the two sides of the identity on lex(0..horizon).
LawReport check_law(Law law, const FamilyEnum& family, std::size_t samples, std::uint64_t horizon,
                    std::uint64_t index_bound = 64, std::uint64_t seed = 0);

json to_json(const LawReport& report);

} // namespace cptk
