#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cptk/classify.hpp"

namespace cptk {

/// State of the diagonalization after steps 0..n−1.
struct HardcoreState {
    std::uint64_t n = 0;
    /// Accepted words, strictly increasing in length-lex order.
    std::vector<Word> b;
    std::set<std::uint64_t> cancel;
    std::uint64_t card = 0;

    friend bool operator==(const HardcoreState&, const HardcoreState&) = default;
};

enum class StepAction {
    Accepted,
    /// lex(n) ∈ C and at least one index was cancelled.
    Cancelled,
    /// lex(n) ∈ A but some uncancelled i ≤ card has lex(n) ∈ e(i).
    Blocked,
    NotInA,
    /// lex(n) ∈ C, nothing left to cancel.
    InC,
};

std::string to_string(StepAction a);
StepAction step_action_from_string(const std::string& s);

struct TraceEntry {
    std::uint64_t n = 0;
    Word word;
    StepAction action = StepAction::NotInA;
    /// Indices cancelled at this step, ascending.
    std::vector<std::uint64_t> cancelled;
    /// card after the step.
    std::uint64_t card = 0;
    /// Least uncancelled index that blocked acceptance.
    std::optional<std::uint64_t> blocking;

    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// Counts membership calls; 0 means unlimited.
class MembershipBudget {
public:
    explicit MembershipBudget(std::uint64_t limit = 0) : limit_(limit) {}
    /// Throws StepBudgetExceeded once the limit is reached.
    bool member(const LangExpr& lang, std::string_view w);
    std::uint64_t used() const noexcept { return used_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

/// One loop iteration on lex(n): cancel every i ≤ card with lex(n) ∈ C ∩ e(i),
/// then accept lex(n) if it lies in A and in no e(i), i ≤ card, i ∉ cancel.
/// The guard range includes card in both places.
TraceEntry hardcore_step(HardcoreState& st, const FamilyEnum& e, const LangExpr& c, const LangExpr& a,
                         MembershipBudget& budget);

struct HardcoreRun {
    HardcoreState state;
    std::vector<TraceEntry> trace;
    std::uint64_t membership_calls = 0;

    /// Decision recipe for the constructed set: exact below lex(state.n),
    /// nullopt beyond it.
    std::optional<bool> accepts(std::string_view w, const Alphabet& alphabet) const;
};

/// Steps 0..steps−1 from the empty state. Throws PreconditionError for
/// steps = 0 or when C ∩ A ≠ ∅ is detected.
HardcoreRun hardcore_run(const FamilyEnum& e, const LangExpr& c, const LangExpr& a, std::uint64_t steps,
                         std::uint64_t membership_budget = 0);

/// One run per component, all against the same C.
std::vector<HardcoreRun> hardcore_componentwise(const ConditionalProblem& p, const FamilyEnum& e, std::uint64_t steps,
                                                std::uint64_t membership_budget = 0);

struct TraceViolation {
    std::uint64_t step;
    /// "a" acceptance, "b" cancellation witness, "c" finite intersection,
    /// "d" B ⊆ A and B ∩ C = ∅, "order" step numbering, "replay" anything else
    /// the replay disagrees with.
    std::string invariant;
    std::string message;
};

struct TraceReport {
    bool ok = true;
    std::vector<TraceViolation> violations;
    /// State rebuilt from the claimed actions.
    HardcoreState replayed;
    /// |e(i) ∩ B| for every finally uncancelled i ≤ final card.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> intersections;
};

/// Replays a trace against fresh membership calls.
TraceReport verify_trace(const std::vector<TraceEntry>& trace, const FamilyEnum& e, const LangExpr& c,
                         const LangExpr& a);

json to_json(const TraceEntry& entry);
TraceEntry trace_entry_from_json(const json& doc);
/// JSON lines, one entry per step.
void write_trace(std::ostream& out, const std::vector<TraceEntry>& trace);
/// Throws ParseError with the offending line.
std::vector<TraceEntry> read_trace(std::istream& in);

json to_json(const HardcoreState& st);
json to_json(const TraceReport& r);

/// Bound-relative check that B is an infinite subset of `target` meeting
/// every member e(i) ⊆ target, i < index_bound, only finitely.
struct HardcoreReport {
    bool proper = true;
    /// Every verdict the answer rests on is exact.
    bool exact = true;
    /// "finite", "not-contained", "infinite-intersection" or empty.
    std::string reason;
    FinitenessVerdict size;
    Verdict contained;
    /// Least index with e(i) ⊆ target and B ∩ e(i) exactly infinite.
    std::optional<std::uint64_t> witness;
    FinitenessVerdict witness_evidence;
    /// Members certified inside the target.
    std::size_t checked = 0;
    /// Of those, intersections with no exact verdict.
    std::size_t unresolved = 0;
    std::uint64_t index_bound = 0, horizon = 0;
};

HardcoreReport is_proper_hardcore(const LangExpr& b, const LangExpr& target, const Catalog& catalog);
HardcoreReport is_proper_hardcore(const LangExpr& b, const LangExpr& target, const FamilyEnum& family,
                                  std::uint64_t index_bound, std::uint64_t horizon);

json to_json(const HardcoreReport& r);

} // namespace cptk
