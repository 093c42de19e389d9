#include <algorithm>
#include <istream>
#include <ostream>

#include "cptk/error.hpp"
#include "cptk/hardcore.hpp"
#include "cptk/json_io.hpp"
#include "cptk/parallel.hpp"

namespace cptk {

std::string to_string(StepAction a) {
    switch (a) {
    case StepAction::Accepted: return "accepted";
    case StepAction::Cancelled: return "cancelled";
    case StepAction::Blocked: return "blocked";
    case StepAction::NotInA: return "not-in-A";
    case StepAction::InC: return "in-C";
    }
    return "?";
}

StepAction step_action_from_string(const std::string& s) {
    for (StepAction a : {StepAction::Accepted, StepAction::Cancelled, StepAction::Blocked, StepAction::NotInA,
                         StepAction::InC})
        if (to_string(a) == s) return a;
    throw ParseError("unknown step action '" + s + "'");
}

bool MembershipBudget::member(const LangExpr& lang, std::string_view w) {
    if (limit_ != 0 && used_ >= limit_)
        throw StepBudgetExceeded("membership budget of " + std::to_string(limit_) + " calls exhausted");
    ++used_;
    return cptk::member(lang, w);
}

namespace {

// Least i ≤ card, i ∉ cancel, with w ∈ e(i).
template <class Member>
std::optional<std::uint64_t> blocker(const HardcoreState& st, const FamilyEnum& e, const Word& w, Member&& member) {
    for (std::uint64_t i = 0; i <= st.card; ++i)
        if (!st.cancel.count(i) && member(e(i), w)) return i;
    return std::nullopt;
}

} // namespace

TraceEntry hardcore_step(HardcoreState& st, const FamilyEnum& e, const LangExpr& c, const LangExpr& a,
                         MembershipBudget& budget) {
    auto member = [&](const LangExpr& l, const Word& w) { return budget.member(l, w); };
    TraceEntry t;
    t.n = st.n;
    t.word = e.alphabet().lex(st.n);
    bool in_c = member(c, t.word);
    if (in_c)
        for (std::uint64_t i = 0; i <= st.card; ++i)
            if (!st.cancel.count(i) && member(e(i), t.word)) t.cancelled.push_back(i);
    st.cancel.insert(t.cancelled.begin(), t.cancelled.end());

    bool in_a = member(a, t.word);
    if (in_a) t.blocking = blocker(st, e, t.word, member);
    if (in_a && !t.blocking) {
        st.b.push_back(t.word);
        ++st.card;
        t.action = StepAction::Accepted;
    } else if (in_c) {
        t.action = t.cancelled.empty() ? StepAction::InC : StepAction::Cancelled;
    } else {
        t.action = in_a ? StepAction::Blocked : StepAction::NotInA;
    }
    t.card = st.card;
    ++st.n;
    return t;
}

std::optional<bool> HardcoreRun::accepts(std::string_view w, const Alphabet& alphabet) const {
    if (alphabet.ord(w) >= state.n) return std::nullopt;
    return std::binary_search(state.b.begin(), state.b.end(), Word(w),
                              [&](const Word& x, const Word& y) { return alphabet.compare(x, y) < 0; });
}

HardcoreRun hardcore_run(const FamilyEnum& e, const LangExpr& c, const LangExpr& a, std::uint64_t steps,
                         std::uint64_t membership_budget) {
    if (steps == 0) throw PreconditionError("a run needs at least one step");
    Verdict overlap = disjoint(c, a, e.alphabet(), steps - 1);
    if (overlap.refuted()) throw PreconditionError("condition and target share " + show(*overlap.witness));
    HardcoreRun run;
    MembershipBudget budget(membership_budget);
    run.trace.reserve(steps);
    for (std::uint64_t n = 0; n < steps; ++n) run.trace.push_back(hardcore_step(run.state, e, c, a, budget));
    run.membership_calls = budget.used();
    return run;
}

std::vector<HardcoreRun> hardcore_componentwise(const ConditionalProblem& p, const FamilyEnum& e, std::uint64_t steps,
                                                std::uint64_t membership_budget) {
    std::vector<HardcoreRun> runs;
    for (const auto& a : p.problem.components()) runs.push_back(hardcore_run(e, p.condition, a, steps, membership_budget));
    return runs;
}

TraceReport verify_trace(const std::vector<TraceEntry>& trace, const FamilyEnum& e, const LangExpr& c,
                         const LangExpr& a) {
    TraceReport r;
    HardcoreState& st = r.replayed;
    const Alphabet& x = e.alphabet();
    auto violate = [&](std::uint64_t step, std::string inv, std::string msg) {
        r.violations.push_back({step, std::move(inv), std::move(msg)});
    };
    auto member = [](const LangExpr& l, const Word& w) { return cptk::member(l, w); };
    // card before the step at which each word was accepted
    std::vector<std::uint64_t> accepted_with;

    for (const TraceEntry& t : trace) {
        const std::string at = show(t.word);
        if (t.n != st.n) violate(t.n, "order", "expected step " + std::to_string(st.n));
        if (!x.valid(t.word) || t.word != x.lex(t.n)) {
            violate(t.n, "order", "word " + at + " is not lex(" + std::to_string(t.n) + ")");
            if (!x.valid(t.word)) {
                st.n = t.n + 1;
                continue;
            }
        }
        st.n = t.n + 1;
        const bool in_c = member(c, t.word), in_a = member(a, t.word);
        const std::uint64_t card = st.card;

        for (std::uint64_t i : t.cancelled) {
            if (!in_c)
                violate(t.n, "b", "index " + std::to_string(i) + " cancelled but " + at + " ∉ C");
            else if (i > card)
                violate(t.n, "b", "index " + std::to_string(i) + " above card " + std::to_string(card));
            else if (!member(e(i), t.word))
                violate(t.n, "b", "index " + std::to_string(i) + " cancelled but " + at + " ∉ e(i)");
            else if (st.cancel.count(i))
                violate(t.n, "replay", "index " + std::to_string(i) + " cancelled twice");
        }
        if (in_c)
            for (std::uint64_t i = 0; i <= card; ++i)
                if (!st.cancel.count(i) && member(e(i), t.word) &&
                    std::find(t.cancelled.begin(), t.cancelled.end(), i) == t.cancelled.end())
                    violate(t.n, "replay", "missed cancellation of " + std::to_string(i));
        st.cancel.insert(t.cancelled.begin(), t.cancelled.end());

        std::optional<std::uint64_t> block = blocker(st, e, t.word, member);
        if (t.action == StepAction::Accepted) {
            if (!in_a) violate(t.n, "d", at + " accepted but ∉ A");
            if (in_c) violate(t.n, "d", at + " accepted but ∈ C");
            if (block) violate(t.n, "a", at + " accepted but ∈ e(" + std::to_string(*block) + ")");
            if (!st.b.empty() && x.compare(st.b.back(), t.word) >= 0)
                violate(t.n, "order", at + " accepted after " + show(st.b.back()));
            st.b.push_back(t.word);
            accepted_with.push_back(card);
            ++st.card;
        } else {
            StepAction want = in_a && !block ? StepAction::Accepted
                              : in_c         ? (t.cancelled.empty() ? StepAction::InC : StepAction::Cancelled)
                              : in_a         ? StepAction::Blocked
                                             : StepAction::NotInA;
            if (t.action != want)
                violate(t.n, "replay", "action " + to_string(t.action) + ", replay gives " + to_string(want));
            if (t.action == StepAction::Blocked && t.blocking != block)
                violate(t.n, "replay", "blocking index disagrees with replay");
        }
        if (t.card != st.card) violate(t.n, "replay", "card " + std::to_string(t.card) + ", replay gives " + std::to_string(st.card));
    }

    // e(i) ∩ B may only hold words accepted while i was still above card
    for (std::uint64_t i = 0; i <= st.card; ++i) {
        if (st.cancel.count(i)) continue;
        std::uint64_t hits = 0;
        for (std::size_t k = 0; k < st.b.size(); ++k) {
            if (!member(e(i), st.b[k])) continue;
            ++hits;
            if (accepted_with[k] >= i)
                violate(x.ord(st.b[k]), "c", show(st.b[k]) + " ∈ e(" + std::to_string(i) + ") accepted while guarded");
        }
        r.intersections.push_back({i, hits});
    }
    r.ok = r.violations.empty();
    return r;
}

json to_json(const TraceEntry& t) {
    json j{{"n", t.n}, {"word", t.word}, {"action", to_string(t.action)}, {"cancelled", t.cancelled}, {"card", t.card}};
    if (t.blocking) j["blocking"] = *t.blocking;
    return j;
}

TraceEntry trace_entry_from_json(const json& doc) {
    try {
        TraceEntry t;
        t.n = doc.at("n").get<std::uint64_t>();
        t.word = doc.at("word").get<std::string>();
        t.action = step_action_from_string(doc.at("action").get<std::string>());
        t.cancelled = doc.at("cancelled").get<std::vector<std::uint64_t>>();
        t.card = doc.at("card").get<std::uint64_t>();
        if (doc.contains("blocking") && !doc["blocking"].is_null()) t.blocking = doc["blocking"].get<std::uint64_t>();
        return t;
    } catch (const json::exception& ex) {
        throw ParseError(std::string("bad trace entry: ") + ex.what());
    }
}

void write_trace(std::ostream& out, const std::vector<TraceEntry>& trace) {
    for (const auto& t : trace) out << to_json(t).dump() << '\n';
}

std::vector<TraceEntry> read_trace(std::istream& in) {
    std::vector<TraceEntry> trace;
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            trace.push_back(trace_entry_from_json(parse_document(line)));
        } catch (const ParseError& ex) {
            throw ParseError(ex.what(), no, ex.column());
        }
    }
    return trace;
}

json to_json(const HardcoreState& st) {
    return {{"n", st.n}, {"B", st.b}, {"cancel", st.cancel}, {"card", st.card}};
}

json to_json(const TraceReport& r) {
    json v = json::array();
    for (const auto& x : r.violations) v.push_back({{"step", x.step}, {"invariant", x.invariant}, {"message", x.message}});
    json in = json::array();
    for (const auto& [i, k] : r.intersections) in.push_back({{"index", i}, {"size", k}});
    return {{"ok", r.ok}, {"violations", v}, {"state", to_json(r.replayed)}, {"intersections", in}};
}

HardcoreReport is_proper_hardcore(const LangExpr& b, const LangExpr& target, const Catalog& catalog) {
    const Alphabet& x = catalog.family().alphabet();
    const std::uint64_t h = catalog.horizon();
    HardcoreReport r;
    r.index_bound = catalog.index_bound();
    r.horizon = h;
    r.size = is_finite(b, x, h);
    r.contained = subset_of(b, target, x, h);

    const auto& classes = catalog.classes();
    std::vector<std::optional<FinitenessVerdict>> meet(classes.size());
    parallel_for(classes.size(), [&](std::size_t k) {
        if (subset_of(classes[k].lang, target, x, h).certified()) meet[k] = is_finite(b & classes[k].lang, x, h);
    });
    for (std::size_t k = 0; k < classes.size(); ++k) {
        if (!meet[k]) continue;
        ++r.checked;
        if (!meet[k]->exact()) ++r.unresolved;
        if (meet[k]->infinite() && (!r.witness || classes[k].index < *r.witness)) {
            r.witness = classes[k].index;
            r.witness_evidence = *meet[k];
        }
    }

    if (r.size.finite())
        r.reason = "finite";
    else if (r.contained.refuted())
        r.reason = "not-contained";
    else if (r.witness)
        r.reason = "infinite-intersection";
    r.proper = r.reason.empty();
    // a failure rests on one exact verdict; a pass on all of them
    r.exact = !r.proper || (r.size.infinite() && r.contained.certified() && r.unresolved == 0);
    return r;
}

HardcoreReport is_proper_hardcore(const LangExpr& b, const LangExpr& target, const FamilyEnum& family,
                                  std::uint64_t index_bound, std::uint64_t horizon) {
    return is_proper_hardcore(b, target, Catalog(family, index_bound, horizon));
}

json to_json(const HardcoreReport& r) {
    json j{{"verdict", r.proper ? "proper-up-to" : "refuted"},
           {"exact", r.exact},
           {"reason", r.reason},
           {"size", {{"kind", to_string(r.size.kind)}, {"count", r.size.count}}},
           {"contained", to_string(r.contained.outcome)},
           {"checked", r.checked},
           {"unresolved", r.unresolved},
           {"index_bound", r.index_bound},
           {"horizon", r.horizon}};
    if (r.witness) {
        j["witness"] = *r.witness;
        j["witness_evidence"] = {{"kind", to_string(r.witness_evidence.kind)}, {"count", r.witness_evidence.count}};
    }
    return j;
}

} // namespace cptk
