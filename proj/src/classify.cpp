#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "cptk/classify.hpp"
#include "cptk/error.hpp"
#include "cptk/parallel.hpp"

namespace cptk {

ClassificationProblem::ClassificationProblem(Alphabet alphabet, std::vector<LangExpr> components)
    : alphabet_(std::move(alphabet)), components_(std::move(components)) {
    if (components_.empty()) throw PreconditionError("a classification problem needs at least one component");
}

ClassificationProblem ClassificationProblem::select(const std::vector<std::size_t>& which) const {
    std::vector<LangExpr> out;
    for (std::size_t i : which) out.push_back(components_.at(i));
    return ClassificationProblem(alphabet_, std::move(out));
}

LangExpr set_of(const ClassificationProblem& problem) {
    if (problem.size() == 1) return problem[0];
    return LangExpr::unite(problem.components());
}

namespace {

void check_components(ProblemCheck& out, const ClassificationProblem& p, std::uint64_t horizon) {
    const Alphabet& x = p.alphabet();
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            Verdict v = disjoint(p[i], p[j], x, horizon);
            if (v.refuted()) {
                out.refuted = true;
                out.messages.push_back("components " + std::to_string(i) + " and " + std::to_string(j) +
                                       " share " + show(*v.witness));
            } else if (v.unknown()) {
                out.exact = false;
                out.messages.push_back("components " + std::to_string(i) + " and " + std::to_string(j) +
                                       " disjoint only up to the horizon");
            }
            out.disjoint.push_back({{i, j}, v});
        }
    for (std::size_t i = 0; i < p.size(); ++i) {
        FinitenessVerdict f = is_finite(p[i], x, horizon);
        if (f.finite()) {
            out.refuted = true;
            out.messages.push_back("component " + std::to_string(i) + " is finite (" + std::to_string(f.count) +
                                   " words)");
        } else if (!f.exact()) {
            out.exact = false;
            out.messages.push_back("component " + std::to_string(i) + " not proven infinite (" +
                                   std::to_string(f.count) + " members seen)");
        }
        out.infinite.push_back(f);
    }
}

} // namespace

ProblemCheck check_problem(const ClassificationProblem& problem, std::uint64_t horizon) {
    ProblemCheck out;
    check_components(out, problem, horizon);
    return out;
}

ProblemCheck check_problem(const ConditionalProblem& problem, std::uint64_t horizon) {
    ProblemCheck out;
    check_components(out, problem.problem, horizon);
    Verdict v = disjoint(problem.condition, set_of(problem.problem), problem.problem.alphabet(), horizon);
    if (v.refuted()) {
        out.refuted = true;
        out.messages.push_back("condition meets the components at " + show(*v.witness));
    } else if (v.unknown()) {
        out.exact = false;
        out.messages.push_back("condition disjoint from the components only up to the horizon");
    }
    out.condition_disjoint = v;
    return out;
}

std::optional<Injection> refines(const std::vector<LangExpr>& b, const std::vector<LangExpr>& a,
                                 const Alphabet& alphabet, std::uint64_t horizon) {
    const std::size_t m = b.size(), k = a.size();
    if (m > k) return std::nullopt;
    std::vector<std::vector<std::optional<Verdict>>> memo(m, std::vector<std::optional<Verdict>>(k));
    auto fits = [&](std::size_t i, std::size_t j) -> const Verdict& {
        if (!memo[i][j]) memo[i][j] = subset_of(b[i], a[j], alphabet, horizon);
        return *memo[i][j];
    };
    std::vector<std::size_t> sigma;
    std::vector<bool> used(k, false);
    // depth-first in lexicographic order of σ
    std::function<bool()> search = [&]() {
        std::size_t i = sigma.size();
        if (i == m) return true;
        for (std::size_t j = 0; j < k; ++j) {
            if (used[j] || fits(i, j).refuted()) continue;
            used[j] = true;
            sigma.push_back(j);
            if (search()) return true;
            sigma.pop_back();
            used[j] = false;
        }
        return false;
    };
    if (!search()) return std::nullopt;
    Injection out{sigma, Status::Exact, 0};
    for (std::size_t i = 0; i < m; ++i)
        if (!fits(i, sigma[i]).certified()) {
            out.status = Status::CheckedToHorizon;
            out.horizon = horizon;
        }
    return out;
}

std::optional<Injection> refines(const ClassificationProblem& b, const ClassificationProblem& a,
                                 std::uint64_t horizon) {
    if (!(b.alphabet() == a.alphabet())) throw AlphabetError("problems over different alphabets");
    return refines(b.components(), a.components(), a.alphabet(), horizon);
}

namespace {

// Least index i < bound with e(i) = part, proven or agreeing to the horizon.
std::optional<std::uint64_t> find_in_family(const LangExpr& part, const Alphabet& x, std::uint64_t horizon,
                                            const FamilyEnum& family, std::uint64_t bound, bool& exact) {
    if (part.regular() && family.can_locate()) {
        if (auto k = family.locate(to_automaton(part, x)); k && *k < bound) {
            std::uint64_t at = to_u64(*k);
            // the locator is not required to return the least index
            for (std::uint64_t i = 0; i < at; ++i) {
                LangExpr e = family(i);
                if (e.regular() && to_automaton(e, x) == to_automaton(part, x)) return i;
            }
            return at;
        }
    }
    auto bits = fingerprint(part, x, horizon);
    for (std::uint64_t i = 0; i < bound; ++i) {
        LangExpr e = family(i);
        if (fingerprint(e, x, horizon) != bits) continue;
        Verdict v = equal(e, part, x, horizon);
        if (v.refuted()) continue;
        if (!v.certified()) exact = false;
        return i;
    }
    return std::nullopt;
}

} // namespace

PartitionCheck is_partition(const std::vector<LangExpr>& parts, const Alphabet& alphabet, std::uint64_t horizon,
                            const FamilyEnum* family, std::uint64_t index_bound) {
    if (parts.empty()) throw PreconditionError("is_partition needs at least one part");
    PartitionCheck out;
    bool exact = true;
    Verdict cover = emptiness(LangExpr::complement(LangExpr::unite(parts)), alphabet, horizon);
    if (cover.refuted()) {
        out.verdict = Verdict::refute(*cover.witness);
        out.reason = "uncovered";
        return out;
    }
    exact = exact && cover.certified();
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            Verdict v = disjoint(parts[i], parts[j], alphabet, horizon);
            if (v.refuted()) {
                out.verdict = v;
                out.reason = "overlap";
                out.positions = {i, j};
                return out;
            }
            exact = exact && v.certified();
        }
    if (family) {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            auto k = find_in_family(parts[i], alphabet, horizon, *family, index_bound, exact);
            out.indices.push_back(k);
            if (!k) out.positions.push_back(i);
        }
        if (!out.positions.empty()) {
            // absent below the bound says nothing about larger indices
            out.verdict = Verdict::unknown(horizon);
            out.reason = "not-in-family";
            return out;
        }
    }
    out.verdict = exact ? Verdict::certify() : Verdict::unknown(horizon);
    return out;
}

PartitionCheck verify_certificate(const PartitionCertificate& cert, const ClassificationProblem& problem,
                                  const std::optional<LangExpr>& condition, std::uint64_t horizon) {
    const std::size_t offset = condition ? 1 : 0;
    if (cert.sigma.size() != problem.size() || cert.parts.size() != problem.size() + offset)
        throw PreconditionError("certificate shape does not match the problem");
    std::vector<bool> hit(cert.parts.size(), false);
    for (std::size_t s : cert.sigma) {
        if (s >= cert.parts.size() || hit[s] || (condition && s == 0))
            throw PreconditionError("certificate injection is not valid");
        hit[s] = true;
    }
    const Alphabet& x = problem.alphabet();
    PartitionCheck out = is_partition(cert.parts, x, horizon);
    if (out.verdict.refuted()) return out;
    bool exact = out.verdict.certified();
    if (condition) {
        Verdict v = subset_of(*condition, cert.parts[0], x, horizon);
        if (v.refuted()) return {v, "condition", {0}, {}};
        exact = exact && v.certified();
    }
    for (std::size_t i = 0; i < problem.size(); ++i) {
        Verdict v = subset_of(problem[i], cert.parts[cert.sigma[i]], x, horizon);
        if (v.refuted()) return {v, "containment", {i}, {}};
        exact = exact && v.certified();
    }
    out.verdict = exact ? Verdict::certify() : Verdict::unknown(horizon);
    return out;
}

namespace {

using Bits = boost::dynamic_bitset<>;

std::optional<std::uint64_t> first_bit(const Bits& b) {
    auto p = b.find_first();
    if (p == Bits::npos) return std::nullopt;
    return p;
}

// A requirement is a language that must lie inside one slot's part.
struct Requirement {
    LangExpr lang;
    Approximation approx;
    Bits bits;
};

// Class-level search. Slots are filled in requirement order; the last slot
// is forced to be the complement of the others. Positions are chosen after
// the fact so the tuple code is least.
class Search {
public:
    Search(const Catalog& catalog, std::vector<LangExpr> reqs, bool pinned)
        : cat_(catalog), x_(catalog.family().alphabet()), h_(catalog.horizon()), pinned_(pinned) {
        for (auto& r : reqs) {
            Approximation ap = approximate(r, x_);
            reqs_.push_back({r, std::move(ap), fingerprint(r, x_, h_)});
        }
    }

    SolveResult run() {
        const std::size_t n = reqs_.size();
        candidates_.assign(n - 1, {});
        for (std::size_t j = 0; j + 1 < n; ++j) candidates_[j] = candidates_for(j);

        SolveResult out;
        out.index_bound = cat_.index_bound();
        out.horizon = h_;
        if (n == 1) {
            // a single part must be X*
            Slots s;
            finish(s, out);
            return out;
        }
        const auto& first = candidates_[0];
        std::vector<SolveResult> partial(first.size());
        parallel_for(first.size(), [&](std::size_t t) {
            Slots s;
            s.push_back(first[t]);
            descend(s, partial[t]);
        });
        for (auto& p : partial) merge(out, std::move(p));
        return out;
    }

private:
    struct Pick {
        std::size_t cls;
        Verdict fit;
    };
    using Slots = std::vector<Pick>;

    const Catalog& cat_;
    const Alphabet& x_;
    std::uint64_t h_;
    bool pinned_;
    std::vector<Requirement> reqs_;
    std::vector<std::vector<Pick>> candidates_;

    const Catalog::Class& cls(std::size_t c) const { return cat_.classes()[c]; }

    Verdict contains(const Requirement& r, const Catalog::Class& c) const {
        Bits outside = r.bits - c.bits;
        if (auto p = first_bit(outside)) return Verdict::refute(x_.lex(*p));
        if (!c.dfa) return subset_of(r.lang, c.lang, x_, h_);
        if (included(r.approx.upper, *c.dfa)) return Verdict::certify();
        Dfa miss = product(r.approx.lower, *c.dfa, BoolOp::Minus);
        if (auto w = miss.least_word()) return Verdict::refute(*w);
        return Verdict::unknown(h_);
    }

    std::vector<Pick> candidates_for(std::size_t j) const {
        const auto& classes = cat_.classes();
        std::vector<std::optional<Pick>> hit(classes.size());
        parallel_for(classes.size(), [&](std::size_t c) {
            const auto& k = classes[c];
            // a part holding requirement j cannot meet any other requirement
            for (std::size_t i = 0; i < reqs_.size(); ++i)
                if (i != j && reqs_[i].bits.intersects(k.bits)) return;
            Verdict v = contains(reqs_[j], k);
            if (!v.refuted()) hit[c] = Pick{c, v};
        });
        std::vector<Pick> out;
        for (auto& p : hit)
            if (p) out.push_back(*p);
        return out;
    }

    Verdict disjoint_classes(std::size_t c, std::size_t d) const {
        const auto &a = cls(c), &b = cls(d);
        if (auto p = first_bit(a.bits & b.bits)) return Verdict::refute(x_.lex(*p));
        if (a.dfa && b.dfa) {
            if (auto w = product(*a.dfa, *b.dfa, BoolOp::And).least_word()) return Verdict::refute(*w);
            return Verdict::certify();
        }
        return disjoint(a.lang, b.lang, x_, h_);
    }

    void descend(Slots& s, SolveResult& out) const {
        const std::size_t n = reqs_.size();
        if (s.size() + 1 == n) {
            finish(s, out);
            return;
        }
        for (const Pick& p : candidates_[s.size()]) {
            bool ok = true;
            Verdict fit = p.fit;
            for (const Pick& q : s) {
                Verdict v = disjoint_classes(q.cls, p.cls);
                if (v.refuted()) {
                    ok = false;
                    break;
                }
                if (v.unknown()) fit = Verdict::unknown(h_);
            }
            if (!ok) continue;
            s.push_back({p.cls, fit});
            descend(s, out);
            s.pop_back();
        }
    }

    // Fills the last slot with the complement of the chosen parts.
    void finish(const Slots& s, SolveResult& out) const {
        Bits rest(h_ + 1);
        rest.set();
        bool all_regular = true;
        std::vector<LangExpr> chosen;
        for (const Pick& p : s) {
            rest -= cls(p.cls).bits;
            all_regular = all_regular && cls(p.cls).dfa.has_value();
            chosen.push_back(cls(p.cls).lang);
        }
        std::optional<Dfa> target;
        if (all_regular) {
            Dfa u = Dfa::empty(x_);
            for (const Pick& p : s) u = product(u, *cls(p.cls).dfa, BoolOp::Or);
            target = u.complement().canonical();
        }
        const Requirement& last = reqs_.back();
        for (std::size_t d : cat_.find_bits(rest)) {
            const auto& k = cls(d);
            Verdict same;
            if (target && k.dfa) {
                if (!(*k.dfa == *target)) continue;
                same = Verdict::certify();
            } else {
                same = equal(k.lang, LangExpr::complement(LangExpr::unite(chosen)), x_, h_);
                if (same.refuted()) continue;
            }
            Verdict fit = contains(last, k);
            if (fit.refuted()) continue;
            Slots full = s;
            full.push_back({d, fit.certified() && same.certified() ? fit : Verdict::unknown(h_)});
            record(full, out);
        }
    }

    void record(const Slots& s, SolveResult& out) const {
        const std::size_t n = s.size();
        // order[p] = slot placed at position p
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        auto from = order.begin() + (pinned_ ? 1 : 0);
        std::optional<BigCode> best_code;
        std::vector<std::size_t> best_order;
        do {
            std::vector<BigCode> idx;
            for (std::size_t slot : order) idx.push_back(cls(s[slot].cls).index);
            BigCode code = big_tuple(idx);
            if (!best_code || code < *best_code || (code == *best_code && sigma_of(order) < sigma_of(best_order))) {
                best_code = code;
                best_order = order;
            }
        } while (std::next_permutation(from, order.end()));

        PartitionCertificate cert;
        cert.conditional = pinned_;
        bool exact = true;
        for (std::size_t slot : best_order) {
            const auto& k = cls(s[slot].cls);
            cert.parts.push_back(k.lang);
            cert.indices.push_back(BigCode(k.index));
        }
        for (const Pick& p : s) exact = exact && p.fit.certified();
        cert.sigma = sigma_of(best_order);
        if (pinned_) cert.sigma.erase(cert.sigma.begin());
        cert.status = exact ? Status::Exact : Status::CheckedToHorizon;
        cert.horizon = exact ? 0 : h_;
        consider(out, std::move(cert), *best_code);
    }

    // σ over all slots: position of each slot
    static std::vector<std::size_t> sigma_of(const std::vector<std::size_t>& order) {
        std::vector<std::size_t> sigma(order.size());
        for (std::size_t p = 0; p < order.size(); ++p) sigma[order[p]] = p;
        return sigma;
    }

    static BigCode code_of(const PartitionCertificate& c) {
        std::vector<BigCode> idx;
        for (const auto& i : c.indices) idx.push_back(*i);
        return big_tuple(idx);
    }

    static void consider(SolveResult& out, PartitionCertificate cert, const BigCode& code) {
        ++out.solutions;
        if (out.certificate) {
            BigCode have = code_of(*out.certificate);
            if (have < code || (have == code && out.certificate->sigma <= cert.sigma)) return;
        }
        out.certificate = std::move(cert);
    }

    static void merge(SolveResult& out, SolveResult part) {
        std::size_t extra = part.solutions;
        if (part.certificate) {
            BigCode code = code_of(*part.certificate);
            consider(out, std::move(*part.certificate), code);
            --out.solutions;
        }
        out.solutions += extra;
    }
};

constexpr std::size_t kMaxSearchParts = 8;

SolveResult run_search(const Catalog& catalog, std::vector<LangExpr> reqs, bool pinned) {
    if (reqs.size() > kMaxSearchParts)
        throw PreconditionError("search supports at most " + std::to_string(kMaxSearchParts) + " parts");
    if (catalog.index_bound() == 0) throw PreconditionError("index_bound must be positive");
    return Search(catalog, std::move(reqs), pinned).run();
}

} // namespace

SolveResult solve(const ClassificationProblem& problem, const Catalog& catalog) {
    if (!(problem.alphabet() == catalog.family().alphabet()))
        throw AlphabetError("problem and family use different alphabets");
    return run_search(catalog, problem.components(), false);
}

SolveResult solve(const ClassificationProblem& problem, const FamilyEnum& family, std::uint64_t index_bound,
                  std::uint64_t horizon) {
    return solve(problem, Catalog(family, index_bound, horizon));
}

SolveResult solve_conditional(const ConditionalProblem& problem, const Catalog& catalog) {
    if (!(problem.problem.alphabet() == catalog.family().alphabet()))
        throw AlphabetError("problem and family use different alphabets");
    std::vector<LangExpr> reqs{problem.condition};
    for (const auto& a : problem.problem.components()) reqs.push_back(a);
    return run_search(catalog, std::move(reqs), true);
}

SolveResult solve_conditional(const ConditionalProblem& problem, const FamilyEnum& family,
                              std::uint64_t index_bound, std::uint64_t horizon) {
    return solve_conditional(problem, Catalog(family, index_bound, horizon));
}

namespace {

// Regular parts are stored as their minimal automaton to keep expressions small.
LangExpr compact(const LangExpr& e, const Alphabet& x) {
    return e.regular() ? LangExpr::automaton(to_automaton(e, x)) : e;
}

std::optional<BigCode> locate_part(const LangExpr& e, const Alphabet& x, const FamilyEnum& family) {
    if (!e.regular() || !family.can_locate()) return std::nullopt;
    return family.locate(to_automaton(e, x));
}

void settle(PartitionCertificate& cert, const ClassificationProblem& problem, std::uint64_t horizon,
            bool inputs_exact) {
    PartitionCheck check = verify_certificate(cert, problem, std::nullopt, horizon);
    if (check.verdict.refuted())
        throw Error("constructed partition failed verification (" + check.reason + ")");
    bool exact = inputs_exact && check.verdict.certified();
    cert.status = exact ? Status::Exact : Status::CheckedToHorizon;
    cert.horizon = exact ? 0 : horizon;
}

} // namespace

PartitionCertificate pad_partition(const PartitionCertificate& cert, const ClassificationProblem& a,
                                   const ClassificationProblem& b, const FamilyEnum& family,
                                   std::uint64_t horizon) {
    if (!family.flags().union_closed) throw PreconditionError(family.name() + " is not declared union-closed");
    if (cert.conditional) throw PreconditionError("pad_partition takes an unconditional certificate");
    auto tau = refines(b, a, horizon);
    if (!tau) throw PreconditionError("B does not refine A");
    const Alphabet& x = a.alphabet();

    std::vector<std::size_t> used;  // part of each B component
    for (std::size_t i = 0; i < b.size(); ++i) used.push_back(cert.sigma.at(tau->sigma[i]));
    std::vector<std::size_t> kept = used;
    std::sort(kept.begin(), kept.end());

    std::vector<LangExpr> rest;
    for (std::size_t p = 0; p < cert.parts.size(); ++p)
        if (!std::binary_search(kept.begin(), kept.end(), p)) rest.push_back(cert.parts[p]);

    PartitionCertificate out;
    for (std::size_t r = 0; r < kept.size(); ++r) {
        std::size_t p = kept[r];
        if (r + 1 == kept.size() && !rest.empty()) {
            rest.insert(rest.begin(), cert.parts[p]);
            LangExpr merged = compact(LangExpr::unite(rest), x);
            out.indices.push_back(locate_part(merged, x, family));
            out.parts.push_back(merged);
        } else {
            out.parts.push_back(cert.parts[p]);
            out.indices.push_back(cert.indices.at(p));
        }
    }
    for (std::size_t p : used)
        out.sigma.push_back(std::lower_bound(kept.begin(), kept.end(), p) - kept.begin());
    settle(out, b, horizon, cert.status == Status::Exact && tau->status == Status::Exact);
    return out;
}

PartitionCertificate combine_pairwise(const ClassificationProblem& problem, const std::vector<PairCertificate>& pairs,
                                      const FamilyEnum& family, std::uint64_t horizon) {
    const std::size_t k = problem.size();
    if (k < 2) throw PreconditionError("combine_pairwise needs at least two components");
    if (!family.flags().union_closed || !family.flags().intersection_closed)
        throw PreconditionError(family.name() + " is not declared closed under union and intersection");
    const Alphabet& x = problem.alphabet();

    std::map<std::pair<std::size_t, std::size_t>, const PairCertificate*> by_pair;
    for (const auto& p : pairs) {
        if (p.i >= p.j || p.j >= k) throw PreconditionError("pair certificate keys must satisfy i < j < k");
        by_pair[{p.i, p.j}] = &p;
    }
    bool exact = true;
    // part of the pair certificate (i, j) that holds A_i, resp. A_j
    auto side = [&](std::size_t i, std::size_t j, bool second) -> const LangExpr& {
        auto it = by_pair.find({i, j});
        if (it == by_pair.end())
            throw PreconditionError("missing pair certificate (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        const PartitionCertificate& c = it->second->cert;
        if (c.parts.size() != 2 || c.conditional)
            throw PreconditionError("pair certificate (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ") is not a 2-partition");
        return c.parts[c.sigma.at(second ? 1 : 0)];
    };
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            side(i, j, false);
            const PartitionCertificate& c = by_pair[{i, j}]->cert;
            PartitionCheck check = verify_certificate(c, problem.select({i, j}), std::nullopt, horizon);
            if (check.verdict.refuted())
                throw PreconditionError("pair certificate (" + std::to_string(i) + ", " + std::to_string(j) +
                                        ") does not verify: " + check.reason + " at " +
                                        show(*check.verdict.witness));
            exact = exact && c.status == Status::Exact && check.verdict.certified();
        }

    if (k == 2) return by_pair[{0, 1}]->cert;

    // Q' with A_i in position i
    std::vector<LangExpr> q{side(0, 1, false), side(0, 1, true)};
    for (std::size_t t = 2; t < k; ++t) {
        std::vector<LangExpr> sep;
        for (std::size_t i = 0; i < t; ++i) sep.push_back(side(i, t, false));
        LangExpr p = compact(LangExpr::unite(sep), x);
        for (auto& part : q) part = compact(part & p, x);
        q.push_back(compact(~p, x));
    }
    PartitionCertificate out;
    out.parts = q;
    for (const auto& part : q) out.indices.push_back(locate_part(part, x, family));
    out.sigma.resize(k);
    std::iota(out.sigma.begin(), out.sigma.end(), 0);
    settle(out, problem, horizon, exact);
    return out;
}

json to_json(const PartitionCertificate& cert) {
    json parts = json::array(), summary = json::array(), indices = json::array();
    for (const auto& p : cert.parts) {
        parts.push_back(to_json(p));
        summary.push_back(describe(p));
    }
    for (const auto& i : cert.indices) indices.push_back(i ? json(i->str()) : json(nullptr));
    return {{"parts", parts},         {"summary", summary},         {"indices", indices},
            {"sigma", cert.sigma},    {"status", to_string(cert.status)}, {"horizon", cert.horizon},
            {"conditional", cert.conditional}};
}

json to_json(const SolveResult& r) {
    json out{{"found", r.found()},
             {"index_bound", r.index_bound},
             {"horizon", r.horizon},
             {"solutions", r.solutions}};
    out["certificate"] = r.certificate ? to_json(*r.certificate) : json(nullptr);
    return out;
}

namespace {

json verdict_json(const Verdict& v) {
    json out{{"outcome", to_string(v.outcome)}};
    if (v.witness) out["witness"] = *v.witness;
    if (v.unknown()) out["horizon"] = v.horizon;
    return out;
}

} // namespace

json to_json(const ProblemCheck& c) {
    json disj = json::array(), inf = json::array();
    for (const auto& [ij, v] : c.disjoint) {
        json e = verdict_json(v);
        e["pair"] = {ij.first, ij.second};
        disj.push_back(e);
    }
    for (const auto& f : c.infinite) inf.push_back({{"kind", to_string(f.kind)}, {"count", f.count}});
    json out{{"disjoint", disj}, {"finiteness", inf}, {"refuted", c.refuted}, {"exact", c.exact},
             {"messages", c.messages}};
    if (c.condition_disjoint) out["condition_disjoint"] = verdict_json(*c.condition_disjoint);
    return out;
}

ProblemDocument problem_from_json(const json& doc) {
    try {
        if (!doc.is_object()) throw ParseError("problem must be a JSON object");
        if (!doc.contains("alphabet")) throw ParseError("problem needs an \"alphabet\"");
        Alphabet x(doc.at("alphabet").get<std::string>());
        std::vector<LangExpr> comps;
        for (const json& c : doc.at("components")) comps.push_back(lang_from_json(c, &x));
        std::optional<LangExpr> cond;
        if (doc.contains("condition") && !doc.at("condition").is_null())
            cond = lang_from_json(doc.at("condition"), &x);
        return {ClassificationProblem(x, std::move(comps)), std::move(cond)};
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad problem (") + e.what() + ")");
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("bad problem (") + e.what() + ")");
    } catch (const AlphabetError& e) {
        throw ParseError(std::string("bad problem (") + e.what() + ")");
    }
}

json to_json(const ClassificationProblem& problem, const std::optional<LangExpr>& condition) {
    json comps = json::array();
    for (const auto& c : problem.components()) comps.push_back(to_json(c));
    return {{"alphabet", problem.alphabet().symbols()},
            {"condition", condition ? to_json(*condition) : json(nullptr)},
            {"components", comps}};
}

} // namespace cptk
