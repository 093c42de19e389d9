#include <algorithm>
#include <functional>
#include <random>

#include "cptk/cohesion.hpp"
#include "cptk/error.hpp"
#include "cptk/parallel.hpp"

namespace cptk {

namespace {

bool big(const FinitenessVerdict& f, std::uint64_t threshold) {
    return f.infinite() || (!f.exact() && f.count >= threshold);
}

struct Split {
    FinitenessVerdict inside, outside;
    bool eligible = false;
};

using Filter = std::function<bool(const LangExpr& q)>;

constexpr std::size_t kBlock = 64;

// First dc pair (in code order) that splits A into two big sides.
CohesionVerdict scan(const LangExpr& a, const Catalog& catalog, std::uint64_t threshold, const Filter& filter) {
    const Alphabet& x = catalog.family().alphabet();
    const std::uint64_t h = catalog.horizon();
    const auto& classes = catalog.classes();
    std::vector<DcClassPair> pairs = dc_classes(catalog);

    CohesionVerdict out;
    out.index_bound = catalog.index_bound();
    out.horizon = h;
    out.threshold = threshold;
    for (std::size_t start = 0; start < pairs.size(); start += kBlock) {
        std::size_t n = std::min(kBlock, pairs.size() - start);
        std::vector<Split> split(n);
        parallel_for(n, [&](std::size_t t) {
            const DcClassPair& p = pairs[start + t];
            const LangExpr& q = classes[p.c].lang;
            if (filter && !filter(q)) return;
            split[t].eligible = true;
            split[t].inside = is_finite(a & q, x, h);
            if (!big(split[t].inside, threshold)) return;
            split[t].outside = is_finite(a & classes[p.d].lang, x, h);
        });
        for (std::size_t t = 0; t < n; ++t) {
            ++out.pairs_examined;
            const Split& s = split[t];
            if (!s.eligible || !big(s.inside, threshold) || !big(s.outside, threshold)) continue;
            const DcClassPair& p = pairs[start + t];
            out.refuted = true;
            out.exact = p.status == Status::Exact && s.inside.infinite() && s.outside.infinite();
            out.witness = DcMember{classes[p.c].index, classes[p.d].index, p.status, p.horizon};
            out.q = classes[p.c].lang;
            out.inside = s.inside;
            out.outside = s.outside;
            return out;
        }
    }
    return out;
}

} // namespace

CohesionVerdict check_cohesive(const LangExpr& a, const Catalog& catalog, std::uint64_t threshold) {
    return scan(a, catalog, threshold, {});
}

CohesionVerdict check_cohesive(const LangExpr& a, const FamilyEnum& family, std::uint64_t index_bound,
                               std::uint64_t horizon, std::uint64_t threshold) {
    return check_cohesive(a, Catalog(family, index_bound, horizon), threshold);
}

CohesionVerdict check_ccohesive(const LangExpr& a, const LangExpr& c, const Catalog& catalog,
                                std::uint64_t threshold) {
    const Alphabet& x = catalog.family().alphabet();
    const std::uint64_t h = catalog.horizon();
    CohesionVerdict out =
        scan(a, catalog, threshold, [&](const LangExpr& q) { return subset_of(q, c, x, h).certified(); });
    out.route = "dc pairs of F(C)cc with Q in F(C), Q ⊆ C certified";
    return out;
}

CohesionVerdict check_ccohesive(const LangExpr& a, const LangExpr& c, const FamilyEnum& family,
                                std::uint64_t index_bound, std::uint64_t horizon, std::uint64_t threshold) {
    return check_ccohesive(a, c, Catalog(family, index_bound, horizon), threshold);
}

Verdict verify_refutation(const CohesionVerdict& v, const LangExpr& a, const FamilyEnum& family,
                          std::uint64_t threshold) {
    if (!v.refuted || !v.witness) throw PreconditionError("verdict carries no refutation");
    const Alphabet& x = family.alphabet();
    const std::uint64_t h = v.horizon;
    LangExpr q = family(v.witness->i), qc = family(v.witness->j);
    Verdict dc = equal(q, ~qc, x, h);
    if (dc.refuted()) return dc;
    FinitenessVerdict in = is_finite(a & q, x, h), out = is_finite(a & qc, x, h);
    if (!big(in, threshold) || !big(out, threshold)) return {Outcome::Refuted, std::nullopt, 0};
    if (dc.certified() && in.infinite() && out.infinite()) return Verdict::certify();
    return Verdict::unknown(h);
}

namespace {

void require_core_family(const FamilyEnum& f) {
    if (!f.flags().union_closed || !f.flags().nontrivial)
        throw PreconditionError(f.name() + " must be declared union-closed and nontrivial");
}

constexpr std::size_t kKeptWitnesses = 8;

} // namespace

CoreReport check_core(const ClassificationProblem& a, const Catalog& catalog, std::size_t subset_samples,
                      std::uint64_t seed) {
    const FamilyEnum& f = catalog.family();
    require_core_family(f);
    if (a.size() < 2) throw PreconditionError("a core check needs at least two components");
    const Alphabet& x = a.alphabet();
    const std::uint64_t h = catalog.horizon();

    CoreReport r;
    r.index_bound = catalog.index_bound();
    r.horizon = h;
    LangExpr whole = set_of(a);
    r.primary = check_cohesive(whole, catalog);

    // plain pairs first, then random slices A_i ∩ e(s), A_j ∩ e(t)
    struct Sample {
        std::size_t i, j;
        std::optional<std::uint64_t> s, t;
    };
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) samples.push_back({i, j, std::nullopt, std::nullopt});
    std::mt19937_64 rng(seed);
    for (std::size_t n = 0; n < subset_samples; ++n) {
        std::size_t i = rng() % a.size(), j = rng() % (a.size() - 1);
        if (j >= i) ++j;
        samples.push_back({i, j, rng() % catalog.index_bound(), rng() % catalog.index_bound()});
    }
    bool exact_solvable = false;
    for (const Sample& s : samples) {
        LangExpr b1 = s.s ? a[s.i] & f(*s.s) : a[s.i], b2 = s.t ? a[s.j] & f(*s.t) : a[s.j];
        FinitenessVerdict f1 = is_finite(b1, x, h), f2 = is_finite(b2, x, h);
        if (f1.finite() || f2.finite()) continue;
        ++r.subproblems_tried;
        ClassificationProblem sub(x, {b1, b2});
        SolveResult found = solve(sub, catalog);
        if (!found.found()) continue;
        bool exact = found.certificate->status == Status::Exact && f1.infinite() && f2.infinite();
        exact_solvable = exact_solvable || exact;
        if (r.solvable.size() < kKeptWitnesses) r.solvable.push_back({{s.i, s.j}, sub, *found.certificate});
    }

    if (r.primary.refuted) {
        const LangExpr& q = *r.primary.q;
        LangExpr qc = f(r.primary.witness->j);
        std::vector<FinitenessVerdict> in, out;
        for (std::size_t i = 0; i < a.size(); ++i) {
            in.push_back(is_finite(a[i] & q, x, h));
            out.push_back(is_finite(a[i] & qc, x, h));
        }
        for (std::size_t i = 0; i < a.size() && !r.linked; ++i)
            for (std::size_t j = 0; j < a.size() && !r.linked; ++j) {
                if (i == j || !big(in[i], r.primary.threshold) || !big(out[j], r.primary.threshold)) continue;
                ClassificationProblem sub(x, {a[i] & q, a[j] & qc});
                PartitionCertificate cert{{q, qc},
                                          {BigCode(r.primary.witness->i), BigCode(r.primary.witness->j)},
                                          {0, 1}};
                PartitionCheck v = verify_certificate(cert, sub, std::nullopt, h);
                if (v.verdict.refuted()) continue;
                bool exact = v.verdict.certified() && in[i].infinite() && out[j].infinite();
                cert.status = exact ? Status::Exact : Status::CheckedToHorizon;
                cert.horizon = exact ? 0 : h;
                r.linked = SubproblemWitness{{i, j}, sub, cert};
            }
    }

    r.refuted = r.primary.refuted || !r.solvable.empty();
    r.exact = (r.primary.refuted && r.primary.exact) || exact_solvable;
    // an exact separator below the bound is itself a dc pair splitting set(A)
    r.contradiction = exact_solvable && !r.primary.refuted && f.exact() && approximate(whole, x).exact;
    return r;
}

CoreReport check_core(const ClassificationProblem& a, const FamilyEnum& family, std::uint64_t index_bound,
                      std::uint64_t horizon, std::size_t subset_samples, std::uint64_t seed) {
    return check_core(a, Catalog(family, index_bound, horizon), subset_samples, seed);
}

CcoreReport check_ccore(const ConditionalProblem& p, const Catalog& catalog) {
    const FamilyEnum& f = catalog.family();
    require_core_family(f);
    const Alphabet& x = p.problem.alphabet();
    const std::uint64_t h = catalog.horizon();
    CcoreReport r;
    r.index_bound = catalog.index_bound();
    r.horizon = h;
    LangExpr outside = ~p.condition;
    for (std::size_t i = 0; i < p.problem.size(); ++i) {
        CcoreComponent c;
        ClassificationProblem single = p.problem.select({i});
        c.cclass = solve_conditional(ConditionalProblem{p.condition, single}, catalog);
        c.ccohesive = check_ccohesive(p.problem[i], outside, catalog);
        if (c.ccohesive.refuted) {
            // A_i ∩ Q lies in Q ⊆ Cᶜ, so (Qᶜ, Q) solves it under C
            const DcMember& w = *c.ccohesive.witness;
            PartitionCertificate cert{{f(w.j), f(w.i)}, {BigCode(w.j), BigCode(w.i)}, {1}};
            cert.conditional = true;
            ClassificationProblem part(x, {p.problem[i] & f(w.i)});
            PartitionCheck v = verify_certificate(cert, part, p.condition, h);
            if (!v.verdict.refuted()) {
                bool exact = v.verdict.certified() && c.ccohesive.exact;
                cert.status = exact ? Status::Exact : Status::CheckedToHorizon;
                cert.horizon = exact ? 0 : h;
                c.linked = cert;
            }
        }
        c.refuted = c.cclass.found() || c.ccohesive.refuted;
        c.exact = (c.cclass.found() && c.cclass.certificate->status == Status::Exact) ||
                  (c.ccohesive.refuted && c.ccohesive.exact);
        r.refuted = r.refuted || c.refuted;
        r.exact = r.exact || c.exact;
        r.components.push_back(std::move(c));
    }
    return r;
}

CcoreReport check_ccore(const ConditionalProblem& p, const FamilyEnum& family, std::uint64_t index_bound,
                        std::uint64_t horizon) {
    return check_ccore(p, Catalog(family, index_bound, horizon));
}

namespace {

json finiteness_json(const FinitenessVerdict& f) {
    return {{"kind", to_string(f.kind)}, {"count", f.count}};
}

json witness_json(const SubproblemWitness& w) {
    return {{"components", w.components}, {"problem", to_json(w.problem)}, {"certificate", to_json(w.certificate)}};
}

} // namespace

json to_json(const CohesionVerdict& v) {
    json out{{"verdict", v.refuted ? "refuted" : "consistent-up-to"},
             {"exact", v.exact},
             {"index_bound", v.index_bound},
             {"horizon", v.horizon},
             {"threshold", v.threshold},
             {"pairs_examined", v.pairs_examined}};
    if (!v.route.empty()) out["route"] = v.route;
    if (v.witness) {
        out["witness"] = {{"i", v.witness->i},
                          {"j", v.witness->j},
                          {"status", to_string(v.witness->status)},
                          {"horizon", v.witness->horizon}};
        out["q"] = describe(*v.q);
        out["inside"] = finiteness_json(v.inside);
        out["outside"] = finiteness_json(v.outside);
    }
    return out;
}

json to_json(const CoreReport& r) {
    json solvable = json::array();
    for (const auto& w : r.solvable) solvable.push_back(witness_json(w));
    json out{{"verdict", r.refuted ? "refuted" : "consistent-up-to"},
             {"exact", r.exact},
             {"primary", to_json(r.primary)},
             {"solvable_subproblems", solvable},
             {"subproblems_tried", r.subproblems_tried},
             {"contradiction", r.contradiction},
             {"index_bound", r.index_bound},
             {"horizon", r.horizon}};
    out["linked"] = r.linked ? witness_json(*r.linked) : json(nullptr);
    return out;
}

json to_json(const CcoreReport& r) {
    json comps = json::array();
    for (const auto& c : r.components) {
        json e{{"refuted", c.refuted},
               {"exact", c.exact},
               {"cclass", to_json(c.cclass)},
               {"ccohesive", to_json(c.ccohesive)}};
        e["linked"] = c.linked ? to_json(*c.linked) : json(nullptr);
        comps.push_back(e);
    }
    return {{"verdict", r.refuted ? "refuted" : "consistent-up-to"},
            {"exact", r.exact},
            {"components", comps},
            {"index_bound", r.index_bound},
            {"horizon", r.horizon}};
}

} // namespace cptk
