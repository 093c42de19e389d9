#include <gtest/gtest.h>

#include "cptk/cohesion.hpp"
#include "cptk/error.hpp"

using namespace cptk;

namespace {

const Alphabet ab("ab");
const Alphabet unary("a");

LangExpr starts(char x) { return LangExpr::left_mark(x, LangExpr::universe()); }

// {aⁿ : n ≥ t, n ≡ r mod m}
LangExpr residue(std::size_t t, std::size_t m, std::size_t r) {
    std::vector<Dfa::State> delta;
    std::vector<bool> acc;
    for (std::size_t q = 0; q < t; ++q) {
        delta.push_back(q + 1);
        acc.push_back(false);
    }
    for (std::size_t c = 0; c < m; ++c) {
        delta.push_back(t + (c + 1) % m);
        acc.push_back((t + c) % m == r % m);
    }
    return LangExpr::automaton(Dfa(unary, 0, delta, acc));
}

constexpr std::size_t kLen = 80;
using Bits = std::vector<bool>;

Bits ubits(const LangExpr& e) {
    Bits b(kLen + 1);
    for (std::size_t n = 0; n <= kLen; ++n) b[n] = member(e, std::string(n, 'a'));
    return b;
}

// Automata here have under 40 states, so a member of length ≥ 40 means infinite.
bool tail(const Bits& b) {
    for (std::size_t n = 40; n <= kLen; ++n)
        if (b[n]) return true;
    return false;
}

Bits meet(const Bits& x, const Bits& y) {
    Bits r(kLen + 1);
    for (std::size_t n = 0; n <= kLen; ++n) r[n] = x[n] && y[n];
    return r;
}

std::uint64_t pi(std::uint64_t x, std::uint64_t y) { return (x + y) * (x + y + 1) / 2 + y; }

// Least π(i, j) with e(i) = e(j)ᶜ splitting A into two infinite halves.
std::optional<std::pair<std::uint64_t, std::uint64_t>> oracle_split(const LangExpr& a, std::uint64_t bound) {
    FamilyEnum f = regular_family(unary);
    std::vector<Bits> fam;
    for (std::uint64_t i = 0; i < bound; ++i) fam.push_back(ubits(f(i)));
    Bits ab_ = ubits(a);
    std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
    for (std::uint64_t i = 0; i < bound; ++i)
        for (std::uint64_t j = 0; j < bound; ++j) {
            bool comp = true;
            for (std::size_t n = 0; n <= kLen && comp; ++n) comp = fam[i][n] != fam[j][n];
            if (!comp || !tail(meet(ab_, fam[i])) || !tail(meet(ab_, fam[j]))) continue;
            if (!best || pi(i, j) < pi(best->first, best->second)) best = {{i, j}};
        }
    return best;
}

// aX* and bX* and their complements all sit below this bound.
const Catalog& markers() {
    static const Catalog cat(regular_family(ab), 3700, 12);
    return cat;
}

FamilyEnum trivial_family(const Alphabet& x) {
    FamilyFlags flags;
    flags.union_closed = flags.intersection_closed = flags.complement_closed = flags.nontrivial = true;
    return list_family(x, {LangExpr::empty(), LangExpr::universe()}, flags, "trivial");
}

} // namespace

TEST(Cohesion, StarIsSplitByEvenLengths) {
    CohesionVerdict v = check_cohesive(LangExpr::universe(), regular_family(unary), 60, 24);
    ASSERT_TRUE(v.refuted);
    EXPECT_TRUE(v.exact);
    Bits q = ubits(*v.q);
    EXPECT_TRUE(q == ubits(residue(0, 2, 0)) || q == ubits(residue(0, 2, 1)));
    EXPECT_TRUE(v.inside.infinite());
    EXPECT_TRUE(v.outside.infinite());
    EXPECT_TRUE(verify_refutation(v, LangExpr::universe(), regular_family(unary)).certified());
}

TEST(Cohesion, FirstWitnessMatchesBruteForce) {
    const std::uint64_t bound = 234;
    Catalog cat(regular_family(unary), bound, 24);
    std::vector<LangExpr> cases = {LangExpr::universe(), residue(0, 2, 0), residue(3, 3, 1), residue(0, 6, 5),
                                   residue(2, 1, 0) | residue(0, 5, 0), LangExpr::finite({"a", "aaa"})};
    for (const auto& a : cases) {
        CohesionVerdict v = check_cohesive(a, cat);
        auto want = oracle_split(a, bound);
        ASSERT_EQ(v.refuted, want.has_value()) << describe(a);
        if (!want) continue;
        EXPECT_EQ(v.witness->i, want->first) << describe(a);
        EXPECT_EQ(v.witness->j, want->second) << describe(a);
        EXPECT_TRUE(v.exact);
    }
}

TEST(Cohesion, TrivialFamilySplitsNothing) {
    CohesionVerdict v = check_cohesive(LangExpr::universe(), trivial_family(ab), 2, 12);
    EXPECT_FALSE(v.refuted);
    EXPECT_FALSE(v.witness);
    EXPECT_EQ(v.pairs_examined, 2u);
}

TEST(Cohesion, FiniteLanguagesAreNeverSplit) {
    CohesionVerdict v = check_cohesive(LangExpr::finite({"a", "ab", "bb"}), regular_family(ab), 200, 12);
    EXPECT_FALSE(v.refuted);
}

TEST(Cohesion, MarkerLanguageIsSplitInsideItself) {
    Catalog cat(regular_family(ab), 300, 12);
    CohesionVerdict v = check_cohesive(starts('a'), cat);
    ASSERT_TRUE(v.refuted);
    EXPECT_TRUE(v.exact);
    // neither half may swallow aX*
    EXPECT_TRUE(emptiness(starts('a') & *v.q, ab, 12).refuted());
    EXPECT_TRUE(emptiness(starts('a') & ~*v.q, ab, 12).refuted());
    EXPECT_FALSE(subset_of(starts('a'), *v.q, ab, 12).certified());
}

TEST(Cohesion, OpaqueLanguageIsRefutedOnlyToTheHorizon) {
    // 32 squares up to length 1000, half of them even
    LangExpr sq = LangExpr::predicate("square-length");
    CohesionVerdict v = check_cohesive(sq, regular_family(unary), 60, 1000, 8);
    ASSERT_TRUE(v.refuted);
    EXPECT_FALSE(v.exact);
    EXPECT_GE(v.inside.count, 8u);
    EXPECT_GE(v.outside.count, 8u);
    EXPECT_TRUE(verify_refutation(v, sq, regular_family(unary), 8).unknown());
    EXPECT_FALSE(check_cohesive(sq, regular_family(unary), 60, 1000).refuted);
}

TEST(Cohesion, VerifyRefutationRejectsForgedWitnesses) {
    FamilyEnum f = regular_family(unary);
    CohesionVerdict v = check_cohesive(LangExpr::universe(), f, 60, 24);
    ASSERT_TRUE(v.refuted);
    CohesionVerdict forged = v;
    forged.witness->j = forged.witness->i;
    EXPECT_TRUE(verify_refutation(forged, LangExpr::universe(), f).refuted());
    EXPECT_TRUE(verify_refutation(v, residue(0, 2, 0), f).refuted());
    EXPECT_THROW(verify_refutation(CohesionVerdict{}, LangExpr::universe(), f), PreconditionError);
}

TEST(Cohesion, ConditionalScanWithEverythingAllowedIsThePlainScan) {
    Catalog cat(regular_family(unary), 234, 24);
    for (const auto& a : {LangExpr::universe(), residue(3, 3, 1), residue(0, 4, 2)}) {
        CohesionVerdict plain = check_cohesive(a, cat);
        CohesionVerdict cond = check_ccohesive(a, LangExpr::universe(), cat);
        ASSERT_EQ(plain.refuted, cond.refuted);
        if (!plain.refuted) continue;
        EXPECT_EQ(plain.witness->i, cond.witness->i);
        EXPECT_EQ(plain.witness->j, cond.witness->j);
        EXPECT_EQ(plain.pairs_examined, cond.pairs_examined);
    }
}

TEST(Cohesion, ConditionalScanIsMonotoneInTheCondition) {
    Catalog cat(regular_family(unary), 234, 24);
    LangExpr a = LangExpr::universe();
    std::vector<LangExpr> chain = {LangExpr::empty(), residue(0, 3, 0), residue(0, 3, 0) | residue(0, 2, 1),
                                   LangExpr::universe()};
    std::optional<std::size_t> first;
    for (std::size_t k = 0; k < chain.size(); ++k) {
        CohesionVerdict v = check_ccohesive(a, chain[k], cat);
        if (first) {
            ASSERT_TRUE(v.refuted) << k;
            EXPECT_LE(v.pairs_examined, *first);
        }
        if (v.refuted) {
            EXPECT_TRUE(subset_of(*v.q, chain[k], unary, 24).certified());
            first = v.pairs_examined;
        }
    }
    EXPECT_FALSE(check_ccohesive(a, LangExpr::empty(), cat).refuted);
    // six states lie beyond the bound, so only ∅ fits inside (a⁶)*
    EXPECT_FALSE(check_ccohesive(a, residue(0, 6, 0), cat).refuted);
    EXPECT_TRUE(check_ccohesive(a, residue(0, 3, 0), cat).refuted);
}

TEST(Cohesion, CoreOfMarkerProblemIsRefutedWithLinkedEvidence) {
    ClassificationProblem p(ab, {starts('a'), starts('b')});
    CoreReport r = check_core(p, markers(), 4, 7);
    EXPECT_TRUE(r.refuted);
    EXPECT_TRUE(r.exact);
    EXPECT_FALSE(r.contradiction);
    ASSERT_TRUE(r.primary.refuted);
    ASSERT_TRUE(r.linked);
    EXPECT_NE(r.linked->components[0], r.linked->components[1]);
    EXPECT_EQ(r.linked->certificate.status, Status::Exact);
    EXPECT_TRUE(verify_certificate(r.linked->certificate, r.linked->problem, std::nullopt, 12).verdict.certified());
    // the plain pair itself is solvable
    ASSERT_FALSE(r.solvable.empty());
    EXPECT_EQ(r.solvable[0].components, (std::vector<std::size_t>{0, 1}));
}

TEST(Cohesion, CoreNeedsAClosedNontrivialFamilyAndTwoComponents) {
    ClassificationProblem p(ab, {starts('a'), starts('b')});
    FamilyEnum plain = list_family(ab, {LangExpr::empty(), LangExpr::universe()});
    EXPECT_THROW(check_core(p, plain, 2, 8, 0), PreconditionError);
    EXPECT_THROW(check_core(p.select({0}), regular_family(ab), 10, 8, 0), PreconditionError);
    EXPECT_THROW(check_ccore(ConditionalProblem{LangExpr::empty(), p}, plain, 2, 8), PreconditionError);
}

TEST(Cohesion, CoreOverTrivialFamilyIsConsistent) {
    ClassificationProblem p(ab, {starts('a'), starts('b')});
    CoreReport r = check_core(p, trivial_family(ab), 2, 10, 6, 1);
    EXPECT_FALSE(r.refuted);
    EXPECT_FALSE(r.contradiction);
    EXPECT_TRUE(r.solvable.empty());
    EXPECT_FALSE(r.linked);
}

// An exact separator of two infinite components is a dc pair that splits
// their union, so the scan must find one whenever a pair is solvable.
TEST(Cohesion, SolvablePairsNeverContradictTheUnionScan) {
    Catalog cat(regular_family(unary), 234, 24);
    std::vector<std::pair<LangExpr, LangExpr>> pairs = {{residue(0, 2, 0), residue(0, 2, 1)},
                                                        {residue(0, 3, 0), residue(0, 3, 2)},
                                                        {residue(4, 1, 0), residue(0, 6, 1) & residue(0, 2, 1)},
                                                        {residue(0, 4, 1), residue(0, 4, 3)}};
    for (const auto& [x, y] : pairs) {
        ClassificationProblem p(unary, {x & ~y, y});
        CoreReport r = check_core(p, cat, 6, 3);
        EXPECT_FALSE(r.contradiction) << describe(x) << " " << describe(y);
        if (!r.solvable.empty() && r.solvable[0].certificate.status == Status::Exact) EXPECT_TRUE(r.primary.refuted);
    }
}

TEST(Cohesion, CcoreRefutesASeparableComponent) {
    ConditionalProblem p{starts('a'), ClassificationProblem(ab, {starts('b')})};
    CcoreReport r = check_ccore(p, markers());
    ASSERT_EQ(r.components.size(), 1u);
    const CcoreComponent& c = r.components[0];
    EXPECT_TRUE(c.cclass.found());
    EXPECT_TRUE(c.ccohesive.refuted);
    EXPECT_TRUE(r.refuted);
    EXPECT_TRUE(r.exact);
    ASSERT_TRUE(c.linked);
    EXPECT_TRUE(c.linked->conditional);
    ClassificationProblem slice(ab, {starts('b') & *c.ccohesive.q});
    EXPECT_TRUE(verify_certificate(*c.linked, slice, starts('a'), 12).verdict.certified());
    // witnesses lie outside the condition
    EXPECT_TRUE(disjoint(*c.ccohesive.q, starts('a'), ab, 12).certified());
}

TEST(Cohesion, CcoreOverTrivialFamilyIsConsistent) {
    // Q ⊆ Cᶜ = bX* leaves only ∅, and no member holds C without bX*
    ConditionalProblem p{LangExpr::universe() & ~starts('b'), ClassificationProblem(ab, {starts('b')})};
    CcoreReport r = check_ccore(p, trivial_family(ab), 2, 8);
    EXPECT_FALSE(r.refuted);
}

TEST(Cohesion, ReportsSerialize) {
    CohesionVerdict v = check_cohesive(LangExpr::universe(), regular_family(unary), 60, 24);
    json j = to_json(v);
    EXPECT_EQ(j["verdict"], "refuted");
    EXPECT_EQ(j["witness"]["i"], v.witness->i);
    EXPECT_EQ(j["inside"]["kind"], "infinite");
    ClassificationProblem p(ab, {starts('a'), starts('b')});
    json core = to_json(check_core(p, trivial_family(ab), 2, 8, 0));
    EXPECT_EQ(core["verdict"], "consistent-up-to");
    EXPECT_TRUE(core["linked"].is_null());
    json cc = to_json(check_ccore(ConditionalProblem{starts('a'), p.select({1})}, markers()));
    EXPECT_EQ(cc["components"].size(), 1u);
}
