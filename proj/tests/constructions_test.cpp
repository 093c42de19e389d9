#include <gtest/gtest.h>

#include "cptk/constructions.hpp"
#include "cptk/error.hpp"

using namespace cptk;

namespace {

const Alphabet abc("abc");

LangExpr starts(char x) { return LangExpr::left_mark(x, LangExpr::universe()); }
LangExpr nonempty() { return ~LangExpr::finite({""}); }

void expect_equal(const LangExpr& x, const LangExpr& y, const Alphabet& a) {
    EXPECT_TRUE(equal(x, y, a, 200).certified()) << describe(x) << " vs " << describe(y);
}

} // namespace

TEST(Constructions, ZieglerWithFullBase) {
    ClassificationProblem p = ziegler_problem(LangExpr::universe());
    ASSERT_EQ(p.size(), 3u);
    expect_equal(p[0], starts('a'), abc);
    expect_equal(p[1], starts('b'), abc);
    expect_equal(p[2], starts('c'), abc);
}

TEST(Constructions, ZieglerWithEmptyBase) {
    ClassificationProblem p = ziegler_problem(LangExpr::empty());
    expect_equal(p[0], starts('b'), abc);
    expect_equal(p[1], starts('c'), abc);
    expect_equal(p[2], starts('a'), abc);
}

TEST(Constructions, ZieglerWithEmptyWordBase) {
    ClassificationProblem p = ziegler_problem(LangExpr::finite({""}));
    const std::string first = "abc";
    for (std::uint64_t i = 0; i < abc.words_shorter_than(4); ++i) {
        Word w = abc.lex(i);
        for (std::size_t k = 0; k < 3; ++k) {
            char x = first[k], y = first[(k + 1) % 3];
            bool want = (w == std::string(1, x)) || (w.size() >= 2 && w[0] == y);
            EXPECT_EQ(member(p[k], w), want) << k << " " << show(w);
        }
    }
}

TEST(Constructions, ZieglerOverSquareLengths) {
    LangExpr sq = LangExpr::predicate("square-length");
    ClassificationProblem p = ziegler_problem(sq);
    ProblemCheck check = check_problem(p, 200);
    for (const auto& [ij, v] : check.disjoint) EXPECT_TRUE(v.certified());
    // the union collapses to XX* because each base occurrence pairs with its complement
    Approximation hull = approximate(set_of(p), abc);
    EXPECT_TRUE(hull.exact);
    EXPECT_TRUE(equal(set_of(p), nonempty(), abc, 200).certified());
    // (bAᶜ, bA) ≤ (A_ab, A_bc)
    auto inj = refines(std::vector<LangExpr>{LangExpr::left_mark('b', ~sq), LangExpr::left_mark('b', sq)},
                       std::vector<LangExpr>{p[0], p[1]}, abc, 200);
    ASSERT_TRUE(inj);
    EXPECT_EQ(inj->sigma, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(inj->status, Status::Exact);
}

TEST(Constructions, ZieglerNeedsThreeSymbols) {
    EXPECT_THROW(ziegler_problem(LangExpr::universe(), Alphabet("ab")), AlphabetError);
    EXPECT_THROW(ziegler_problem(LangExpr::universe(), Alphabet("abcd")), AlphabetError);
    EXPECT_NO_THROW(ziegler_problem(LangExpr::universe(), Alphabet("cab")));
}

TEST(Constructions, MarkersMustDiffer) { EXPECT_THROW(marked('a', 'a', LangExpr::universe()), PreconditionError); }

TEST(Constructions, ExampleWithFullBaseIsDegenerate) {
    ConditionalProblem p = example_26(LangExpr::universe());
    expect_equal(p.condition, starts('a'), Alphabet("ab"));
    expect_equal(p.problem[1], starts('b'), Alphabet("ab"));
    ProblemCheck check = check_problem(p, 100);
    EXPECT_TRUE(check.refuted);
    EXPECT_TRUE(check.infinite[0].finite());
}

TEST(Constructions, ExampleOverSquareLengths) {
    LangExpr sq = LangExpr::predicate("square-length");
    ConditionalProblem p = example_26(sq);
    ProblemCheck check = check_problem(p, 400);
    EXPECT_FALSE(check.refuted);
    ASSERT_TRUE(check.condition_disjoint);
    EXPECT_TRUE(check.condition_disjoint->certified());
    for (const auto& [ij, v] : check.disjoint) EXPECT_TRUE(v.certified());
    // C ∪ set(A) covers XX*
    EXPECT_TRUE(equal(p.condition | set_of(p.problem), nonempty(), Alphabet("ab"), 200).certified());
    EXPECT_NO_THROW(example_26(sq, abc));
    EXPECT_THROW(example_26(sq, Alphabet("a")), AlphabetError);
    EXPECT_THROW(example_26(sq, Alphabet("abd")), AlphabetError);
}
