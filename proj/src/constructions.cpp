#include <algorithm>

#include "cptk/constructions.hpp"
#include "cptk/error.hpp"

namespace cptk {

namespace {

std::string sorted(std::string s) {
    std::sort(s.begin(), s.end());
    return s;
}

// Horizon for the disjointness re-check: words up to length 4 over {a,b,c}.
constexpr std::uint64_t kRecheck = 120;

} // namespace

LangExpr marked(char x, char y, const LangExpr& a) {
    if (x == y) throw PreconditionError(std::string("marker symbols must differ, got ") + x + x);
    return LangExpr::left_mark(x, a) | LangExpr::left_mark(y, ~a);
}

ClassificationProblem ziegler_problem(const LangExpr& a, const Alphabet& alphabet) {
    if (sorted(alphabet.symbols()) != "abc")
        throw AlphabetError("ziegler_problem needs the alphabet {a,b,c}, got " + alphabet.symbols());
    ClassificationProblem p(alphabet, {marked('a', 'b', a), marked('b', 'c', a), marked('c', 'a', a)});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            Verdict v = disjoint(p[i], p[j], alphabet, kRecheck);
            if (v.refuted()) throw Error("marked components overlap on " + show(*v.witness));
        }
    return p;
}

ConditionalProblem example_26(const LangExpr& a, const Alphabet& alphabet) {
    std::string s = sorted(alphabet.symbols());
    if (s != "ab" && s != "abc")
        throw AlphabetError("example_26 needs the alphabet {a,b} or {a,b,c}, got " + alphabet.symbols());
    LangExpr c = marked('a', 'b', a);
    ClassificationProblem p(alphabet, {LangExpr::left_mark('a', ~a), LangExpr::left_mark('b', a)});
    for (const auto& comp : p.components()) {
        Verdict v = disjoint(c, comp, alphabet, kRecheck);
        if (v.refuted()) throw Error("condition meets a component on " + show(*v.witness));
    }
    return {c, p};
}

} // namespace cptk
