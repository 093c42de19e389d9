#pragma once

#include "cptk/classify.hpp"

namespace cptk {

/// xA ∪ yAᶜ for distinct symbols x, y.
LangExpr marked(char x, char y, const LangExpr& a);

/// (aA ∪ bAᶜ, bA ∪ cAᶜ, cA ∪ aAᶜ) over {a,b,c}. Components are disjoint by
/// their first symbols; this is re-checked and a refutation throws Error.
/// Degenerate A (finite or cofinite) is allowed; check_problem flags it.
ClassificationProblem ziegler_problem(const LangExpr& a, const Alphabet& alphabet = Alphabet("abc"));

/// C = aA ∪ bAᶜ with components (aAᶜ, bA), over {a,b} or {a,b,c}.
ConditionalProblem example_26(const LangExpr& a, const Alphabet& alphabet = Alphabet("ab"));

} // namespace cptk
