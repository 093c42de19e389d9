#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cptk/families.hpp"

namespace cptk {

/// Components A₁..A_k over one alphabet. k = 1 identifies A₁ with (A₁).
class ClassificationProblem {
public:
    ClassificationProblem(Alphabet alphabet, std::vector<LangExpr> components);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const std::vector<LangExpr>& components() const noexcept { return components_; }
    const LangExpr& operator[](std::size_t i) const { return components_.at(i); }
    std::size_t size() const noexcept { return components_.size(); }

    /// Problem made of the listed components, in that order.
    ClassificationProblem select(const std::vector<std::size_t>& which) const;

private:
    Alphabet alphabet_;
    std::vector<LangExpr> components_;
};

struct ConditionalProblem {
    LangExpr condition;
    ClassificationProblem problem;
};

/// A₁ ∪ … ∪ A_k
LangExpr set_of(const ClassificationProblem& problem);

/// Precondition report: pairwise disjointness, infinitude of every
/// component and, for conditional problems, C ∩ set(A) = ∅.
struct ProblemCheck {
    /// Pairwise verdicts in the order (0,1), (0,2), …, (1,2), …
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, Verdict>> disjoint;
    std::vector<FinitenessVerdict> infinite;
    std::optional<Verdict> condition_disjoint;
    /// Some precondition is refuted (overlap witness or exactly finite component).
    bool refuted = false;
    /// Everything proven exactly.
    bool exact = true;
    std::vector<std::string> messages;
};

ProblemCheck check_problem(const ClassificationProblem& problem, std::uint64_t horizon);
ProblemCheck check_problem(const ConditionalProblem& problem, std::uint64_t horizon);

/// σ maps problem components to positions (0-based): B_i ⊆ A_σ(i).
struct Injection {
    std::vector<std::size_t> sigma;
    Status status = Status::Exact;
    std::uint64_t horizon = 0;
};

/// Lexicographically least σ whose containments are not refuted.
std::optional<Injection> refines(const ClassificationProblem& b, const ClassificationProblem& a,
                                 std::uint64_t horizon);
std::optional<Injection> refines(const std::vector<LangExpr>& b, const std::vector<LangExpr>& a,
                                 const Alphabet& alphabet, std::uint64_t horizon);

struct PartitionCheck {
    Verdict verdict;
    /// "uncovered", "overlap", "not-in-family" or empty.
    std::string reason;
    /// Positions involved in a refutation.
    std::vector<std::size_t> positions;
    /// Family index per part when a family was given and the part was found.
    std::vector<std::optional<std::uint64_t>> indices;
};

/// Cover of X* first (witness: least uncovered word), then pairwise
/// disjointness (witness: least shared word), then membership of every part
/// in e(0..index_bound − 1) when a family is given.
PartitionCheck is_partition(const std::vector<LangExpr>& parts, const Alphabet& alphabet, std::uint64_t horizon,
                            const FamilyEnum* family = nullptr, std::uint64_t index_bound = 0);

/// F-partition Q with A ≤ Q. For conditional problems parts[0] = Q₀ ⊇ C.
struct PartitionCertificate {
    std::vector<LangExpr> parts;
    /// Family index of each part; nullopt for constructed parts not located in the family.
    std::vector<std::optional<BigCode>> indices;
    /// Component i lies in parts[sigma[i]].
    std::vector<std::size_t> sigma;
    Status status = Status::Exact;
    std::uint64_t horizon = 0;
    bool conditional = false;
};

struct SolveResult {
    std::optional<PartitionCertificate> certificate;
    std::uint64_t index_bound = 0;
    std::uint64_t horizon = 0;
    /// Candidate tuples that passed every check (only the least is kept).
    std::size_t solutions = 0;
    bool found() const noexcept { return certificate.has_value(); }
};

/// Searches tuples of members e(i), i < index_bound, by ascending tuple code
/// (with σ as tie-break). not-found is inconclusive: it only covers the bounds.
SolveResult solve(const ClassificationProblem& problem, const FamilyEnum& family, std::uint64_t index_bound,
                  std::uint64_t horizon);
SolveResult solve(const ClassificationProblem& problem, const Catalog& catalog);

/// As solve with an extra leading part Q₀ ⊇ C.
SolveResult solve_conditional(const ConditionalProblem& problem, const FamilyEnum& family,
                              std::uint64_t index_bound, std::uint64_t horizon);
SolveResult solve_conditional(const ConditionalProblem& problem, const Catalog& catalog);

/// Re-checks a certificate against the problem: partition laws, the
/// containments A_i ⊆ Q_σ(i) and, if conditional, C ⊆ Q₀.
PartitionCheck verify_certificate(const PartitionCertificate& cert, const ClassificationProblem& problem,
                                  const std::optional<LangExpr>& condition, std::uint64_t horizon);

/// Certificate for B ≤ A from a certificate Q for A: keeps the m parts that
/// receive components of B and merges the rest into the last of them.
/// Requires a union-closed family; throws PreconditionError when B ≤ A fails.
PartitionCertificate pad_partition(const PartitionCertificate& cert, const ClassificationProblem& a,
                                   const ClassificationProblem& b, const FamilyEnum& family,
                                   std::uint64_t horizon);

/// Pair certificates for (A_i, A_j), i < j, keyed by (i, j).
struct PairCertificate {
    std::size_t i, j;
    PartitionCertificate cert;
};

/// Builds a k-partition from pairwise certificates by induction on k:
/// given Q' for (A₁..A_k) and separators Q''_i ⊇ A_i with A_{k+1} ⊆ Q''_iᶜ,
/// P = ∪ Q''_i and Q = (Q'₁ ∩ P, …, Q'_k ∩ P, Pᶜ).
/// Requires a family closed under union and intersection. Throws
/// PreconditionError for a missing pair or a certificate that does not verify.
PartitionCertificate combine_pairwise(const ClassificationProblem& problem, const std::vector<PairCertificate>& pairs,
                                      const FamilyEnum& family, std::uint64_t horizon);

json to_json(const PartitionCertificate& cert);
json to_json(const SolveResult& result);
json to_json(const ProblemCheck& check);

/// {"alphabet":"ab","condition":LangExpr|null,"components":[LangExpr...]}
struct ProblemDocument {
    ClassificationProblem problem;
    std::optional<LangExpr> condition;
};
ProblemDocument problem_from_json(const json& doc);
json to_json(const ClassificationProblem& problem, const std::optional<LangExpr>& condition = std::nullopt);

} // namespace cptk
