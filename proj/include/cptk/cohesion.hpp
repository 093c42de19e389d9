#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cptk/classify.hpp"

namespace cptk {

/// Members of an intersection seen within the horizon that count as evidence
/// of infinitude when no exact verdict is available.
inline constexpr std::uint64_t kInfiniteEvidence = 32;

/// Outcome of a cohesion scan over the dc pairs of e(0..index_bound − 1).
///
/// Refuted carries Q = e(witness.i) with Qᶜ = e(witness.j) and the evidence
/// that A ∩ Q and A ∩ Qᶜ are both infinite. Otherwise nothing split A within
/// the bounds, which is not a proof of cohesiveness.
struct CohesionVerdict {
    bool refuted = false;
    /// Refutation proven: dc pair exact and both sides exactly infinite.
    bool exact = false;
    std::optional<DcMember> witness;
    std::optional<LangExpr> q;
    FinitenessVerdict inside, outside;  // A ∩ Q, A ∩ Qᶜ
    std::uint64_t index_bound = 0;
    std::uint64_t horizon = 0;
    std::uint64_t threshold = kInfiniteEvidence;
    std::size_t pairs_examined = 0;
    /// How witnesses were restricted, for conditional scans.
    std::string route;
};

CohesionVerdict check_cohesive(const LangExpr& a, const Catalog& catalog, std::uint64_t threshold = kInfiniteEvidence);
CohesionVerdict check_cohesive(const LangExpr& a, const FamilyEnum& family, std::uint64_t index_bound,
                               std::uint64_t horizon, std::uint64_t threshold = kInfiniteEvidence);

/// Only witnesses Q with Q ⊆ C certified count, i.e. the scan runs over the
/// dc pairs of F(C)ᶜᶜ that come from F(C).
CohesionVerdict check_ccohesive(const LangExpr& a, const LangExpr& c, const Catalog& catalog,
                                std::uint64_t threshold = kInfiniteEvidence);
CohesionVerdict check_ccohesive(const LangExpr& a, const LangExpr& c, const FamilyEnum& family,
                                std::uint64_t index_bound, std::uint64_t horizon,
                                std::uint64_t threshold = kInfiniteEvidence);

/// Recomputes a refutation from scratch: the dc pair and both sides.
/// Certified when it re-verifies exactly, unknown when only to the horizon.
Verdict verify_refutation(const CohesionVerdict& v, const LangExpr& a, const FamilyEnum& family,
                          std::uint64_t threshold = kInfiniteEvidence);

/// A solvable subproblem with its certificate.
struct SubproblemWitness {
    /// Component of A each part was cut from.
    std::vector<std::size_t> components;
    ClassificationProblem problem;
    PartitionCertificate certificate;
};

struct CoreReport {
    /// Cohesion of set(A).
    CohesionVerdict primary;
    /// Sampled subproblems found solvable (slices A_i ∩ e(j)).
    std::vector<SubproblemWitness> solvable;
    std::size_t subproblems_tried = 0;
    /// Subproblem (A_i ∩ Q, A_j ∩ Qᶜ) induced by the primary witness.
    std::optional<SubproblemWitness> linked;
    bool refuted = false;
    bool exact = false;
    /// An exact solvable subproblem while the primary scan found no split.
    bool contradiction = false;
    std::uint64_t index_bound = 0, horizon = 0;
};

/// Requires a union-closed, nontrivial family and |A| ≥ 2.
CoreReport check_core(const ClassificationProblem& a, const Catalog& catalog, std::size_t subset_samples,
                      std::uint64_t seed = 0);
CoreReport check_core(const ClassificationProblem& a, const FamilyEnum& family, std::uint64_t index_bound,
                      std::uint64_t horizon, std::size_t subset_samples, std::uint64_t seed = 0);

struct CcoreComponent {
    /// (C, (A_i)) search; found refutes.
    SolveResult cclass;
    /// A_i against witnesses inside Cᶜ; refuted refutes.
    CohesionVerdict ccohesive;
    /// From a ccohesive witness Q: (C, (A_i ∩ Q)) solved by (Qᶜ, Q).
    std::optional<PartitionCertificate> linked;
    bool refuted = false;
    bool exact = false;
};

struct CcoreReport {
    std::vector<CcoreComponent> components;
    bool refuted = false;
    bool exact = false;
    std::uint64_t index_bound = 0, horizon = 0;
};

/// Requires a union-closed, nontrivial family.
CcoreReport check_ccore(const ConditionalProblem& p, const Catalog& catalog);
CcoreReport check_ccore(const ConditionalProblem& p, const FamilyEnum& family, std::uint64_t index_bound,
                        std::uint64_t horizon);

json to_json(const CohesionVerdict& v);
json to_json(const CoreReport& r);
json to_json(const CcoreReport& r);

} // namespace cptk
