#pragma once
// Covering quasi-unsplit families encoded as strictly positive relations among rays:
// the cone criterion for a flat quotient, its inductive verification through invariant
// divisors, and construction of the quotient fan.

#include "torquo/classes.hpp"
#include "torquo/fan.hpp"
#include "torquo/lattice.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace torquo {

/// m_1 x_1 + ... + m_h x_h = 0 with every m_i > 0 and gcd(m_i) = 1.
struct FamilyRelation {
    RaySet support;
    IntVector coeffs;  // aligned with `support`

    std::size_t h() const { return support.size(); }
    CurveClass as_class(std::size_t num_rays) const;
};

/// Accepts a class whose primitive form is strictly positive on its support, and whose
/// support is a circuit. Throws NotARelation, NotPositive or NotACircuit.
FamilyRelation make_family(const Fan& fan, const CurveClass& gamma);

/// Rays y with D_y . [V] = 0, i.e. the rays outside the support.
std::vector<int> zero_divisors(const Fan& fan, const FamilyRelation& family);

/// A cone tau disjoint from the support for which tau + (support minus x_i) is not a cone.
struct ConditionBViolation {
    RaySet tau;
    int missing_ray = -1;
    RaySet attempted_cone;
};

/// Scans every cone disjoint from the support in lexicographic order (zero cone first) and
/// returns the first violation. The scan restricted to maximal such cones must agree;
/// disagreement throws InternalConsistency.
std::optional<ConditionBViolation> check_condition_b(const Fan& fan, const FamilyRelation& family);

/// The same criterion checked only on maximal cones disjoint from the support.
std::optional<ConditionBViolation> check_condition_b_maximal(const Fan& fan, const FamilyRelation& family);

struct ContractionResult {
    Fan quotient_fan;
    LatticeProjection projection;
    /// Quotient ray for each ray of the source fan, -1 on the support.
    std::vector<int> ray_map;
    /// Quotient max cone (index into quotient_fan.max_cones()) for each source max cone.
    std::vector<std::size_t> cone_map;
    std::size_t fiber_dim = 0;
    long rho_drop = 0;
    /// Strictly convex support function on the quotient, from its validation.
    PLFunction quotient_support_function;
};

/// Quotient fan over N / (N ∩ span(support)). Throws ConditionBFailed when the criterion
/// fails and InternalConsistency when the projected cones are not a valid fan.
ContractionResult build_quotient(const Fan& fan, const FamilyRelation& family);

/// Every max cone holds exactly h-1 support rays and maps onto a quotient max cone;
/// every cone maps onto a quotient cone; every quotient max cone has a preimage.
bool verify_flatness(const Fan& fan, const FamilyRelation& family, const ContractionResult& result);

/// Pullback of the quotient's ample support function: a nef divisor on the source fan.
DivisorClass pullback_ample(const Fan& fan, const ContractionResult& result);

struct InductionNode {
    Fan fan;
    FamilyRelation relation;
    /// Ray of the parent fan whose divisor this node lives on; -1 at the root.
    int via_ray = -1;
    /// Parent ray behind each ray of `fan` (empty at the root).
    std::vector<int> source_ray;
    /// Child relation = lambda * (sum m_i xbar_i) in the quotient lattice.
    Rational lambda = 1;
    bool formable = true;
    bool condition_b = false;
    bool terminal = false;
    std::vector<InductionNode> children;

    std::size_t size() const;
};

using InductionTrace = InductionNode;

/// Restricts the relation to every zero divisor, recursively, down to Picard number one.
/// Throws InductionMismatch if a node's criterion disagrees with its children's.
InductionTrace verify_inductively(const Fan& fan, const FamilyRelation& family);

enum class FamilyStatus {
    Ok,
    NotARelation,
    NotPositive,
    NotACircuit,
    ClassNotInCone,
    ConditionBFailed,
};

const char* family_status_name(FamilyStatus status);

struct FamilyReport {
    FamilyStatus status = FamilyStatus::Ok;
    std::string message;
    long rho = 0;
    bool in_cone = false;
    std::optional<FamilyRelation> family;
    std::vector<int> zero_divisors;
    bool condition_b_checked = false;
    std::optional<ConditionBViolation> violation;
    std::optional<ExtremalityCertificate> certificate;
    std::optional<bool> interior;
    std::optional<ContractionResult> contraction;
    /// The certificate divisor and the pulled-back ample class both vanish exactly on the
    /// wall classes proportional to gamma.
    bool contracted_ray_matches = false;
    std::optional<InductionTrace> trace;
};

/// Throws FanNotValid when the fan is not complete, simplicial and projective.
FamilyReport full_report(const Fan& fan, const CurveClass& gamma, bool with_trace = false);

}  // namespace torquo
