#pragma once
// N_1(X)_Q as the space of linear relations among ray generators, the Mori cone spanned
// by wall relations, and exact extremality certificates.

#include "torquo/fan.hpp"
#include "torquo/numeric.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace torquo {

/// (gamma . D_x) for every ray x; a relation sum_x c_x x = 0.
struct CurveClass {
    RatVector coeffs;
    friend bool operator==(const CurveClass&, const CurveClass&) = default;
};

/// sum_x a_x D_x.
struct DivisorClass {
    RatVector coeffs;
    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

struct MoriCone {
    /// Wall relations, deduplicated up to positive scaling, in wall order.
    std::vector<CurveClass> wall_classes;
    /// The extremal wall classes: an irredundant generating set of NE(X).
    std::vector<CurveClass> generators;
    std::size_t ambient_dim = 0;
};

struct ExtremalityCertificate {
    DivisorClass nef_divisor;
    /// Indices into MoriCone::generators pairing to zero with the divisor.
    std::vector<std::size_t> zero_set;
};

bool is_relation(const Fan& fan, const CurveClass& gamma);

/// Positive rescaling to a primitive integer vector. Signs are kept: the negative of an
/// effective class is not effective.
CurveClass canonical(const CurveClass& gamma);

bool positively_proportional(const CurveClass& a, const CurveClass& b);

/// Basis of the relation space; its size is rho_X = |G_X| - n.
std::vector<CurveClass> class_space(const Fan& fan);

/// Throws DimensionMismatch when the lengths differ.
Rational pairing(const DivisorClass& d, const CurveClass& gamma);

CurveClass wall_class(const Fan& fan, const Wall& wall);

MoriCone mori_cone(const Fan& fan);

/// True when gamma is a nonnegative combination of the cone's generators.
bool in_cone(const MoriCone& cone, const CurveClass& gamma);

/// A nef divisor vanishing exactly on the ray of gamma, when gamma spans an extremal ray.
/// Throws NotARelation for an invalid class and ClassNotInCone for gamma outside NE(X).
std::optional<ExtremalityCertificate> is_geometric_extremal(const Fan& fan, const MoriCone& cone, const CurveClass& gamma);

/// Exact re-check of a certificate by direct pairing.
bool verify_certificate(const MoriCone& cone, const CurveClass& gamma, const ExtremalityCertificate& cert);

/// gamma lies in the interior of a full-dimensional NE(X): it is a combination of all
/// generators with strictly positive coefficients. Throws ClassNotInCone.
bool is_interior(const Fan& fan, const MoriCone& cone, const CurveClass& gamma);

}  // namespace torquo
