#pragma once
// Integer lattices, exact linear algebra over Q, and saturated quotient lattices.

#include "torquo/numeric.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace torquo {

/// An element of N = Z^n.
class LatticeVector {
public:
    LatticeVector() = default;
    explicit LatticeVector(IntVector coords) : coords_(std::move(coords)) {}
    LatticeVector(std::initializer_list<long> coords)
    {
        coords_.reserve(coords.size());
        for (long c : coords) coords_.emplace_back(c);
    }

    std::size_t rank() const { return coords_.size(); }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }
    const IntVector& coords() const { return coords_; }
    RatVector to_rational() const { return torquo::to_rational(coords_); }

    bool is_zero() const;
    /// Nonzero with coordinate gcd 1.
    bool is_primitive() const;

    friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.coords_ == b.coords_; }
    friend bool operator<(const LatticeVector& a, const LatticeVector& b) { return a.coords_ < b.coords_; }

private:
    IntVector coords_;
};

LatticeVector operator+(const LatticeVector& a, const LatticeVector& b);
LatticeVector operator-(const LatticeVector& a);

/// Unique primitive lattice vector on the ray R>=0 * v. Throws ZeroVector for v = 0.
LatticeVector primitivize(const RatVector& v);
LatticeVector primitivize(const LatticeVector& v);

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
RatMatrix row_reduce(RatMatrix m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const RatMatrix& m);

/// Basis of ker(m), one vector per free column of the reduced echelon form, each scaled
/// to a primitive integer vector that is positive at its free column.
std::vector<RatVector> kernel_basis(const RatMatrix& m);

Rational determinant(RatMatrix m);

/// Determinant of the square matrix whose columns are `columns`.
Integer determinant(const std::vector<LatticeVector>& columns);

/// Some solution x of m x = b, if one exists.
std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b);

/// left * input * right = diagonal, with left/right unimodular and the diagonal entries
/// d_1 | d_2 | ... nonnegative.
struct SmithForm {
    IntMatrix left;
    IntMatrix diagonal;
    IntMatrix right;
    std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& input);

/// Row-style Hermite normal form: echelon, positive pivots, entries above a pivot reduced
/// into [0, pivot). Zero rows are dropped.
IntMatrix hermite_row_form(IntMatrix m);

/// Surjection N -> N / (N ∩ span_Q(S)) written in a fixed basis of the (torsion-free) target.
class LatticeProjection {
public:
    LatticeProjection() = default;
    LatticeProjection(std::size_t source_rank, IntMatrix matrix);

    std::size_t source_rank() const { return source_rank_; }
    std::size_t target_rank() const { return matrix_.rows(); }
    const IntMatrix& matrix() const { return matrix_; }

    LatticeVector apply(const LatticeVector& v) const;
    RatVector apply(const RatVector& v) const;

private:
    std::size_t source_rank_ = 0;
    IntMatrix matrix_;
};

LatticeProjection quotient_projection(std::size_t rank, const std::vector<LatticeVector>& generators);

}  // namespace torquo
