#pragma once
// Exact rational feasibility via a phase-one simplex with Bland's rule.

#include "torquo/numeric.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace torquo {

/// Point x >= 0 with a x = b, or nullopt when the system is infeasible.
std::optional<RatVector> nonnegative_solution(const RatMatrix& a, const RatVector& b);

/// Builder for small mixed systems: free or sign-constrained variables, equalities and
/// inequalities of the form coeffs . x >= rhs.
class LinearSystem {
public:
    explicit LinearSystem(std::size_t num_vars) : num_vars_(num_vars), nonnegative_(num_vars, false) {}

    std::size_t num_vars() const { return num_vars_; }
    void set_nonnegative(std::size_t var) { nonnegative_.at(var) = true; }
    void add_equality(RatVector coeffs, Rational rhs);
    void add_greater_equal(RatVector coeffs, Rational rhs);

    std::optional<RatVector> solve() const;

    /// Exact check of a candidate against every constraint.
    bool satisfied_by(const RatVector& x) const;

private:
    struct Row {
        RatVector coeffs;
        Rational rhs;
        bool equality;
    };
    std::size_t num_vars_;
    std::vector<bool> nonnegative_;
    std::vector<Row> rows_;
};

}  // namespace torquo
