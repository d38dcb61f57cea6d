#include "torquo/linear_program.hpp"

#include "torquo/error.hpp"

namespace torquo {

std::optional<RatVector> nonnegative_solution(const RatMatrix& a, const RatVector& b)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m) throw Error(ErrorCode::DimensionMismatch, "right-hand side length differs from row count");

    // Columns: n structural, m artificial, then the right-hand side. Row m holds the
    // reduced costs of the phase-one objective (sum of artificials).
    const std::size_t width = n + m + 1;
    const std::size_t rhs = n + m;
    RatMatrix t(m + 1, width);
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) t(i, j) = flip ? -a(i, j) : a(i, j);
        t(i, n + i) = 1;
        t(i, rhs) = flip ? -b[i] : b[i];
        basis[i] = n + i;
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) t(m, j) -= t(i, j);
    for (std::size_t i = 0; i < m; ++i) t(m, rhs) -= t(i, rhs);

    while (true) {
        std::size_t enter = width;
        for (std::size_t j = 0; j < rhs; ++j)
            if (t(m, j) < 0) {
                enter = j;
                break;
            }
        if (enter == width) break;

        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t(i, enter) <= 0) continue;
            Rational ratio = t(i, rhs) / t(i, enter);
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        // Phase one is bounded below by zero, so an entering column always has a pivot.
        if (leave == m) throw Error(ErrorCode::InternalConsistency, "unbounded phase-one simplex");

        Rational inv = 1 / t(leave, enter);
        for (std::size_t j = 0; j < width; ++j) t(leave, j) *= inv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave || t(i, enter) == 0) continue;
            Rational f = t(i, enter);
            for (std::size_t j = 0; j < width; ++j)
                if (t(leave, j) != 0) t(i, j) -= f * t(leave, j);
        }
        basis[leave] = enter;
    }

    if (t(m, rhs) != 0) return std::nullopt;
    RatVector x(n);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t(i, rhs);
    return x;
}

void LinearSystem::add_equality(RatVector coeffs, Rational rhs)
{
    if (coeffs.size() != num_vars_) throw Error(ErrorCode::DimensionMismatch, "constraint length differs from variable count");
    rows_.push_back({std::move(coeffs), std::move(rhs), true});
}

void LinearSystem::add_greater_equal(RatVector coeffs, Rational rhs)
{
    if (coeffs.size() != num_vars_) throw Error(ErrorCode::DimensionMismatch, "constraint length differs from variable count");
    rows_.push_back({std::move(coeffs), std::move(rhs), false});
}

std::optional<RatVector> LinearSystem::solve() const
{
    // Free variables split as x = x+ - x-; each inequality gets a surplus column.
    std::vector<std::size_t> column_of(num_vars_);
    std::size_t cols = 0;
    for (std::size_t v = 0; v < num_vars_; ++v) {
        column_of[v] = cols;
        cols += nonnegative_[v] ? 1 : 2;
    }
    const std::size_t structural = cols;
    for (const auto& row : rows_)
        if (!row.equality) ++cols;

    RatMatrix a(rows_.size(), cols);
    RatVector b(rows_.size());
    std::size_t surplus = structural;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& row = rows_[i];
        for (std::size_t v = 0; v < num_vars_; ++v) {
            if (row.coeffs[v] == 0) continue;
            a(i, column_of[v]) = row.coeffs[v];
            if (!nonnegative_[v]) a(i, column_of[v] + 1) = -row.coeffs[v];
        }
        if (!row.equality) a(i, surplus++) = -1;
        b[i] = row.rhs;
    }

    auto y = nonnegative_solution(a, b);
    if (!y) return std::nullopt;
    RatVector x(num_vars_);
    for (std::size_t v = 0; v < num_vars_; ++v) {
        x[v] = (*y)[column_of[v]];
        if (!nonnegative_[v]) x[v] -= (*y)[column_of[v] + 1];
    }
    if (!satisfied_by(x)) throw Error(ErrorCode::InternalConsistency, "simplex returned a point violating the system");
    return x;
}

bool LinearSystem::satisfied_by(const RatVector& x) const
{
    if (x.size() != num_vars_) return false;
    for (std::size_t v = 0; v < num_vars_; ++v)
        if (nonnegative_[v] && x[v] < 0) return false;
    for (const auto& row : rows_) {
        Rational lhs = dot(row.coeffs, x);
        if (row.equality ? lhs != row.rhs : lhs < row.rhs) return false;
    }
    return true;
}

}  // namespace torquo
