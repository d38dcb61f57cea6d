#include "torquo/lattice.hpp"

#include "torquo/error.hpp"

#include <utility>

namespace torquo {

bool LatticeVector::is_zero() const
{
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool LatticeVector::is_primitive() const { return !is_zero() && content(coords_) == 1; }

LatticeVector operator+(const LatticeVector& a, const LatticeVector& b)
{
    if (a.rank() != b.rank()) throw Error(ErrorCode::DimensionMismatch, "adding lattice vectors of different rank");
    IntVector out(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) out[i] = a[i] + b[i];
    return LatticeVector(std::move(out));
}

LatticeVector operator-(const LatticeVector& a)
{
    IntVector out(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) out[i] = -a[i];
    return LatticeVector(std::move(out));
}

LatticeVector primitivize(const RatVector& v)
{
    if (is_zero(v)) throw Error(ErrorCode::ZeroVector, "cannot primitivize the zero vector");
    return LatticeVector(primitive_integer(v));
}

LatticeVector primitivize(const LatticeVector& v) { return primitivize(v.to_rational()); }

RatMatrix row_reduce(RatMatrix m, std::vector<std::size_t>* pivots)
{
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    if (pivots) *pivots = std::move(piv);
    return m;
}

std::size_t rank(const RatMatrix& m)
{
    std::vector<std::size_t> piv;
    row_reduce(m, &piv);
    return piv.size();
}

std::vector<RatVector> kernel_basis(const RatMatrix& m)
{
    std::vector<std::size_t> piv;
    RatMatrix rref = row_reduce(m, &piv);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : piv) is_pivot[c] = true;

    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVector v(m.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -rref(r, f);
        basis.push_back(to_rational(primitive_integer(v)));
    }
    return basis;
}

Rational determinant(RatMatrix m)
{
    if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

Integer determinant(const std::vector<LatticeVector>& columns)
{
    const std::size_t n = columns.size();
    RatMatrix m(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        if (columns[c].rank() != n) throw Error(ErrorCode::DimensionMismatch, "determinant needs n vectors of rank n");
        for (std::size_t r = 0; r < n; ++r) m(r, c) = Rational(columns[c][r]);
    }
    Rational d = determinant(std::move(m));
    return d.get_num();
}

std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b)
{
    if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length differs from row count");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    std::vector<std::size_t> piv;
    RatMatrix rref = row_reduce(std::move(aug), &piv);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    RatVector x(m.cols());
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = rref(r, m.cols());
    return x;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b)
{
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b)
{
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst += f * row_src
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f)
{
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f)
{
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

Integer truncated_quotient(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer floor_quotient(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input)
{
    const std::size_t m = input.rows();
    const std::size_t n = input.cols();
    SmithForm out{IntMatrix::identity(m), input, IntMatrix::identity(n), 0};
    IntMatrix& d = out.diagonal;

    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            bool found = false;
            std::size_t pi = t, pj = t;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (d(i, j) != 0 && (!found || abs(d(i, j)) < abs(d(pi, pj)))) {
                        found = true;
                        pi = i;
                        pj = j;
                    }
            if (!found) break;
            swap_rows(d, t, pi);
            swap_rows(out.left, t, pi);
            swap_cols(d, t, pj);
            swap_cols(out.right, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                Integer q = truncated_quotient(d(i, t), d(t, t));
                add_row(d, i, t, -q);
                add_row(out.left, i, t, -q);
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                Integer q = truncated_quotient(d(t, j), d(t, t));
                add_col(d, j, t, -q);
                add_col(out.right, j, t, -q);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        add_row(d, t, i, 1);
                        add_row(out.left, t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (d(t, t) == 0) break;
        if (d(t, t) < 0) {
            for (std::size_t j = 0; j < n; ++j) d(t, j) = -d(t, j);
            for (std::size_t j = 0; j < m; ++j) out.left(t, j) = -out.left(t, j);
        }
    }
    out.rank = t;
    return out;
}

IntMatrix hermite_row_form(IntMatrix m)
{
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            while (m(i, c) != 0) {
                Integer q = truncated_quotient(m(r, c), m(i, c));
                add_row(m, r, i, -q);
                swap_rows(m, r, i);
            }
        }
        if (m(r, c) == 0) continue;
        if (m(r, c) < 0)
            for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_quotient(m(i, c), m(r, c));
            if (q != 0) add_row(m, i, r, -q);
        }
        ++r;
    }
    IntMatrix out(r, m.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

LatticeProjection::LatticeProjection(std::size_t source_rank, IntMatrix matrix)
    : source_rank_(source_rank), matrix_(std::move(matrix))
{
    if (matrix_.cols() != source_rank_)
        throw Error(ErrorCode::DimensionMismatch, "projection matrix width differs from source rank");
}

LatticeVector LatticeProjection::apply(const LatticeVector& v) const
{
    if (v.rank() != source_rank_) throw Error(ErrorCode::DimensionMismatch, "projecting a vector of the wrong rank");
    IntVector out(matrix_.rows());
    for (std::size_t r = 0; r < matrix_.rows(); ++r)
        for (std::size_t c = 0; c < source_rank_; ++c) out[r] += matrix_(r, c) * v[c];
    return LatticeVector(std::move(out));
}

RatVector LatticeProjection::apply(const RatVector& v) const
{
    if (v.size() != source_rank_) throw Error(ErrorCode::DimensionMismatch, "projecting a vector of the wrong rank");
    RatVector out(matrix_.rows());
    for (std::size_t r = 0; r < matrix_.rows(); ++r)
        for (std::size_t c = 0; c < source_rank_; ++c) out[r] += Rational(matrix_(r, c)) * v[c];
    return out;
}

LatticeProjection quotient_projection(std::size_t rank, const std::vector<LatticeVector>& generators)
{
    if (generators.empty()) return LatticeProjection(rank, IntMatrix::identity(rank));
    IntMatrix g(rank, generators.size());
    for (std::size_t c = 0; c < generators.size(); ++c) {
        if (generators[c].rank() != rank)
            throw Error(ErrorCode::DimensionMismatch, "generator rank differs from lattice rank");
        for (std::size_t r = 0; r < rank; ++r) g(r, c) = generators[c][r];
    }
    // Rows of `left` past the rank annihilate every generator and form a basis of the
    // integral left kernel, which is saturated; the induced map onto Z^(n-r) is onto.
    SmithForm snf = smith_normal_form(g);
    IntMatrix kernel_rows(rank - snf.rank, rank);
    for (std::size_t i = snf.rank; i < rank; ++i)
        for (std::size_t j = 0; j < rank; ++j) kernel_rows(i - snf.rank, j) = snf.left(i, j);
    return LatticeProjection(rank, hermite_row_form(std::move(kernel_rows)));
}

}  // namespace torquo
