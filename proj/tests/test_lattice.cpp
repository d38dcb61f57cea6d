#include "doctest.h"
#include "oracles.hpp"

#include "torquo/error.hpp"
#include "torquo/lattice.hpp"
#include "torquo/linear_program.hpp"

#include <random>

using namespace torquo;

namespace {

RatVector rv(std::initializer_list<const char*> xs)
{
    RatVector v;
    for (auto x : xs) v.push_back(parse_rational(x));
    return v;
}

RatMatrix columns(const std::vector<LatticeVector>& vs)
{
    std::vector<RatVector> cols;
    for (const auto& v : vs) cols.push_back(v.to_rational());
    return RatMatrix::from_columns(vs.front().rank(), cols);
}

RatVector mul(const RatMatrix& m, const RatVector& v)
{
    RatVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
    return out;
}

IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int spread)
{
    std::uniform_int_distribution<int> d(-spread, spread);
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = d(rng);
    return m;
}

}  // namespace

TEST_SUITE("lattice")
{
    TEST_CASE("primitivize examples")
    {
        CHECK(primitivize(rv({"2", "4"})) == LatticeVector{1, 2});
        CHECK(primitivize(rv({"1", "0", "0"})) == LatticeVector{1, 0, 0});
        CHECK(primitivize(rv({"-6/4", "9/4"})) == LatticeVector{-2, 3});
        CHECK_THROWS_AS(primitivize(rv({"0", "0"})), Error);
    }

    TEST_CASE("primitivize is idempotent and scale invariant")
    {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> d(-30, 30), pos(1, 40);
        for (int trial = 0; trial < 300; ++trial) {
            RatVector v;
            for (int k = 0; k < 4; ++k) v.push_back(Rational(d(rng), pos(rng)));
            if (is_zero(v)) continue;
            LatticeVector p = primitivize(v);
            CHECK(p.is_primitive());
            CHECK(primitivize(p) == p);
            Rational lambda(pos(rng), pos(rng));
            RatVector scaled;
            for (const auto& q : v) scaled.push_back(q * lambda);
            CHECK(primitivize(scaled) == p);
            // exhaustive gcd check: no integer d > 1 divides every coordinate
            Integer g = 0;
            for (const auto& c : p.coords()) g = gcd(g, c);
            CHECK(g == 1);
        }
    }

    TEST_CASE("kernel basis examples")
    {
        CHECK(kernel_basis(RatMatrix::identity(2)).empty());

        auto p2 = kernel_basis(columns({{1, 0}, {0, 1}, {-1, -1}}));
        REQUIRE(p2.size() == 1);
        CHECK(p2[0] == rv({"1", "1", "1"}));

        auto p1p1 = kernel_basis(columns({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
        REQUIRE(p1p1.size() == 2);
        CHECK(p1p1[0] == rv({"1", "1", "0", "0"}));
        CHECK(p1p1[1] == rv({"0", "0", "1", "1"}));
    }

    TEST_CASE("kernel basis against a Bareiss rank oracle")
    {
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<std::size_t> size(1, 8);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t rows = size(rng), cols = size(rng);
            IntMatrix m = random_int_matrix(rng, rows, cols, trial % 3 == 0 ? 1 : 4);
            // make some rows dependent
            if (rows > 2 && trial % 2 == 0)
                for (std::size_t c = 0; c < cols; ++c) m(rows - 1, c) = m(0, c) * 2 - m(1, c);

            std::vector<std::vector<oracle::Z>> rows_z;
            for (std::size_t r = 0; r < rows; ++r) {
                std::vector<oracle::Z> row;
                for (std::size_t c = 0; c < cols; ++c) row.push_back(m(r, c));
                rows_z.push_back(row);
            }
            const std::size_t r_oracle = oracle::bareiss_rank(rows_z);
            RatMatrix q = to_rational(m);
            CHECK(rank(q) == r_oracle);

            auto basis = kernel_basis(q);
            CHECK(basis.size() == cols - r_oracle);
            for (const auto& k : basis) {
                for (std::size_t r = 0; r < rows; ++r) {
                    Rational s = 0;
                    for (std::size_t c = 0; c < cols; ++c) s += q(r, c) * k[c];
                    CHECK(s == 0);
                }
            }
            // independence of the basis, again via the oracle
            std::vector<std::vector<oracle::Z>> kz;
            for (const auto& k : basis) {
                std::vector<oracle::Z> row;
                for (const auto& x : k) {
                    CHECK(x.get_den() == 1);
                    row.push_back(x.get_num());
                }
                kz.push_back(row);
            }
            CHECK(oracle::bareiss_rank(kz) == basis.size());
        }
    }

    TEST_CASE("determinants")
    {
        CHECK(determinant(std::vector<LatticeVector>{{1, 0}, {0, 1}}) == 1);
        CHECK(determinant(std::vector<LatticeVector>{{0, 1}, {1, 0}}) == -1);
        CHECK(determinant(std::vector<LatticeVector>{{1, 0}, {-1, -2}}) == -2);
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 50; ++trial) {
            IntMatrix m = random_int_matrix(rng, 4, 4, 5);
            oracle::QMat qm(4, oracle::QVec(4));
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c) qm[r][c] = m(r, c);
            CHECK(determinant(to_rational(m)) == oracle::cofactor_det(qm));
        }
    }

    TEST_CASE("smith normal form")
    {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 100; ++trial) {
            std::uniform_int_distribution<std::size_t> size(1, 5);
            IntMatrix a = random_int_matrix(rng, size(rng), size(rng), 6);
            SmithForm s = smith_normal_form(a);
            CHECK(s.left * a * s.right == s.diagonal);
            CHECK(determinant(to_rational(s.left)) * determinant(to_rational(s.left)) == 1);
            CHECK(determinant(to_rational(s.right)) * determinant(to_rational(s.right)) == 1);
            for (std::size_t r = 0; r < s.diagonal.rows(); ++r)
                for (std::size_t c = 0; c < s.diagonal.cols(); ++c)
                    if (r != c) CHECK(s.diagonal(r, c) == 0);
            for (std::size_t i = 0; i + 1 < s.rank; ++i) {
                CHECK(s.diagonal(i, i) > 0);
                CHECK(s.diagonal(i + 1, i + 1) % s.diagonal(i, i) == 0);
            }
            std::vector<std::vector<oracle::Z>> rows;
            for (std::size_t r = 0; r < a.rows(); ++r) {
                std::vector<oracle::Z> row;
                for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
                rows.push_back(row);
            }
            CHECK(s.rank == oracle::bareiss_rank(rows));
        }
    }

    TEST_CASE("quotient projection examples")
    {
        auto p = quotient_projection(2, {{1, 0}});
        CHECK(p.target_rank() == 1);
        CHECK(p.apply(LatticeVector{0, 1}) == LatticeVector{1});
        CHECK(p.apply(LatticeVector{1, 0}) == LatticeVector{0});
        CHECK(p.apply(LatticeVector{3, 5}) == LatticeVector{5});

        auto diag = quotient_projection(2, {{1, 1}, {-1, -1}});
        CHECK(diag.target_rank() == 1);
        LatticeVector a = diag.apply(LatticeVector{1, 0}), b = diag.apply(LatticeVector{0, 1});
        CHECK((a[0] == 1 || a[0] == -1));
        CHECK(b[0] == -a[0]);

        auto sat = quotient_projection(3, {{2, 0, 0}});
        CHECK(sat.target_rank() == 2);
        CHECK(sat.apply(LatticeVector{1, 0, 0}).is_zero());
        CHECK(!sat.apply(LatticeVector{0, 1, 0}).is_zero());

        auto id = quotient_projection(3, {});
        CHECK(id.target_rank() == 3);
        CHECK(id.apply(LatticeVector{1, -2, 3}) == LatticeVector{1, -2, 3});
    }

    TEST_CASE("quotient projection kills generators and is saturated")
    {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 100; ++trial) {
            std::uniform_int_distribution<std::size_t> size(1, 5);
            const std::size_t n = size(rng) + 1;
            const std::size_t k = size(rng) % n;
            std::vector<LatticeVector> gens;
            IntMatrix g = random_int_matrix(rng, k, n, 3);
            for (std::size_t r = 0; r < k; ++r) gens.emplace_back(g.row(r));
            auto p = quotient_projection(n, gens);
            for (const auto& v : gens) CHECK(p.apply(v).is_zero());
            std::size_t span = 0;
            if (k) span = rank(to_rational(g));
            CHECK(p.target_rank() + span == n);
            // surjective onto Z^target: the rows' SNF invariants are all 1
            if (p.target_rank()) {
                SmithForm s = smith_normal_form(p.matrix());
                CHECK(s.rank == p.target_rank());
                for (std::size_t i = 0; i < s.rank; ++i) CHECK(s.diagonal(i, i) == 1);
            }
        }
    }

    TEST_CASE("hermite row form")
    {
        IntMatrix m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
        IntMatrix h = hermite_row_form(m);
        REQUIRE(h.rows() == 3);
        CHECK(h(0, 0) > 0);
        CHECK(h(1, 0) == 0);
        CHECK(h(2, 0) == 0);
        CHECK(h(2, 1) == 0);
        CHECK(determinant(to_rational(h)) == abs(determinant(to_rational(m))));
    }

    TEST_CASE("solve")
    {
        RatMatrix a = RatMatrix::from_rows(2, {rv({"1", "2"}), rv({"3", "4"})});
        auto x = solve(a, rv({"5", "6"}));
        REQUIRE(x);
        CHECK(mul(a, *x) == rv({"5", "6"}));
        RatMatrix singular = RatMatrix::from_rows(2, {rv({"1", "1"}), rv({"2", "2"})});
        CHECK(!solve(singular, rv({"1", "3"})));
    }
}

TEST_SUITE("linear_program")
{
    TEST_CASE("nonnegative solutions")
    {
        RatMatrix a = RatMatrix::from_rows(3, {rv({"1", "1", "1"})});
        auto x = nonnegative_solution(a, rv({"1"}));
        REQUIRE(x);
        for (const auto& q : *x) CHECK(q >= 0);
        CHECK(mul(a, *x) == rv({"1"}));
        CHECK(!nonnegative_solution(a, rv({"-1"})));
    }

    TEST_CASE("mixed systems")
    {
        // x free, y >= 0: x - y = -2, x >= 1  -> y >= 3
        LinearSystem s(2);
        s.set_nonnegative(1);
        s.add_equality(rv({"1", "-1"}), -2);
        s.add_greater_equal(rv({"1", "0"}), 1);
        auto x = s.solve();
        REQUIRE(x);
        CHECK(s.satisfied_by(*x));
        CHECK((*x)[1] >= 3);

        LinearSystem infeasible(1);
        infeasible.add_greater_equal(rv({"1"}), 1);
        infeasible.add_greater_equal(rv({"-1"}), 0);
        CHECK(!infeasible.solve());
    }

    TEST_CASE("random feasibility agrees with a planted point")
    {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<int> d(-5, 5), pos(0, 4);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t rows = 1 + trial % 4, cols = 2 + trial % 5;
            RatMatrix a(rows, cols);
            RatVector planted(cols);
            for (auto& q : planted) q = pos(rng);
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c) a(r, c) = d(rng);
            RatVector b = mul(a, planted);
            auto x = nonnegative_solution(a, b);
            REQUIRE(x);
            CHECK(mul(a, *x) == b);
            for (const auto& q : *x) CHECK(q >= 0);
        }
    }
}
