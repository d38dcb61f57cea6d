#include "doctest.h"
#include "oracles.hpp"

#include "torquo/classes.hpp"
#include "torquo/error.hpp"
#include "torquo/gallery.hpp"

#include <random>

using namespace torquo;

namespace {

CurveClass cc(std::initializer_list<long> xs)
{
    CurveClass c;
    for (long x : xs) c.coeffs.emplace_back(x);
    return c;
}

DivisorClass dc(std::initializer_list<long> xs)
{
    DivisorClass d;
    for (long x : xs) d.coeffs.emplace_back(x);
    return d;
}

Fan p1p1() { return product(projective_space(1), projective_space(1)); }

const Wall& wall_on(const std::vector<Wall>& ws, const RaySet& rays)
{
    for (const auto& w : ws)
        if (w.rays == rays) return w;
    FAIL("no such wall");
    return ws.front();
}

}  // namespace

TEST_SUITE("classes")
{
    TEST_CASE("class space")
    {
        auto p2 = class_space(projective_space(2));
        REQUIRE(p2.size() == 1);
        CHECK(p2[0] == cc({1, 1, 1}));
        CHECK(class_space(p1p1()).size() == 2);
        CHECK(class_space(build_Z2().fan).size() == 4);
    }

    TEST_CASE("pairing")
    {
        CHECK(pairing(dc({1, 0, 0}), cc({1, 1, 1})) == 1);
        CHECK(pairing(dc({0, 0, 0}), cc({1, 1, 1})) == 0);
        CHECK(pairing(dc({1, 1, 1}), cc({1, 1, 1})) == 3);
        CHECK_THROWS_AS(pairing(dc({1, 1}), cc({1, 1, 1})), Error);
    }

    TEST_CASE("wall classes")
    {
        for (const auto& w : walls(projective_space(2))) CHECK(wall_class(projective_space(2), w) == cc({1, 1, 1}));

        // product order: rays 0,1 = +-e1, rays 2,3 = +-e2; the wall on e2 separates the cones
        // containing e1 and -e1
        Fan f = p1p1();
        CHECK(wall_class(f, wall_on(walls(f), {2})) == cc({1, 1, 0, 0}));

        Fan bl = star_subdivision(projective_space(2), {0, 1});
        // e1 + e2 - (1,1) = 0 across the exceptional ray
        CHECK(wall_class(bl, wall_on(walls(bl), {3})) == cc({1, 1, 0, -1}));
    }

    TEST_CASE("Mori cones")
    {
        CHECK(mori_cone(projective_space(2)).generators.size() == 1);
        CHECK(mori_cone(p1p1()).generators.size() == 2);
        MoriCone bl = mori_cone(star_subdivision(projective_space(2), {0, 1}));
        CHECK(bl.generators.size() == 2);
        CHECK(bl.wall_classes.size() == 3);
        CHECK(bl.ambient_dim == 2);
    }

    TEST_CASE("canonical form keeps signs")
    {
        CHECK(canonical(CurveClass{{Rational(2, 3), Rational(-4, 3), 0}}) == cc({1, -2, 0}));
        CHECK(canonical(cc({-2, 4})) == cc({-1, 2}));
        CHECK(positively_proportional(cc({1, 1, 0}), cc({3, 3, 0})));
        CHECK(!positively_proportional(cc({1, 1, 0}), cc({-1, -1, 0})));
    }

    TEST_CASE("extremality on P1 x P1")
    {
        Fan f = p1p1();
        MoriCone cone = mori_cone(f);
        auto cert = is_geometric_extremal(f, cone, cc({1, 1, 0, 0}));
        REQUIRE(cert);
        CHECK(verify_certificate(cone, cc({1, 1, 0, 0}), *cert));
        // a divisor vanishing on the ruling and positive on the other: a fibre of the
        // second projection, i.e. proportional to D_e2 (or D_-e2) in Pic
        CHECK(pairing(cert->nef_divisor, cc({1, 1, 0, 0})) == 0);
        CHECK(pairing(cert->nef_divisor, cc({0, 0, 1, 1})) > 0);
        CHECK(pairing(dc({0, 0, 1, 0}), cc({1, 1, 0, 0})) == 0);

        CHECK(!is_geometric_extremal(f, cone, cc({1, 1, 1, 1})));
        CHECK(is_interior(f, cone, cc({1, 1, 1, 1})));
        CHECK(!is_interior(f, cone, cc({1, 1, 0, 0})));
    }

    TEST_CASE("interior and errors")
    {
        Fan p2 = projective_space(2);
        MoriCone cone = mori_cone(p2);
        CHECK(is_interior(p2, cone, cc({1, 1, 1})));
        CHECK_THROWS_AS(is_geometric_extremal(p2, cone, cc({1, 1, 0})), Error);
        try {
            is_geometric_extremal(p2, cone, cc({-1, -1, -1}));
            FAIL("expected ClassNotInCone");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ClassNotInCone);
        }
        CHECK_THROWS_AS(is_interior(p2, cone, cc({-1, -1, -1})), Error);
    }

    TEST_CASE("Z2 line class is interior, not extremal")
    {
        NamedVariety z2 = build_Z2();
        REQUIRE(z2.family_class);
        MoriCone cone = mori_cone(z2.fan);
        CHECK(is_relation(z2.fan, *z2.family_class));
        CHECK(in_cone(cone, *z2.family_class));
        CHECK(!is_geometric_extremal(z2.fan, cone, *z2.family_class));
        CHECK(is_interior(z2.fan, cone, *z2.family_class));
    }

    TEST_CASE("wall classes are relations; rho = rays - rank; P^n degree")
    {
        for (const auto& v : gallery()) {
            CAPTURE(v.name);
            CHECK(static_cast<long>(class_space(v.fan).size()) == v.fan.picard_number());
            for (const auto& w : walls(v.fan)) CHECK(is_relation(v.fan, wall_class(v.fan, w)));
        }
        for (std::size_t n = 1; n <= 5; ++n) {
            Fan p = projective_space(n);
            MoriCone cone = mori_cone(p);
            REQUIRE(cone.generators.size() == 1);
            CHECK(pairing(DivisorClass{RatVector(n + 1, Rational(1))}, cone.generators[0]) == Rational(long(n + 1)));
        }
    }

    TEST_CASE("extremal rays agree with facet enumeration")
    {
        std::mt19937_64 rng(8);
        for (const auto& v : gallery()) {
            if (v.fan.picard_number() > 4) continue;
            CAPTURE(v.name);
            MoriCone cone = mori_cone(v.fan);
            auto coords = oracle::off_cone_coordinates(v.fan);
            std::vector<oracle::QVec> reduced;
            for (const auto& g : cone.wall_classes) reduced.push_back(oracle::reduce(oracle::to_q(g.coeffs), coords));
            auto extremal = oracle::extremal_by_facets(reduced, static_cast<std::size_t>(v.fan.picard_number()));
            for (std::size_t i = 0; i < cone.wall_classes.size(); ++i) {
                auto cert = is_geometric_extremal(v.fan, cone, cone.wall_classes[i]);
                CHECK(cert.has_value() == extremal[i]);
                if (cert) CHECK(verify_certificate(cone, cone.wall_classes[i], *cert));
            }
            // strictly positive combinations of two distinct extremal rays are never extremal
            for (int t = 0; t < 5 && cone.generators.size() > 1; ++t) {
                std::uniform_int_distribution<std::size_t> pick(0, cone.generators.size() - 1);
                std::size_t a = pick(rng), b = pick(rng);
                if (a == b) continue;
                CurveClass sum{cone.generators[a].coeffs};
                for (std::size_t k = 0; k < sum.coeffs.size(); ++k) sum.coeffs[k] += 2 * cone.generators[b].coeffs[k];
                CHECK(!is_geometric_extremal(v.fan, cone, sum));
            }
        }
    }
}
