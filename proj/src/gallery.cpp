#include "torquo/gallery.hpp"

#include "torquo/error.hpp"

#include <random>

namespace torquo {

namespace {

std::vector<RaySet> subsets_of_size(int universe, std::size_t k)
{
    std::vector<RaySet> out;
    RaySet current;
    auto rec = [&](auto&& self, int start) -> void {
        if (current.size() == k) {
            out.push_back(current);
            return;
        }
        for (int i = start; i < universe; ++i) {
            current.push_back(i);
            self(self, i + 1);
            current.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Fan of a weighted projective space from explicit rays whose n-subsets are the cones.
Fan simplex_fan(std::size_t rank, std::vector<LatticeVector> rays)
{
    const int count = static_cast<int>(rays.size());
    return Fan(rank, std::move(rays), subsets_of_size(count, rank));
}

NamedVariety named(std::string name, std::string description, Fan fan, bool smooth, std::optional<bool> fano)
{
    NamedVariety v{std::move(name), std::move(description), std::move(fan), {}, std::nullopt};
    v.expected = {smooth, fano, v.fan.picard_number(), v.fan.rank()};
    return v;
}

Fan stage(const std::string& name, Fan fan)
{
    auto report = validate(fan);
    if (!report.accepted()) throw Error(ErrorCode::FanNotValid, name + ": " + report.witness);
    return fan;
}

}  // namespace

Fan projective_space(std::size_t n)
{
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "projective space needs n >= 1");
    std::vector<LatticeVector> rays;
    IntVector last(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n, 0);
        e[i] = 1;
        rays.emplace_back(std::move(e));
    }
    rays.emplace_back(std::move(last));
    return simplex_fan(n, std::move(rays));
}

Fan hirzebruch(long a)
{
    return Fan(2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

void verify_expected(const NamedVariety& v)
{
    auto fail = [&](const std::string& what) { throw Error(ErrorCode::FanNotValid, v.name + ": " + what); };
    auto report = validate(v.fan);
    if (!report.accepted()) fail(report.witness);
    if (report.smooth != v.expected.smooth) fail(v.expected.smooth ? "expected smooth" : "expected singular");
    if (v.fan.picard_number() != v.expected.rho) fail("Picard number " + std::to_string(v.fan.picard_number()));
    if (v.fan.rank() != v.expected.dim) fail("dimension " + std::to_string(v.fan.rank()));
    if (v.expected.fano && is_fano(v.fan) != *v.expected.fano) fail(*v.expected.fano ? "expected Fano" : "expected non-Fano");
    if (v.family_class && !is_relation(v.fan, *v.family_class)) fail("family class is not a relation");
}

NamedVariety build_Z2()
{
    // u0 u1 u2 | v0 v1 v2 ; x = V(v0,v1), y = V(v0,v2), L = V(v0), z = V(u0,u1).
    Fan p2p2 = stage("P2 x P2", product(projective_space(2), projective_space(2)));

    // R_x = V(u0) x {x}, R_y = V(u1) x {y}; both are invariant curves.
    const RaySet r_x{0, 3, 4};
    const RaySet r_y{1, 3, 5};
    Fan w1 = stage("blow-up of R_x", star_subdivision(p2p2, r_x));
    Fan w = stage("blow-up of R_y", star_subdivision(w1, r_y));

    // The strict transform of L' = {z} x L is the wall whose relation reads
    // a + b - w1 - w2 - w3 = 0: normal bundle O(-1)^3.
    std::vector<Wall> candidates;
    for (const auto& wall : walls(w)) {
        IntVector rel = wall_relation(w, wall);
        std::size_t plus = 0, minus = 0, other = 0;
        for (const auto& c : rel) {
            if (c == 1) ++plus;
            else if (c == -1) ++minus;
            else if (c != 0) ++other;
        }
        if (plus == 2 && minus == 3 && other == 0) candidates.push_back(wall);
    }
    if (candidates.size() != 1)
        throw Error(ErrorCode::WrongLocalStructure,
                    "flip stage: " + std::to_string(candidates.size()) + " curves with normal bundle O(-1)^3");
    if (candidates.front().rays != RaySet{0, 1, 3})
        throw Error(ErrorCode::WrongLocalStructure, "flip stage: the O(-1)^3 curve is not the strict transform of L'");
    Fan x = stage("flip of L'", flip(w, candidates.front().rays));

    NamedVariety z2 = named("Z2", "P2 x P2 blown up along R_x and R_y, then flipped along L'", std::move(x), true, true);
    // A general line in a fiber of the second projection misses every centre; it meets
    // each D_u once and no other invariant divisor.
    RatVector line(z2.fan.num_rays());
    line[0] = line[1] = line[2] = 1;
    z2.family_class = CurveClass{line};
    if (z2.fan.num_rays() != 8 || z2.expected.rho != 4)
        throw Error(ErrorCode::FanNotValid, "Z2: expected 8 rays and Picard number 4");
    verify_expected(z2);
    return z2;
}

std::vector<NamedVariety> enumerate_test_fans(std::size_t max_dim, std::size_t max_rays)
{
    const Fan p1 = projective_space(1);
    const Fan p2 = projective_space(2);
    const Fan p3 = projective_space(3);
    const Fan p1p2 = product(p1, p2);
    const Fan bl1 = star_subdivision(p2, {0, 1});
    const Fan bl2 = star_subdivision(bl1, {1, 2});
    const Fan blpt_p3 = star_subdivision(p3, {0, 1, 2});
    const Fan bl2pt_p3 = star_subdivision(blpt_p3, {1, 2, 3});

    std::vector<NamedVariety> all;
    all.push_back(named("P1", "projective line", p1, true, true));
    all.push_back(named("P2", "projective plane", p2, true, true));
    all.push_back(named("P3", "projective space of dimension 3", p3, true, true));
    all.push_back(named("P1xP1", "product of two lines", product(p1, p1), true, true));
    all.push_back(named("F0", "Hirzebruch surface a=0", hirzebruch(0), true, true));
    all.push_back(named("F1", "Hirzebruch surface a=1", hirzebruch(1), true, true));
    all.push_back(named("F2", "Hirzebruch surface a=2", hirzebruch(2), true, false));
    all.push_back(named("Bl1P2", "P2 blown up at one fixed point", bl1, true, true));
    all.push_back(named("Bl2P2", "P2 blown up at two fixed points", bl2, true, true));
    all.push_back(named("Bl3P2", "P2 blown up at three fixed points", star_subdivision(bl2, {0, 2}), true, true));
    all.push_back(named("P(1,1,2)", "weighted projective plane", simplex_fan(2, {{1, 0}, {0, 1}, {-1, -2}}), false, true));
    all.push_back(named("P(1,2,3)", "weighted projective plane", simplex_fan(2, {{-2, -3}, {1, 0}, {0, 1}}), false, true));
    all.push_back(named("P1xP2", "product of a line and a plane", p1p2, true, true));
    all.push_back(named("P2xP1", "product of a plane and a line", product(p2, p1), true, true));
    all.push_back(named("P1xP1xP1", "product of three lines", product(p1, product(p1, p1)), true, true));
    all.push_back(named("Blpt(P1xP2)", "P1 x P2 blown up at a fixed point", star_subdivision(p1p2, {0, 2, 3}), true,
                        std::nullopt));
    all.push_back(named("Blline(P1xP2)", "P1 x P2 blown up along P1 x {point}", star_subdivision(p1p2, {2, 3}),
                        true, std::nullopt));
    all.push_back(named("Blline(P2xP1)", "P2 x P1 blown up along an invariant line in a fiber",
                        star_subdivision(product(p2, p1), {0, 3}), true, std::nullopt));
    all.push_back(named("P(1,1,1,3)", "weighted projective space",
                        simplex_fan(3, {{1, 0, 0}, {0, 1, 0}, {-1, -1, -3}, {0, 0, 1}}), false, std::nullopt));
    all.push_back(named("BlptP3", "P3 blown up at a fixed point", blpt_p3, true, true));
    all.push_back(named("BllineP3", "P3 blown up along a fixed line", star_subdivision(p3, {0, 1}), true, true));
    all.push_back(named("Bl2ptP3", "P3 blown up at two fixed points", bl2pt_p3, true, std::nullopt));
    all.push_back(named("Bl3ptP3", "P3 blown up at three fixed points", star_subdivision(bl2pt_p3, {0, 2, 3}), true,
                        std::nullopt));
    all.push_back(named("BlptP3-line", "P3 blown up at a point, then along an invariant line of the exceptional divisor",
                        star_subdivision(blpt_p3, {0, 4}), true, std::nullopt));
    all.push_back(named("BlptP3-line-pt", "previous variety blown up at a further fixed point",
                        star_subdivision(star_subdivision(blpt_p3, {0, 4}), {1, 2, 3}), true, std::nullopt));

    std::vector<NamedVariety> out;
    for (auto& v : all) {
        if (v.fan.rank() > max_dim || v.fan.num_rays() > max_rays) continue;
        verify_expected(v);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<NamedVariety> gallery()
{
    auto out = enumerate_test_fans();
    NamedVariety p2p2 = named("P2xP2", "product of two planes", product(projective_space(2), projective_space(2)), true, true);
    RatVector line(6);
    line[0] = line[1] = line[2] = 1;
    p2p2.family_class = CurveClass{line};
    verify_expected(p2p2);
    out.push_back(std::move(p2p2));
    out.push_back(build_Z2());
    return out;
}

std::optional<NamedVariety> find_variety(const std::string& name)
{
    for (auto& v : gallery())
        if (v.name == name) return v;
    return std::nullopt;
}

Fan random_subdivision(const Fan& base, std::size_t steps, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    Fan fan = base;
    for (std::size_t s = 0; s < steps; ++s) {
        std::vector<RaySet> choices;
        for (const auto& c : fan.cones())
            if (c.size() >= 2) choices.push_back(c);
        if (choices.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
        fan = star_subdivision(fan, choices[pick(rng)]);
    }
    return fan;
}

}  // namespace torquo
