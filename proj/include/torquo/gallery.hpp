#pragma once
// Named toric varieties: the desk-scale corpus and the Z2 fourfold built by two blow-ups
// of P2 x P2 followed by a flip.

#include "torquo/classes.hpp"
#include "torquo/fan.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace torquo {

struct ExpectedProperties {
    bool smooth = true;
    std::optional<bool> fano;  // nullopt: not asserted
    long rho = 0;
    std::size_t dim = 0;
};

struct NamedVariety {
    std::string name;
    std::string description;
    Fan fan;
    ExpectedProperties expected;
    /// Class of a distinguished covering family, when the construction defines one.
    std::optional<CurveClass> family_class;
};

Fan projective_space(std::size_t n);

/// Rays (1,0), (0,1), (-1,a), (0,-1).
Fan hirzebruch(long a);

/// Checks a variety against its expected properties; throws FanNotValid naming the
/// first mismatch.
void verify_expected(const NamedVariety& v);

/// P2 x P2, blown up along the invariant curves R_x and R_y, then flipped along the
/// strict transform of L'. Every stage is checked; failures throw naming the stage.
NamedVariety build_Z2();

/// Deterministic corpus of validated fans with rank <= max_dim and at most max_rays rays.
std::vector<NamedVariety> enumerate_test_fans(std::size_t max_dim = 3, std::size_t max_rays = 8);

/// The corpus plus P2 x P2 and Z2.
std::vector<NamedVariety> gallery();

std::optional<NamedVariety> find_variety(const std::string& name);

/// Iterated star subdivisions of random cones (dimension >= 2) starting from `base`.
Fan random_subdivision(const Fan& base, std::size_t steps, std::uint64_t seed);

}  // namespace torquo
