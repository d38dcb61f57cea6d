#pragma once
// Complete simplicial fans: validation, walls, support functions and fan surgery.

#include "torquo/lattice.hpp"
#include "torquo/numeric.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace torquo {

/// Sorted ray indices spanning a cone of a fan.
using RaySet = std::vector<int>;

class Fan {
public:
    Fan() = default;
    /// Sorts each cone and the cone list. Throws InvalidArgument for out-of-range ray
    /// indices or rays whose length differs from `rank`; everything else is left to
    /// `validate`.
    Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<RaySet> max_cones);

    std::size_t rank() const { return rank_; }
    std::size_t num_rays() const { return rays_.size(); }
    const std::vector<LatticeVector>& rays() const { return rays_; }
    const LatticeVector& ray(int i) const { return rays_.at(static_cast<std::size_t>(i)); }
    const std::vector<RaySet>& max_cones() const { return max_cones_; }

    /// |G_X| - n; the Picard number once the fan is complete and simplicial.
    long picard_number() const { return static_cast<long>(rays_.size()) - static_cast<long>(rank_); }

    /// Every face of every max cone, the zero cone included.
    const std::set<RaySet>& cones() const { return cones_; }
    bool contains_cone(const RaySet& cone) const { return cones_.count(cone) != 0; }
    std::vector<std::size_t> max_cones_containing(const RaySet& cone) const;
    std::vector<LatticeVector> generators(const RaySet& cone) const;

    friend bool operator==(const Fan& a, const Fan& b)
    {
        return a.rank_ == b.rank_ && a.rays_ == b.rays_ && a.max_cones_ == b.max_cones_;
    }

private:
    std::size_t rank_ = 0;
    std::vector<LatticeVector> rays_;
    std::vector<RaySet> max_cones_;
    std::set<RaySet> cones_;
};

/// True when `sub` (sorted) is a subset of `super` (sorted).
bool is_subset(const RaySet& sub, const RaySet& super);
RaySet set_minus(const RaySet& a, const RaySet& b);
RaySet set_union(const RaySet& a, const RaySet& b);

/// A codimension-one cone and the two max cones it separates.
struct Wall {
    RaySet rays;
    std::size_t first = 0;
    std::size_t second = 0;
    int opposite_first = -1;   // ray of `first` not on the wall
    int opposite_second = -1;  // ray of `second` not on the wall
};

/// Piecewise-linear function given by one linear functional per max cone.
struct PLFunction {
    std::vector<RatVector> functionals;
};

struct ValidationReport {
    bool structure_ok = false;
    bool simplicial = false;
    bool complete = false;
    bool faces_ok = false;
    bool smooth = false;
    bool projective = false;
    bool projectivity_checked = false;
    std::string witness;
    std::optional<RatVector> uncovered_point;
    std::optional<PLFunction> support_function;

    bool geometric_ok() const { return structure_ok && simplicial && complete && faces_ok; }
    bool accepted() const { return geometric_ok() && projective; }
};

ValidationReport validate(const Fan& fan, bool check_projectivity = true);

bool is_smooth(const Fan& fan);

/// Strictly convex support function certifying projectivity, if one exists.
std::optional<PLFunction> is_projective(const Fan& fan);

/// Every (n-1)-face with its two cofaces, ordered by ray set. Throws FanNotComplete if
/// some facet of a max cone has a number of cofaces other than two.
std::vector<Wall> walls(const Fan& fan);

/// The relation among the n+1 rays of the two cones adjacent to `wall`, positive on the
/// two opposite rays, zero elsewhere, primitive.
IntVector wall_relation(const Fan& fan, const Wall& wall);

/// psi(x) = -a_x on each ray, extended linearly on every max cone.
PLFunction support_function(const Fan& fan, const RatVector& divisor_coeffs);

/// Continuity across walls and l_sigma(v) > l_sigma'(v) for v in sigma' not in sigma.
bool is_strictly_convex(const Fan& fan, const PLFunction& psi);

/// -K = sum of all invariant divisors is ample.
bool is_fano(const Fan& fan);

// ---------------------------------------------------------------------------
// Fan surgery

struct DivisorFan {
    Fan fan;
    LatticeProjection projection;
    std::vector<int> source_ray;  // ray of the big fan behind each ray of `fan`
};

/// Fan of the invariant divisor D_y in N / Z y.
DivisorFan divisor_fan(const Fan& fan, int y);

/// The rank-0 fan of a point.
Fan point_fan();

Fan product(const Fan& a, const Fan& b);

/// Inserts the ray through the sum of the cone's generators. The new ray is appended.
Fan star_subdivision(const Fan& fan, const RaySet& cone);

/// Circuit exchange: the cones containing `negative_side` are replaced by cones
/// containing the positive side of the circuit. The positive side is located from the
/// star of `negative_side`.
Fan flip(const Fan& fan, const RaySet& negative_side);

}  // namespace torquo
