#include "torquo/fan.hpp"

#include "torquo/error.hpp"
#include "torquo/linear_program.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace torquo {

Fan::Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<RaySet> max_cones)
    : rank_(rank), rays_(std::move(rays)), max_cones_(std::move(max_cones))
{
    for (std::size_t i = 0; i < rays_.size(); ++i)
        if (rays_[i].rank() != rank_) {
            std::ostringstream msg;
            msg << "ray " << i << " has " << rays_[i].rank() << " coordinates, expected " << rank_;
            throw Error(ErrorCode::InvalidArgument, msg.str());
        }
    for (std::size_t k = 0; k < max_cones_.size(); ++k) {
        auto& cone = max_cones_[k];
        for (int r : cone)
            if (r < 0 || static_cast<std::size_t>(r) >= rays_.size()) {
                std::ostringstream msg;
                msg << "max cone " << k << " refers to ray " << r << " but there are " << rays_.size() << " rays";
                throw Error(ErrorCode::InvalidArgument, msg.str());
            }
        std::sort(cone.begin(), cone.end());
    }
    std::sort(max_cones_.begin(), max_cones_.end());

    for (const auto& cone : max_cones_) {
        if (cone.size() > 20) throw Error(ErrorCode::InvalidArgument, "cone with more than 20 rays");
        const std::size_t faces = std::size_t{1} << cone.size();
        for (std::size_t mask = 0; mask < faces; ++mask) {
            RaySet face;
            for (std::size_t i = 0; i < cone.size(); ++i)
                if (mask & (std::size_t{1} << i)) face.push_back(cone[i]);
            cones_.insert(std::move(face));
        }
    }
}

std::vector<std::size_t> Fan::max_cones_containing(const RaySet& cone) const
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < max_cones_.size(); ++k)
        if (is_subset(cone, max_cones_[k])) out.push_back(k);
    return out;
}

std::vector<LatticeVector> Fan::generators(const RaySet& cone) const
{
    std::vector<LatticeVector> out;
    out.reserve(cone.size());
    for (int r : cone) out.push_back(ray(r));
    return out;
}

bool is_subset(const RaySet& sub, const RaySet& super) { return std::includes(super.begin(), super.end(), sub.begin(), sub.end()); }

RaySet set_minus(const RaySet& a, const RaySet& b)
{
    RaySet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

RaySet set_union(const RaySet& a, const RaySet& b)
{
    RaySet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

namespace {

RatMatrix generator_columns(const Fan& fan, const RaySet& cone)
{
    RatMatrix m(fan.rank(), cone.size());
    for (std::size_t c = 0; c < cone.size(); ++c)
        for (std::size_t r = 0; r < fan.rank(); ++r) m(r, c) = Rational(fan.ray(cone[c])[r]);
    return m;
}

RatMatrix generator_rows(const Fan& fan, const RaySet& cone)
{
    RatMatrix m(cone.size(), fan.rank());
    for (std::size_t r = 0; r < cone.size(); ++r)
        for (std::size_t c = 0; c < fan.rank(); ++c) m(r, c) = Rational(fan.ray(cone[r])[c]);
    return m;
}

bool independent(const Fan& fan, const RaySet& cone) { return rank(generator_columns(fan, cone)) == cone.size(); }

std::string describe(const RaySet& cone)
{
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < cone.size(); ++i) out << (i ? "," : "") << cone[i];
    out << "}";
    return out.str();
}

// True when the two simplicial cones meet exactly along the cone over their common rays.
bool meet_in_common_face(const Fan& fan, const RaySet& a, const RaySet& b)
{
    RaySet common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    LinearSystem sep(fan.rank());
    for (int r : common) sep.add_equality(fan.ray(r).to_rational(), 0);
    for (int r : set_minus(a, common)) sep.add_greater_equal(fan.ray(r).to_rational(), 1);
    for (int r : set_minus(b, common)) {
        RatVector v = fan.ray(r).to_rational();
        for (auto& q : v) q = -q;
        sep.add_greater_equal(std::move(v), 1);
    }
    return sep.solve().has_value();
}

bool in_cone(const Fan& fan, const RaySet& cone, const RatVector& p)
{
    return nonnegative_solution(generator_columns(fan, cone), p).has_value();
}

// A point just across an unpaired facet that no max cone covers, if one is found.
std::optional<RatVector> uncovered_point_near(const Fan& fan, const RaySet& facet, int opposite)
{
    RatVector centre(fan.rank());
    for (int r : facet)
        for (std::size_t i = 0; i < fan.rank(); ++i) centre[i] += Rational(fan.ray(r)[i]);
    for (long k = 1; k <= 1024; k *= 2) {
        RatVector p = centre;
        for (std::size_t i = 0; i < fan.rank(); ++i) p[i] -= Rational(fan.ray(opposite)[i]) / k;
        bool covered = false;
        for (const auto& cone : fan.max_cones())
            if (in_cone(fan, cone, p)) {
                covered = true;
                break;
            }
        if (!covered) return to_rational(primitive_integer(p));
    }
    return std::nullopt;
}

struct FacetIncidence {
    std::size_t cone;
    int opposite;
};

std::map<RaySet, std::vector<FacetIncidence>> facet_incidences(const Fan& fan)
{
    std::map<RaySet, std::vector<FacetIncidence>> out;
    for (std::size_t k = 0; k < fan.max_cones().size(); ++k) {
        const auto& cone = fan.max_cones()[k];
        for (std::size_t i = 0; i < cone.size(); ++i) {
            RaySet facet = cone;
            facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(i));
            out[facet].push_back({k, cone[i]});
        }
    }
    return out;
}

}  // namespace

ValidationReport validate(const Fan& fan, bool check_projectivity)
{
    ValidationReport report;
    const std::size_t n = fan.rank();
    auto fail = [&](const std::string& why) {
        if (report.witness.empty()) report.witness = why;
        return report;
    };

    // Structure.
    for (std::size_t i = 0; i < fan.num_rays(); ++i) {
        if (!fan.rays()[i].is_primitive()) return fail("ray index " + std::to_string(i) + " is not primitive");
        for (std::size_t j = 0; j < i; ++j)
            if (fan.rays()[j] == fan.rays()[i]) return fail("duplicate ray index " + std::to_string(i));
    }
    if (fan.max_cones().empty()) return fail("fan has no max cones");
    std::vector<bool> used(fan.num_rays(), false);
    for (std::size_t k = 0; k < fan.max_cones().size(); ++k) {
        const auto& cone = fan.max_cones()[k];
        if (std::adjacent_find(cone.begin(), cone.end()) != cone.end())
            return fail("max cone " + describe(cone) + " repeats a ray");
        if (k > 0 && fan.max_cones()[k - 1] == cone) return fail("duplicate max cone " + describe(cone));
        for (int r : cone) used[static_cast<std::size_t>(r)] = true;
    }
    for (std::size_t i = 0; i < fan.num_rays(); ++i)
        if (!used[i]) return fail("ray index " + std::to_string(i) + " lies in no max cone");
    for (std::size_t a = 0; a < fan.max_cones().size(); ++a)
        for (std::size_t b = 0; b < fan.max_cones().size(); ++b)
            if (a != b && is_subset(fan.max_cones()[a], fan.max_cones()[b]))
                return fail("max cone " + describe(fan.max_cones()[a]) + " is a face of " + describe(fan.max_cones()[b]));
    report.structure_ok = true;

    // Simplicial.
    for (const auto& cone : fan.max_cones())
        if (!independent(fan, cone)) return fail("max cone " + describe(cone) + " is not simplicial");
    report.simplicial = true;

    // Faces: pairwise separation of max cones.
    const auto& mc = fan.max_cones();
    bool faces_ok = true;
    for (std::size_t a = 0; a < mc.size() && faces_ok; ++a)
        for (std::size_t b = a + 1; b < mc.size(); ++b)
            if (!meet_in_common_face(fan, mc[a], mc[b])) {
                fail("max cones " + describe(mc[a]) + " and " + describe(mc[b]) + " intersect outside a common face");
                faces_ok = false;
                break;
            }
    report.faces_ok = faces_ok;

    // Completeness: pure dimension n, every facet on exactly two max cones, the two
    // opposite rays on opposite sides of each wall, and a connected dual graph.
    bool complete = true;
    for (const auto& cone : mc)
        if (cone.size() != n) {
            fail("max cone " + describe(cone) + " has dimension " + std::to_string(cone.size()) + ", expected " +
                 std::to_string(n));
            complete = false;
            break;
        }
    if (complete) {
        auto incidences = facet_incidences(fan);
        for (const auto& [facet, cofaces] : incidences) {
            if (cofaces.size() == 2) continue;
            complete = false;
            if (cofaces.size() == 1) {
                report.uncovered_point = uncovered_point_near(fan, facet, cofaces[0].opposite);
                fail("facet " + describe(facet) + " of max cone " + describe(mc[cofaces[0].cone]) +
                     " lies on no other max cone");
            } else {
                fail("facet " + describe(facet) + " lies on " + std::to_string(cofaces.size()) + " max cones");
            }
            break;
        }
        if (complete) {
            for (const auto& [facet, cofaces] : incidences) {
                auto normals = kernel_basis(generator_rows(fan, facet));
                if (normals.size() != 1) continue;  // only possible when not simplicial
                Rational s1 = dot(normals[0], fan.ray(cofaces[0].opposite).to_rational());
                Rational s2 = dot(normals[0], fan.ray(cofaces[1].opposite).to_rational());
                if (sgn(s1) * sgn(s2) >= 0) {
                    complete = false;
                    fail("the two max cones on facet " + describe(facet) + " lie on the same side of it");
                    break;
                }
            }
        }
        if (complete && !mc.empty()) {
            std::vector<std::vector<std::size_t>> adj(mc.size());
            for (const auto& [facet, cofaces] : incidences) {
                adj[cofaces[0].cone].push_back(cofaces[1].cone);
                adj[cofaces[1].cone].push_back(cofaces[0].cone);
            }
            std::vector<bool> seen(mc.size(), false);
            std::queue<std::size_t> todo;
            todo.push(0);
            seen[0] = true;
            while (!todo.empty()) {
                auto k = todo.front();
                todo.pop();
                for (auto j : adj[k])
                    if (!seen[j]) {
                        seen[j] = true;
                        todo.push(j);
                    }
            }
            for (std::size_t k = 0; k < mc.size(); ++k)
                if (!seen[k]) {
                    complete = false;
                    fail("max cone " + describe(mc[k]) + " is not connected to " + describe(mc[0]) + " through walls");
                    break;
                }
        }
    }
    report.complete = complete;
    report.smooth = report.simplicial && is_smooth(fan);

    if (check_projectivity && report.geometric_ok()) {
        report.projectivity_checked = true;
        report.support_function = is_projective(fan);
        report.projective = report.support_function.has_value();
        if (!report.projective) fail("no strictly convex support function exists");
    }
    return report;
}

bool is_smooth(const Fan& fan)
{
    for (const auto& cone : fan.max_cones()) {
        if (cone.size() != fan.rank()) return false;
        if (abs(determinant(fan.generators(cone))) != 1) return false;
    }
    return true;
}

std::vector<Wall> walls(const Fan& fan)
{
    std::vector<Wall> out;
    for (const auto& [facet, cofaces] : facet_incidences(fan)) {
        if (cofaces.size() != 2)
            throw Error(ErrorCode::FanNotComplete,
                        "facet " + describe(facet) + " lies on " + std::to_string(cofaces.size()) + " max cones");
        out.push_back({facet, cofaces[0].cone, cofaces[1].cone, cofaces[0].opposite, cofaces[1].opposite});
    }
    return out;
}

IntVector wall_relation(const Fan& fan, const Wall& wall)
{
    RaySet support = wall.rays;
    support.push_back(wall.opposite_first);
    support.push_back(wall.opposite_second);
    auto kernel = kernel_basis(generator_columns(fan, support));
    if (kernel.size() != 1)
        throw Error(ErrorCode::FanNotValid, "wall " + describe(wall.rays) + " does not carry a unique relation");
    RatVector k = kernel[0];
    const std::size_t a = support.size() - 2;
    const std::size_t b = support.size() - 1;
    if (k[a] < 0)
        for (auto& q : k) q = -q;
    if (k[a] <= 0 || k[b] <= 0)
        throw Error(ErrorCode::FanNotValid, "cones adjacent to wall " + describe(wall.rays) + " overlap");
    RatVector full(fan.num_rays());
    for (std::size_t i = 0; i < support.size(); ++i) full[static_cast<std::size_t>(support[i])] = k[i];
    return primitive_integer(full);
}

PLFunction support_function(const Fan& fan, const RatVector& divisor_coeffs)
{
    if (divisor_coeffs.size() != fan.num_rays())
        throw Error(ErrorCode::DimensionMismatch, "divisor has " + std::to_string(divisor_coeffs.size()) +
                                                      " coefficients, fan has " + std::to_string(fan.num_rays()) + " rays");
    PLFunction psi;
    for (const auto& cone : fan.max_cones()) {
        if (cone.size() != fan.rank()) throw Error(ErrorCode::FanNotValid, "support function needs full-dimensional cones");
        RatMatrix rows(cone.size(), fan.rank());
        RatVector rhs(cone.size());
        for (std::size_t i = 0; i < cone.size(); ++i) {
            for (std::size_t j = 0; j < fan.rank(); ++j) rows(i, j) = Rational(fan.ray(cone[i])[j]);
            rhs[i] = -divisor_coeffs[static_cast<std::size_t>(cone[i])];
        }
        auto l = solve(rows, rhs);
        if (!l) throw Error(ErrorCode::FanNotValid, "max cone " + describe(cone) + " is not simplicial");
        psi.functionals.push_back(std::move(*l));
    }
    return psi;
}

bool is_strictly_convex(const Fan& fan, const PLFunction& psi)
{
    if (psi.functionals.size() != fan.max_cones().size()) return false;
    for (const auto& wall : walls(fan)) {
        const auto& l1 = psi.functionals[wall.first];
        const auto& l2 = psi.functionals[wall.second];
        for (int r : wall.rays)
            if (dot(l1, fan.ray(r).to_rational()) != dot(l2, fan.ray(r).to_rational())) return false;
        auto across = fan.ray(wall.opposite_second).to_rational();
        if (!(dot(l1, across) > dot(l2, across))) return false;
        auto back = fan.ray(wall.opposite_first).to_rational();
        if (!(dot(l2, back) > dot(l1, back))) return false;
    }
    return true;
}

std::optional<PLFunction> is_projective(const Fan& fan)
{
    // An ample divisor pairs positively with every wall relation; after clearing
    // denominators the strict inequalities become >= 1.
    auto ws = walls(fan);
    LinearSystem lp(fan.num_rays());
    for (const auto& w : ws) lp.add_greater_equal(to_rational(wall_relation(fan, w)), 1);
    auto a = lp.solve();
    if (!a) return std::nullopt;
    RatVector coeffs = to_rational(primitive_integer(*a));
    if (is_zero(coeffs)) coeffs = *a;
    PLFunction psi = support_function(fan, coeffs);
    if (!is_strictly_convex(fan, psi))
        throw Error(ErrorCode::InternalConsistency, "projectivity certificate failed exact re-verification");
    return psi;
}

bool is_fano(const Fan& fan)
{
    RatVector ones(fan.num_rays(), Rational(1));
    return is_strictly_convex(fan, support_function(fan, ones));
}

}  // namespace torquo
