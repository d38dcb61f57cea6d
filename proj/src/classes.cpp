#include "torquo/classes.hpp"

#include "torquo/error.hpp"
#include "torquo/lattice.hpp"
#include "torquo/linear_program.hpp"

namespace torquo {

namespace {

RatMatrix ray_matrix(const Fan& fan)
{
    RatMatrix m(fan.rank(), fan.num_rays());
    for (std::size_t c = 0; c < fan.num_rays(); ++c)
        for (std::size_t r = 0; r < fan.rank(); ++r) m(r, c) = Rational(fan.rays()[c][r]);
    return m;
}

RatMatrix generator_matrix(const MoriCone& cone)
{
    std::vector<RatVector> cols;
    for (const auto& g : cone.generators) cols.push_back(g.coeffs);
    const std::size_t len = cone.generators.empty() ? 0 : cone.generators.front().coeffs.size();
    return RatMatrix::from_columns(len, cols);
}

void require_relation(const Fan& fan, const CurveClass& gamma)
{
    if (gamma.coeffs.size() != fan.num_rays())
        throw Error(ErrorCode::DimensionMismatch, "class has " + std::to_string(gamma.coeffs.size()) +
                                                      " coefficients, fan has " + std::to_string(fan.num_rays()) + " rays");
    if (!is_relation(fan, gamma)) throw Error(ErrorCode::NotARelation, "coefficients do not define a relation among the rays");
}

}  // namespace

bool is_relation(const Fan& fan, const CurveClass& gamma)
{
    if (gamma.coeffs.size() != fan.num_rays()) return false;
    for (std::size_t i = 0; i < fan.rank(); ++i) {
        Rational s = 0;
        for (std::size_t x = 0; x < fan.num_rays(); ++x) s += gamma.coeffs[x] * Rational(fan.rays()[x][i]);
        if (s != 0) return false;
    }
    return true;
}

CurveClass canonical(const CurveClass& gamma) { return {to_rational(primitive_integer(gamma.coeffs))}; }

bool positively_proportional(const CurveClass& a, const CurveClass& b)
{
    if (is_zero(a.coeffs) || is_zero(b.coeffs)) return false;
    return canonical(a) == canonical(b);
}

std::vector<CurveClass> class_space(const Fan& fan)
{
    std::vector<CurveClass> out;
    for (auto& k : kernel_basis(ray_matrix(fan))) out.push_back({std::move(k)});
    return out;
}

Rational pairing(const DivisorClass& d, const CurveClass& gamma)
{
    if (d.coeffs.size() != gamma.coeffs.size())
        throw Error(ErrorCode::DimensionMismatch, "divisor and curve class have different lengths");
    return dot(d.coeffs, gamma.coeffs);
}

CurveClass wall_class(const Fan& fan, const Wall& wall) { return {to_rational(wall_relation(fan, wall))}; }

MoriCone mori_cone(const Fan& fan)
{
    MoriCone cone;
    cone.ambient_dim = static_cast<std::size_t>(std::max<long>(0, fan.picard_number()));
    for (const auto& w : walls(fan)) {
        CurveClass c = canonical(wall_class(fan, w));
        bool seen = false;
        for (const auto& existing : cone.wall_classes)
            if (existing == c) {
                seen = true;
                break;
            }
        if (!seen) cone.wall_classes.push_back(std::move(c));
    }
    // A wall class is redundant when the remaining ones already generate it.
    for (std::size_t i = 0; i < cone.wall_classes.size(); ++i) {
        std::vector<RatVector> others;
        for (std::size_t j = 0; j < cone.wall_classes.size(); ++j)
            if (j != i) others.push_back(cone.wall_classes[j].coeffs);
        bool redundant = !others.empty() &&
                         nonnegative_solution(RatMatrix::from_columns(fan.num_rays(), others), cone.wall_classes[i].coeffs)
                             .has_value();
        if (!redundant) cone.generators.push_back(cone.wall_classes[i]);
    }
    return cone;
}

bool in_cone(const MoriCone& cone, const CurveClass& gamma)
{
    if (is_zero(gamma.coeffs)) return true;
    if (cone.generators.empty()) return false;
    return nonnegative_solution(generator_matrix(cone), gamma.coeffs).has_value();
}

std::optional<ExtremalityCertificate> is_geometric_extremal(const Fan& fan, const MoriCone& cone, const CurveClass& gamma)
{
    require_relation(fan, gamma);
    if (!in_cone(cone, gamma)) throw Error(ErrorCode::ClassNotInCone, "class is not in the Mori cone");
    if (is_zero(gamma.coeffs)) return std::nullopt;

    // Supporting hyperplane: D . gamma = 0 and D . g >= 1 off the ray of gamma.
    LinearSystem lp(fan.num_rays());
    lp.add_equality(gamma.coeffs, 0);
    for (const auto& g : cone.generators)
        if (!positively_proportional(g, gamma)) lp.add_greater_equal(g.coeffs, 1);
    auto d = lp.solve();
    if (!d) return std::nullopt;

    ExtremalityCertificate cert{{to_rational(primitive_integer(*d))}, {}};
    if (is_zero(cert.nef_divisor.coeffs)) cert.nef_divisor.coeffs = *d;
    for (std::size_t i = 0; i < cone.generators.size(); ++i)
        if (pairing(cert.nef_divisor, cone.generators[i]) == 0) cert.zero_set.push_back(i);
    if (!verify_certificate(cone, gamma, cert))
        throw Error(ErrorCode::InternalConsistency, "extremality certificate failed exact re-verification");
    return cert;
}

bool verify_certificate(const MoriCone& cone, const CurveClass& gamma, const ExtremalityCertificate& cert)
{
    if (pairing(cert.nef_divisor, gamma) != 0) return false;
    std::vector<std::size_t> zeros;
    for (std::size_t i = 0; i < cone.generators.size(); ++i) {
        Rational p = pairing(cert.nef_divisor, cone.generators[i]);
        if (p < 0) return false;
        if (p == 0) {
            if (!positively_proportional(cone.generators[i], gamma)) return false;
            zeros.push_back(i);
        }
    }
    for (const auto& w : cone.wall_classes)
        if (pairing(cert.nef_divisor, w) < 0) return false;
    return zeros == cert.zero_set;
}

bool is_interior(const Fan& fan, const MoriCone& cone, const CurveClass& gamma)
{
    require_relation(fan, gamma);
    if (!in_cone(cone, gamma)) throw Error(ErrorCode::ClassNotInCone, "class is not in the Mori cone");
    if (cone.generators.empty() || rank(generator_matrix(cone)) != cone.ambient_dim) return false;

    // sum_g (1 + mu_g) g = s gamma with mu, s >= 0.
    const std::size_t k = cone.generators.size();
    const std::size_t len = fan.num_rays();
    RatMatrix a(len, k + 1);
    RatVector b(len);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t x = 0; x < len; ++x) {
            a(x, j) = cone.generators[j].coeffs[x];
            b[x] -= cone.generators[j].coeffs[x];
        }
    for (std::size_t x = 0; x < len; ++x) a(x, k) = -gamma.coeffs[x];
    auto sol = nonnegative_solution(a, b);
    if (!sol) return false;
    if ((*sol)[k] <= 0) throw Error(ErrorCode::InternalConsistency, "Mori cone is not pointed");
    return true;
}

}  // namespace torquo
