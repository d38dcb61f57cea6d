#include "torquo/family.hpp"

#include "torquo/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace torquo {

namespace {

std::string describe(const RaySet& cone)
{
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < cone.size(); ++i) out << (i ? "," : "") << cone[i];
    out << "}";
    return out.str();
}

RatMatrix support_columns(const Fan& fan, const RaySet& support)
{
    RatMatrix m(fan.rank(), support.size());
    for (std::size_t c = 0; c < support.size(); ++c)
        for (std::size_t r = 0; r < fan.rank(); ++r) m(r, c) = Rational(fan.ray(support[c])[r]);
    return m;
}

bool disjoint(const RaySet& a, const RaySet& b)
{
    RaySet common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    return common.empty();
}

std::optional<ConditionBViolation> first_violation(const Fan& fan, const FamilyRelation& family, const RaySet& tau)
{
    for (int x : family.support) {
        RaySet attempted = set_union(tau, set_minus(family.support, {x}));
        if (!fan.contains_cone(attempted)) return ConditionBViolation{tau, x, attempted};
    }
    return std::nullopt;
}

bool maximal_avoiding(const Fan& fan, const RaySet& tau, const RaySet& support)
{
    for (std::size_t r = 0; r < fan.num_rays(); ++r) {
        const int ray = static_cast<int>(r);
        if (std::binary_search(tau.begin(), tau.end(), ray) || std::binary_search(support.begin(), support.end(), ray))
            continue;
        if (fan.contains_cone(set_union(tau, {ray}))) return false;
    }
    return true;
}

[[noreturn]] void quotient_not_valid(const Fan& fan, const FamilyRelation& family, const std::string& why)
{
    std::ostringstream dump;
    dump << "projected cones do not form a valid quotient fan (" << why << "); rank " << fan.rank() << ", rays:";
    for (const auto& r : fan.rays()) {
        dump << " (";
        for (std::size_t i = 0; i < r.rank(); ++i) dump << (i ? "," : "") << r[i].get_str();
        dump << ")";
    }
    dump << "; max cones:";
    for (const auto& c : fan.max_cones()) dump << " " << describe(c);
    dump << "; support " << describe(family.support) << " coefficients";
    for (const auto& m : family.coeffs) dump << " " << m.get_str();
    throw Error(ErrorCode::InternalConsistency, dump.str());
}

// Value of a piecewise-linear function at a lattice point lying on a ray of the fan.
Rational evaluate_on_ray(const Fan& fan, const PLFunction& psi, int ray, const RatVector& point)
{
    auto cones = fan.max_cones_containing({ray});
    if (cones.empty()) throw Error(ErrorCode::InternalConsistency, "quotient ray lies in no max cone");
    return dot(psi.functionals[cones.front()], point);
}

InductionNode induct(const Fan& fan, const FamilyRelation& family)
{
    InductionNode node;
    node.fan = fan;
    node.relation = family;
    node.condition_b = !check_condition_b(fan, family).has_value();

    if (fan.picard_number() <= 1) {
        node.terminal = true;
        if (!node.condition_b)
            throw Error(ErrorCode::InductionMismatch, "criterion fails on a fan of Picard number one");
        return node;
    }

    for (int y : zero_divisors(fan, family)) {
        DivisorFan restricted = divisor_fan(fan, y);
        std::map<int, int> index_of;
        for (std::size_t k = 0; k < restricted.source_ray.size(); ++k) index_of[restricted.source_ray[k]] = static_cast<int>(k);

        InductionNode child;
        child.via_ray = y;
        child.source_ray = restricted.source_ray;
        bool formable = true;
        for (int x : family.support)
            if (!index_of.count(x)) formable = false;
        if (!formable) {
            child.formable = false;
            child.fan = std::move(restricted.fan);
            node.children.push_back(std::move(child));
            continue;
        }

        // m_i xbar_i = m_i k_i r_i with r_i the primitive ray of D_y behind x_i.
        std::vector<std::pair<int, Integer>> terms;
        for (std::size_t i = 0; i < family.h(); ++i) {
            const int x = family.support[i];
            const int r = index_of.at(x);
            LatticeVector image = restricted.projection.apply(fan.ray(x));
            const LatticeVector& prim = restricted.fan.ray(r);
            Integer k = 0;
            for (std::size_t j = 0; j < prim.rank(); ++j)
                if (prim[j] != 0) {
                    k = image[j] / prim[j];
                    break;
                }
            if (k <= 0) throw Error(ErrorCode::InductionMismatch, "support ray projects to zero or flips direction");
            terms.emplace_back(r, family.coeffs[i] * k);
        }
        std::sort(terms.begin(), terms.end());
        Integer g = 0;
        for (const auto& t : terms) g = gcd(g, t.second);
        FamilyRelation projected;
        for (const auto& [r, c] : terms) {
            projected.support.push_back(r);
            projected.coeffs.push_back(c / g);
        }
        child.lambda = Rational(1, g);

        // Restriction coherence: positive, primitive, and a relation on the divisor fan.
        for (const auto& c : projected.coeffs)
            if (c <= 0) throw Error(ErrorCode::InductionMismatch, "restricted family is not strictly positive");
        if (!is_relation(restricted.fan, projected.as_class(restricted.fan.num_rays())))
            throw Error(ErrorCode::InductionMismatch, "restricted family is not a relation on the divisor fan");

        InductionNode sub = induct(restricted.fan, projected);
        sub.via_ray = child.via_ray;
        sub.source_ray = std::move(child.source_ray);
        sub.lambda = child.lambda;
        node.children.push_back(std::move(sub));
    }

    if (!node.children.empty()) {
        bool lifted = true;
        for (const auto& c : node.children) lifted = lifted && c.formable && c.condition_b;
        if (lifted != node.condition_b) {
            std::ostringstream msg;
            msg << "criterion on the fan (" << (node.condition_b ? "holds" : "fails")
                << ") disagrees with its restrictions to zero divisors (" << (lifted ? "hold" : "fail") << ")";
            throw Error(ErrorCode::InductionMismatch, msg.str());
        }
    }
    return node;
}

}  // namespace

CurveClass FamilyRelation::as_class(std::size_t num_rays) const
{
    CurveClass c{RatVector(num_rays)};
    for (std::size_t i = 0; i < support.size(); ++i) c.coeffs.at(static_cast<std::size_t>(support[i])) = Rational(coeffs[i]);
    return c;
}

FamilyRelation make_family(const Fan& fan, const CurveClass& gamma)
{
    if (gamma.coeffs.size() != fan.num_rays())
        throw Error(ErrorCode::NotARelation, "class has " + std::to_string(gamma.coeffs.size()) + " coefficients, fan has " +
                                                 std::to_string(fan.num_rays()) + " rays");
    if (!is_relation(fan, gamma)) throw Error(ErrorCode::NotARelation, "coefficients do not define a relation among the rays");
    if (is_zero(gamma.coeffs)) throw Error(ErrorCode::NotPositive, "the zero class is not the class of a family");

    IntVector prim = primitive_integer(gamma.coeffs);
    FamilyRelation family;
    for (std::size_t x = 0; x < prim.size(); ++x) {
        if (prim[x] < 0)
            throw Error(ErrorCode::NotPositive,
                        "coefficient of ray " + std::to_string(x) + " is negative (" + to_string(gamma.coeffs[x]) + ")");
        if (prim[x] > 0) {
            family.support.push_back(static_cast<int>(x));
            family.coeffs.push_back(prim[x]);
        }
    }
    // With every coefficient nonzero on the support, a one-dimensional kernel means every
    // proper subset is independent.
    if (kernel_basis(support_columns(fan, family.support)).size() != 1)
        throw Error(ErrorCode::NotACircuit, "support " + describe(family.support) + " is not a circuit");
    return family;
}

std::vector<int> zero_divisors(const Fan& fan, const FamilyRelation& family)
{
    std::vector<int> out;
    for (std::size_t x = 0; x < fan.num_rays(); ++x)
        if (!std::binary_search(family.support.begin(), family.support.end(), static_cast<int>(x)))
            out.push_back(static_cast<int>(x));
    return out;
}

std::optional<ConditionBViolation> check_condition_b_maximal(const Fan& fan, const FamilyRelation& family)
{
    for (const auto& tau : fan.cones()) {
        if (!disjoint(tau, family.support) || !maximal_avoiding(fan, tau, family.support)) continue;
        if (auto v = first_violation(fan, family, tau)) return v;
    }
    return std::nullopt;
}

std::optional<ConditionBViolation> check_condition_b(const Fan& fan, const FamilyRelation& family)
{
    std::optional<ConditionBViolation> found;
    for (const auto& tau : fan.cones()) {
        if (!disjoint(tau, family.support)) continue;
        if (auto v = first_violation(fan, family, tau)) {
            found = v;
            break;
        }
    }
    if (found.has_value() != check_condition_b_maximal(fan, family).has_value())
        throw Error(ErrorCode::InternalConsistency, "full and maximal-cone scans of the criterion disagree");
    return found;
}

ContractionResult build_quotient(const Fan& fan, const FamilyRelation& family)
{
    if (auto v = check_condition_b(fan, family))
        throw Error(ErrorCode::ConditionBFailed, "cone " + describe(v->tau) + " + " +
                                                     describe(set_minus(family.support, {v->missing_ray})) +
                                                     " is not a cone of the fan");
    const std::size_t h = family.h();
    ContractionResult out;
    out.projection = quotient_projection(fan.rank(), fan.generators(family.support));
    if (out.projection.target_rank() + (h - 1) != fan.rank()) quotient_not_valid(fan, family, "support does not span h-1 dimensions");
    out.fiber_dim = h - 1;

    std::vector<LatticeVector> rays;
    out.ray_map.assign(fan.num_rays(), -1);
    for (int x : zero_divisors(fan, family)) {
        LatticeVector image = out.projection.apply(fan.ray(x));
        if (image.is_zero()) quotient_not_valid(fan, family, "ray " + std::to_string(x) + " maps to zero");
        LatticeVector prim = primitivize(image);
        auto it = std::find(rays.begin(), rays.end(), prim);
        if (it == rays.end()) {
            out.ray_map[static_cast<std::size_t>(x)] = static_cast<int>(rays.size());
            rays.push_back(std::move(prim));
        } else {
            out.ray_map[static_cast<std::size_t>(x)] = static_cast<int>(it - rays.begin());
        }
    }

    std::vector<RaySet> images;
    std::vector<RaySet> image_of_max(fan.max_cones().size());
    for (std::size_t k = 0; k < fan.max_cones().size(); ++k) {
        const auto& sigma = fan.max_cones()[k];
        RaySet tau = set_minus(sigma, family.support);
        if (sigma.size() - tau.size() != h - 1)
            quotient_not_valid(fan, family, "max cone " + describe(sigma) + " does not hold h-1 support rays");
        RaySet image;
        for (int x : tau) image.push_back(out.ray_map[static_cast<std::size_t>(x)]);
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end())
            quotient_not_valid(fan, family, "max cone " + describe(sigma) + " collapses");
        image_of_max[k] = image;
        if (std::find(images.begin(), images.end(), image) == images.end()) images.push_back(image);
    }

    out.quotient_fan = Fan(out.projection.target_rank(), std::move(rays), std::move(images));
    auto report = validate(out.quotient_fan);
    if (!report.accepted()) quotient_not_valid(fan, family, report.witness);
    out.quotient_support_function = *report.support_function;

    const auto& qcones = out.quotient_fan.max_cones();
    for (const auto& image : image_of_max)
        out.cone_map.push_back(static_cast<std::size_t>(std::find(qcones.begin(), qcones.end(), image) - qcones.begin()));

    out.rho_drop = fan.picard_number() - out.quotient_fan.picard_number();
    if (out.rho_drop != 1) quotient_not_valid(fan, family, "Picard number drops by " + std::to_string(out.rho_drop));
    if (!verify_flatness(fan, family, out)) quotient_not_valid(fan, family, "flatness check failed");
    return out;
}

bool verify_flatness(const Fan& fan, const FamilyRelation& family, const ContractionResult& result)
{
    const auto& q = result.quotient_fan;
    const std::size_t h = family.h();
    if (result.cone_map.size() != fan.max_cones().size()) return false;
    if (q.rank() + result.fiber_dim != fan.rank() || result.fiber_dim + 1 != h) return false;

    std::vector<bool> hit(q.max_cones().size(), false);
    for (std::size_t k = 0; k < fan.max_cones().size(); ++k) {
        const auto& sigma = fan.max_cones()[k];
        RaySet tau = set_minus(sigma, family.support);
        // dim sigma = dim(image) + dim(fiber face)
        if (tau.size() != q.rank() || sigma.size() - tau.size() != result.fiber_dim) return false;
        if (result.cone_map[k] >= q.max_cones().size()) return false;
        RaySet image;
        for (int x : tau) image.push_back(result.ray_map[static_cast<std::size_t>(x)]);
        std::sort(image.begin(), image.end());
        if (image != q.max_cones()[result.cone_map[k]]) return false;
        hit[result.cone_map[k]] = true;
    }
    for (bool b : hit)
        if (!b) return false;
    for (const auto& cone : fan.cones()) {
        RaySet image;
        for (int x : set_minus(cone, family.support)) image.push_back(result.ray_map[static_cast<std::size_t>(x)]);
        std::sort(image.begin(), image.end());
        if (!q.contains_cone(image)) return false;
    }
    return true;
}

DivisorClass pullback_ample(const Fan& fan, const ContractionResult& result)
{
    DivisorClass d{RatVector(fan.num_rays())};
    for (std::size_t x = 0; x < fan.num_rays(); ++x) {
        const int r = result.ray_map[x];
        if (r < 0) continue;  // psi vanishes on the fiber directions
        RatVector image = result.projection.apply(fan.rays()[x].to_rational());
        d.coeffs[x] = -evaluate_on_ray(result.quotient_fan, result.quotient_support_function, r, image);
    }
    return d;
}

std::size_t InductionNode::size() const
{
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
}

InductionTrace verify_inductively(const Fan& fan, const FamilyRelation& family) { return induct(fan, family); }

const char* family_status_name(FamilyStatus status)
{
    switch (status) {
    case FamilyStatus::Ok: return "ok";
    case FamilyStatus::NotARelation: return "not_a_relation";
    case FamilyStatus::NotPositive: return "not_positive";
    case FamilyStatus::NotACircuit: return "not_a_circuit";
    case FamilyStatus::ClassNotInCone: return "class_not_in_cone";
    case FamilyStatus::ConditionBFailed: return "condition_b_failed";
    }
    return "unknown";
}

FamilyReport full_report(const Fan& fan, const CurveClass& gamma, bool with_trace)
{
    auto validation = validate(fan);
    if (!validation.accepted()) throw Error(ErrorCode::FanNotValid, validation.witness);

    FamilyReport report;
    report.rho = fan.picard_number();
    if (gamma.coeffs.size() != fan.num_rays() || !is_relation(fan, gamma)) {
        report.status = FamilyStatus::NotARelation;
        report.message = "coefficients do not define a relation among the rays";
        return report;
    }

    MoriCone cone = mori_cone(fan);
    report.in_cone = in_cone(cone, gamma);
    if (report.in_cone && !is_zero(gamma.coeffs)) {
        report.certificate = is_geometric_extremal(fan, cone, gamma);
        report.interior = is_interior(fan, cone, gamma);
    }

    try {
        report.family = make_family(fan, gamma);
    } catch (const Error& e) {
        report.status = e.code() == ErrorCode::NotACircuit ? FamilyStatus::NotACircuit : FamilyStatus::NotPositive;
        report.message = e.what();
        return report;
    }
    report.zero_divisors = zero_divisors(fan, *report.family);
    if (!report.in_cone) {
        report.status = FamilyStatus::ClassNotInCone;
        report.message = "class is not in the Mori cone";
        return report;
    }

    report.condition_b_checked = true;
    report.violation = check_condition_b(fan, *report.family);
    if (with_trace) report.trace = verify_inductively(fan, *report.family);
    if (report.violation) {
        report.status = FamilyStatus::ConditionBFailed;
        report.message = "cone " + describe(report.violation->tau) + " + " +
                         describe(set_minus(report.family->support, {report.violation->missing_ray})) +
                         " is not a cone of the fan";
        return report;
    }

    report.contraction = build_quotient(fan, *report.family);
    if (!report.certificate)
        throw Error(ErrorCode::InternalConsistency, "flat quotient exists but no extremality certificate was found");

    bool matches = true;
    DivisorClass pulled = pullback_ample(fan, *report.contraction);
    for (const auto& w : cone.wall_classes) {
        const bool along = positively_proportional(w, gamma);
        if ((pairing(report.certificate->nef_divisor, w) == 0) != along) matches = false;
        Rational p = pairing(pulled, w);
        if (p < 0 || (p == 0) != along) matches = false;
    }
    report.contracted_ray_matches = matches;
    if (!matches) throw Error(ErrorCode::InternalConsistency, "quotient does not contract exactly the ray of the class");
    report.status = FamilyStatus::Ok;
    return report;
}

}  // namespace torquo
