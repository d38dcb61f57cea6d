#include "torquo/json_io.hpp"

#include "torquo/error.hpp"

namespace torquo {

namespace {

Json integer_to_json(const Integer& z)
{
    if (z.fits_slong_p()) return Json(z.get_si());
    return Json(z.get_str());
}

Integer integer_from_json(const Json& j, const std::string& where)
{
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        Rational q;
        try {
            q = parse_rational(j.get<std::string>());
        } catch (const Error& e) {
            throw Error(ErrorCode::Parse, where + ": " + e.what());
        }
        if (q.get_den() != 1) throw Error(ErrorCode::Parse, where + ": expected an integer, got " + j.get<std::string>());
        return q.get_num();
    }
    throw Error(ErrorCode::Parse, where + ": expected an integer");
}

Rational rational_from_json(const Json& j, const std::string& where)
{
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error& e) {
            throw Error(ErrorCode::Parse, where + ": " + e.what());
        }
    }
    throw Error(ErrorCode::Parse, where + ": expected a rational string \"p/q\" or an integer");
}

int index_from_json(const Json& j, const std::string& where)
{
    if (!j.is_number_integer()) throw Error(ErrorCode::Parse, where + ": expected a ray index");
    long long v = j.get<long long>();
    if (v < 0 || v > 1'000'000) throw Error(ErrorCode::Parse, where + ": ray index " + std::to_string(v) + " out of range");
    return static_cast<int>(v);
}

const Json& field(const Json& j, const char* name, const std::string& where)
{
    if (!j.is_object()) throw Error(ErrorCode::Parse, where + ": expected an object");
    auto it = j.find(name);
    if (it == j.end()) throw Error(ErrorCode::Parse, where + ": missing field \"" + name + "\"");
    return *it;
}

Json ray_set_to_json(const RaySet& s)
{
    Json out = Json::array();
    for (int r : s) out.push_back(r);
    return out;
}

Json int_vector_to_json(const IntVector& v)
{
    Json out = Json::array();
    for (const auto& z : v) out.push_back(integer_to_json(z));
    return out;
}

Json relation_to_json(const FamilyRelation& f)
{
    Json coeffs = Json::array();
    for (const auto& m : f.coeffs) coeffs.push_back(to_string(m));
    return Json{{"support", ray_set_to_json(f.support)}, {"coeffs", coeffs}, {"h", f.h()}};
}

Json matrix_to_json(const IntMatrix& m)
{
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(int_vector_to_json(m.row(r)));
    return out;
}

}  // namespace

Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
}

Json fan_to_json(const Fan& fan)
{
    Json rays = Json::array();
    for (const auto& r : fan.rays()) rays.push_back(int_vector_to_json(r.coords()));
    Json cones = Json::array();
    for (const auto& c : fan.max_cones()) cones.push_back(ray_set_to_json(c));
    return Json{{"rank", fan.rank()}, {"rays", rays}, {"max_cones", cones}};
}

Fan fan_from_json(const Json& j)
{
    const Json& rank_j = field(j, "rank", "fan");
    if (!rank_j.is_number_integer() || rank_j.get<long long>() < 0 || rank_j.get<long long>() > 64)
        throw Error(ErrorCode::Parse, "rank: expected a nonnegative integer");
    const auto rank = static_cast<std::size_t>(rank_j.get<long long>());

    const Json& rays_j = field(j, "rays", "fan");
    if (!rays_j.is_array()) throw Error(ErrorCode::Parse, "rays: expected an array");
    std::vector<LatticeVector> rays;
    for (std::size_t i = 0; i < rays_j.size(); ++i) {
        const std::string where = "rays[" + std::to_string(i) + "]";
        if (!rays_j[i].is_array()) throw Error(ErrorCode::Parse, where + ": expected an array");
        if (rays_j[i].size() != rank)
            throw Error(ErrorCode::Parse, where + ": has " + std::to_string(rays_j[i].size()) + " coordinates, rank is " +
                                              std::to_string(rank));
        IntVector coords;
        for (std::size_t k = 0; k < rank; ++k)
            coords.push_back(integer_from_json(rays_j[i][k], where + "[" + std::to_string(k) + "]"));
        rays.emplace_back(std::move(coords));
    }

    const Json& cones_j = field(j, "max_cones", "fan");
    if (!cones_j.is_array()) throw Error(ErrorCode::Parse, "max_cones: expected an array");
    std::vector<RaySet> cones;
    for (std::size_t i = 0; i < cones_j.size(); ++i) {
        const std::string where = "max_cones[" + std::to_string(i) + "]";
        if (!cones_j[i].is_array()) throw Error(ErrorCode::Parse, where + ": expected an array");
        RaySet cone;
        for (std::size_t k = 0; k < cones_j[i].size(); ++k) {
            const std::string at = where + "[" + std::to_string(k) + "]";
            int r = index_from_json(cones_j[i][k], at);
            if (static_cast<std::size_t>(r) >= rays.size())
                throw Error(ErrorCode::Parse, at + ": ray index " + std::to_string(r) + " out of range (" +
                                                  std::to_string(rays.size()) + " rays)");
            cone.push_back(r);
        }
        cones.push_back(std::move(cone));
    }
    return Fan(rank, std::move(rays), std::move(cones));
}

Fan parse_fan(std::string_view text) { return fan_from_json(parse_json(text)); }

Json class_to_json(const RatVector& coeffs)
{
    Json out = Json::array();
    for (const auto& q : coeffs) out.push_back(to_string(q));
    return Json{{"coeffs", out}};
}

CurveClass class_from_json(const Json& j, const Fan& fan)
{
    if (j.is_array()) return class_from_json(Json{{"coeffs", j}}, fan);
    const Json& coeffs_j = field(j, "coeffs", "class");
    if (!coeffs_j.is_array()) throw Error(ErrorCode::Parse, "coeffs: expected an array");
    RatVector coeffs;
    for (std::size_t i = 0; i < coeffs_j.size(); ++i)
        coeffs.push_back(rational_from_json(coeffs_j[i], "coeffs[" + std::to_string(i) + "]"));

    if (j.contains("support")) {
        const Json& support_j = j["support"];
        if (!support_j.is_array()) throw Error(ErrorCode::Parse, "support: expected an array");
        if (support_j.size() != coeffs.size())
            throw Error(ErrorCode::Parse, "support and coeffs have different lengths");
        CurveClass gamma{RatVector(fan.num_rays())};
        for (std::size_t i = 0; i < support_j.size(); ++i) {
            const std::string where = "support[" + std::to_string(i) + "]";
            int r = index_from_json(support_j[i], where);
            if (static_cast<std::size_t>(r) >= fan.num_rays())
                throw Error(ErrorCode::Parse, where + ": ray index " + std::to_string(r) + " out of range");
            if (gamma.coeffs[static_cast<std::size_t>(r)] != 0) throw Error(ErrorCode::Parse, where + ": repeated ray");
            gamma.coeffs[static_cast<std::size_t>(r)] = coeffs[i];
        }
        return gamma;
    }
    if (coeffs.size() != fan.num_rays())
        throw Error(ErrorCode::Parse, "coeffs: has " + std::to_string(coeffs.size()) + " entries, fan has " +
                                          std::to_string(fan.num_rays()) + " rays");
    return CurveClass{std::move(coeffs)};
}

Json validation_to_json(const ValidationReport& r)
{
    Json out{{"accepted", r.accepted()},     {"structure_ok", r.structure_ok}, {"simplicial", r.simplicial},
             {"complete", r.complete},       {"faces_ok", r.faces_ok},         {"smooth", r.smooth},
             {"projective", r.projective},   {"witness", r.witness.empty() ? Json(nullptr) : Json(r.witness)}};
    if (r.uncovered_point) {
        Json p = Json::array();
        for (const auto& q : *r.uncovered_point) p.push_back(to_string(q));
        out["uncovered_point"] = p;
    } else {
        out["uncovered_point"] = nullptr;
    }
    if (r.support_function) {
        Json fs = Json::array();
        for (const auto& l : r.support_function->functionals) {
            Json row = Json::array();
            for (const auto& q : l) row.push_back(to_string(q));
            fs.push_back(row);
        }
        out["support_function"] = fs;
    } else {
        out["support_function"] = nullptr;
    }
    return out;
}

Json classes_to_json(const Fan& fan)
{
    Json basis = Json::array();
    for (const auto& c : class_space(fan)) basis.push_back(class_to_json(c.coeffs));
    Json ws = Json::array();
    for (const auto& w : walls(fan)) {
        ws.push_back(Json{{"rays", ray_set_to_json(w.rays)},
                          {"adjacent", Json::array({w.first, w.second})},
                          {"class", class_to_json(wall_class(fan, w).coeffs)}});
    }
    MoriCone cone = mori_cone(fan);
    Json gens = Json::array();
    for (const auto& g : cone.generators) gens.push_back(class_to_json(g.coeffs));
    Json all = Json::array();
    for (const auto& g : cone.wall_classes) all.push_back(class_to_json(g.coeffs));
    return Json{{"rho", fan.picard_number()}, {"class_space", basis}, {"walls", ws},
                {"wall_classes", all},        {"mori_generators", gens}};
}

Json trace_to_json(const InductionTrace& t)
{
    Json children = Json::array();
    for (const auto& c : t.children) children.push_back(trace_to_json(c));
    return Json{{"via_ray", t.via_ray == -1 ? Json(nullptr) : Json(t.via_ray)},
                {"source_ray", ray_set_to_json(t.source_ray)},
                {"lambda", to_string(t.lambda)},
                {"formable", t.formable},
                {"rho", t.fan.picard_number()},
                {"fan", fan_to_json(t.fan)},
                {"relation", t.formable ? relation_to_json(t.relation) : Json(nullptr)},
                {"condition_b", t.formable ? Json(t.condition_b) : Json(nullptr)},
                {"terminal", t.terminal},
                {"children", children}};
}

Json family_report_to_json(const Fan& fan, const CurveClass& gamma, const FamilyReport& r)
{
    const bool positive = r.status != FamilyStatus::NotARelation && r.status != FamilyStatus::NotPositive;
    Json out{{"status", family_status_name(r.status)},
             {"message", r.message},
             {"rho_X", r.rho},
             {"class", class_to_json(gamma.coeffs)},
             {"positive", r.status == FamilyStatus::NotARelation ? Json(nullptr) : Json(positive)},
             {"family", r.family ? relation_to_json(*r.family) : Json(nullptr)},
             {"zero_divisors", ray_set_to_json(r.zero_divisors)},
             {"in_cone", r.in_cone}};

    Json cb{{"checked", r.condition_b_checked}};
    cb["holds"] = r.condition_b_checked ? Json(!r.violation.has_value()) : Json(nullptr);
    if (r.violation)
        cb["violation"] = Json{{"tau", ray_set_to_json(r.violation->tau)},
                               {"missing_ray", r.violation->missing_ray},
                               {"attempted_cone", ray_set_to_json(r.violation->attempted_cone)}};
    else
        cb["violation"] = nullptr;
    out["condition_b"] = cb;

    out["extremal"] = r.in_cone && !is_zero(gamma.coeffs) ? Json(r.certificate.has_value()) : Json(nullptr);
    out["interior"] = r.interior ? Json(*r.interior) : Json(nullptr);

    if (r.contraction) {
        const auto& c = *r.contraction;
        Json ray_map = Json::array();
        for (int x : c.ray_map) ray_map.push_back(x);
        Json cone_map = Json::array();
        for (auto k : c.cone_map) cone_map.push_back(k);
        out["quotient"] = Json{{"rank", c.quotient_fan.rank()},
                               {"rho_Y", c.quotient_fan.picard_number()},
                               {"rho_drop", c.rho_drop},
                               {"fiber_dim", c.fiber_dim},
                               {"projection", matrix_to_json(c.projection.matrix())},
                               {"ray_map", ray_map},
                               {"cone_map", cone_map},
                               {"flat", verify_flatness(fan, *r.family, c)}};
    } else {
        out["quotient"] = nullptr;
    }

    Json certs{{"nef_divisor", r.certificate ? class_to_json(r.certificate->nef_divisor.coeffs) : Json(nullptr)}};
    Json zero = Json::array();
    if (r.certificate)
        for (auto i : r.certificate->zero_set) zero.push_back(i);
    certs["zero_set"] = zero;
    certs["quotient_fan"] = r.contraction ? fan_to_json(r.contraction->quotient_fan) : Json(nullptr);
    certs["contracted_ray_matches"] = r.contracted_ray_matches;
    out["certificates"] = certs;
    if (r.trace) out["trace"] = trace_to_json(*r.trace);
    return out;
}

}  // namespace torquo
