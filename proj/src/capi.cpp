#include "torquo/torquo.h"

#include "torquo/error.hpp"
#include "torquo/family.hpp"
#include "torquo/fan.hpp"
#include "torquo/gallery.hpp"
#include "torquo/json_io.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct torquo_fan {
    torquo::Fan fan;
};

namespace {

thread_local std::string last_error;

torquo_status status_for(torquo::ErrorCode code)
{
    using torquo::ErrorCode;
    switch (code) {
    case ErrorCode::Parse: return TORQUO_ERR_PARSE;
    case ErrorCode::InvalidArgument:
    case ErrorCode::ZeroVector:
    case ErrorCode::DimensionMismatch: return TORQUO_ERR_INVALID_ARGUMENT;
    case ErrorCode::NotARelation: return TORQUO_ERR_NOT_A_RELATION;
    case ErrorCode::FanNotValid:
    case ErrorCode::FanNotComplete: return TORQUO_ERR_INVALID_FAN;
    case ErrorCode::ConeNotInFan:
    case ErrorCode::WrongLocalStructure: return TORQUO_ERR_SURGERY;
    case ErrorCode::NotACircuit: return TORQUO_ERR_NOT_A_CIRCUIT;
    case ErrorCode::NotPositive: return TORQUO_ERR_NOT_POSITIVE;
    case ErrorCode::ConditionBFailed: return TORQUO_ERR_CONDITION_B;
    case ErrorCode::ClassNotInCone: return TORQUO_ERR_CLASS_NOT_IN_CONE;
    case ErrorCode::InductionMismatch:
    case ErrorCode::InternalConsistency: return TORQUO_ERR_INTERNAL;
    }
    return TORQUO_ERR_INTERNAL;
}

torquo_status fail(torquo_status status, const std::string& message)
{
    last_error = message;
    return status;
}

template <class F>
torquo_status guarded(F&& body)
{
    try {
        last_error.clear();
        return body();
    } catch (const torquo::Error& e) {
        return fail(status_for(e.code()), std::string(torquo::error_code_name(e.code())) + ": " + e.what());
    } catch (const std::bad_alloc&) {
        return fail(TORQUO_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(TORQUO_ERR_INTERNAL, e.what());
    }
}

char* copy_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

torquo_fan* wrap(torquo::Fan fan) { return new torquo_fan{std::move(fan)}; }

// Surgery reports every non-parse failure under one status; the message keeps the cause.
template <class F>
torquo_status surgery(F&& body)
{
    torquo_status s = guarded(std::forward<F>(body));
    if (s == TORQUO_ERR_INVALID_FAN || s == TORQUO_ERR_NOT_A_CIRCUIT || s == TORQUO_ERR_INVALID_ARGUMENT)
        return TORQUO_ERR_SURGERY;
    return s;
}

}  // namespace

extern "C" {

const char* torquo_version(void) { return "0.1.0"; }

const char* torquo_status_name(torquo_status status)
{
    switch (status) {
    case TORQUO_OK: return "ok";
    case TORQUO_ERR_PARSE: return "parse_error";
    case TORQUO_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case TORQUO_ERR_INVALID_FAN: return "invalid_fan";
    case TORQUO_ERR_NOT_A_RELATION: return "not_a_relation";
    case TORQUO_ERR_NOT_POSITIVE: return "not_positive";
    case TORQUO_ERR_NOT_A_CIRCUIT: return "not_a_circuit";
    case TORQUO_ERR_CLASS_NOT_IN_CONE: return "class_not_in_cone";
    case TORQUO_ERR_CONDITION_B: return "condition_b_failed";
    case TORQUO_ERR_SURGERY: return "surgery_failed";
    case TORQUO_ERR_NOT_FOUND: return "not_found";
    case TORQUO_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* torquo_last_error(void) { return last_error.c_str(); }

void torquo_string_free(char* s) { std::free(s); }

torquo_status torquo_fan_parse(const char* json, torquo_fan** out)
{
    if (!json || !out) return fail(TORQUO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        try {
            *out = wrap(torquo::parse_fan(json));
        } catch (const torquo::Error& e) {
            // Index and shape problems found while building the fan are input errors.
            if (e.code() == torquo::ErrorCode::InvalidArgument) throw torquo::Error(torquo::ErrorCode::Parse, e.what());
            throw;
        }
        return TORQUO_OK;
    });
}

torquo_status torquo_fan_to_json(const torquo_fan* fan, char** out)
{
    if (!fan || !out) return fail(TORQUO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = copy_string(torquo::fan_to_json(fan->fan).dump());
        return TORQUO_OK;
    });
}

void torquo_fan_free(torquo_fan* fan) { delete fan; }

size_t torquo_fan_rank(const torquo_fan* fan) { return fan ? fan->fan.rank() : 0; }
size_t torquo_fan_num_rays(const torquo_fan* fan) { return fan ? fan->fan.num_rays() : 0; }
size_t torquo_fan_num_max_cones(const torquo_fan* fan) { return fan ? fan->fan.max_cones().size() : 0; }

torquo_status torquo_fan_check(const torquo_fan* fan, char** report_json)
{
    if (!fan || !report_json) return fail(TORQUO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto report = torquo::validate(fan->fan);
        *report_json = copy_string(torquo::validation_to_json(report).dump());
        if (!report.accepted()) return fail(TORQUO_ERR_INVALID_FAN, report.witness);
        return TORQUO_OK;
    });
}

torquo_status torquo_fan_classes(const torquo_fan* fan, char** out_json)
{
    if (!fan || !out_json) return fail(TORQUO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto report = torquo::validate(fan->fan);
        if (!report.accepted()) return fail(TORQUO_ERR_INVALID_FAN, report.witness);
        *out_json = copy_string(torquo::classes_to_json(fan->fan).dump());
        return TORQUO_OK;
    });
}

torquo_status torquo_family_analyze(const torquo_fan* fan, const char* class_json, int with_trace, char** report_json)
{
    if (!fan || !class_json || !report_json) return fail(TORQUO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        torquo::CurveClass gamma = torquo::class_from_json(torquo::parse_json(class_json), fan->fan);
        torquo::FamilyReport report = torquo::full_report(fan->fan, gamma, with_trace != 0);
        *report_json = copy_string(torquo::family_report_to_json(fan->fan, gamma, report).dump());
        switch (report.status) {
        case torquo::FamilyStatus::Ok: return TORQUO_OK;
        case torquo::FamilyStatus::NotARelation: return fail(TORQUO_ERR_NOT_A_RELATION, report.message);
        case torquo::FamilyStatus::NotPositive: return fail(TORQUO_ERR_NOT_POSITIVE, report.message);
        case torquo::FamilyStatus::NotACircuit: return fail(TORQUO_ERR_NOT_A_CIRCUIT, report.message);
        case torquo::FamilyStatus::ClassNotInCone: return fail(TORQUO_ERR_CLASS_NOT_IN_CONE, report.message);
        case torquo::FamilyStatus::ConditionBFailed: return fail(TORQUO_ERR_CONDITION_B, report.message);
        }
        return fail(TORQUO_ERR_INTERNAL, "unknown family status");
    });
}

torquo_status torquo_quotient(const torquo_fan* fan, const char* class_json, torquo_fan** out)
{
    if (!fan || !class_json || !out) return fail(TORQUO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto report = torquo::validate(fan->fan);
        if (!report.accepted()) return fail(TORQUO_ERR_INVALID_FAN, report.witness);
        torquo::CurveClass gamma = torquo::class_from_json(torquo::parse_json(class_json), fan->fan);
        torquo::FamilyRelation family = torquo::make_family(fan->fan, gamma);
        *out = wrap(torquo::build_quotient(fan->fan, family).quotient_fan);
        return TORQUO_OK;
    });
}

torquo_status torquo_construct_projective_space(size_t n, torquo_fan** out)
{
    if (!out) return fail(TORQUO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = wrap(torquo::projective_space(n));
        return TORQUO_OK;
    });
}

torquo_status torquo_construct_product(const torquo_fan* a, const torquo_fan* b, torquo_fan** out)
{
    if (!a || !b || !out) return fail(TORQUO_ERR_INVALID_ARGUMENT, "null argument");
    return surgery([&] {
        *out = wrap(torquo::product(a->fan, b->fan));
        return TORQUO_OK;
    });
}

torquo_status torquo_construct_blowup(const torquo_fan* fan, const int* cone, size_t cone_len, torquo_fan** out)
{
    if (!fan || (!cone && cone_len) || !out) return fail(TORQUO_ERR_INVALID_ARGUMENT, "null argument");
    return surgery([&] {
        *out = wrap(torquo::star_subdivision(fan->fan, torquo::RaySet(cone, cone + cone_len)));
        return TORQUO_OK;
    });
}

torquo_status torquo_construct_flip(const torquo_fan* fan, const int* negative_side, size_t len, torquo_fan** out)
{
    if (!fan || (!negative_side && len) || !out) return fail(TORQUO_ERR_INVALID_ARGUMENT, "null argument");
    return surgery([&] {
        *out = wrap(torquo::flip(fan->fan, torquo::RaySet(negative_side, negative_side + len)));
        return TORQUO_OK;
    });
}

torquo_status torquo_gallery_list(char** out_json)
{
    if (!out_json) return fail(TORQUO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        torquo::Json list = torquo::Json::array();
        for (const auto& v : torquo::gallery()) {
            list.push_back(torquo::Json{{"name", v.name},
                                        {"description", v.description},
                                        {"dim", v.fan.rank()},
                                        {"rho", v.fan.picard_number()},
                                        {"rays", v.fan.num_rays()},
                                        {"smooth", torquo::is_smooth(v.fan)},
                                        {"fano", torquo::is_fano(v.fan)}});
        }
        *out_json = copy_string(list.dump());
        return TORQUO_OK;
    });
}

torquo_status torquo_gallery_emit(const char* name, torquo_fan** out)
{
    if (!name || !out) return fail(TORQUO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto v = torquo::find_variety(name);
        if (!v) return fail(TORQUO_ERR_NOT_FOUND, std::string("no gallery variety named '") + name + "'");
        *out = wrap(std::move(v->fan));
        return TORQUO_OK;
    });
}

torquo_status torquo_gallery_random(size_t steps, unsigned long long seed, torquo_fan** out)
{
    if (!out) return fail(TORQUO_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = wrap(torquo::random_subdivision(torquo::projective_space(3), steps, seed));
        return TORQUO_OK;
    });
}

}  // extern "C"
