#pragma once
// JSON encodings of fans, classes and reports.

#include "torquo/classes.hpp"
#include "torquo/family.hpp"
#include "torquo/fan.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace torquo {

using Json = nlohmann::ordered_json;

/// {"rank": n, "rays": [[...]], "max_cones": [[...]]}
Json fan_to_json(const Fan& fan);

/// Throws Error(Parse) naming the offending field or the text position.
Fan fan_from_json(const Json& j);
Fan parse_fan(std::string_view text);

/// Parses JSON text; syntax errors become Error(Parse) with line and column.
Json parse_json(std::string_view text);

/// {"coeffs": ["p/q", ...]}
Json class_to_json(const RatVector& coeffs);

/// A bare array or {"coeffs": [...]} aligned with the fan's rays, or
/// {"support": [ray indices], "coeffs": [...]} aligned with the support.
CurveClass class_from_json(const Json& j, const Fan& fan);

Json validation_to_json(const ValidationReport& report);
Json classes_to_json(const Fan& fan);
Json trace_to_json(const InductionTrace& trace);
Json family_report_to_json(const Fan& fan, const CurveClass& gamma, const FamilyReport& report);

}  // namespace torquo
