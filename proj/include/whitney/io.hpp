#pragma once

#include <string>

#include <json.hpp>

#include "whitney/differences.hpp"
#include "whitney/extremal_search.hpp"
#include "whitney/piecewise.hpp"
#include "whitney/steklov.hpp"

namespace whitney {

using Json = nlohmann::ordered_json;

/// Double rounded to 15 significant digits, for human-facing renderings.
double float15(double v);
double float15(const Rational& r);

/// {"breakpoints":[{"x","left","right"}...],"spikes":[{"x","value"}...]}
/// with rationals as canonical "p/q" strings.
Json function_to_json(const PiecewiseFunction& f);

/// Rejects malformed or non-canonical entries with the JSON path of the
/// offending field (Error kind InvalidFunction).
PiecewiseFunction function_from_json(const Json& j);

Json geometry_to_json(const SearchGeometry& g);
SearchGeometry geometry_from_json(const Json& j);

Json configuration_to_json(const Configuration& c);
Json modulus_report_to_json(const ModulusReport& r);

Json identity_to_json(const Json& query, const IdentityCheck& check);

Json certificate_to_json(const Certificate& c, const SearchResult* run = nullptr);
Certificate certificate_from_json(const Json& j);

/// Parses a file; parse failures carry the file name, line and column.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace whitney
