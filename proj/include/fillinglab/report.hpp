#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "fillinglab/matrix.hpp"
#include "fillinglab/projective.hpp"
#include "fillinglab/quadratic.hpp"
#include "fillinglab/rational.hpp"

namespace fillinglab {

using Json = nlohmann::json;

struct report_parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

// Exact values travel as strings ("p/q", "p/q+r/s*sqrt(d)"), never floats.
Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json quadratic_json(const QuadraticNumber& x);

Json matrix_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json integer_vector_json(const std::vector<Integer>& v);
std::vector<Integer> integer_vector_from_json(const Json& j);
Json rational_vector_json(const std::vector<Rational>& v);
std::vector<Rational> rational_vector_from_json(const Json& j);

Json target_json(const SteerTarget& t);
SteerTarget target_from_json(const Json& j);

// Canonical text form; keys are sorted, so equal reports have equal text.
std::string report_to_string(const Json& report);
Json report_from_string(const std::string& text);

// The deterministic part of a report: everything except wall-clock timings.
Json report_canonical_form(Json report);

}  // namespace fillinglab
