#pragma once

// Wire formats.
//
// Operator spec file (JSON, UTF-8):
//   { "d": <int>, "k": <int>,
//     "C": [ [ [re, im], ... d entries ], ... d+k rows ] }
// Shape violations are rejected with a diagnostic naming the offending field.
//
// Report JSON: fixed field names, verdicts as the strings
// "true" / "false" / "n/a" / "inconclusive", complex numbers as [re, im].

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "shiftpert/classification.hpp"
#include "shiftpert/operator_model.hpp"

namespace shiftpert {

using Json = nlohmann::ordered_json;

struct SpecParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

OperatorSpec parse_operator_spec(const std::string& text);
OperatorSpec load_operator_spec(const std::string& path);

Json spec_to_json(const OperatorSpec& spec);

std::string verdict_string(Verdict v);
std::string cnu_verdict_string(CnuVerdict v);

// "re+imi" with 12 significant digits.
std::string format_complex(Complex z);
std::string format_real(double x);

Json complex_to_json(Complex z);
Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);

Json report_to_json(const ClassificationReport& report);
std::string report_to_text(const ClassificationReport& report);

}  // namespace shiftpert
