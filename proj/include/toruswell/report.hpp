#pragma once

// Machine-readable reports: JSON documents with insertion-ordered keys, a
// pinned version field, no timestamps, and every floating-point value
// rendered as decimal text with 17 significant digits (so emit/parse round
// trips are exact and output is byte deterministic).

#include <optional>
#include <string>

#include <json.hpp>

#include "toruswell/adapted.hpp"
#include "toruswell/integrator.hpp"
#include "toruswell/scalar_field.hpp"

namespace toruswell::report {

using json = nlohmann::ordered_json;

/// %.17g rendering; used for every real number in reports and CSV.
std::string fmt17(double v);

/// A real number as a report value (decimal string).
json num(double v);

double parse_num(const json& j);

/// Sparse (m, n, re, im) records of every coefficient above 1e-15, in
/// deterministic (m, n) order.
json scalar_field_to_json(const spectral::ScalarField& g);
spectral::ScalarField scalar_field_from_json(const json& j);

json one_form_to_json(const spectral::OneForm& theta);

json adapted_report_to_json(const adapted::AdaptedReport& rep);
json condition_report_to_json(const adapted::ConditionReport& rep);
json certificate_to_json(const adapted::InfeasibilityCertificate& cert);
json trajectory_summary_to_json(const wells::Trajectory& traj);

/// Top-level document skeleton: tool/version/command/status first, then
/// inputs, then the payload under "result".
json make_report(const std::string& command, const std::string& status, json inputs,
                 json result);

std::string serialize(const json& doc);
json parse(const std::string& text);

/// Writes to the path when given, to the stream otherwise. Throws IoError
/// on filesystem failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
void emit(const json& doc, const std::optional<std::string>& path, std::ostream& out);

}  // namespace toruswell::report
