#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qig/monotonicity.hpp"
#include "qig/scheme_solver.hpp"
#include "qig/tomography.hpp"

namespace qig {

using Json = nlohmann::ordered_json;

/// 17 significant digits (always round-trips), '.' separator regardless of
/// locale.
std::string format_double(double v);

Json to_json(const Tomogram& t);
Json to_json(const MonotonicityReport& r);
Json to_json(const VerificationRecord& r);

/// Inverse of to_json(Tomogram). Throws InconsistentTomogram on malformed
/// input and validates the result.
Tomogram tomogram_from_json(const Json& j);

struct MetricRow {
  double w = 0.0;
  double g_w = 0.0;
  double g_perp = 0.0;
  std::optional<double> conformal;    // A(w) when a pullback was requested
  std::optional<double> extracted_h;  // h(t(w)) read off the quotient metric
};

void write_metric_csv(std::ostream& os, const std::vector<MetricRow>& rows);
void write_solution_csv(std::ostream& os, const OdeSolution& sol);
void write_function_csv(std::ostream& os, const PetzFunction& f, const std::vector<double>& ts);

/// "identity" or "exp:beta".
SpectralMap parse_scheme_spec(std::string_view spec);

}  // namespace qig
