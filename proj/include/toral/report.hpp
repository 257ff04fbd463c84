// Report documents: configuration resolution, JSON and aligned-text output.
#pragma once

#include "toral/classifier.hpp"
#include "toral/dynamics.hpp"
#include "toral/io.hpp"

#include <json.hpp>

#include <functional>
#include <string>

namespace toral {

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kToolVersion = "0.1.0";

/// Run configuration. Resolution order: command-line flags, then the
/// TORALCLASS_BOUND_K / TORALCLASS_PRECISION / TORALCLASS_SIM_N environment
/// variables, then the defaults below.
struct RunConfig {
  int bound_k = 10;
  unsigned precision = 50;
  std::size_t sim_n = 1'000'000;
  int form_box = 3;
  int mode_box = 3;
  double step = EquidistributionConfig{}.step;
  double resonant_threshold = 0.99;
  double nonresonant_threshold = 0.05;

  /// Applies environment overrides; `getenv` is injectable for tests.
  /// Throws std::invalid_argument on a malformed value.
  void apply_environment(const std::function<const char*(const char*)>& getenv);

  ClassifyOptions classify_options() const { return {precision, form_box, bound_k}; }
  EquidistributionConfig equidistribution() const;
};

using ordered_json = nlohmann::ordered_json;

/// Integers as JSON numbers when they fit in int64, decimal strings otherwise.
ordered_json json_integer(const Integer& z);
ordered_json json_matrix(const IntMatrix& m);
ordered_json json_vector(const IntVector& v);

ordered_json report_json(const ClassificationReport& r, const MatrixDocument& doc, const RunConfig& cfg);
std::string report_text(const ClassificationReport& r, const MatrixDocument& doc, const RunConfig& cfg);

ordered_json provenance_json(const RunConfig& cfg);

/// "(a, b, c, d)".
std::string format_vector(const IntVector& v);

}  // namespace toral
