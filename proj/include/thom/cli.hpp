#pragma once

// Configuration files, the check registry and verification reports behind
// the `thom` command-line tool. The formats are described in
// docs/config-format.md and docs/serialization.md.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thom/thomforms.hpp"

namespace thom::cli {

inline constexpr const char* kVersion = "1.0.0";

struct QuadratureConfig {
  /// Acceptance threshold for normalization residuals.
  double tolerance = 1e-8;
  double r_max = 16.0;
};

struct Config {
  int n = 2;
  /// Expressions in t, or the keywords "generic" (phi, sigma) and
  /// "constrained" (sigma only).
  std::string phi = "0";
  std::string sigma = "0";
  mpq_class t0 = 1;
  /// Empty means every registered check.
  std::vector<std::string> checks;
  QuadratureConfig quadrature;
  std::uint64_t seed = 0;
};

/// Registered check identifiers, in report order.
const std::vector<std::string>& check_ids();

/// Parses the key/value text format or, when the first non-blank character
/// is '{', the JSON format. Throws ConfigError (or ParseError for bad
/// expressions, with the offset inside the expression).
Config parse_config(std::string_view text);
/// Throws ConfigError for bad values and DegenerateMetric when 1 + t sigma
/// is not positive at 32 sampled t in [0, r_max^2].
void validate_config(const Config& config);

/// The metric described by phi, sigma and t0.
MetricSpec build_spec(const Config& config, int n);

struct CheckResult {
  std::string id;
  std::string status;    // pass, fail, skipped
  std::string residual;  // "exact-zero", "nonzero" or a number
  std::string detail;
  double elapsed = 0;
  std::vector<std::pair<std::string, std::string>> artifacts;
};

struct Report {
  Config config;
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Runs the selected checks in registry order. Module errors are recorded as
/// failures of the check that raised them.
Report run(const Config& config);

std::string render_text(const Report& report, bool timings);
std::string render_json(const Report& report, bool timings);
/// Canonical key/value rendering of a configuration.
std::string render_config(const Config& config);

/// Serialized representative for `thom emit`: euler, harvey-lawson,
/// normalized or mathai-quillen.
std::string emit(const std::string& representative, const Config& config);

}  // namespace thom::cli
