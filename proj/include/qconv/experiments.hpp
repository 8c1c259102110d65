#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qconv/conv.hpp"
#include "qconv/entropy.hpp"

namespace qconv {

/// One scalar observation. `violation` is signed: positive means the value
/// is on the wrong side of `bound`; a record passes when violation <= slack.
/// Informational records are reported without affecting the pass flag.
struct ReportRecord {
  std::size_t index = 0;
  std::string metric;
  double value = 0.0;
  double bound = 0.0;
  double violation = 0.0;
  bool pass = true;
  bool informational = false;
};

struct ExperimentReport {
  std::string suite;
  std::uint64_t seed = 0;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<ReportRecord> records;
  bool pass = true;
  double max_violation = -std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  double wall_clock_seconds = 0.0;

  /// Checked record: value <= bound + slack.
  void add_upper(std::size_t index, std::string metric, double value, double bound, double slack);
  /// Checked record: value >= bound - slack.
  void add_lower(std::size_t index, std::string metric, double value, double bound, double slack);
  /// Checked record with a precomputed violation.
  void add_check(std::size_t index, std::string metric, double value, double bound, double violation,
                 double slack);
  void add_info(std::size_t index, std::string metric, double value, double bound = 0.0);
  void append(const std::vector<ReportRecord>& more);

  nlohmann::json to_json(bool include_timing = false) const;
  /// Header row then one row per record:
  /// suite,seed,index,metric,value,bound,pass
  std::string to_csv() const;
};

/// Doubles as text with 17 significant digits.
std::string format_double(double v);

struct CltStep {
  int step = 0;
  double distance = 0.0;  // ||[x]^N rho - M(rho)||_2
  double bound = 0.0;     // (1 - MG)^N ||rho - M(rho)||_2
  std::vector<double> entropies;
};

struct CltSeries {
  PhasePoint displacement;
  double magic_gap = 0.0;
  double initial_distance = 0.0;
  std::vector<double> alphas;
  std::vector<double> initial_entropies;
  std::vector<CltStep> steps;

  /// Least-squares slope of ln(distance) against N over points with
  /// distance > 1e-12, including N = 0; empty with fewer than two points.
  std::optional<double> fitted_log_slope() const;
};

inline const std::vector<double>& clt_alpha_grid() {
  static const std::vector<double> grid{0.5, 1.0, 2.0, std::numeric_limits<double>::infinity()};
  return grid;
}

/// Iterates [x]^{N+1} rho = ([x]^N rho) [x] rho for N < max_steps. Inputs
/// that are not zero-mean are displaced first; the displacement is recorded.
/// The spec must be of beam-splitter form [s, t; t, -s].
CltSeries clt_run(const DensityMatrix& rho, const ConvolutionSpec& spec, int max_steps,
                  const std::vector<double>& alphas = clt_alpha_grid());

/// Serializes a CLT series as CSV: step,distance,bound,H_<alpha>...
std::string clt_to_csv(const CltSeries& series);
nlohmann::json clt_to_json(const CltSeries& series);

struct SuiteOptions {
  std::uint64_t seed = 0;
  int trials = 0;  // 0 selects the suite default
  int steps = 30;
  int jobs = 1;
};

ExperimentReport suite_extremality(const SuiteOptions& options);
ExperimentReport suite_entropy(const SuiteOptions& options);
ExperimentReport suite_fisher(const SuiteOptions& options);
ExperimentReport suite_monotonicity(const SuiteOptions& options);
ExperimentReport suite_stability(const SuiteOptions& options);
ExperimentReport suite_min_output(const SuiteOptions& options);
ExperimentReport suite_holevo(const SuiteOptions& options);
ExperimentReport suite_synthesis(const SuiteOptions& options);
ExperimentReport suite_duality(const SuiteOptions& options);
ExperimentReport suite_clt(const SuiteOptions& options);
ExperimentReport suite_clifford_invariance(const SuiteOptions& options);

std::vector<std::string> suite_names();
/// Dispatch by name; throws ParseError for unknown names.
ExperimentReport run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace qconv
