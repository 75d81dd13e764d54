#pragma once

// Convergence studies: configuration, cross-validated references, rate fits
// and report emission.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lowreg/nls.hpp"
#include "lowreg/wave.hpp"

namespace lowreg {

enum class Equation { nls, wave };
std::string_view to_string(Equation eq);
Equation equation_from_string(std::string_view name);

/// Error norm of a study. For wave states, Hr means ||u||_{H^r} + ||v||_{H^{r-1}},
/// so H1xL2 is Hr with r = 1 and L2 is Hr with r = 0.
struct ErrorNorm {
  enum class Kind { L2, H1xL2, Hr };
  Kind kind = Kind::L2;
  double r = 0.0;

  static ErrorNorm parse(std::string_view text);  ///< "L2", "H1xL2", "Hr(0.75)"
  std::string label() const;
  double sobolev_index() const noexcept;

  double of(const SpectralField& f) const;
  double of(const WaveState& w) const;

  friend bool operator==(const ErrorNorm&, const ErrorNorm&) = default;
};

/// Initial data family.
enum class DataKind { rough, smooth };
std::string_view to_string(DataKind kind);
DataKind data_kind_from_string(std::string_view name);

struct StudyConfig {
  Equation equation = Equation::nls;
  int mu = 1;
  std::string nonlinearity = "quadratic";
  std::string scheme;  ///< empty: lri (NLS) or corrected_lie (wave)
  DataKind data = DataKind::rough;
  double theta = 1.0;
  double delta = 0.01;
  double amplitude = 1.0;
  std::uint64_t seed = 1;
  int n_modes = 1024;
  double t_end = 1.0;
  std::vector<double> tau_list;
  std::optional<ErrorNorm> error_norm;  ///< empty: L2 (NLS) or H1xL2 (wave)
  int ref_factor = 64;
  std::optional<double> cross_val_tol;  ///< relative to the initial norm
  bool max_over_steps = false;
  bool spatial_check = true;
  std::string output_path;

  /// Throws ConfigError.
  void validate() const;

  std::string resolved_scheme() const;
  ErrorNorm resolved_norm() const;
  double resolved_cross_val_tol() const;
  double tau_ref() const { return tau_list.back() / ref_factor; }

  friend bool operator==(const StudyConfig&, const StudyConfig&) = default;
};

inline constexpr double kDefaultNlsCrossValTol = 1e-2;
inline constexpr double kDefaultWaveCrossValTol = 1e-4;

/// "2^-4..2^-10", "2^-3", "0.1,0.05,0.025" or a mix of comma-separated items.
std::vector<double> parse_tau_list(std::string_view text);

struct ValidationRecord {
  std::string reference_scheme;
  std::string comparator_scheme;
  double tau_ref = 0.0;
  std::string norm;
  double distance = 0.0;
  double relative_distance = 0.0;
  double tolerance = 0.0;
  bool passed = false;

  friend bool operator==(const ValidationRecord&, const ValidationRecord&) = default;
};

/// Raised when the reference and comparator schemes disagree. Exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationRecord record);
  const ValidationRecord& record() const noexcept { return record_; }

 private:
  ValidationRecord record_;
};

/// Runs the reference scheme (LRI / corrected Lie) and the comparator (Lie)
/// at tau_ref over [0, t_end] and compares terminal states. Throws
/// ValidationError when distance > tolerance * norm(initial).
ValidationRecord cross_validate_reference(const NlsProblem& problem, double tau_ref,
                                          double tolerance, const ErrorNorm& norm = {});
ValidationRecord cross_validate_reference(const WaveProblem& problem, double tau_ref,
                                          double tolerance,
                                          const ErrorNorm& norm = {ErrorNorm::Kind::H1xL2, 1.0});

struct RateFit {
  double slope = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
};

inline constexpr double kFitFloor = 1e-11;
inline constexpr double kFitCeiling = 1.0;

/// Least squares on (log tau, log error) after dropping errors outside
/// [kFitFloor, kFitCeiling]. Throws std::invalid_argument with < 2 points.
RateFit fit_rate(std::span<const std::pair<double, double>> pairs);

struct ErrorSample {
  double tau = 0.0;
  double error = 0.0;
  friend bool operator==(const ErrorSample&, const ErrorSample&) = default;
};

struct ConvergenceReport {
  StudyConfig config;
  std::vector<ErrorSample> errors;
  std::optional<double> fitted_order;
  std::optional<double> r_squared;
  ValidationRecord validation;
  double initial_norm = 0.0;
  std::optional<double> spatial_change;  ///< relative change of the largest-tau error at 2N
  bool spatially_resolved = true;
  std::string version;
  double wall_time_seconds = 0.0;  ///< informational; not serialized, not compared

  bool operator==(const ConvergenceReport& other) const;
};

/// Initial data of a study.
SpectralField study_nls_data(const StudyConfig& config);
WaveState study_wave_data(const StudyConfig& config);

ConvergenceReport run_convergence_study(const StudyConfig& config);

/// Fills fitted_order / r_squared from report.errors (only with >= 4 usable points).
void fit_report(ConvergenceReport& report);

enum class ReportFormat { csv, json };

std::string report_csv(const ConvergenceReport& report);
std::string report_json(const ConvergenceReport& report);
ConvergenceReport report_from_json(std::string_view text);

/// Writes the report atomically. Throws std::invalid_argument for an empty
/// report and std::runtime_error for an unwritable path.
void emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& path);

std::string_view library_version();

}  // namespace lowreg
