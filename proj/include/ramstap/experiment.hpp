#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramstap/gridless_stap.hpp"
#include "ramstap/ongrid_sr.hpp"
#include "ramstap/radar_scene.hpp"
#include "ramstap/stap_eval.hpp"

namespace ramstap {

enum class Method { kOptimal, kSmi, kFocuss, kAnm, kRam };

const char* method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);

/// Thrown by load_config with "path:line: message" context where available.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FocussOptions {
  FocussSettings solver;
  int oversample_spatial = 6;
  int oversample_doppler = 6;
};

struct ExperimentConfig {
  RadarConfig radar;
  std::vector<Method> methods = {Method::kOptimal, Method::kSmi,
                                 Method::kFocuss, Method::kAnm, Method::kRam};
  int num_snapshots = 3;     // K
  int monte_carlo_runs = 100;
  std::uint64_t base_seed = 1;
  FocussOptions focuss;
  RamSettings ram;
  std::optional<Scalar> loading;  // diagonal loading for estimated
                                  // covariances; default noise_power
  std::optional<Scalar> target_spatial_freq;  // default: mainbeam, phi = psi
  int doppler_points = 101;
  int spectrum_points = 64;  // Capon map grid, per axis
  std::string output_dir = "out";

  Scalar effective_loading() const {
    return loading.value_or(radar.noise_power);
  }
  Scalar effective_target_spatial_freq() const;
  void validate() const;
};

/// Strict key = value parser with [sections]; unknown keys or sections are
/// errors, diagnostics carry the line number.
ExperimentConfig load_config(const std::string& path);

/// Canonical text form of a validated config (show-config output).
std::string format_config(const ExperimentConfig& config);

struct MethodOutcome {
  bool ok = false;
  std::string error;
  HermitianCov ccm;
  Scalar solve_seconds = 0.0;
  // populated by the gridless methods
  int mm_iterations = 0;
  std::vector<Scalar> surrogate_objectives;
  bool solver_converged = true;
};

/// One Monte Carlo trial: draw K snapshots with the given seed and estimate
/// the CCM with every configured method. A per-method failure is captured in
/// its outcome and does not disturb the other methods.
struct TrialResult {
  std::uint64_t seed = 0;
  std::map<Method, MethodOutcome> outcomes;
};

TrialResult run_single_trial(const ExperimentConfig& config,
                             const std::vector<ClutterPatch>& scenario,
                             const HermitianCov& exact,
                             const SteeringDictionary* dict,
                             std::uint64_t seed);

struct RunArtifacts {
  std::vector<std::string> files;  // paths relative to output_dir
  std::string manifest_path;
  std::vector<std::string> method_failures;  // "run <r>: <method>: <error>"
  bool all_methods_ok = true;
};

/// Runs the Monte Carlo protocol (seed = base_seed + r), averages SINR-loss
/// curves and eigenspectra in dB and spectrum maps in linear power, and
/// writes CSVs, graymaps and the manifest under config.output_dir.
RunArtifacts run_experiment(const ExperimentConfig& config);

/// CSV with a header row; values are written with "%.12g".
void emit_csv(const std::string& path,
              const std::vector<std::string>& column_names,
              const RealMatrix& columns);

/// Dense CSV grid plus an ASCII portable graymap (rows follow the Doppler
/// grid). Graymap pixels map dB-relative-to-peak clipped at [-50, 0] onto
/// 0..255.
void emit_heatmap(const std::string& csv_path, const std::string& pgm_path,
                  const SpectrumMap& map);

/// FNV-1a 64-bit content hash, hex encoded.
std::string fnv1a64_hex(const std::string& bytes);

/// Compares same-named CSV files in two directories cell by cell.
/// Returns the list of human-readable differences (empty when equal within
/// the tolerance).
std::vector<std::string> compare_csv_dirs(const std::string& dir_a,
                                          const std::string& dir_b,
                                          Scalar tolerance);

}  // namespace ramstap
