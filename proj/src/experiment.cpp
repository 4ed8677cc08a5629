#include "ramstap/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace ramstap {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string format_double(Scalar v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

struct ConfigLine {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

std::vector<ConfigLine> parse_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::vector<ConfigLine> lines;
  std::string section;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto comment = raw.find('#');
    std::string text = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') {
        throw ConfigError(path + ":" + std::to_string(number) + ": malformed section header");
      }
      section = trim(text.substr(1, text.size() - 2));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key = value");
    }
    ConfigLine line;
    line.section = section;
    line.key = trim(text.substr(0, eq));
    line.value = trim(text.substr(eq + 1));
    line.line = number;
    if (line.key.empty()) {
      throw ConfigError(path + ":" + std::to_string(number) + ": empty key");
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void bad_line(const std::string& path, const ConfigLine& line,
                           const std::string& what) {
  throw ConfigError(path + ":" + std::to_string(line.line) + ": " + what);
}

Scalar parse_double(const std::string& path, const ConfigLine& line) {
  try {
    std::size_t pos = 0;
    const Scalar v = std::stod(line.value, &pos);
    if (pos != line.value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    bad_line(path, line, "'" + line.key + "' expects a number, got '" + line.value + "'");
  }
}

long long parse_int(const std::string& path, const ConfigLine& line) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(line.value, &pos);
    if (pos != line.value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    bad_line(path, line, "'" + line.key + "' expects an integer, got '" + line.value + "'");
  }
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::kOptimal: return "optimal";
    case Method::kSmi: return "smi";
    case Method::kFocuss: return "focuss";
    case Method::kAnm: return "anm";
    case Method::kRam: return "ram";
  }
  return "?";
}

std::optional<Method> method_from_name(const std::string& name) {
  for (Method m : {Method::kOptimal, Method::kSmi, Method::kFocuss,
                   Method::kAnm, Method::kRam}) {
    if (name == method_name(m)) return m;
  }
  return std::nullopt;
}

Scalar ExperimentConfig::effective_target_spatial_freq() const {
  if (target_spatial_freq.has_value()) return *target_spatial_freq;
  return patch_frequencies(radar, radar.crab_angle).spatial;
}

void ExperimentConfig::validate() const {
  radar.validate();
  if (methods.empty()) throw std::invalid_argument("methods must be nonempty");
  if (num_snapshots < 1) throw std::invalid_argument("num_snapshots must be >= 1");
  if (monte_carlo_runs < 1) throw std::invalid_argument("monte_carlo_runs must be >= 1");
  if (doppler_points < 1) throw std::invalid_argument("doppler_points must be >= 1");
  if (spectrum_points < 1) throw std::invalid_argument("spectrum_points must be >= 1");
  if (output_dir.empty()) throw std::invalid_argument("output_dir must be nonempty");
  focuss.solver.validate();
  if (focuss.oversample_spatial < 1 || focuss.oversample_doppler < 1) {
    throw std::invalid_argument("focuss oversampling must be >= 1");
  }
  ram.validate();
  if (loading.has_value() && !(*loading >= 0.0)) {
    throw std::invalid_argument("loading must be >= 0");
  }
}

ExperimentConfig load_config(const std::string& path) {
  ExperimentConfig config;
  for (const ConfigLine& line : parse_lines(path)) {
    const std::string& s = line.section;
    const std::string& k = line.key;
    if (s == "radar") {
      if (k == "num_pulses") config.radar.num_pulses = static_cast<int>(parse_int(path, line));
      else if (k == "num_elements") config.radar.num_elements = static_cast<int>(parse_int(path, line));
      else if (k == "element_spacing") config.radar.element_spacing = parse_double(path, line);
      else if (k == "wavelength") config.radar.wavelength = parse_double(path, line);
      else if (k == "prf") config.radar.prf = parse_double(path, line);
      else if (k == "platform_speed") config.radar.platform_speed = parse_double(path, line);
      else if (k == "platform_height") config.radar.platform_height = parse_double(path, line);
      else if (k == "crab_angle_deg") config.radar.crab_angle = parse_double(path, line) * kPi / 180.0;
      else if (k == "noise_power") config.radar.noise_power = parse_double(path, line);
      else if (k == "cnr_db") config.radar.cnr_db = parse_double(path, line);
      else if (k == "num_patches") config.radar.num_patches = static_cast<int>(parse_int(path, line));
      else if (k == "range") config.radar.range = parse_double(path, line);
      else if (k == "range_resolution") config.radar.range_resolution = parse_double(path, line);
      else bad_line(path, line, "unknown key '" + k + "' in [radar]");
    } else if (s == "experiment") {
      if (k == "methods") {
        config.methods.clear();
        for (const std::string& name : split_list(line.value)) {
          const auto m = method_from_name(name);
          if (!m) bad_line(path, line, "unknown method '" + name + "'");
          config.methods.push_back(*m);
        }
      } else if (k == "num_snapshots") config.num_snapshots = static_cast<int>(parse_int(path, line));
      else if (k == "monte_carlo_runs") config.monte_carlo_runs = static_cast<int>(parse_int(path, line));
      else if (k == "base_seed") config.base_seed = static_cast<std::uint64_t>(parse_int(path, line));
      else if (k == "output_dir") config.output_dir = line.value;
      else bad_line(path, line, "unknown key '" + k + "' in [experiment]");
    } else if (s == "stap") {
      if (k == "loading") config.loading = parse_double(path, line);
      else if (k == "target_spatial_freq") config.target_spatial_freq = parse_double(path, line);
      else if (k == "doppler_points") config.doppler_points = static_cast<int>(parse_int(path, line));
      else if (k == "spectrum_points") config.spectrum_points = static_cast<int>(parse_int(path, line));
      else bad_line(path, line, "unknown key '" + k + "' in [stap]");
    } else if (s == "focuss") {
      if (k == "lambda") config.focuss.solver.lambda = parse_double(path, line);
      else if (k == "p") config.focuss.solver.p = parse_double(path, line);
      else if (k == "max_iterations") config.focuss.solver.max_iterations = static_cast<int>(parse_int(path, line));
      else if (k == "tolerance") config.focuss.solver.tolerance = parse_double(path, line);
      else if (k == "oversample_spatial") config.focuss.oversample_spatial = static_cast<int>(parse_int(path, line));
      else if (k == "oversample_doppler") config.focuss.oversample_doppler = static_cast<int>(parse_int(path, line));
      else bad_line(path, line, "unknown key '" + k + "' in [focuss]");
    } else if (s == "ram") {
      if (k == "zeta") config.ram.zeta = parse_double(path, line);
      else if (k == "zeta_decay") config.ram.zeta_decay = parse_double(path, line);
      else if (k == "zeta_start") config.ram.zeta_start = parse_double(path, line);
      else if (k == "max_mm_iterations") config.ram.max_mm_iterations = static_cast<int>(parse_int(path, line));
      else if (k == "mm_tolerance") config.ram.mm_tolerance = parse_double(path, line);
      else if (k == "epsilon") {
        if (line.value == "auto") config.ram.epsilon_total.reset();
        else config.ram.epsilon_total = parse_double(path, line);
      }
      else if (k == "sdp_penalty") config.ram.sdp.penalty = parse_double(path, line);
      else if (k == "sdp_over_relaxation") config.ram.sdp.over_relaxation = parse_double(path, line);
      else if (k == "sdp_tolerance") config.ram.sdp.tolerance = parse_double(path, line);
      else if (k == "sdp_max_iterations") config.ram.sdp.max_iterations = static_cast<int>(parse_int(path, line));
      else bad_line(path, line, "unknown key '" + k + "' in [ram]");
    } else if (s.empty()) {
      bad_line(path, line, "key '" + k + "' outside any [section]");
    } else {
      bad_line(path, line, "unknown section [" + s + "]");
    }
  }
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return config;
}

std::string format_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "[radar]\n"
      << "num_pulses = " << config.radar.num_pulses << "\n"
      << "num_elements = " << config.radar.num_elements << "\n"
      << "element_spacing = " << format_double(config.radar.element_spacing) << "\n"
      << "wavelength = " << format_double(config.radar.wavelength) << "\n"
      << "prf = " << format_double(config.radar.prf) << "\n"
      << "platform_speed = " << format_double(config.radar.platform_speed) << "\n"
      << "platform_height = " << format_double(config.radar.platform_height) << "\n"
      << "crab_angle_deg = " << format_double(config.radar.crab_angle * 180.0 / kPi) << "\n"
      << "noise_power = " << format_double(config.radar.noise_power) << "\n"
      << "cnr_db = " << format_double(config.radar.cnr_db) << "\n"
      << "num_patches = " << config.radar.num_patches << "\n"
      << "range = " << format_double(config.radar.range) << "\n"
      << "range_resolution = " << format_double(config.radar.range_resolution) << "\n\n";
  out << "[experiment]\nmethods = ";
  for (std::size_t i = 0; i < config.methods.size(); ++i) {
    out << (i ? "," : "") << method_name(config.methods[i]);
  }
  out << "\nnum_snapshots = " << config.num_snapshots << "\n"
      << "monte_carlo_runs = " << config.monte_carlo_runs << "\n"
      << "base_seed = " << config.base_seed << "\n"
      << "output_dir = " << config.output_dir << "\n\n";
  out << "[stap]\n"
      << "loading = " << format_double(config.effective_loading()) << "\n"
      << "target_spatial_freq = " << format_double(config.effective_target_spatial_freq()) << "\n"
      << "doppler_points = " << config.doppler_points << "\n"
      << "spectrum_points = " << config.spectrum_points << "\n\n";
  out << "[focuss]\n"
      << "lambda = " << format_double(config.focuss.solver.lambda) << "\n"
      << "p = " << format_double(config.focuss.solver.p) << "\n"
      << "max_iterations = " << config.focuss.solver.max_iterations << "\n"
      << "tolerance = " << format_double(config.focuss.solver.tolerance) << "\n"
      << "oversample_spatial = " << config.focuss.oversample_spatial << "\n"
      << "oversample_doppler = " << config.focuss.oversample_doppler << "\n\n";
  out << "[ram]\n"
      << "zeta = " << format_double(config.ram.zeta) << "\n";
  if (config.ram.zeta_decay != 1.0) {
    out << "zeta_decay = " << format_double(config.ram.zeta_decay) << "\n";
  }
  if (config.ram.zeta_start) {
    out << "zeta_start = " << format_double(*config.ram.zeta_start) << "\n";
  }
  out << "max_mm_iterations = " << config.ram.max_mm_iterations << "\n"
      << "mm_tolerance = " << format_double(config.ram.mm_tolerance) << "\n"
      << "epsilon = "
      << (config.ram.epsilon_total ? format_double(*config.ram.epsilon_total)
                                   : std::string("auto"))
      << "\n"
      << "sdp_penalty = " << format_double(config.ram.sdp.penalty) << "\n"
      << "sdp_over_relaxation = " << format_double(config.ram.sdp.over_relaxation) << "\n"
      << "sdp_tolerance = " << format_double(config.ram.sdp.tolerance) << "\n"
      << "sdp_max_iterations = " << config.ram.sdp.max_iterations << "\n";
  return out.str();
}

TrialResult run_single_trial(const ExperimentConfig& config,
                             const std::vector<ClutterPatch>& scenario,
                             const HermitianCov& exact,
                             const SteeringDictionary* dict,
                             std::uint64_t seed) {
  TrialResult trial;
  trial.seed = seed;
  const SnapshotSet set =
      draw_snapshots(scenario, config.radar, config.num_snapshots, seed);

  for (Method m : config.methods) {
    MethodOutcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (m) {
        case Method::kOptimal:
          outcome.ccm = exact;
          break;
        case Method::kSmi:
          outcome.ccm = smi_ccm(set);
          break;
        case Method::kFocuss: {
          if (dict == nullptr) throw std::runtime_error("focuss requires a dictionary");
          const AngleDopplerProfile profile =
              focuss_solve(*dict, set, config.focuss.solver);
          outcome.ccm = ongrid_ccm(profile, *dict, config.radar.noise_power);
          outcome.solver_converged = profile.converged;
          break;
        }
        case Method::kAnm: {
          const RamResult res =
              anm_solve(set, config.radar.num_pulses, config.radar.num_elements,
                        config.radar.noise_power, config.ram);
          outcome.ccm = ccm_from_toeplitz(res, config.radar.noise_power).cov;
          outcome.mm_iterations = res.mm_iterations;
          outcome.surrogate_objectives = res.surrogate_objectives;
          outcome.solver_converged = res.converged;
          break;
        }
        case Method::kRam: {
          const RamResult res =
              ram_solve(set, config.radar.num_pulses, config.radar.num_elements,
                        config.radar.noise_power, config.ram);
          outcome.ccm = ccm_from_toeplitz(res, config.radar.noise_power).cov;
          outcome.mm_iterations = res.mm_iterations;
          outcome.surrogate_objectives = res.surrogate_objectives;
          outcome.solver_converged = res.converged;
          break;
        }
      }
      outcome.ok = true;
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.error = e.what();
    }
    outcome.solve_seconds =
        std::chrono::duration<Scalar>(std::chrono::steady_clock::now() - start)
            .count();
    trial.outcomes.emplace(m, std::move(outcome));
  }
  return trial;
}

void emit_csv(const std::string& path,
              const std::vector<std::string>& column_names,
              const RealMatrix& columns) {
  if (static_cast<Eigen::Index>(column_names.size()) != columns.cols()) {
    throw std::invalid_argument("emit_csv: header/column mismatch");
  }
  if (!columns.allFinite()) {
    throw std::invalid_argument("emit_csv: data must be finite");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  for (std::size_t i = 0; i < column_names.size(); ++i) {
    out << (i ? "," : "") << column_names[i];
  }
  out << "\n";
  for (Eigen::Index r = 0; r < columns.rows(); ++r) {
    for (Eigen::Index c = 0; c < columns.cols(); ++c) {
      out << (c ? "," : "") << format_double(columns(r, c));
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

void emit_heatmap(const std::string& csv_path, const std::string& pgm_path,
                  const SpectrumMap& map) {
  if (!map.power.allFinite() || map.power.minCoeff() < 0.0) {
    throw std::invalid_argument("emit_heatmap: power must be finite and >= 0");
  }
  {
    std::vector<std::string> names;
    names.reserve(1 + map.spatial_grid.size());
    names.push_back("doppler");
    for (Eigen::Index j = 0; j < map.spatial_grid.size(); ++j) {
      names.push_back("fs_" + format_double(map.spatial_grid(j)));
    }
    RealMatrix table(map.power.rows(), map.power.cols() + 1);
    table.col(0) = map.doppler_grid;
    table.rightCols(map.power.cols()) = map.power;
    emit_csv(csv_path, names, table);
  }

  const Scalar peak = map.power.maxCoeff();
  std::ofstream out(pgm_path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_heatmap: cannot open " + pgm_path);
  out << "P2\n" << map.power.cols() << " " << map.power.rows() << "\n255\n";
  for (Eigen::Index i = 0; i < map.power.rows(); ++i) {
    for (Eigen::Index j = 0; j < map.power.cols(); ++j) {
      Scalar db = -50.0;
      if (peak > 0.0 && map.power(i, j) > 0.0) {
        db = std::max(-50.0, std::min(0.0, 10.0 * std::log10(map.power(i, j) / peak)));
      }
      const int pixel = static_cast<int>(std::lround((db + 50.0) / 50.0 * 255.0));
      out << (j ? " " : "") << pixel;
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("emit_heatmap: write failed for " + pgm_path);
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

RunArtifacts run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto wall_start = std::chrono::steady_clock::now();

  const std::vector<ClutterPatch> scenario =
      make_clutter_scenario(config.radar, config.base_seed);
  const HermitianCov exact = exact_ccm(scenario, config.radar);

  const bool needs_dict =
      std::find(config.methods.begin(), config.methods.end(),
                Method::kFocuss) != config.methods.end();
  SteeringDictionary dict;
  if (needs_dict) {
    dict = build_dictionary(config.radar, config.focuss.oversample_spatial,
                            config.focuss.oversample_doppler);
  }

  const RealVector doppler_grid = uniform_frequency_grid(config.doppler_points);
  const RealVector map_doppler = uniform_frequency_grid(config.spectrum_points);
  const RealVector map_spatial = uniform_frequency_grid(config.spectrum_points);
  const Scalar target_fs = config.effective_target_spatial_freq();
  const int nm = config.radar.dof();
  const int runs = config.monte_carlo_runs;

  // Accumulators: SINR loss and eigenspectra average in dB, maps in linear
  // power. Per-method run counts track failures.
  std::map<Method, RealVector> loss_sum, eig_sum;
  std::map<Method, RealMatrix> map_sum;
  std::map<Method, int> ok_runs;
  std::map<Method, Scalar> seconds;
  std::map<Method, std::vector<int>> mm_iteration_log;
  std::map<Method, bool> surrogate_monotone;
  for (Method m : config.methods) {
    loss_sum[m] = RealVector::Zero(doppler_grid.size());
    eig_sum[m] = RealVector::Zero(nm);
    map_sum[m] = RealMatrix::Zero(map_doppler.size(), map_spatial.size());
    ok_runs[m] = 0;
    seconds[m] = 0.0;
    surrogate_monotone[m] = true;
  }

  RunArtifacts artifacts;

  for (int r = 0; r < runs; ++r) {
    const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(r);
    const TrialResult trial = run_single_trial(
        config, scenario, exact, needs_dict ? &dict : nullptr, seed);

    for (const auto& [m, outcome] : trial.outcomes) {
      seconds[m] += outcome.solve_seconds;
      if (!outcome.ok) {
        artifacts.all_methods_ok = false;
        artifacts.method_failures.push_back(
            "run " + std::to_string(r) + ": " + method_name(m) + ": " +
            outcome.error);
        continue;
      }
      const Scalar loading =
          m == Method::kOptimal ? 0.0 : config.effective_loading();
      try {
        const SinrLossCurve curve =
            sinr_loss_curve(outcome.ccm, exact, config.radar, doppler_grid,
                            target_fs, loading);
        loss_sum[m] += curve.loss_db;
        eig_sum[m] += eigenspectrum_db(outcome.ccm);
        const SpectrumMap map =
            capon_spectrum(outcome.ccm, map_doppler, map_spatial,
                           config.radar.num_pulses, config.radar.num_elements,
                           loading);
        map_sum[m] += map.power;
        ok_runs[m] += 1;
      } catch (const std::exception& e) {
        artifacts.all_methods_ok = false;
        artifacts.method_failures.push_back(
            "run " + std::to_string(r) + ": " + method_name(m) +
            " (evaluation): " + e.what());
        continue;
      }
      if (m == Method::kAnm || m == Method::kRam) {
        mm_iteration_log[m].push_back(outcome.mm_iterations);
        const auto& surr = outcome.surrogate_objectives;
        for (std::size_t i = 1; i < surr.size(); ++i) {
          if (surr[i] > surr[i - 1] + 1e-5 * std::abs(surr[i - 1])) {
            surrogate_monotone[m] = false;
          }
        }
      }
    }
  }

  fs::create_directories(config.output_dir);
  const auto emit = [&](const std::string& name,
                        const std::vector<std::string>& names,
                        const RealMatrix& table) {
    emit_csv((fs::path(config.output_dir) / name).string(), names, table);
    artifacts.files.push_back(name);
  };

  // SINR-loss curves
  {
    std::vector<std::string> names = {"doppler"};
    RealMatrix table(doppler_grid.size(),
                     1 + static_cast<Eigen::Index>(config.methods.size()));
    table.col(0) = doppler_grid;
    Eigen::Index col = 1;
    for (Method m : config.methods) {
      names.push_back(std::string("loss_db_") + method_name(m));
      table.col(col++) = ok_runs[m] > 0
                             ? RealVector(loss_sum[m] / ok_runs[m])
                             : RealVector(RealVector::Zero(doppler_grid.size()));
    }
    emit("sinr_loss.csv", names, table);
  }

  // Eigenspectra
  {
    std::vector<std::string> names = {"index"};
    RealMatrix table(nm, 1 + static_cast<Eigen::Index>(config.methods.size()));
    for (int i = 0; i < nm; ++i) table(i, 0) = i + 1;
    Eigen::Index col = 1;
    for (Method m : config.methods) {
      names.push_back(std::string("eig_db_") + method_name(m));
      table.col(col++) = ok_runs[m] > 0 ? RealVector(eig_sum[m] / ok_runs[m])
                                        : RealVector(RealVector::Zero(nm));
    }
    emit("eigenspectrum.csv", names, table);
  }

  // Spectrum heatmaps (per method)
  for (Method m : config.methods) {
    SpectrumMap map;
    map.doppler_grid = map_doppler;
    map.spatial_grid = map_spatial;
    map.power = ok_runs[m] > 0
                    ? RealMatrix(map_sum[m] / ok_runs[m])
                    : RealMatrix(RealMatrix::Zero(map_doppler.size(),
                                                  map_spatial.size()));
    const std::string base = std::string("spectrum_") + method_name(m);
    emit_heatmap((fs::path(config.output_dir) / (base + ".csv")).string(),
                 (fs::path(config.output_dir) / (base + ".pgm")).string(), map);
    artifacts.files.push_back(base + ".csv");
    artifacts.files.push_back(base + ".pgm");
  }

  // Manifest: config echo + hashes of every emitted file, written atomically.
  nlohmann::json manifest;
  manifest["tool"] = "ramstap";
  manifest["version"] = kVersion;
  manifest["config"] = format_config(config);
  manifest["config_hash"] = fnv1a64_hex(format_config(config));
  manifest["base_seed"] = config.base_seed;
  manifest["monte_carlo_runs"] = runs;
  manifest["seeds"] = {config.base_seed, config.base_seed + runs - 1};
  manifest["averaging"] =
      "curves and eigenspectra averaged in dB across runs; spectrum maps "
      "averaged in linear power";
  manifest["method_failures"] = artifacts.method_failures;
  nlohmann::json files = nlohmann::json::array();
  for (const std::string& name : artifacts.files) {
    const std::string full = (fs::path(config.output_dir) / name).string();
    files.push_back({{"path", name}, {"fnv1a64", fnv1a64_hex(read_file(full))}});
  }
  manifest["files"] = files;
  nlohmann::json stats;
  for (Method m : config.methods) {
    nlohmann::json entry;
    entry["ok_runs"] = ok_runs[m];
    entry["solve_seconds_total"] = seconds[m];
    if (m == Method::kAnm || m == Method::kRam) {
      entry["mm_iterations"] = mm_iteration_log[m];
      entry["surrogate_monotone"] = surrogate_monotone[m];
    }
    stats[method_name(m)] = entry;
  }
  manifest["methods"] = stats;
  manifest["wall_seconds"] = std::chrono::duration<Scalar>(
                                 std::chrono::steady_clock::now() - wall_start)
                                 .count();

  const fs::path manifest_path = fs::path(config.output_dir) / "manifest.json";
  const fs::path tmp_path = fs::path(config.output_dir) / "manifest.json.tmp";
  {
    std::ofstream out(tmp_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp_path.string());
    out << manifest.dump(2) << "\n";
  }
  fs::rename(tmp_path, manifest_path);
  artifacts.manifest_path = manifest_path.string();
  return artifacts;
}

std::vector<std::string> compare_csv_dirs(const std::string& dir_a,
                                          const std::string& dir_b,
                                          Scalar tolerance) {
  std::vector<std::string> diffs;
  if (!fs::is_directory(dir_a) || !fs::is_directory(dir_b)) {
    throw std::runtime_error("compare: both arguments must be directories");
  }
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir_a)) {
    if (entry.path().extension() == ".csv") {
      names.push_back(entry.path().filename().string());
    }
  }
  std::sort(names.begin(), names.end());
  for (const std::string& name : names) {
    const fs::path pa = fs::path(dir_a) / name;
    const fs::path pb = fs::path(dir_b) / name;
    if (!fs::exists(pb)) {
      diffs.push_back(name + ": missing in " + dir_b);
      continue;
    }
    std::ifstream fa(pa), fb(pb);
    std::string la, lb;
    int line = 0;
    bool file_diff = false;
    while (true) {
      const bool ga = static_cast<bool>(std::getline(fa, la));
      const bool gb = static_cast<bool>(std::getline(fb, lb));
      ++line;
      if (!ga && !gb) break;
      if (ga != gb) {
        diffs.push_back(name + ": different number of lines");
        file_diff = true;
        break;
      }
      if (la == lb) continue;
      if (line == 1) {
        diffs.push_back(name + ":1: header mismatch");
        file_diff = true;
        break;
      }
      const auto ca = split_list(la);
      const auto cb = split_list(lb);
      if (ca.size() != cb.size()) {
        diffs.push_back(name + ":" + std::to_string(line) + ": column count mismatch");
        file_diff = true;
        break;
      }
      for (std::size_t i = 0; i < ca.size() && !file_diff; ++i) {
        Scalar va = 0, vb = 0;
        try {
          va = std::stod(ca[i]);
          vb = std::stod(cb[i]);
        } catch (const std::exception&) {
          if (ca[i] != cb[i]) {
            diffs.push_back(name + ":" + std::to_string(line) + ": cell mismatch");
            file_diff = true;
          }
          continue;
        }
        if (std::abs(va - vb) > tolerance) {
          diffs.push_back(name + ":" + std::to_string(line) + ": |" + ca[i] +
                          " - " + cb[i] + "| > tolerance");
          file_diff = true;
        }
      }
      if (file_diff) break;
    }
  }
  return diffs;
}

}  // namespace ramstap
