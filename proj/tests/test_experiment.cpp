#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "ramstap/experiment.hpp"

using namespace ramstap;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / name;
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string write_config(const fs::path& dir, const std::string& body) {
  const fs::path p = dir / "test.cfg";
  std::ofstream out(p);
  out << body;
  return p.string();
}

// small scene so the full method suite stays fast
const char* kTinyConfig = R"(
# tiny experiment for tests
[radar]
num_pulses = 4
num_elements = 4
num_patches = 90
cnr_db = 30

[experiment]
methods = optimal,smi,focuss
num_snapshots = 2
monte_carlo_runs = 2
base_seed = 77
output_dir = {OUT}

[stap]
doppler_points = 21
spectrum_points = 16

[focuss]
oversample_spatial = 2
oversample_doppler = 2

[ram]
zeta_start = 8.0
zeta_decay = 0.5
)";

std::string tiny_config(const TempDir& dir, const std::string& out_name) {
  std::string body = kTinyConfig;
  const std::string token = "{OUT}";
  body.replace(body.find(token), token.size(), (dir.path / out_name).string());
  return write_config(dir.path, body);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("load_config: valid config round-trips") {
  TempDir dir("ramstap_cfg_ok");
  const ExperimentConfig config = load_config(tiny_config(dir, "out"));
  CHECK(config.radar.num_pulses == 4);
  CHECK(config.radar.cnr_db == 30.0);
  CHECK(config.methods.size() == 3);
  CHECK(config.num_snapshots == 2);
  CHECK(config.monte_carlo_runs == 2);
  CHECK(config.base_seed == 77);
  CHECK(config.focuss.oversample_spatial == 2);
  // unset values fall back to defaults
  CHECK(config.ram.zeta == 1.0);
  CHECK(config.ram.zeta_start == 8.0);
  CHECK(config.ram.zeta_decay == 0.5);
  CHECK(config.effective_loading() == config.radar.noise_power);
  CHECK_NOTHROW(format_config(config));
}

TEST_CASE("load_config: diagnostics") {
  TempDir dir("ramstap_cfg_bad");
  SUBCASE("zero snapshots is rejected naming the field") {
    const std::string path = write_config(dir.path,
                                          "[experiment]\nnum_snapshots = 0\n");
    CHECK_THROWS_WITH_AS(load_config(path),
                         doctest::Contains("num_snapshots"), ConfigError);
  }
  SUBCASE("unknown keys are rejected with a line number") {
    const std::string path =
        write_config(dir.path, "[radar]\nnum_pulses = 8\nfoo = 1\n");
    CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains(":3:"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains("foo"),
                         ConfigError);
  }
  SUBCASE("unknown sections are rejected") {
    const std::string path = write_config(dir.path, "[nonsense]\nx = 1\n");
    CHECK_THROWS_AS(load_config(path), ConfigError);
  }
  SUBCASE("unknown methods are rejected") {
    const std::string path =
        write_config(dir.path, "[experiment]\nmethods = optimal,sbl\n");
    CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains("sbl"),
                         ConfigError);
  }
  SUBCASE("malformed numbers carry the key name") {
    const std::string path = write_config(dir.path, "[radar]\nprf = fast\n");
    CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains("prf"),
                         ConfigError);
  }
}

TEST_CASE("emit_csv writes header plus one line per row") {
  TempDir dir("ramstap_csv");
  const fs::path p = dir.path / "curve.csv";
  RealMatrix table(101, 2);
  for (int i = 0; i < 101; ++i) {
    table(i, 0) = i;
    table(i, 1) = -0.5 * i;
  }
  emit_csv(p.string(), {"doppler", "loss_db_ram"}, table);
  const std::string text = slurp(p);
  CHECK(std::count(text.begin(), text.end(), '\n') == 102);
  CHECK(text.rfind("doppler,loss_db_ram\n", 0) == 0);

  RealMatrix bad(1, 1);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(emit_csv((dir.path / "bad.csv").string(), {"x"}, bad),
                  std::invalid_argument);
}

TEST_CASE("emit_heatmap: graymap levels and clipping") {
  TempDir dir("ramstap_pgm");
  SpectrumMap map;
  map.doppler_grid = uniform_frequency_grid(3);
  map.spatial_grid = uniform_frequency_grid(2);
  map.power.resize(3, 2);
  // peak, half-power, floor-clipped
  map.power << 1.0, 1.0, 1.0, 0.1, 1e-9, 1e-12;
  const fs::path csv = dir.path / "map.csv";
  const fs::path pgm = dir.path / "map.pgm";
  emit_heatmap(csv.string(), pgm.string(), map);

  const std::string text = slurp(pgm);
  CHECK(text.rfind("P2\n2 3\n255\n", 0) == 0);
  // peak pixel: 255; -10 dB pixel: 204; clipped pixels: 0
  CHECK(text.find("255 255") != std::string::npos);
  CHECK(text.find("204") != std::string::npos);
  CHECK(text.substr(text.size() - 4) == "0 0\n");

  SUBCASE("flat map is a constant graymap") {
    map.power.setConstant(0.25);
    emit_heatmap(csv.string(), pgm.string(), map);
    const std::string flat = slurp(pgm);
    for (const char* line : {"255 255\n"}) {
      CHECK(flat.find(line) != std::string::npos);
    }
    CHECK(flat.find(" 0") == std::string::npos);
  }
}

TEST_CASE("run_experiment: determinism, manifest, failure isolation") {
  TempDir dir("ramstap_run");
  const std::string cfg = tiny_config(dir, "out_a");

  ExperimentConfig config = load_config(cfg);
  const RunArtifacts a = run_experiment(config);
  CHECK(a.all_methods_ok);
  CHECK(a.files.size() == 2 + 2 * config.methods.size());

  SUBCASE("re-running reproduces byte-identical CSVs") {
    ExperimentConfig again = config;
    again.output_dir = (dir.path / "out_b").string();
    run_experiment(again);
    for (const std::string& name : a.files) {
      if (name.find(".csv") == std::string::npos) continue;
      CHECK(slurp(dir.path / "out_a" / name) == slurp(dir.path / "out_b" / name));
    }
    const auto diffs = compare_csv_dirs((dir.path / "out_a").string(),
                                        (dir.path / "out_b").string(), 0.0);
    CHECK(diffs.empty());
  }

  SUBCASE("manifest references every artifact with its content hash") {
    const std::string manifest = slurp(a.manifest_path);
    for (const std::string& name : a.files) {
      CHECK(manifest.find("\"" + name + "\"") != std::string::npos);
      const std::string hash =
          fnv1a64_hex(slurp(dir.path / "out_a" / name));
      CHECK(manifest.find(hash) != std::string::npos);
    }
  }

  SUBCASE("a singular method is isolated; the others still emit") {
    ExperimentConfig broken = config;
    broken.output_dir = (dir.path / "out_c").string();
    broken.loading = 0.0;  // SMI with K < NM becomes singular
    const RunArtifacts c = run_experiment(broken);
    CHECK_FALSE(c.all_methods_ok);
    CHECK_FALSE(c.method_failures.empty());
    CHECK(c.method_failures.front().find("smi") != std::string::npos);
    // optimal/focuss outputs still present and finite
    const std::string csv = slurp(fs::path(broken.output_dir) / "sinr_loss.csv");
    CHECK(csv.find("loss_db_optimal") != std::string::npos);
  }

  SUBCASE("compare_csv_dirs flags a perturbed cell") {
    ExperimentConfig again = config;
    again.output_dir = (dir.path / "out_d").string();
    run_experiment(again);
    const fs::path victim = fs::path(again.output_dir) / "sinr_loss.csv";
    std::string text = slurp(victim);
    text.insert(text.size() - 1, "9");  // perturb the last numeric cell
    std::ofstream(victim, std::ios::binary) << text;
    const auto diffs = compare_csv_dirs((dir.path / "out_a").string(),
                                        (dir.path / "out_d").string(), 1e-15);
    CHECK_FALSE(diffs.empty());
  }
}

TEST_CASE("method names round-trip") {
  for (Method m : {Method::kOptimal, Method::kSmi, Method::kFocuss,
                   Method::kAnm, Method::kRam}) {
    CHECK(method_from_name(method_name(m)) == m);
  }
  CHECK_FALSE(method_from_name("sbl").has_value());
}

TEST_CASE("fnv1a64 reference values") {
  // standard FNV-1a test vectors
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
}
