#include <doctest.h>

#include <cmath>
#include <limits>

#include "ramstap/radar_scene.hpp"

using namespace ramstap;

namespace {

RadarConfig paper_config(Scalar crab_angle = 0.0) {
  RadarConfig c;  // defaults already carry the benchmark scenario
  c.crab_angle = crab_angle;
  return c;
}

}  // namespace

TEST_CASE("time_steering basics") {
  const CxVector s0 = time_steering(0.0, 3);
  CHECK((s0 - CxVector::Ones(3)).norm() == doctest::Approx(0.0));

  const CxVector s1 = time_steering(0.5, 2);
  CHECK(std::abs(s1(0) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(s1(1) - Complex(-1, 0)) < 1e-15);

  const CxVector s2 = time_steering(0.25, 4);
  CHECK(std::abs(s2(1) - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(s2(2) - Complex(-1, 0)) < 1e-15);
  CHECK(std::abs(s2(3) - Complex(0, -1)) < 1e-15);

  CHECK_THROWS_AS(time_steering(0.1, 0), std::invalid_argument);
}

TEST_CASE("space_steering basics") {
  CHECK((space_steering(0.0, 2) - CxVector::Ones(2)).norm() == doctest::Approx(0.0));
  CHECK(std::abs(space_steering(0.25, 2)(1) - Complex(0, 1)) < 1e-15);
  const CxVector s = space_steering(-0.25, 3);
  CHECK(std::abs(s(1) - Complex(0, -1)) < 1e-15);
  CHECK(std::abs(s(2) - Complex(-1, 0)) < 1e-15);
  CHECK_THROWS_AS(space_steering(0.1, 0), std::invalid_argument);
}

TEST_CASE("space_time_steering: Kronecker structure and normalization") {
  SUBCASE("trivial examples") {
    CHECK((space_time_steering(0, 0, 2, 2) - CxVector::Ones(4)).norm() == doctest::Approx(0.0));
    const CxVector s = space_time_steering(0.25, 0.25, 2, 2);
    CHECK(std::abs(s(0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(s(1) - Complex(0, 1)) < 1e-15);
    CHECK(std::abs(s(2) - Complex(0, 1)) < 1e-15);
    CHECK(std::abs(s(3) - Complex(-1, 0)) < 1e-15);
    const CxVector t = space_time_steering(0.5, 0, 2, 3);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(t(i) - Complex(1, 0)) < 1e-15);
    for (int i = 3; i < 6; ++i) CHECK(std::abs(t(i) - Complex(-1, 0)) < 1e-15);
  }
  SUBCASE("agrees with the explicit Kronecker product") {
    for (auto [fd, fs] : {std::pair{0.123, -0.345}, std::pair{-0.49, 0.5}}) {
      const CxVector sd = time_steering(fd, 3);
      const CxVector ss = space_steering(fs, 4);
      const CxVector s = space_time_steering(fd, fs, 3, 4);
      for (int n = 0; n < 3; ++n)
        for (int m = 0; m < 4; ++m)
          CHECK(std::abs(s(n * 4 + m) - sd(n) * ss(m)) < 1e-14);
    }
  }
  SUBCASE("unit modulus and squared norm NM") {
    const CxVector s = space_time_steering(0.3, 0.7, 5, 3);
    for (int i = 0; i < s.size(); ++i) CHECK(std::abs(s(i)) == doctest::Approx(1.0));
    CHECK(s.squaredNorm() == doctest::Approx(15.0));
    CHECK(std::abs(s(0) - Complex(1, 0)) < 1e-15);
  }
  CHECK_THROWS_AS(space_time_steering(0, 0, 0, 2), std::invalid_argument);
}

TEST_CASE("wrap_frequency maps into (-0.5, 0.5]") {
  CHECK(wrap_frequency(0.5) == doctest::Approx(0.5));
  CHECK(wrap_frequency(-0.5) == doctest::Approx(0.5));
  CHECK(wrap_frequency(0.75) == doctest::Approx(-0.25));
  CHECK(wrap_frequency(1.0) == doctest::Approx(0.0));
  CHECK(wrap_frequency(-1.25) == doctest::Approx(-0.25));
  CHECK(wrap_frequency(0.49) == doctest::Approx(0.49));
}

TEST_CASE("patch_frequencies: benchmark-scenario values") {
  const RadarConfig c = paper_config();
  // hand substitution: cos(theta) = sqrt(1 - (9/20)^2), 2 v / (lambda f_r) =
  // 100 / 200.1, d / lambda = 1/2
  const Scalar cos_theta = std::sqrt(1.0 - 0.2025);
  const Scalar fd_expect = 100.0 / 200.1 * cos_theta;
  const Scalar fs_expect = 0.5 * cos_theta;

  SUBCASE("along the array axis") {
    const PatchFrequencies f = patch_frequencies(c, 0.0);
    CHECK(f.doppler == doctest::Approx(fd_expect).epsilon(1e-12));
    CHECK(f.spatial == doctest::Approx(fs_expect).epsilon(1e-12));
    // frozen values of the substitution above
    CHECK(f.doppler == doctest::Approx(0.446291).epsilon(1e-5));
    CHECK(f.spatial == doctest::Approx(0.446514).epsilon(1e-5));
  }
  SUBCASE("broadside gives zero frequencies when sidelooking") {
    const PatchFrequencies f = patch_frequencies(c, kPi / 2.0);
    CHECK(std::abs(f.doppler) < 1e-12);
    CHECK(std::abs(f.spatial) < 1e-12);
  }
  SUBCASE("forward-looking, patch abeam of the array") {
    const RadarConfig fwd = paper_config(kPi / 2.0);
    const PatchFrequencies f = patch_frequencies(fwd, kPi / 2.0);
    CHECK(std::abs(f.doppler) < 1e-12);
    CHECK(f.spatial == doctest::Approx(0.5 * cos_theta).epsilon(1e-12));
  }
}

TEST_CASE("sidelooking ridge is collinear, forward-looking ridge is an ellipse arc") {
  const RadarConfig side = paper_config(0.0);
  const Scalar beta = 2.0 * side.platform_speed / (side.element_spacing * side.prf);
  for (int i = 0; i < 50; ++i) {
    const Scalar phi = (i + 0.5) * kPi / 50.0;
    const PatchFrequencies f = patch_frequencies(side, phi);
    CHECK(std::abs(f.doppler - beta * f.spatial) < 1e-12);
  }

  const RadarConfig fwd = paper_config(kPi / 2.0);
  const Scalar cos_theta = std::cos(fwd.elevation());
  const Scalar ad = 2.0 * fwd.platform_speed / (fwd.wavelength * fwd.prf) * cos_theta;
  const Scalar as = fwd.element_spacing / fwd.wavelength * cos_theta;
  bool collinear = true;
  PatchFrequencies prev = patch_frequencies(fwd, 0.25);
  for (int i = 0; i < 50; ++i) {
    const Scalar phi = (i + 0.5) * kPi / 50.0;
    const PatchFrequencies f = patch_frequencies(fwd, phi);
    // on the ellipse (f_d/a_d)^2 + (f_s/a_s)^2 = 1
    const Scalar r = f.doppler * f.doppler / (ad * ad) + f.spatial * f.spatial / (as * as);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-10));
    if (std::abs(f.doppler * prev.spatial - f.spatial * prev.doppler) > 1e-6) {
      collinear = false;
    }
  }
  CHECK_FALSE(collinear);
}

TEST_CASE("make_clutter_scenario: power normalization and layout") {
  const RadarConfig c = paper_config();
  const auto patches = make_clutter_scenario(c, 7);
  REQUIRE(patches.size() == 360);
  Scalar total = 0.0;
  for (const auto& p : patches) {
    CHECK(p.power == doctest::Approx(1e4 / 360.0).epsilon(1e-12));
    CHECK(p.doppler_freq > -0.5);
    CHECK(p.doppler_freq <= 0.5);
    CHECK(p.spatial_freq > -0.5);
    CHECK(p.spatial_freq <= 0.5);
    total += p.power;
  }
  CHECK(total == doctest::Approx(1e4).epsilon(1e-9));

  SUBCASE("single patch sits at the midpoint of the semicircle") {
    RadarConfig one = c;
    one.num_patches = 1;
    const auto single = make_clutter_scenario(one, 0);
    REQUIRE(single.size() == 1);
    CHECK(single[0].azimuth == doctest::Approx(kPi / 2.0));
  }
  SUBCASE("minus-infinity CNR zeroes the clutter") {
    RadarConfig quiet = c;
    quiet.cnr_db = -std::numeric_limits<Scalar>::infinity();
    for (const auto& p : make_clutter_scenario(quiet, 0)) CHECK(p.power == 0.0);
  }
}

TEST_CASE("draw_snapshots: determinism and power levels") {
  const RadarConfig c = paper_config();
  const auto scenario = make_clutter_scenario(c, 0);

  SUBCASE("same seed reproduces bit-identical snapshots") {
    const SnapshotSet a = draw_snapshots(scenario, c, 3, 12345);
    const SnapshotSet b = draw_snapshots(scenario, c, 3, 12345);
    REQUIRE(a.count() == b.count());
    for (int l = 0; l < a.count(); ++l) {
      CHECK((a.snapshots[l] - b.snapshots[l]).norm() == 0.0);
    }
    const SnapshotSet other = draw_snapshots(scenario, c, 3, 12346);
    CHECK((a.snapshots[0] - other.snapshots[0]).norm() > 0.0);
  }

  SUBCASE("pure noise has unit per-element power") {
    RadarConfig quiet = c;
    quiet.cnr_db = -std::numeric_limits<Scalar>::infinity();
    const auto empty = make_clutter_scenario(quiet, 0);
    const SnapshotSet set = draw_snapshots(empty, quiet, 400, 99);
    Scalar mean_power = 0.0;
    for (const Snapshot& x : set.snapshots) mean_power += x.squaredNorm();
    mean_power /= 400.0 * quiet.dof();
    CHECK(mean_power == doctest::Approx(1.0).epsilon(0.05));
  }

  SUBCASE("per-channel power matches noise plus total clutter") {
    const SnapshotSet set = draw_snapshots(scenario, c, 3, 2024);
    Scalar mean_power = 0.0;
    for (const Snapshot& x : set.snapshots) mean_power += x.squaredNorm();
    mean_power /= 3.0 * c.dof();
    // expected 1 + 1e4 subject to Monte Carlo scatter of 3 samples
    CHECK(mean_power > 0.5 * 10001.0);
    CHECK(mean_power < 2.0 * 10001.0);
  }
}

TEST_CASE("exact_ccm") {
  const RadarConfig c = paper_config();

  SUBCASE("empty scenario gives the noise floor") {
    const HermitianCov r = exact_ccm({}, c);
    CHECK((r.matrix - CxMatrix::Identity(64, 64)).norm() == doctest::Approx(0.0));
  }

  SUBCASE("single patch is a rank-one update") {
    std::vector<ClutterPatch> one(1);
    one[0].doppler_freq = 0.2;
    one[0].spatial_freq = -0.1;
    one[0].power = 5.0;
    const HermitianCov r = exact_ccm(one, c);
    Eigen::SelfAdjointEigenSolver<CxMatrix> eig(r.matrix);
    CHECK(eig.eigenvalues().maxCoeff() == doctest::Approx(5.0 * 64 + 1.0).epsilon(1e-10));
    CHECK(eig.eigenvalues()(0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.hermiticity_error() < 1e-12);
  }

  SUBCASE("benchmark scenario: Hermitian PSD with the sharp sidelooking cutoff") {
    const auto scenario = make_clutter_scenario(c, 0);
    const HermitianCov r = exact_ccm(scenario, c);
    CHECK(r.hermiticity_error() < 1e-12);
    Eigen::SelfAdjointEigenSolver<CxMatrix> eig(r.matrix, Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues().minCoeff() >= c.noise_power - 1e-8);
    // descending order for readability
    RealVector lambda = eig.eigenvalues().reverse();
    const int rank = brennan_rank(c);
    CHECK(rank == 15);
    // eigenvalue right after the Brennan rank collapses to the noise floor
    CHECK(10.0 * std::log10(lambda(rank - 1) / lambda(rank)) > 30.0);
    CHECK(lambda(rank) < 2.0 * c.noise_power);
  }
}

TEST_CASE("smi_ccm") {
  const RadarConfig c = paper_config();
  SUBCASE("single snapshot gives the rank-one outer product") {
    SnapshotSet set;
    set.snapshots.push_back(space_time_steering(0.1, 0.2, c.num_pulses, c.num_elements));
    const HermitianCov r = smi_ccm(set);
    const CxMatrix expected = set.snapshots[0] * set.snapshots[0].adjoint();
    CHECK((r.matrix - expected).norm() < 1e-12 * expected.norm());
  }
  SUBCASE("identical snapshots average to the same outer product") {
    SnapshotSet set;
    const CxVector x = space_time_steering(0.3, -0.25, c.num_pulses, c.num_elements);
    for (int i = 0; i < 4; ++i) set.snapshots.push_back(x);
    const HermitianCov r = smi_ccm(set);
    CHECK((r.matrix - x * x.adjoint()).norm() < 1e-12 * 64.0);
  }
  SUBCASE("empty set is an error") {
    CHECK_THROWS_AS(smi_ccm(SnapshotSet{}), std::invalid_argument);
  }
  SUBCASE("converges to the exact covariance with many samples") {
    RadarConfig small = c;
    small.num_patches = 90;  // keep the draw affordable
    const auto scenario = make_clutter_scenario(small, 0);
    const HermitianCov exact = exact_ccm(scenario, small);
    const SnapshotSet set = draw_snapshots(scenario, small, 5000, 31);
    const HermitianCov smi = smi_ccm(set);
    CHECK((smi.matrix - exact.matrix).norm() / exact.matrix.norm() < 0.1);
  }
}

TEST_CASE("brennan_rank") {
  CHECK(brennan_rank(paper_config()) == 15);

  RadarConfig tiny = paper_config();
  tiny.num_pulses = 1;
  tiny.num_elements = 1;
  CHECK(brennan_rank(tiny) == 1);

  RadarConfig still = paper_config();
  still.platform_speed = 0.0;
  CHECK(brennan_rank(still) == still.num_pulses);
}

TEST_CASE("config validation names the offending field") {
  RadarConfig bad = paper_config();
  bad.num_pulses = 0;
  CHECK_THROWS_WITH_AS(bad.validate(), "num_pulses must be >= 1", std::invalid_argument);
  bad = paper_config();
  bad.range = bad.platform_height - 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
