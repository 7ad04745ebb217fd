#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vcmass/beam.hpp"
#include "vcmass/errors.hpp"
#include "vcmass/hyperelastic.hpp"
#include "vcmass/signal.hpp"
#include "vcmass/space.hpp"

using namespace vcmass;

namespace {

const double kPi = std::numbers::pi;

// Fundamental frequency from the mean-crossing times of a near-sinusoidal
// series; robust against harmonics as long as the fundamental dominates.
double dominant_frequency(const std::vector<double>& t, const std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  std::vector<double> crossings;
  for (size_t i = 1; i < x.size(); ++i) {
    const double a = x[i - 1] - mean, b = x[i] - mean;
    if (a > 0 && b <= 0) crossings.push_back(t[i - 1] + a / (a - b) * (t[i] - t[i - 1]));
  }
  REQUIRE(crossings.size() >= 2);
  return static_cast<double>(crossings.size() - 1) / (crossings.back() - crossings.front());
}

BeamConfig compact_config() {
  BeamConfig cfg;
  cfg.nx = 4;
  cfg.ny = 2;
  cfg.nz = 1;
  cfg.safety = 0.5;
  return cfg;
}

}  // namespace

TEST_CASE("blackman window satisfies the endpoint and center identities exactly") {
  // Odd length with n-1 a power of two: the center angle is the double
  // nearest pi, where cos rounds to exactly -1.
  const Eigen::VectorXd w = blackman_window(9);
  CHECK(w[0] == 0.42 - 0.5 + 0.08);
  CHECK(w[8] == 0.42 - 0.5 + 0.08);
  CHECK(std::abs(w[0]) < 1e-16);
  CHECK(w[4] == 0.42 + 0.5 + 0.08);
  CHECK(w[4] == doctest::Approx(1.0).epsilon(1e-15));
  for (int i = 0; i < 9; ++i) {
    CHECK(w[i] == doctest::Approx(w[8 - i]).epsilon(1e-15));
    CHECK(w[i] <= 1.0);
  }
  CHECK(w[2] > 0.0);
  CHECK(w[2] < w[3]);
  CHECK_THROWS_AS(blackman_window(1), std::invalid_argument);
}

TEST_CASE("windowed transform pins an on-bin sinusoid to its bin") {
  const int n = 64;
  const double dt = 1e-3;
  const int k0 = 7;
  std::vector<double> t(n), x(n);
  for (int j = 0; j < n; ++j) {
    t[j] = j * dt;
    x[j] = std::sin(2.0 * kPi * k0 * j / n);
  }
  const auto spec = dft_blackman(t, x);
  REQUIRE(spec.size() == static_cast<size_t>(n / 2 + 1));
  CHECK(spec[k0].freq_hz == doctest::Approx(k0 / (n * dt)).epsilon(1e-12));

  size_t argmax = 0;
  for (size_t k = 0; k < spec.size(); ++k)
    if (spec[k].magnitude > spec[argmax].magnitude) argmax = k;
  CHECK(argmax == static_cast<size_t>(k0));

  // Blackman sidelobes sit near -58 dB; everything three or more bins from
  // the carrier must stay below -50 dB (measured: -72 dB on this signal).
  const double floor = spec[k0].magnitude * std::pow(10.0, -50.0 / 20.0);
  for (size_t k = 0; k < spec.size(); ++k)
    if (std::abs(static_cast<int>(k) - k0) >= 3) CHECK(spec[k].magnitude < floor);
}

TEST_CASE("windowed transform rejects malformed sampling") {
  std::vector<double> t(16), x(16, 1.0);
  for (int j = 0; j < 16; ++j) t[j] = 0.1 * j;

  std::vector<double> jittered = t;
  jittered[5] += 0.01;
  CHECK_THROWS_AS(dft_blackman(jittered, x), std::invalid_argument);

  CHECK_THROWS_AS(dft_blackman({0, 1, 2, 3}, {0, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(dft_blackman(t, std::vector<double>(15, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(dft_blackman(std::vector<double>(16, 2.5), x), std::invalid_argument);

  // A constant series peaks at the zero bin; the window main lobe spans
  // two neighbors, beyond which only sidelobes remain.
  const auto spec = dft_blackman(t, x);
  for (size_t k = 1; k < spec.size(); ++k) CHECK(spec[k].magnitude < spec[0].magnitude);
  for (size_t k = 3; k < spec.size(); ++k) CHECK(spec[k].magnitude < 0.01 * spec[0].magnitude);
}

TEST_CASE("beam arc displacement matches its closed form at anchor points") {
  const double R = 0.15;
  CHECK(beam_initial_displacement({0.0, 0.3, 0.007}, R).norm() < 1e-15 * R);

  const Eigen::Vector3d quarter = beam_initial_displacement({kPi * R / 2.0, 0.0, 0.0}, R);
  CHECK(quarter[0] == doctest::Approx(R * (1.0 - kPi / 2.0)).epsilon(1e-14));
  CHECK(quarter[1] == 0.0);
  CHECK(quarter[2] == doctest::Approx(R).epsilon(1e-14));

  for (double x : {0.05, 0.11, 0.2}) {
    const Eigen::Vector3d axis = beam_initial_displacement({x, 0.02, R}, R);
    CHECK(axis[0] == doctest::Approx(-x).epsilon(1e-14));
    CHECK(axis[2] == doctest::Approx(0.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(beam_initial_displacement({0.1, 0.0, 0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("beam mesh resolves the chamfer and clamps only the root face") {
  const BeamConfig cfg;  // 10x4x2 with the 0.005 chamfer on the y = W edge
  const Mesh mesh = generate_beam_mesh(cfg);
  CHECK(mesh.num_nodes() == 11 * 5 * 3);
  CHECK(mesh.num_elements() == 10 * 4 * 2);

  int n_dirichlet = 0;
  for (const auto& f : mesh.boundary_facets) {
    if (f.tag != BoundaryTag::dirichlet) continue;
    ++n_dirichlet;
    for (int q = 0; q < 4; ++q) {
      // All clamped facets lie in the x = 0 plane.
      const FacetPoint p = facet_point(mesh, f.element, f.face, 0.5 * Eigen::Vector2d::Random());
      CHECK(std::abs(p.x[0]) < 1e-12);
    }
  }
  CHECK(n_dirichlet == cfg.ny * cfg.nz);

  double zmax_cut = 0.0, zmax_keep = 0.0;
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    const auto row = mesh.nodes.row(i);
    if (row[1] > cfg.width - 1e-12) zmax_cut = std::max(zmax_cut, row[2]);
    if (row[1] < cfg.width - cfg.chamfer + 1e-12) zmax_keep = std::max(zmax_keep, row[2]);
  }
  CHECK(zmax_cut == doctest::Approx(cfg.height - cfg.chamfer).epsilon(1e-12));
  CHECK(zmax_keep == doctest::Approx(cfg.height).epsilon(1e-12));

  // The chamfer kink lies on a grid line for ny = 4, so the trilinear mesh
  // carries the exact volume L(WH - ch^2/2); the mass matrix must integrate
  // rho over it exactly for both supported degrees.
  const double volume =
      cfg.length * (cfg.width * cfg.height - 0.5 * cfg.chamfer * cfg.chamfer);
  for (int degree : {1, 2}) {
    const DiscreteSpace space(mesh, degree, 3);
    const SymmetricSparseMatrix m = build_scaled_mass_linearized(space, cfg.material, 0.0);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(space.num_dofs());
    CHECK(ones.dot(m.apply(ones)) ==
          doctest::Approx(3.0 * cfg.material.rho0 * volume).epsilon(1e-10));
  }

  BeamConfig bad = cfg;
  bad.chamfer = cfg.height;
  CHECK_THROWS_AS(generate_beam_mesh(bad), std::invalid_argument);
  bad = cfg;
  bad.nx = 0;
  CHECK_THROWS_AS(generate_beam_mesh(bad), std::invalid_argument);
  bad = cfg;
  bad.degree = 3;
  CHECK_THROWS_AS(generate_beam_mesh(bad), std::invalid_argument);
}

TEST_CASE("released beam starts on the arc and samples uniformly") {
  BeamConfig cfg = compact_config();
  cfg.final_time = 6e-5;
  cfg.cadence = 7;  // deliberately not a divisor of the raw step count
  const BeamRun run = run_beam(cfg);

  CHECK(run.n_steps % 7 == 0);
  const auto& t = run.history.times;
  REQUIRE(t.size() == static_cast<size_t>(run.n_steps / 7 + 1));
  for (size_t i = 1; i < t.size(); ++i)
    CHECK(t[i] - t[i - 1] == doctest::Approx(7.0 * run.dt).epsilon(1e-12));

  // First sample is the interpolated arc: corner A = (L, 0, 0).
  const Eigen::Vector3d u0 = beam_initial_displacement({cfg.length, 0.0, 0.0}, cfg.radius);
  CHECK(run.history.probes.at("ux")[0] == doctest::Approx(u0[0]).epsilon(1e-12));
  CHECK(run.history.probes.at("uy")[0] == 0.0);
  CHECK(run.history.probes.at("uz")[0] == doctest::Approx(u0[2]).epsilon(1e-12));
  // The arc is y-independent, so both tracked corners move together at t=0.
  CHECK(run.history.probes.at("twist")[0] == 0.0);

  // Initial energy is purely strain energy of the arc.
  const Mesh mesh = generate_beam_mesh(cfg);
  const DiscreteSpace space(mesh, cfg.degree, 3);
  const Eigen::VectorXd arc = interpolate_vector(space, [&](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(beam_initial_displacement(x, cfg.radius));
  });
  CHECK(run.history.probes.at("energy")[0] ==
        doctest::Approx(strain_energy(space, arc, cfg.material)).epsilon(1e-12));
  CHECK(run.tcrit == run.tcrit0);
}

TEST_CASE("quadratic beam elements step through the same path") {
  BeamConfig cfg = compact_config();
  cfg.nx = 2;
  cfg.ny = 1;
  cfg.degree = 2;
  cfg.final_time = 2e-5;
  const BeamRun run = run_beam(cfg);
  CHECK(run.n_steps >= 1);
  CHECK(std::isfinite(run.history.probes.at("energy").back()));
  // The arc is not an equilibrium, so the tip must have moved.
  const auto& uz = run.history.probes.at("uz");
  CHECK(std::abs(uz.back() - uz.front()) > 1e-5);
}

TEST_CASE("zero initial displacement stays identically at rest") {
  BeamConfig cfg = compact_config();
  cfg.final_time = 4e-6;
  cfg.initial_displacement = [](const Eigen::Vector3d&) { return Eigen::Vector3d::Zero(); };
  const BeamRun run = run_beam(cfg);
  for (const auto& snap : run.history.snapshots) CHECK(snap.norm() == 0.0);
  for (const char* channel : {"ux", "uy", "uz", "twist", "energy"})
    for (double v : run.history.probes.at(channel)) CHECK(v == 0.0);
}

TEST_CASE("stepping beyond the stability bound trips the divergence guard") {
  BeamConfig cfg = compact_config();
  cfg.nx = 3;
  cfg.ny = 1;
  cfg.safety = 1.6;
  cfg.final_time = 4e-4;
  CHECK_THROWS_AS(run_beam(cfg), InstabilityError);
}

TEST_CASE("scaled mass leaves the dominant tip frequency nearly unchanged") {
  BeamConfig cfg;
  cfg.nx = 6;
  cfg.ny = 2;
  cfg.nz = 1;
  cfg.safety = 0.5;
  cfg.final_time = 0.01;
  cfg.cadence = 10;

  cfg.c = 0.0;
  const BeamRun base = run_beam(cfg);
  const double f0 = dominant_frequency(base.history.times, base.history.probes.at("uz"));
  CHECK(f0 > 300.0);
  CHECK(f0 < 700.0);

  // Bounded energy oscillation, not growth (measured 1.6% on this mesh at
  // half the linearized critical step).
  const auto& e = base.history.probes.at("energy");
  const auto [emin, emax] = std::minmax_element(e.begin(), e.end());
  CHECK((*emax - *emin) / e[0] < 0.025);

  // The twist record feeds the spectrum directly: uniform cadence by
  // construction, frequency resolution 1/T.
  const auto spec = dft_blackman(base.history.times, base.history.probes.at("twist"));
  CHECK(spec[1].freq_hz == doctest::Approx(1.0 / cfg.final_time).epsilon(1e-2));

  cfg.c = 10.0;
  const BeamRun scaled = run_beam(cfg);
  CHECK(scaled.tcrit > scaled.tcrit0);
  const double f10 = dominant_frequency(scaled.history.times, scaled.history.probes.at("uz"));
  CHECK(std::abs(f10 / f0 - 1.0) < 0.05);  // measured +0.7%
}

TEST_CASE("critical step sweep anchors at one and grows with c") {
  const BeamConfig cfg = compact_config();
  const auto rows = beam_tcrit_sweep(cfg, {0.0, 5.0, 50.0});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].ratio == 1.0);
  CHECK(rows[0].tcrit > 0.0);
  CHECK(rows[1].ratio > rows[0].ratio);
  CHECK(rows[2].ratio > rows[1].ratio);

  BeamConfig flat = cfg;
  flat.length = 0.5;  // radius 0.15 <= 0.5/pi: arc would fold over
  CHECK_THROWS_AS(beam_tcrit_sweep(flat, {0.0}), std::invalid_argument);
}
