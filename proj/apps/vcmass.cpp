// Command-line runner for the mass-scaling benchmarks. Each subcommand
// resolves a configuration, drives the library, and writes deterministic
// CSV files plus a JSON sidecar; exit codes are 0 (success), 2 (usage),
// 3 (numerical failure).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vcmass/analytic.hpp"
#include "vcmass/assembly.hpp"
#include "vcmass/beam.hpp"
#include "vcmass/csvio.hpp"
#include "vcmass/eigensolve.hpp"
#include "vcmass/errors.hpp"
#include "vcmass/mesh.hpp"
#include "vcmass/mesh_io.hpp"
#include "vcmass/mode_match.hpp"
#include "vcmass/scaling.hpp"
#include "vcmass/signal.hpp"
#include "vcmass/space.hpp"
#include "vcmass/wave.hpp"

namespace {

using nlohmann::json;
using namespace vcmass;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

/// Thrown for coherent-but-unsupported option combinations; maps to the
/// usage exit code with the message as-is.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string out = "out";
  int seed = 0;  // recorded in metadata; current studies are deterministic
};

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

/// One sidecar per invocation: resolved configuration, emitted files, and
/// the only timestamp of the run (CSV bodies stay byte-identical).
void write_sidecar(const CommonOptions& common, const std::string& command, json config,
                   const std::vector<std::string>& files) {
  config["seed"] = common.seed;
  const json doc = {{"command", command},
                    {"config", std::move(config)},
                    {"files", files},
                    {"timestamp", iso_timestamp()}};
  write_text_atomic(std::filesystem::path(common.out) / (command + "_meta.json"),
                    doc.dump(2) + "\n");
}

std::string cell_name(double c) {
  std::string s = format_number(c);
  for (char& ch : s)
    if (ch == '.') ch = 'p';
  return s;
}

// ---------------------------------------------------------------------------
// Benchmark meshes shared by spectrum / tcrit / converge.

struct ScalarBenchmark {
  std::string name;         // string1d | drum2d-quad | drum2d-tri
  BoundaryTag bc = BoundaryTag::dirichlet;
  int dim = 1;
  ElementKind kind = ElementKind::interval;
};

ScalarBenchmark resolve_benchmark(const std::string& name, const std::string& bc) {
  ScalarBenchmark b;
  b.name = name;
  if (bc == "dirichlet")
    b.bc = BoundaryTag::dirichlet;
  else if (bc == "neumann")
    b.bc = BoundaryTag::neumann;
  else
    throw UsageError("unknown --bc '" + bc + "'; valid: dirichlet, neumann");

  if (name == "string1d") {
    b.dim = 1;
    b.kind = ElementKind::interval;
    if (b.bc == BoundaryTag::neumann)
      throw UsageError(
          "string1d supports only --bc dirichlet; neumann spectra are available on "
          "drum2d-quad and drum2d-tri");
  } else if (name == "drum2d-quad") {
    b.dim = 2;
    b.kind = ElementKind::quad;
  } else if (name == "drum2d-tri") {
    b.dim = 2;
    b.kind = ElementKind::triangle;
  } else {
    throw UsageError("unknown benchmark '" + name +
                     "'; valid: string1d, drum2d-quad, drum2d-tri");
  }
  return b;
}

Mesh benchmark_mesh(const ScalarBenchmark& b, int n) {
  const auto tag = [&](const Eigen::VectorXd&) { return b.bc; };
  if (b.dim == 1) return generate_interval_mesh(1.0, n, tag);
  return generate_grid_mesh(b.kind, 1.0, n, tag);
}

AnalyticEigenFamily benchmark_family(const ScalarBenchmark& b, const MaterialScalar& mat) {
  if (b.dim == 1) return {AnalyticFamilyKind::interval_dirichlet, mat, 1.0};
  return {b.bc == BoundaryTag::dirichlet ? AnalyticFamilyKind::square_dirichlet
                                         : AnalyticFamilyKind::square_neumann,
          mat, 1.0};
}

/// Side count targeting ~100 scalar DOFs in 1D and ~900 in 2D.
int benchmark_resolution(const ScalarBenchmark& b, int degree) {
  const int target = b.dim == 1 ? 100 : 30;
  return std::max(2, static_cast<int>(std::lround(static_cast<double>(target) / degree)));
}

/// Removes the constant mode of an all-Neumann spectrum so the numbering
/// matches the analytic family (which starts at the first nonzero mode).
Spectrum drop_zero_mode(const Spectrum& s) {
  if (s.size() < 2 || s.eigenvalues[0] > 1e-6 * s.eigenvalues[s.size() - 1])
    throw std::runtime_error("expected a zero mode at the bottom of the Neumann spectrum");
  Spectrum out;
  out.eigenvalues = s.eigenvalues.tail(s.size() - 1);
  out.eigenvectors = s.eigenvectors.rightCols(s.size() - 1);
  return out;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumOptions {
  std::string benchmark;
  std::string bc = "dirichlet";
  std::vector<int> degrees = {1, 2, 3, 4};
  std::vector<double> cs = {0.0, 1.0, 2.0, 5.0};
};

int cmd_spectrum(const CommonOptions& common, const SpectrumOptions& opt) {
  const ScalarBenchmark bench = resolve_benchmark(opt.benchmark, opt.bc);
  const MaterialScalar mat{1.0, 1.0};
  const AnalyticEigenFamily family = benchmark_family(bench, mat);
  std::vector<std::string> files;

  for (int P : opt.degrees) {
    const int n = benchmark_resolution(bench, P);
    const Mesh mesh = benchmark_mesh(bench, n);
    const DiscreteSpace space(mesh, P);
    const DofReduction red = DofReduction::from_mask(space.dirichlet_mask());
    const SymmetricSparseMatrix K = reduce_matrix(assemble_stiffness(space, mat), red);
    for (double c : opt.cs) {
      const SymmetricSparseMatrix M = reduce_matrix(build_scaled_mass(space, mat, c), red);
      Spectrum spectrum = solve_generalized_eigen(K, M);
      if (bench.bc == BoundaryTag::neumann) spectrum = drop_zero_mode(spectrum);
      match_modes(spectrum, family, space);
      const auto curve = normalized_spectrum(spectrum, family);
      const auto modes = family.first(spectrum.size());

      CsvDocument doc(
          "Eigenfrequency ratio curve: computed/exact frequency vs normalized mode number",
          {"mode", "normalized_mode", "omega", "omega_exact", "ratio"});
      doc.note("benchmark", bench.name);
      doc.note("bc", opt.bc);
      doc.note("degree", std::to_string(P));
      doc.note("c", format_number(c));
      doc.note("grid_n", std::to_string(n));
      doc.note("dofs", std::to_string(red.size()));
      double max_ratio = 0.0;
      for (int a = 0; a < spectrum.size(); ++a) {
        const double omega = std::sqrt(spectrum.eigenvalues[spectrum.matched[a]]);
        const double exact = std::sqrt(modes[a].lambda);
        max_ratio = std::max(max_ratio, curve[a].second);
        doc.add_row({static_cast<double>(a + 1), curve[a].first, omega, exact,
                     curve[a].second});
      }
      const std::string name = "spectrum_" + bench.name + "_" + opt.bc + "_p" +
                               std::to_string(P) + "_c" + cell_name(c) + ".csv";
      doc.write(std::filesystem::path(common.out) / name);
      files.push_back(name);
      std::printf("spectrum %s bc=%s P=%d c=%s: %d modes, top-mode ratio %.4f, curve max %.4f\n",
                  bench.name.c_str(), opt.bc.c_str(), P, format_number(c).c_str(),
                  spectrum.size(), curve.back().second, max_ratio);
    }
  }

  write_sidecar(common, "spectrum",
                {{"benchmark", opt.benchmark},
                 {"bc", opt.bc},
                 {"p", opt.degrees},
                 {"c", opt.cs}},
                files);
  return 0;
}

// ---------------------------------------------------------------------------
// tcrit

struct TcritOptions {
  std::string benchmark = "drum2d-quad";
  std::string bc = "neumann";
  std::string mesh_file;
  std::vector<int> degrees = {1, 2, 3, 4};
  std::vector<double> cs = {0.0, 1.0, 5.0};
  int refinements = 3;
};

int cmd_tcrit(const CommonOptions& common, const TcritOptions& opt) {
  std::function<Mesh(int)> mesh_at;
  json mesh_config;
  if (!opt.mesh_file.empty()) {
    // A mesh file is one fixed resolution; refinement levels do not apply.
    const Mesh loaded = load_mesh_file(opt.mesh_file);
    mesh_at = [loaded](int) { return loaded; };
    mesh_config = {{"mesh_file", opt.mesh_file}};
  } else {
    const ScalarBenchmark bench = resolve_benchmark(opt.benchmark, opt.bc);
    mesh_at = [bench](int r) { return benchmark_mesh(bench, 8 << r); };
    mesh_config = {{"benchmark", opt.benchmark}, {"bc", opt.bc}, {"base_n", 8}};
  }
  const int refinements = opt.mesh_file.empty() ? opt.refinements : 1;
  if (refinements < 1) throw UsageError("--refine must be at least 1");

  const auto cells = tcrit_study(mesh_at, refinements, opt.degrees, opt.cs);

  CsvDocument doc("Critical time step and gain over scaling factor, per refinement and degree",
                  {"refinement", "P", "c", "tcrit", "ratio"});
  for (auto& [key, value] : mesh_config.items())
    doc.note(key, value.is_string() ? value.get<std::string>() : value.dump());
  for (const TcritCell& cell : cells)
    doc.add_row({static_cast<double>(cell.refinement), static_cast<double>(cell.degree),
                 cell.c, cell.tcrit, cell.ratio});
  doc.write(std::filesystem::path(common.out) / "tcrit.csv");

  for (const TcritCell& cell : cells)
    std::printf("tcrit r=%d P=%d c=%-4s: %.6e  gain %.3f\n", cell.refinement, cell.degree,
                format_number(cell.c).c_str(), cell.tcrit, cell.ratio);

  mesh_config["p"] = opt.degrees;
  mesh_config["c"] = opt.cs;
  mesh_config["refinements"] = refinements;
  write_sidecar(common, "tcrit", mesh_config, {"tcrit.csv"});
  return 0;
}

// ---------------------------------------------------------------------------
// converge

struct ConvergeOptions {
  std::string benchmark = "square-mode";
  std::string bc = "dirichlet";
  std::vector<int> degrees = {1, 2, 3};
  std::vector<double> cs = {0.0, 1.0};
  int refinements = 3;
};

int cmd_converge(const CommonOptions& common, const ConvergeOptions& opt) {
  if (opt.refinements < 1) throw UsageError("--refine must be at least 1");
  const StandingWaveSolution exact = [&] {
    if (opt.benchmark == "square-mode") return StandingWaveSolution::single_mode();
    if (opt.benchmark == "square-series") return StandingWaveSolution::nine_term_series();
    throw UsageError("unknown benchmark '" + opt.benchmark +
                     "'; valid: square-mode, square-series");
  }();
  const ScalarBenchmark bench = resolve_benchmark("drum2d-quad", opt.bc);
  const auto mesh_at = [&](int r) { return benchmark_mesh(bench, 6 << r); };

  CsvDocument doc("L2 error against the exact standing wave per refinement, with observed rate",
                  {"h", "error", "rate", "c", "P", "status"});
  doc.note("benchmark", opt.benchmark);
  doc.note("bc", opt.bc);
  doc.note("final_time", "0.1");

  for (int P : opt.degrees) {
    for (double c : opt.cs) {
      ConvergenceConfig config;
      config.degree = P;
      config.c = c;
      const auto rows = run_convergence(mesh_at, opt.refinements, exact, config);
      for (const ConvergenceRow& row : rows) {
        const std::string status = row.instability_step
                                       ? "diverged@" + std::to_string(*row.instability_step)
                                       : "ok";
        doc.add_row({format_number(row.h), format_number(row.error), format_number(row.rate),
                     format_number(c), std::to_string(P), status});
        std::printf("converge P=%d c=%-3s h=%.4f: error %.4e rate %.2f %s\n", P,
                    format_number(c).c_str(), row.h, row.error, row.rate, status.c_str());
      }
    }
  }
  doc.write(std::filesystem::path(common.out) / "convergence.csv");

  write_sidecar(common, "converge",
                {{"benchmark", opt.benchmark},
                 {"bc", opt.bc},
                 {"p", opt.degrees},
                 {"c", opt.cs},
                 {"refinements", opt.refinements}},
                {"convergence.csv"});
  return 0;
}

// ---------------------------------------------------------------------------
// beam

struct BeamOptions {
  int degree = 1;
  double c = 0.0;
  int refine = 0;
  bool sweep = false;
};

json beam_geometry_json(const BeamConfig& cfg) {
  return {{"length", cfg.length},       {"width", cfg.width},   {"height", cfg.height},
          {"chamfer", cfg.chamfer},     {"radius", cfg.radius}, {"nx", cfg.nx},
          {"ny", cfg.ny},               {"nz", cfg.nz},         {"rho0", cfg.material.rho0},
          {"lambda", cfg.material.lambda}, {"mu", cfg.material.mu}};
}

int cmd_beam(const CommonOptions& common, const BeamOptions& opt) {
  BeamConfig cfg;
  cfg.degree = opt.degree;
  cfg.c = opt.c;
  for (int r = 0; r < opt.refine; ++r) {
    cfg.nx *= 2;
    cfg.ny *= 2;
    cfg.nz *= 2;
  }

  if (opt.sweep) {
    const std::vector<double> ladder{0, 5, 15, 50, 150, 500, 1500, 5000};
    const auto rows = beam_tcrit_sweep(cfg, ladder);
    CsvDocument doc("Critical-time-step gain of the chamfered beam vs scaling factor",
                    {"c", "tcrit", "ratio", "P"});
    doc.note("geometry", beam_geometry_json(cfg).dump());
    for (const BeamSweepRow& row : rows) {
      doc.add_row({row.c, row.tcrit, row.ratio, static_cast<double>(cfg.degree)});
      std::printf("beam sweep P=%d c=%-5s: tcrit %.6e  gain %.3f\n", cfg.degree,
                  format_number(row.c).c_str(), row.tcrit, row.ratio);
    }
    doc.write(std::filesystem::path(common.out) / "beam_sweep.csv");
    write_sidecar(common, "beam",
                  {{"mode", "sweep-c"},
                   {"p", cfg.degree},
                   {"c", ladder},
                   {"geometry", beam_geometry_json(cfg)}},
                  {"beam_sweep.csv"});
    return 0;
  }

  cfg.cadence = 50;
  const BeamRun run = run_beam(cfg);
  std::printf("beam P=%d c=%s: %ld steps, dt %.3e, tcrit gain %.3f\n", cfg.degree,
              format_number(cfg.c).c_str(), run.n_steps, run.dt, run.tcrit / run.tcrit0);

  CsvDocument tip("Tip-corner displacement history of the released chamfered beam",
                  {"t", "ux", "uy", "uz"});
  tip.note("geometry", beam_geometry_json(cfg).dump());
  tip.note("P", std::to_string(cfg.degree));
  tip.note("c", format_number(cfg.c));
  const auto& t = run.history.times;
  const auto& ux = run.history.probes.at("ux");
  const auto& uy = run.history.probes.at("uy");
  const auto& uz = run.history.probes.at("uz");
  for (size_t i = 0; i < t.size(); ++i) tip.add_row({t[i], ux[i], uy[i], uz[i]});
  tip.write(std::filesystem::path(common.out) / "beam_tip.csv");

  const auto spec = dft_blackman(t, run.history.probes.at("twist"));
  CsvDocument fft("Blackman-windowed spectrum of the tip twist angle",
                  {"freq_hz", "magnitude", "c", "P"});
  fft.note("geometry", beam_geometry_json(cfg).dump());
  for (const SpectrumLine& line : spec)
    fft.add_row({line.freq_hz, line.magnitude, cfg.c, static_cast<double>(cfg.degree)});
  fft.write(std::filesystem::path(common.out) / "beam_twist_fft.csv");

  write_sidecar(common, "beam",
                {{"mode", "run"},
                 {"p", cfg.degree},
                 {"c", cfg.c},
                 {"final_time", cfg.final_time},
                 {"safety", cfg.safety},
                 {"cadence", cfg.cadence},
                 {"n_steps", run.n_steps},
                 {"geometry", beam_geometry_json(cfg)}},
                {"beam_tip.csv", "beam_twist_fft.csv"});
  return 0;
}

// ---------------------------------------------------------------------------
// mesh-info

int cmd_mesh_info(const std::string& path) {
  const Mesh mesh = load_mesh_file(path);
  std::map<std::string, int> kinds;
  for (const MeshElement& e : mesh.elements) kinds[to_string(e.kind)]++;
  int dirichlet = 0, neumann = 0;
  for (const BoundaryFacet& f : mesh.boundary_facets)
    (f.tag == BoundaryTag::dirichlet ? dirichlet : neumann)++;
  double hmin = 0.0, hmax = 0.0, hsum = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const double h = element_diameter(mesh, e);
    hmin = e == 0 ? h : std::min(hmin, h);
    hmax = std::max(hmax, h);
    hsum += h;
  }

  std::printf("mesh: %s\n", path.c_str());
  std::printf("  dimension        %d\n", mesh.dim);
  std::printf("  nodes            %d\n", mesh.num_nodes());
  for (const auto& [kind, count] : kinds) std::printf("  %-16s %d\n", kind.c_str(), count);
  std::printf("  interior facets  %zu\n", mesh.interior_facets.size());
  std::printf("  boundary facets  %zu (%d dirichlet, %d neumann)\n",
              mesh.boundary_facets.size(), dirichlet, neumann);
  if (mesh.num_elements() > 0)
    std::printf("  h min/mean/max   %.6g / %.6g / %.6g\n", hmin,
                hsum / mesh.num_elements(), hmax);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite element benchmarks for interface-penalty mass scaling"};
  app.require_subcommand(1);

  CommonOptions common;
  SpectrumOptions spectrum_opt;
  TcritOptions tcrit_opt;
  ConvergeOptions converge_opt;
  BeamOptions beam_opt;
  std::string mesh_info_path;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Output directory for CSV/JSON files");
    sub->add_option("--seed", common.seed, "Seed recorded in run metadata");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "Eigenfrequency spectra vs analytic modes");
  spectrum->add_option("benchmark", spectrum_opt.benchmark, "string1d | drum2d-quad | drum2d-tri")
      ->required();
  spectrum->add_option("--bc", spectrum_opt.bc, "Boundary condition: dirichlet | neumann");
  spectrum->add_option("--p", spectrum_opt.degrees, "Polynomial degrees")->delimiter(',');
  spectrum->add_option("--c", spectrum_opt.cs, "Mass scaling factors")->delimiter(',');
  add_common(spectrum);

  CLI::App* tcrit = app.add_subcommand("tcrit", "Critical-time-step table");
  CLI::Option* tcrit_bench =
      tcrit->add_option("benchmark", tcrit_opt.benchmark, "Built-in benchmark mesh");
  tcrit->add_option("--mesh", tcrit_opt.mesh_file, "Mesh file instead of a built-in benchmark")
      ->excludes(tcrit_bench);
  tcrit->add_option("--bc", tcrit_opt.bc, "Boundary condition for the built-in benchmark");
  tcrit->add_option("--p", tcrit_opt.degrees, "Polynomial degrees")->delimiter(',');
  tcrit->add_option("--c", tcrit_opt.cs, "Mass scaling factors")->delimiter(',');
  tcrit->add_option("--refine", tcrit_opt.refinements, "Number of uniform refinements");
  add_common(tcrit);

  CLI::App* converge = app.add_subcommand("converge", "Transient L2 convergence study");
  converge->add_option("benchmark", converge_opt.benchmark, "square-mode | square-series");
  converge->add_option("--bc", converge_opt.bc, "Boundary condition: dirichlet | neumann");
  converge->add_option("--p", converge_opt.degrees, "Polynomial degrees")->delimiter(',');
  converge->add_option("--c", converge_opt.cs, "Mass scaling factors")->delimiter(',');
  converge->add_option("--refine", converge_opt.refinements, "Number of uniform refinements");
  add_common(converge);

  CLI::App* beam = app.add_subcommand("beam", "Nonlinear chamfered-beam benchmark");
  beam->add_option("--p", beam_opt.degree, "Polynomial degree (1 or 2)");
  beam->add_option("--c", beam_opt.c, "Mass scaling factor");
  beam->add_option("--refine", beam_opt.refine, "Halvings of the default mesh spacing");
  beam->add_flag("--sweep-c", beam_opt.sweep, "Sweep c and report tcrit gains instead of stepping");
  add_common(beam);

  CLI::App* mesh_info = app.add_subcommand("mesh-info", "Summarize a mesh file");
  mesh_info->add_option("mesh", mesh_info_path, "Mesh file path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(common, spectrum_opt);
    if (tcrit->parsed()) return cmd_tcrit(common, tcrit_opt);
    if (converge->parsed()) return cmd_converge(common, converge_opt);
    if (beam->parsed()) return cmd_beam(common, beam_opt);
    if (mesh_info->parsed()) return cmd_mesh_info(mesh_info_path);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const MeshParseError& e) {
    std::fprintf(stderr, "error: failed to load mesh: %s\n", e.what());
    return kExitUsage;
  } catch (const UnsupportedConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    // DefinitenessError, InstabilityError, eigensolver breakdowns.
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  }
  return 0;
}
