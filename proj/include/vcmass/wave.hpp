#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "vcmass/assembly.hpp"
#include "vcmass/integrate.hpp"
#include "vcmass/mesh.hpp"

namespace vcmass {

/// One separable standing-wave term w·cos(√(n²+m²)πt)·sin(nπx)·sin(mπy).
/// In 1D (m = 0) the y factor is dropped and the frequency is nπ.
struct SeriesTerm {
  double w;
  int n;
  int m;
};

/// Exact solution of the unit-coefficient wave equation built from a sine
/// series on the unit interval or square. Supplies everything the transient
/// benchmarks need: initial data, Neumann data g = -∂ₙu and its second time
/// derivative, and the reference field for error measurement.
class StandingWaveSolution {
public:
  explicit StandingWaveSolution(std::vector<SeriesTerm> terms, int dim);

  /// cos(√2 πt) sin(πx) sin(πy) on the unit square.
  static StandingWaveSolution single_mode();

  /// Nine-term benchmark series with period 2 on the unit square.
  static StandingWaveSolution nine_term_series();

  /// sin(nπx) cos(nπt) on the unit interval.
  static StandingWaveSolution string_mode(int n);

  int dim() const { return dim_; }
  double value(double t, const Eigen::VectorXd& x) const;
  double velocity(double t, const Eigen::VectorXd& x) const;
  double neumann_g(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& normal) const;
  double neumann_gdd(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& normal) const;

private:
  std::vector<SeriesTerm> terms_;
  int dim_;
};

enum class IntegratorKind { central_difference, rk4 };

/// Largest generalized eigenvalue of (K, M). Dense up to `dense_limit`
/// unknowns, power iteration beyond.
double measure_lambda_max(const SymmetricSparseMatrix& K, const SymmetricSparseMatrix& M,
                          int dense_limit = 2200);

struct ConvergenceRow {
  double h = 0.0;        // representative element diameter
  double tcrit = 0.0;    // measured 2/√λ_max of the (scaled) system
  long n_steps = 0;
  double error = 0.0;    // L² error at the final time
  double rate = 0.0;     // log₂(previous error / this error), 0 for the first row
  std::optional<long> instability_step;
};

struct ConvergenceConfig {
  int degree = 1;
  double c = 0.0;
  IntegratorKind integrator = IntegratorKind::rk4;
  double safety = 0.9;  // Δt = safety · t_crit, rounded down to land on final_time
  double final_time = 0.1;
};

/// Transient convergence study: interpolate the exact initial data, step to
/// the final time with Δt = safety·t_crit, measure the L² error, repeat per
/// mesh. An unstable run flags its row and the study continues.
std::vector<ConvergenceRow> run_convergence(const std::function<Mesh(int)>& mesh_at,
                                            int refinements, const StandingWaveSolution& exact,
                                            const ConvergenceConfig& config);

struct TcritCell {
  int refinement = 0;
  int degree = 1;
  double c = 0.0;
  double tcrit = 0.0;
  double ratio = 1.0;  // tcrit(c) / tcrit(0) at equal refinement and degree
};

/// Critical-time-step table over refinements × degrees × scaling factors.
/// The c = 0 column is always measured (it anchors the ratios) even when not
/// requested in `cs`, but only requested values are reported.
std::vector<TcritCell> tcrit_study(const std::function<Mesh(int)>& mesh_at, int refinements,
                                   const std::vector<int>& degrees, const std::vector<double>& cs);

}  // namespace vcmass
