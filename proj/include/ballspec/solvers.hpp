#ifndef BALLSPEC_SOLVERS_HPP
#define BALLSPEC_SOLVERS_HPP

#include <optional>
#include <vector>

#include "ballspec/transforms.hpp"

namespace ballspec {

/// -Delta u + lambda u = f in the ball, d_n u + eta u = g on the sphere.
struct HelmholtzProblem {
  int d = 2;
  double lambda = 1.0;
  double eta = 0.0;
  PointFn f;
  PointFn g;  // evaluated at points of the sphere; empty means zero
};

/// Delta^2 u - lambda1 Delta u + lambda0 u = f, u = d_n u = 0 on the sphere.
struct BiharmonicProblem {
  int d = 2;
  double lambda1 = 1.0;
  double lambda0 = 1.0;
  PointFn f;
};

/// Symmetric band storage: band[b][i] = A(i, i+b).
struct BandedMatrix {
  int size = 0;
  int bandwidth = 0;
  std::vector<std::vector<double>> band;

  BandedMatrix() = default;
  BandedMatrix(int n, int bw);
  double operator()(int i, int j) const;
  double& at(int i, int j);  // requires |i-j| <= bandwidth
};

/// Tridiagonal LDL^T, no pivoting.  Throws std::runtime_error on a
/// non-positive pivot.
std::vector<double> solve_tridiagonal_ldlt(const BandedMatrix& a, std::vector<double> rhs);
/// Banded Cholesky.  Throws std::runtime_error if not positive definite.
std::vector<double> solve_banded_cholesky(const BandedMatrix& a, std::vector<double> rhs);

/// One harmonic block: rows are the radial indices j (first_j, first_j+1, ..)
/// with total degree k = m + 2j <= n.
struct GalerkinBlock {
  int m = 0;
  int ell = 1;
  int first_j = 0;
  BandedMatrix matrix;
  std::vector<double> rhs;
  double off_band = 0.0;  // largest |entry| outside the band, relative
};

enum class ProblemKind { helmholtz, biharmonic };

struct GalerkinSystem {
  ProblemKind kind = ProblemKind::helmholtz;
  int d = 2;
  int n = 0;
  std::vector<GalerkinBlock> blocks;
};

/// Coefficients of u_n in the P^{-1} (Helmholtz) or P^{-2}, j >= 2
/// (biharmonic) family, stored as classical coefficients with mu = -1, -2.
struct GalerkinSolution {
  int d = 2;
  int n = 0;
  SpectralCoeffs coeffs;

  double eval(std::span<const double> x) const;
  std::vector<double> eval_on(const std::vector<std::array<double, 3>>& pts) const;
  /// Values at q.points using the radial x sphere product structure.
  std::vector<double> eval_on_grid(const BallQuadrature& q) const;
  BallPoly to_ballpoly() const;
};

/// grid_n: product grid for the right-hand side; must be >= n.  Defaults to n + 8.
GalerkinSystem assemble_helmholtz(const HelmholtzProblem& p, int n,
                                  std::optional<int> grid_n = std::nullopt);
GalerkinSolution solve_system(const GalerkinSystem& sys);
GalerkinSolution solve_helmholtz(const HelmholtzProblem& p, int n,
                                 std::optional<int> grid_n = std::nullopt);

GalerkinSystem assemble_biharmonic(const BiharmonicProblem& p, int n,
                                   std::optional<int> grid_n = std::nullopt);
GalerkinSolution solve_biharmonic(const BiharmonicProblem& p, int n,
                                  std::optional<int> grid_n = std::nullopt);

struct ConvergenceRow {
  int n = 0;
  ErrorMetrics err;
  double wall_ms = 0.0;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  /// Least-squares slope of log10 e_L2 against n over the pre-floor rows.
  double fitted_rate = 0.0;
  int pre_floor = 0;  // number of leading rows used for the fit
  bool strictly_decreasing = false;  // over the pre-floor rows
};

/// Errors of u_n - exact on build_grid(d, grid_n), which also serves as the
/// right-hand-side grid; grid_n must be >= max(n_list).
ConvergenceResult convergence_study(const HelmholtzProblem& p, const PointFn& exact,
                                    const std::vector<int>& n_list, int grid_n);
ConvergenceResult convergence_study(const BiharmonicProblem& p, const PointFn& exact,
                                    const std::vector<int>& n_list, int grid_n);

/// Rows below this relative size count as floored when fitting rates.
inline constexpr double kErrorFloor = 1e-13;

/// A problem together with its exact solution.
template <class Problem>
struct Example {
  Problem problem;
  PointFn exact;
};

Example<HelmholtzProblem> example_exam1a();
Example<HelmholtzProblem> example_exam1b();
Example<BiharmonicProblem> example_exam2();

/// Random polynomial exact solutions of the given degree; the biharmonic one
/// has the form (1-||x||^2)^2 q with deg q = degree - 4.
struct ManufacturedHelmholtz {
  HelmholtzProblem problem;
  BallPoly exact;
};
struct ManufacturedBiharmonic {
  BiharmonicProblem problem;
  BallPoly exact;
};
ManufacturedHelmholtz manufactured_helmholtz(int d, double lambda, double eta, int degree,
                                             unsigned seed);
ManufacturedBiharmonic manufactured_biharmonic(int d, double lambda1, double lambda0,
                                               int degree, unsigned seed);

}  // namespace ballspec

#endif  // BALLSPEC_SOLVERS_HPP
