#ifndef BALLSPEC_QUADRATURE_HPP
#define BALLSPEC_QUADRATURE_HPP

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "ballspec/harmonics.hpp"

namespace ballspec {

using PointFn = std::function<double(std::span<const double>)>;

/// Product grid on the closed ball: radial Gauss-Jacobi (0, d/2-1) nodes
/// rho_i = sqrt((t_i+1)/2) times the sphere rule of the same n.  Weights are
/// normalized to sum to 1, matching <1,1> = 1.
///
/// Integrates polynomials of total degree <= 2n exactly.  Degree 2n+1 is not
/// covered: the 2n+1 equispaced azimuths alias cos((2n+1) phi) to a constant.
struct BallQuadrature {
  int d = 2;
  int n = 0;
  std::vector<double> rho;             // radial nodes, increasing
  std::vector<double> radial_weights;  // sum to 1
  SphereRule sphere;
  // Flattened product, radial index outermost.
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};

BallQuadrature build_grid(int d, int n);

double discrete_inner(const BallQuadrature& q, const PointFn& f, const PointFn& g);

struct ErrorMetrics {
  double e_max = 0.0;
  double e_l2 = 0.0;          // square root of the weighted sum of squares
  double e_l2_squared = 0.0;  // the weighted sum itself
};

ErrorMetrics error_metrics(const BallQuadrature& q, const PointFn& f);
/// Same from precomputed values at q.points.
ErrorMetrics error_metrics(const BallQuadrature& q, std::span<const double> values);

/// moments[i][h] = sum_a w_a f(rho_i xi_a) Y_h(xi_a) for all harmonics of
/// degree <= mmax, h in solid_eval_all order.
std::vector<std::vector<double>> harmonic_moments(const BallQuadrature& q,
                                                  const PointFn& f, int mmax);

/// Sphere moments sum_a w_a g(xi_a) Y_h(xi_a).
std::vector<double> sphere_moments(const SphereRule& s, const PointFn& g, int mmax);

/// CSV with columns x1..xd, weight.
void write_grid_csv(std::ostream& os, const BallQuadrature& q);

}  // namespace ballspec

#endif  // BALLSPEC_QUADRATURE_HPP
