#ifndef BALLSPEC_SOBOLEVBASIS_HPP
#define BALLSPEC_SOBOLEVBASIS_HPP

#include <vector>

#include "ballspec/ballbasis.hpp"

namespace ballspec {

/// Order s and the sphere weights lambda_0 .. lambda_{ceil(s/2)-1}.
struct SobolevParams {
  int s = 1;
  std::vector<double> lambdas;

  /// All lambda_k = d.
  static SobolevParams with_default(int s, int d);
  int num_traces() const { return (s + 1) / 2; }
  /// Throws std::invalid_argument on s < 1, wrong length or lambda <= 0.
  void validate() const;
};

/// <grad^s f, grad^s g>_B + sum_k lambda_k <Delta^k f, Delta^k g>_S, with
/// grad^{2m} = Delta^m and grad^{2m+1} = grad Delta^m.
double sobolev_inner(const BallPoly& f, const BallPoly& g, const SobolevParams& p);

struct LiftCoeffs {
  int n = 0;
  int j = 0;
  std::vector<double> c;  // c_0 .. c_j
  double residual = 0.0;
};

/// Coefficients of Y^{n,j} = sum_i c_i (1-||x||^2)^i Y^n, the polynomial whose
/// Laplacian powers have boundary trace delta_{k,j} Y^n.  Memoized.
LiftCoeffs lift_coeffs(int d, int n, int j);
/// Y^{n,j}_ell as a BallPoly; zero for j < 0.
BallPoly lift_eval(int d, int n, int j, int ell);
/// Y^{n,j} radial factor at u.
double lift_radial(int d, int n, int j, double u);

/// Trace of Delta^k[(1-||x||^2)^j Y^n] on the sphere, as a multiple of Y^n:
/// 4^k (-j)_k (-k)_{j-k} (n+d/2)_k / (n+d/2)_{j-k}.
double deltaY_trace(int d, int n, int j, int k);
/// The same with the denominator (n+d/2)_j; kept to document that this form
/// fails the direct computation.
double deltaY_trace_denominator_j(int d, int n, int j, int k);

/// Q^{-s,n}_{j,ell}.
BallPoly q_basis(const SobolevParams& p, const BasisIndex& idx, int d);
/// Radial factor of Q^{-s,n}_{j,ell} at u, stable for large n.
double q_radial(const SobolevParams& p, int n, int j, int d, double u);
/// Closed-form <Q, Q>_{-s}.
double q_norm(const SobolevParams& p, int n, int j, int d);

/// Exact proj^{-s}_n f.
BallPoly project_sobolev_degree(const BallPoly& f, const SobolevParams& p, int n);

/// Sup over a sphere grid of Delta^k proj^{-s}_n f - proj^H_{n-2k} Delta^k f.
double check_boundary_projection(const SobolevParams& p, int n, int k, const BallPoly& f);
/// proj^{-s}_n[(1-u)^s g] - (1-u)^s proj^s_{n-2s} g, max coefficient, relative.
double check_factorization(int s, int n, const BallPoly& g);
/// Delta^{floor(s/2)} Q^{-s,n}_j against its closed form, max coefficient, relative.
double check_defQ_laplacian(const SobolevParams& p, const BasisIndex& idx, int d);

}  // namespace ballspec

#endif  // BALLSPEC_SOBOLEVBASIS_HPP
