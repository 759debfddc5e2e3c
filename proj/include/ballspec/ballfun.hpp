#ifndef BALLSPEC_BALLFUN_HPP
#define BALLSPEC_BALLFUN_HPP

#include <functional>
#include <map>
#include <span>
#include <string>

#include "ballspec/harmonics.hpp"
#include "ballspec/poly.hpp"

namespace ballspec {

/// Finite sum  sum_{(m,ell)} q_{m,ell}(||x||^2) Y^m_ell(x)  with Y solid
/// harmonics.  Zero radial parts are dropped, so at most one term per index.
class BallPoly {
 public:
  using Terms = std::map<HarmonicIndex, RadialPoly>;

  explicit BallPoly(int d = 2) : d_(d) {}

  static BallPoly constant(int d, double c);
  static BallPoly term(const HarmonicIndex& idx, RadialPoly q);

  int dim() const { return d_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Radial part of one index (empty if absent).
  RadialPoly radial(const HarmonicIndex& idx) const;
  void add(const HarmonicIndex& idx, const RadialPoly& q);

  /// Largest harmonic degree present, -1 for the zero polynomial.
  int max_harmonic_degree() const;
  /// Total degree max(m + 2 deg q).
  int degree() const;
  /// Largest radial degree over all terms.
  int radial_degree() const;
  double max_abs_coeff() const;

  double eval(std::span<const double> x) const;

  BallPoly operator+(const BallPoly& o) const;
  BallPoly operator-(const BallPoly& o) const;
  BallPoly operator*(double c) const;
  /// Multiply every term by r(||x||^2).
  BallPoly times_radial(const RadialPoly& r) const;

 private:
  int d_;
  Terms terms_;
};

BallPoly laplacian(const BallPoly& f);
BallPoly laplacian_pow(const BallPoly& f, int k);

/// f restricted to the sphere, as coefficients in the harmonic basis.
std::map<HarmonicIndex, double> boundary_trace(const BallPoly& f);
/// Radial derivative on the sphere, coefficient m q(1) + 2 q'(1) per index.
std::map<HarmonicIndex, double> normal_derivative_trace(const BallPoly& f);

/// <f, g>_mu with the weight (1-||x||^2)^mu, normalized so <1,1>_mu = 1.
double inner_L2(const BallPoly& f, const BallPoly& g, double mu = 0.0);
/// Normalized surface inner product on S^{d-1}.
double inner_sphere(const BallPoly& f, const BallPoly& g);
/// Normalized <grad f, grad g> on the ball, by d <d_n f, g>_S - <lap f, g>.
double inner_grad(const BallPoly& f, const BallPoly& g);

/// Integral of q(u) u^{m + d/2 - 1} (1-u)^mu du / B(d/2, mu+1): the radial
/// factor of inner_L2 for one harmonic index.
double radial_inner(const RadialPoly& q, int m, int d, double mu);
/// Same integral for a radial function g known to be a polynomial of degree <= deg.
double radial_inner_fn(const std::function<double(double)>& g, int deg, int m, int d,
                       double mu);

/// Exact conversion to monomials.
MultiPoly to_monomials(const BallPoly& f);
/// Exact (up to rounding) decomposition of a polynomial in monomials.
BallPoly from_monomials(int d, const MultiPoly& p);
/// The BallPoly agreeing with f, where f is known to be a polynomial of total
/// degree <= degree; found by exact quadrature of its harmonic moments.
BallPoly ballpoly_from_function(
    int d, int degree, const std::function<double(std::span<const double>)>& f);
/// d/dx_i (0-based) via the monomial form.
BallPoly partial(const BallPoly& f, int i);

/// Radial part in u of hat P_j^{(alpha,beta)}(2u - 1).
RadialPoly gjacobi_radial(double alpha, double beta, int j);

std::string to_json(const BallPoly& f);
BallPoly ballpoly_from_json(const std::string& text);

}  // namespace ballspec

#endif  // BALLSPEC_BALLFUN_HPP
