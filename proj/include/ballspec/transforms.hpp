#ifndef BALLSPEC_TRANSFORMS_HPP
#define BALLSPEC_TRANSFORMS_HPP

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ballspec/quadrature.hpp"
#include "ballspec/sobolevbasis.hpp"

namespace ballspec {

enum class Family { harmonic, classical, sobolev };

/// Expansion coefficients in one of the three families.  Harmonic entries use
/// BasisIndex{m, 0, ell}; the others use the ball basis indices.
struct SpectralCoeffs {
  Family family = Family::classical;
  int d = 2;
  double mu = 0.0;        // classical
  SobolevParams sobolev;  // sobolev
  std::map<BasisIndex, double> table;

  int max_degree() const;
};

/// Cut-off: 1 on [0,1], 0 on [2,inf), smooth step in between.
double cutoff_eval(double t);
using Cutoff = std::function<double(double)>;

/// proj^mu_k f for k <= n, exact for a BallPoly.
SpectralCoeffs project_classical(const BallPoly& f, double mu, int n);
/// Same for a callable, using the product grid q (radial and sphere moments).
SpectralCoeffs project_classical(const PointFn& f, double mu, int n, int d,
                                 const BallQuadrature& q);

/// proj^H_m g for m <= n of a function on the sphere, via the sphere rule.
SpectralCoeffs project_harmonic(const PointFn& g, int n, const SphereRule& rule);

/// proj^{-s}_k f for k <= n, exact for a BallPoly.
SpectralCoeffs project_sobolev(const BallPoly& f, const SobolevParams& p, int n);

/// Input for the callable Sobolev path: laplacians[k] evaluates Delta^k f
/// for k = 0 .. max(floor(s/2), ceil(s/2)-1).  The gradient term of odd s is
/// moved onto the basis by Green's identity, so no gradient callable is needed.
struct SobolevCallables {
  std::vector<PointFn> laplacians;
};
SpectralCoeffs project_sobolev(const SobolevCallables& f, const SobolevParams& p, int n,
                               int d, const BallQuadrature& q);

/// sum_{k<=n} proj_k, or sum_k eta(k/n) proj_k (degree <= 2n-1) with a cutoff.
BallPoly partial_sum(const SpectralCoeffs& c, int n, std::optional<Cutoff> eta = std::nullopt);

/// Pointwise value of the same partial sum without the monomial form;
/// stable at high degree.  For the harmonic family x is on the sphere.
double eval_partial_sum(const SpectralCoeffs& c, int n, std::span<const double> x,
                        std::optional<Cutoff> eta = std::nullopt);

/// Values of the partial sum at all grid points.
std::vector<double> eval_partial_sum_on(const SpectralCoeffs& c, int n,
                                        const std::vector<std::array<double, 3>>& pts,
                                        std::optional<Cutoff> eta = std::nullopt);

/// Relative residual of d_i S^mu_n f = S^{mu+1}_{n-1} d_i f at random points,
/// i in 1..d.
double check_commutation_mu(const BallPoly& f, double mu, int n, int i);

struct SobolevCommutation {
  double gradient = 0.0;   // s = 1: max_i |d_i S^{-1}_n f - S^0_{n-1} d_i f|
  double laplacian = 0.0;  // Delta^h S^{-s}_n f - S_{n-2h} Delta^h f, h = floor(s/2)
};
/// Both residuals relative to the size of the left side.  For odd s the right
/// family is the s=1 Sobolev family with lambda_0 = lambda_{floor(s/2)}.
SobolevCommutation check_commutation_sobolev(const BallPoly& f, const SobolevParams& p, int n);

/// CSV with columns family, n, j, ell, value.
void write_coeffs_csv(std::ostream& os, const SpectralCoeffs& c);

}  // namespace ballspec

#endif  // BALLSPEC_TRANSFORMS_HPP
