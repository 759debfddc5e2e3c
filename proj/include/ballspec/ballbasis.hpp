#ifndef BALLSPEC_BALLBASIS_HPP
#define BALLSPEC_BALLBASIS_HPP

#include <array>
#include <compare>
#include <span>
#include <vector>

#include "ballspec/ballfun.hpp"

namespace ballspec {

/// (n, j, ell) for P^{mu,n}_{j,ell} and Q^{-s,n}_{j,ell}: total degree n,
/// radial index j, harmonic Y^{n-2j}_ell.
struct BasisIndex {
  int n = 0;
  int j = 0;
  int ell = 1;

  int harmonic_degree() const { return n - 2 * j; }
  auto operator<=>(const BasisIndex&) const = default;
};

/// Throws std::invalid_argument if out of range.
void validate(const BasisIndex& idx, int d);

/// All indices of total degree n, ordered by j then ell.
std::vector<BasisIndex> basis_indices(int d, int n);
/// All indices of total degree <= n, ordered by n, j, ell.
std::vector<BasisIndex> basis_indices_upto(int d, int n);

/// Radial factor of P^{mu,n}_{j,ell} in monomials of u = ||x||^2:
/// (n-j+d/2)_j hat P_j^{(mu, n-2j+d/2-1)}(2u-1).
RadialPoly ball_radial_poly(double mu, int n, int j, int d);

/// The same radial factor evaluated without the monomial form (recurrence or
/// the negative-integer reduction); stable for large n.
double ball_radial(double mu, int n, int j, int d, double u);

/// P^{mu,n}_{j,ell} as a BallPoly; any real mu.
BallPoly ball_basis(double mu, const BasisIndex& idx, int d);

/// Closed-form squared norm h^mu_{j,n} under <.,.>_mu, mu > -1.
double ball_norm(double mu, int n, int j, int d);

/// Factor c with P^{mu,n}_{j,ell} = c P_j^{(mu, n-2j+d/2-1)}(2u-1) Y, mu > -1.
double classical_scale(double mu, int n, int j, int d);

/// Exact proj^mu_m f: the degree-m component of f in the mu-orthogonal basis.
BallPoly project_classical_degree(const BallPoly& f, double mu, int m);

/// Relative residual of
///   P^{-s,n}_{j} = (1-n-d/2)_j / ((-j)_s (1-n-d/2+2s)_{j-s}) (u-1)^s P^{s,n-2s}_{j-s},
/// measured as the max over 50 random points of the BallPoly difference.
double check_PN2P(int s, const BasisIndex& idx, int d);

struct LaplacePReport {
  int j0 = 0;                 // truncation index of the generalized family
  int remainder_degree = -1;  // radial degree of the remainder, -1 if zero
  int degree_bound = -1;      // j0 - k - 1
  double remainder_size = 0;  // max |coeff| of the remainder, relative
  bool main_condition = false;      // s + k >= j
  bool appendix_condition = false;  // j + k >= s
  bool ok = false;  // remainder degree within the bound, zero if bound < 0
};

/// Delta^k P^{-s,n}_j minus 4^k (n+d/2-2k)_{2k} P^{2k-s,n-2k}_{j-k}, which
/// must be a radial polynomial of degree <= j0-k-1 times Y^{n-2j}.
LaplacePReport check_LaplaceP(int s, int k, const BasisIndex& idx, int d);

using MultiIndex = std::array<int, 3>;

/// Monic orthogonal polynomial V_alpha^mu as an explicit polynomial, with the
/// truncated series when a denominator Pochhammer vanishes.
MultiPoly monic_poly(double mu, const MultiIndex& alpha, int d);
double monic_eval(double mu, const MultiIndex& alpha, int d, std::span<const double> x);

/// Residual of d^beta V_alpha^mu = (-1)^|beta| (-alpha)_beta V_{alpha-beta}^{mu+|beta|}
/// at random points, relative to the size of the left side.
double check_DiffV(double mu, const MultiIndex& alpha, const MultiIndex& beta, int d);

/// Max coefficient of D_mu P + (n+d)(n+2mu) P relative to P, with
/// D_mu = Delta - sum_j d_j x_j (2 mu + sum_i x_i d_i), computed exactly.
double check_eigen_Dmu(double mu, const BasisIndex& idx, int d);

}  // namespace ballspec

#endif  // BALLSPEC_BALLBASIS_HPP
