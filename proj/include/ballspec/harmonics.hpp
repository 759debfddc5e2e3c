#ifndef BALLSPEC_HARMONICS_HPP
#define BALLSPEC_HARMONICS_HPP

#include <array>
#include <compare>
#include <span>
#include <vector>

#include "ballspec/poly.hpp"

namespace ballspec {

/// Index of a real spherical harmonic Y^m_ell on S^{d-1}, d in {2, 3}.
///
/// Ordering of ell within a degree: for d = 2, ell = 1 is cos(m phi) and ell = 2
/// is sin(m phi); for d = 3, ell = k + m + 1 where k in [-m, m] is the azimuthal
/// order, negative k meaning sin(|k| phi).  The polar axis is x_3.
struct HarmonicIndex {
  int d = 2;
  int m = 0;
  int ell = 1;

  auto operator<=>(const HarmonicIndex&) const = default;
};

/// dim H_m^d.
int harmonic_dim(int d, int m);

/// Throws std::invalid_argument for an out-of-range index.
void validate(const HarmonicIndex& idx);

std::vector<HarmonicIndex> harmonic_indices(int d, int m);

/// Y^m_ell at a unit vector; normalized so that the surface mean of Y^2 is 1.
double sph_eval(const HarmonicIndex& idx, std::span<const double> xi);

/// Solid harmonic rho^m Y^m_ell(x / rho), a homogeneous polynomial of degree m.
double solid_eval(const HarmonicIndex& idx, std::span<const double> x);

/// All solid harmonics of degree <= mmax at one point, in the order of
/// harmonic_indices(d, 0), harmonic_indices(d, 1), ...
std::vector<double> solid_eval_all(int d, int mmax, std::span<const double> x);

/// The solid harmonic as an explicit polynomial in monomials.
MultiPoly solid_harmonic_poly(const HarmonicIndex& idx);

/// Offset of (m, ell) inside the vector returned by solid_eval_all.
inline int harmonic_offset(int d, int m, int ell) {
  if (d == 2) return m == 0 ? 0 : 2 * m - 2 + ell;
  return m * m + ell - 1;
}

/// Product rule on S^{d-1}: 2n+1 equispaced azimuths, and for d = 3 the n+1
/// Gauss-Legendre nodes in the cosine of the angle to the x_1 axis.  Weights
/// sum to 1; exact for polynomials of degree <= 2n.
struct SphereRule {
  int d = 2;
  int n = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};

SphereRule sphere_rule(int d, int n);

}  // namespace ballspec

#endif  // BALLSPEC_HARMONICS_HPP
