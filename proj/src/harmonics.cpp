#include "ballspec/harmonics.hpp"

#include "ballspec/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ballspec {

namespace {

// Coefficients of the fully normalized associated Legendre recurrence
//   Pbar_l^k = a z Pbar_{l-1}^k - b Pbar_{l-2}^k.
double rec_a(int l, int k) {
  return std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - k * k));
}

double rec_b(int l, int k) {
  return std::sqrt((2.0 * l + 1.0) * ((l - 1.0) * (l - 1.0) - k * k) /
                   ((2.0 * l - 3.0) * (static_cast<double>(l) * l - k * k)));
}

// T_k^k, the value of rho^k Pbar_k^k / (rho sin theta)^k.
double diagonal_factor(int k) {
  double t = 1.0;
  for (int i = 1; i <= k; ++i) t *= std::sqrt((2.0 * i + 1.0) / (2.0 * i));
  return t;
}

// T_m^k = rho^m Pbar_m^k(z/rho) / (rho sin theta)^k, a polynomial in z, rho^2.
double polar_factor(int m, int k, double z, double r2) {
  double tkk = diagonal_factor(k);
  if (m == k) return tkk;
  double prev = tkk;
  double cur = std::sqrt(2.0 * k + 3.0) * z * tkk;
  for (int l = k + 2; l <= m; ++l) {
    const double next = rec_a(l, k) * z * cur - rec_b(l, k) * r2 * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

int harmonic_dim(int d, int m) {
  if (m < 0) return 0;
  if (d == 2) return m == 0 ? 1 : 2;
  if (d == 3) return 2 * m + 1;
  throw std::invalid_argument("harmonic_dim: unsupported dimension " +
                              std::to_string(d));
}

void validate(const HarmonicIndex& idx) {
  if (idx.d != 2 && idx.d != 3) {
    throw std::invalid_argument("harmonic index: unsupported dimension");
  }
  if (idx.m < 0 || idx.ell < 1 || idx.ell > harmonic_dim(idx.d, idx.m)) {
    throw std::invalid_argument("harmonic index out of range");
  }
}

std::vector<HarmonicIndex> harmonic_indices(int d, int m) {
  std::vector<HarmonicIndex> r;
  const int a = harmonic_dim(d, m);
  r.reserve(a);
  for (int ell = 1; ell <= a; ++ell) r.push_back({d, m, ell});
  return r;
}

double solid_eval(const HarmonicIndex& idx, std::span<const double> x) {
  validate(idx);
  const std::complex<double> w(x[0], x[1]);
  if (idx.d == 2) {
    if (idx.m == 0) return 1.0;
    const auto p = std::pow(w, idx.m);
    return std::numbers::sqrt2 * (idx.ell == 1 ? p.real() : p.imag());
  }
  const int k = idx.ell - idx.m - 1;
  const int ak = std::abs(k);
  const double z = x[2];
  const double r2 = x[0] * x[0] + x[1] * x[1] + z * z;
  const double t = polar_factor(idx.m, ak, z, r2);
  if (ak == 0) return t;
  const auto p = std::pow(w, ak);
  return std::numbers::sqrt2 * t * (k > 0 ? p.real() : p.imag());
}

double sph_eval(const HarmonicIndex& idx, std::span<const double> xi) {
  double n2 = 0.0;
  for (int i = 0; i < idx.d; ++i) n2 += xi[i] * xi[i];
  if (std::abs(n2 - 1.0) > 1e-12 * 4) {
    throw std::invalid_argument("sph_eval: point is not on the unit sphere");
  }
  return solid_eval(idx, xi);
}

std::vector<double> solid_eval_all(int d, int mmax, std::span<const double> x) {
  std::vector<double> out;
  if (d == 2) {
    out.reserve(2 * mmax + 1);
    const std::complex<double> w(x[0], x[1]);
    std::complex<double> p(1.0, 0.0);
    out.push_back(1.0);
    for (int m = 1; m <= mmax; ++m) {
      p *= w;
      out.push_back(std::numbers::sqrt2 * p.real());
      out.push_back(std::numbers::sqrt2 * p.imag());
    }
    return out;
  }
  if (d != 3) throw std::invalid_argument("solid_eval_all: unsupported d");
  const double z = x[2];
  const double r2 = x[0] * x[0] + x[1] * x[1] + z * z;
  const std::complex<double> w(x[0], x[1]);
  // T[k][m - k] for m >= k.
  std::vector<std::vector<double>> table(mmax + 1);
  std::vector<std::complex<double>> wpow(mmax + 1);
  wpow[0] = 1.0;
  for (int k = 1; k <= mmax; ++k) wpow[k] = wpow[k - 1] * w;
  for (int k = 0; k <= mmax; ++k) {
    auto& col = table[k];
    col.resize(mmax - k + 1);
    col[0] = diagonal_factor(k);
    if (mmax > k) col[1] = std::sqrt(2.0 * k + 3.0) * z * col[0];
    for (int l = k + 2; l <= mmax; ++l) {
      col[l - k] = rec_a(l, k) * z * col[l - k - 1] -
                   rec_b(l, k) * r2 * col[l - k - 2];
    }
  }
  out.reserve((mmax + 1) * (mmax + 1));
  for (int m = 0; m <= mmax; ++m) {
    for (int k = -m; k <= m; ++k) {
      const int ak = std::abs(k);
      const double t = table[ak][m - ak];
      if (k == 0) {
        out.push_back(t);
      } else if (k > 0) {
        out.push_back(std::numbers::sqrt2 * t * wpow[ak].real());
      } else {
        out.push_back(std::numbers::sqrt2 * t * wpow[ak].imag());
      }
    }
  }
  return out;
}

namespace {

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// Real or imaginary part of (x_1 + i x_2)^k as a polynomial.
MultiPoly complex_power_part(int d, int k, bool imaginary) {
  MultiPoly r(d);
  // (x + i y)^k = sum_p C(k,p) x^{k-p} (i y)^p; i^p real for even p.
  for (int p = 0; p <= k; ++p) {
    if ((p % 2 == 1) != imaginary) continue;
    const double binom = factorial(k) / (factorial(p) * factorial(k - p));
    const int phase = (p / 2) % 2 == 0 ? 1 : -1;
    r.add_term({k - p, p, 0}, phase * binom);
  }
  return r;
}

}  // namespace

MultiPoly solid_harmonic_poly(const HarmonicIndex& idx) {
  validate(idx);
  const int d = idx.d;
  if (d == 2) {
    if (idx.m == 0) return MultiPoly::constant(2, 1.0);
    return complex_power_part(2, idx.m, idx.ell == 2) * std::numbers::sqrt2;
  }
  const int m = idx.m;
  const int k = idx.ell - m - 1;
  const int ak = std::abs(k);
  // d^k P_m / dt^k = sum_i a_i t^{m-k-2i}; homogenized with rho^{2i}.
  MultiPoly polar(3);
  const MultiPoly r2 = MultiPoly::norm_squared(3);
  for (int i = 0; 2 * i <= m - ak; ++i) {
    const double legendre = ((i % 2 == 0) ? 1.0 : -1.0) * factorial(2 * m - 2 * i) /
                            (std::pow(2.0, m) * factorial(i) * factorial(m - i) *
                             factorial(m - 2 * i));
    const double c = legendre * factorial(m - 2 * i) / factorial(m - 2 * i - ak);
    MultiPoly term = MultiPoly::monomial(3, {0, 0, m - ak - 2 * i}, c);
    for (int p = 0; p < i; ++p) term = term * r2;
    polar = polar + term;
  }
  double norm = std::sqrt((2.0 * m + 1.0) * factorial(m - ak) / factorial(m + ak));
  MultiPoly azimuthal = MultiPoly::constant(3, 1.0);
  if (ak > 0) {
    norm *= std::numbers::sqrt2;
    azimuthal = complex_power_part(3, ak, k < 0);
  }
  return polar * azimuthal * norm;
}

SphereRule sphere_rule(int d, int n) {
  if (d != 2 && d != 3) throw std::invalid_argument("sphere_rule: unsupported d");
  if (n < 0) throw std::invalid_argument("sphere_rule: n must be >= 0");
  SphereRule r;
  r.d = d;
  r.n = n;
  const int nphi = 2 * n + 1;
  if (d == 2) {
    for (int k = 0; k < nphi; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / nphi;
      r.points.push_back({std::cos(phi), std::sin(phi), 0.0});
      r.weights.push_back(1.0 / nphi);
    }
    return r;
  }
  const auto gl = cached_gauss_jacobi_rule(n, {0.0, 0.0});
  for (std::size_t a = 0; a < gl->nodes.size(); ++a) {
    const double t = gl->nodes[a];
    const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int k = 0; k < nphi; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / nphi;
      r.points.push_back({t, st * std::cos(phi), st * std::sin(phi)});
      r.weights.push_back(0.5 * gl->weights[a] / nphi);
    }
  }
  return r;
}

}  // namespace ballspec
