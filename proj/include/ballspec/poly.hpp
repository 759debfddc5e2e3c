#ifndef BALLSPEC_POLY_HPP
#define BALLSPEC_POLY_HPP

#include <array>
#include <map>
#include <span>
#include <vector>

namespace ballspec {

/// Univariate polynomial sum_k c[k] u^k.  Canonical form has a nonzero
/// trailing coefficient (the zero polynomial is the empty vector).
using RadialPoly = std::vector<double>;

namespace radial {

void trim(RadialPoly& q);
int degree(const RadialPoly& q);  // -1 for the zero polynomial
double eval(const RadialPoly& q, double u);
RadialPoly add(const RadialPoly& a, const RadialPoly& b);
RadialPoly scale(const RadialPoly& a, double c);
RadialPoly mul(const RadialPoly& a, const RadialPoly& b);
RadialPoly derivative(const RadialPoly& a);
/// (1-u)^k
RadialPoly one_minus_u_pow(int k);
/// sum_k a[k] (u-1)^k expanded in powers of u.
RadialPoly from_shifted(std::span<const double> a);
/// sum_k a[k] ((t-1)/2)^k with t = 2u-1, i.e. sum_k a[k] (u-1)^k.
inline RadialPoly from_jacobi_shifted(std::span<const double> a) {
  return from_shifted(a);
}
/// Largest absolute coefficient.
double max_abs(const RadialPoly& a);

}  // namespace radial

/// Dense multivariate polynomial over monomials x^alpha, alpha in N_0^d with
/// d <= 3.  Unused trailing exponents are zero.
class MultiPoly {
 public:
  using Exponent = std::array<int, 3>;

  MultiPoly() = default;
  explicit MultiPoly(int d) : d_(d) {}

  int dim() const { return d_; }
  const std::map<Exponent, double>& terms() const { return terms_; }

  void add_term(const Exponent& e, double c);
  double coeff(const Exponent& e) const;
  int degree() const;

  double eval(std::span<const double> x) const;
  MultiPoly partial(int i) const;  // 0-based coordinate
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(double c) const;

  static MultiPoly monomial(int d, const Exponent& e, double c = 1.0);
  static MultiPoly constant(int d, double c);
  /// ||x||^2
  static MultiPoly norm_squared(int d);
  /// q(||x||^2) as a multivariate polynomial.
  static MultiPoly radial(int d, const RadialPoly& q);

 private:
  int d_ = 0;
  std::map<Exponent, double> terms_;
};

}  // namespace ballspec

#endif  // BALLSPEC_POLY_HPP
