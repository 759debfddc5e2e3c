#include "ballspec/poly.hpp"

#include <algorithm>
#include <cmath>

namespace ballspec {

namespace radial {

void trim(RadialPoly& q) {
  while (!q.empty() && q.back() == 0.0) q.pop_back();
}

int degree(const RadialPoly& q) {
  for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
    if (q[k] != 0.0) return k;
  }
  return -1;
}

double eval(const RadialPoly& q, double u) {
  double r = 0.0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) r = r * u + *it;
  return r;
}

RadialPoly add(const RadialPoly& a, const RadialPoly& b) {
  RadialPoly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

RadialPoly scale(const RadialPoly& a, double c) {
  if (c == 0.0) return {};
  RadialPoly r(a);
  for (double& x : r) x *= c;
  trim(r);
  return r;
}

RadialPoly mul(const RadialPoly& a, const RadialPoly& b) {
  if (a.empty() || b.empty()) return {};
  RadialPoly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) r[i + k] += a[i] * b[k];
  }
  trim(r);
  return r;
}

RadialPoly derivative(const RadialPoly& a) {
  if (a.size() <= 1) return {};
  RadialPoly r(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) r[k - 1] = k * a[k];
  trim(r);
  return r;
}

RadialPoly one_minus_u_pow(int k) {
  RadialPoly r{1.0};
  const RadialPoly f{1.0, -1.0};
  for (int i = 0; i < k; ++i) r = mul(r, f);
  return r;
}

RadialPoly from_shifted(std::span<const double> a) {
  // Horner in the variable (u - 1).
  RadialPoly r;
  const RadialPoly shift{-1.0, 1.0};
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    r = mul(r, shift);
    r = add(r, RadialPoly{*it});
  }
  trim(r);
  return r;
}

double max_abs(const RadialPoly& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace radial

void MultiPoly::add_term(const Exponent& e, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double MultiPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

int MultiPoly::degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) deg = std::max(deg, e[0] + e[1] + e[2]);
  return deg;
}

double MultiPoly::eval(std::span<const double> x) const {
  double r = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (int i = 0; i < d_; ++i) {
      for (int p = 0; p < e[i]; ++p) m *= x[i];
    }
    r += m;
  }
  return r;
}

MultiPoly MultiPoly::partial(int i) const {
  MultiPoly r(d_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    f[i] -= 1;
    r.add_term(f, c * e[i]);
  }
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r(*this);
  if (r.d_ == 0) r.d_ = o.d_;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  return *this + o * -1.0;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r(std::max(d_, o.d_));
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      r.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
    }
  }
  return r;
}

MultiPoly MultiPoly::operator*(double c) const {
  MultiPoly r(d_);
  for (const auto& [e, v] : terms_) r.add_term(e, v * c);
  return r;
}

MultiPoly MultiPoly::monomial(int d, const Exponent& e, double c) {
  MultiPoly r(d);
  r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::constant(int d, double c) {
  return monomial(d, {0, 0, 0}, c);
}

MultiPoly MultiPoly::norm_squared(int d) {
  MultiPoly r(d);
  for (int i = 0; i < d; ++i) {
    Exponent e{0, 0, 0};
    e[i] = 2;
    r.add_term(e, 1.0);
  }
  return r;
}

MultiPoly MultiPoly::radial(int d, const RadialPoly& q) {
  MultiPoly r(d);
  MultiPoly power = constant(d, 1.0);
  const MultiPoly nsq = norm_squared(d);
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (k > 0) power = power * nsq;
    r = r + power * q[k];
  }
  return r;
}

}  // namespace ballspec
