#include "ballspec/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace ballspec {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

bool near_integer(double x, double tol = 1e-9) {
  return std::abs(x - std::round(x)) <= tol;
}

bool classical(const JacobiParams& p) { return p.alpha > -1.0 && p.beta > -1.0; }

}  // namespace

double pochhammer(double a, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) {
    const double f = a + i;
    if (f == 0.0) return 0.0;
    r *= f;
  }
  return r;
}

double jacobi_eval_explicit(const JacobiParams& p, int j, double t) {
  if (j < 0) return 0.0;
  const double x = 0.5 * (t - 1.0);
  CompensatedSum sum;
  double xk = 1.0;
  for (int k = 0; k <= j; ++k) {
    const double c = pochhammer(k + p.alpha + 1.0, j - k) *
                     pochhammer(j + p.alpha + p.beta + 1.0, k) /
                     (factorial(j - k) * factorial(k));
    sum.add(c * xk);
    xk *= x;
  }
  return sum.value();
}

namespace {

template <class T>
void recurrence_with_derivative(T a, T b, int j, T t, T& value, T& derivative) {
  if (j <= 0) {
    value = (j == 0) ? T(1) : T(0);
    derivative = T(0);
    return;
  }
  T pm1 = 1;
  T pk = (a + 1) + T(0.5) * (a + b + 2) * (t - 1);
  T dm1 = 0;
  T dk = T(0.5) * (a + b + 2);
  for (int k = 1; k < j; ++k) {
    const T s = 2 * T(k) + a + b;
    const T c0 = 2 * T(k + 1) * (k + a + b + 1) * s;
    const T c1 = (s + 1) * (s + 2) * s;
    const T c2 = (s + 1) * (a * a - b * b);
    const T c3 = 2 * (k + a) * (k + b) * (s + 2);
    const T pn = ((c1 * t + c2) * pk - c3 * pm1) / c0;
    const T dn = ((c1 * t + c2) * dk + c1 * pk - c3 * dm1) / c0;
    pm1 = pk;
    pk = pn;
    dm1 = dk;
    dk = dn;
  }
  value = pk;
  derivative = dk;
}

}  // namespace

void jacobi_eval_with_derivative(const JacobiParams& p, int j, double t,
                                 double& value, double& derivative) {
  recurrence_with_derivative<double>(p.alpha, p.beta, j, t, value, derivative);
}

double jacobi_eval_recurrence(const JacobiParams& p, int j, double t) {
  double v = 0.0;
  double dv = 0.0;
  jacobi_eval_with_derivative(p, j, t, v, dv);
  return v;
}

double jacobi_eval(const JacobiParams& p, int j, double t) {
  if (j < 0) return 0.0;
  if (classical(p)) return jacobi_eval_recurrence(p, j, t);
  return jacobi_eval_explicit(p, j, t);
}

int gjacobi_j0(const JacobiParams& p, int j) {
  const double m = -j - p.alpha - p.beta;
  if (!near_integer(m)) return 0;
  const long r = std::lround(m);
  if (r >= 1 && r <= j) return static_cast<int>(r);
  return 0;
}

std::vector<double> gjacobi_coeffs(const JacobiParams& p, int j) {
  if (j < 0) return {};
  std::vector<double> a(static_cast<std::size_t>(j) + 1, 0.0);
  const int j0 = gjacobi_j0(p, j);
  for (int k = j0; k <= j; ++k) {
    const double den = factorial(j - k) * factorial(k) *
                       pochhammer(j + p.alpha + p.beta + k + 1.0, j - k);
    if (den == 0.0) {
      throw std::domain_error(
          "gjacobi: vanishing denominator Pochhammer in a retained term");
    }
    a[k] = pochhammer(k + p.alpha + 1.0, j - k) / den;
  }
  return a;
}

double gjacobi_eval_explicit(const JacobiParams& p, int j, double t) {
  if (j < 0) return 0.0;
  const auto a = gjacobi_coeffs(p, j);
  const double x = 0.5 * (t - 1.0);
  CompensatedSum sum;
  double xk = 1.0;
  for (int k = 0; k <= j; ++k) {
    if (a[k] != 0.0) sum.add(a[k] * xk);
    xk *= x;
  }
  const double v = sum.value();
  if (!std::isfinite(v)) throw std::domain_error("gjacobi: non-finite value");
  return v;
}

double gjacobi_eval(const JacobiParams& p, int j, double t) {
  if (j < 0) return 0.0;
  if (j == 0) return 1.0;
  if (classical(p)) {
    return jacobi_eval_recurrence(p, j, t) /
           pochhammer(j + p.alpha + p.beta + 1.0, j);
  }
  if (p.alpha < 0.0 && near_integer(p.alpha) && p.beta > -1.0) {
    const int s = static_cast<int>(std::lround(-p.alpha));
    if (j >= s) {
      const double x = 0.5 * (t - 1.0);
      return std::pow(x, s) *
             gjacobi_eval({static_cast<double>(s), p.beta}, j - s, t) /
             pochhammer(j - s + 1.0, s);
    }
  }
  return gjacobi_eval_explicit(p, j, t);
}

double gjacobi_value_at_one(const JacobiParams& p, int j) {
  if (j < 0) return 0.0;
  if (gjacobi_j0(p, j) != 0) return 0.0;
  return pochhammer(p.alpha + 1.0, j) /
         (factorial(j) * pochhammer(j + p.alpha + p.beta + 1.0, j));
}

double gjacobi_derivative(const JacobiParams& p, int j, double t) {
  if (j <= 0) return 0.0;
  return 0.5 * gjacobi_eval({p.alpha + 1.0, p.beta + 1.0}, j - 1, t);
}

double jacobi_weight_mass(const JacobiParams& p) {
  const double a = p.alpha + 1.0;
  const double b = p.beta + 1.0;
  const double lb = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  double beta_fn;
  if (a + b < 160.0) {
    beta_fn = std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
  } else {
    beta_fn = std::exp(lb);
  }
  return std::pow(2.0, p.alpha + p.beta + 1.0) * beta_fn;
}

namespace {

bool validate_roots(const std::vector<double>& r, int count) {
  if (static_cast<int>(r.size()) != count) return false;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || r[i] <= -1.0 || r[i] >= 1.0) return false;
    if (i > 0 && !(r[i] > r[i - 1])) return false;
  }
  return true;
}

// Newton iteration with deflation from Chebyshev-angle initial guesses.
std::vector<double> roots_newton(const JacobiParams& p, int count) {
  std::vector<double> roots;
  roots.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double theta = std::numbers::pi * (k + 0.75) / (count + 0.5);
    double x = -std::cos(theta);
    if (k > 0 && x <= roots.back()) x = 0.5 * (roots.back() + 1.0);
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
      double v = 0.0;
      double dv = 0.0;
      jacobi_eval_with_derivative(p, count, x, v, dv);
      double defl = 0.0;
      for (double r : roots) defl += 1.0 / (x - r);
      const double denom = dv - v * defl;
      if (denom == 0.0 || !std::isfinite(denom)) break;
      const double dx = v / denom;
      x -= dx;
      if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x))) {
        converged = true;
        break;
      }
    }
    if (!converged) return {};
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Sign-bracketing on a cosine grid followed by bisection and a Newton polish.
std::vector<double> roots_bracketing(const JacobiParams& p, int count) {
  for (int refine = 64; refine <= 4096; refine *= 4) {
    const int m = refine * (count + 1);
    std::vector<double> roots;
    double t_prev = -1.0;
    double v_prev = jacobi_eval_recurrence(p, count, t_prev);
    for (int i = 1; i <= m; ++i) {
      const double t = -std::cos(std::numbers::pi * i / m);
      const double v = jacobi_eval_recurrence(p, count, t);
      if (v == 0.0) {
        roots.push_back(t);
      } else if (v_prev != 0.0 && (v > 0.0) != (v_prev > 0.0)) {
        double lo = t_prev;
        double hi = t;
        double flo = v_prev;
        for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = jacobi_eval_recurrence(p, count, mid);
          if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        roots.push_back(0.5 * (lo + hi));
      }
      t_prev = t;
      v_prev = v;
    }
    if (validate_roots(roots, count)) return roots;
  }
  return {};
}

}  // namespace

GaussJacobiRule gauss_jacobi_rule(int n, const JacobiParams& p) {
  if (n < 0) throw std::invalid_argument("gauss_jacobi_rule: n must be >= 0");
  if (!(p.alpha > -1.0 && p.beta > -1.0)) {
    throw std::invalid_argument("gauss_jacobi_rule: requires alpha, beta > -1");
  }
  const int count = n + 1;
  GaussJacobiRule rule;
  rule.degree_exactness = 2 * n + 1;
  rule.params = p;

  auto roots = roots_newton(p, count);
  if (!validate_roots(roots, count)) roots = roots_bracketing(p, count);
  if (!validate_roots(roots, count)) {
    throw ConvergenceError("gauss_jacobi_rule: node finding did not converge");
  }

  // Polish each node in extended precision, then use the Christoffel numbers
  // in the form (1-t^2) / P_{N-1}(t)^2 (up to a common factor), since at a
  // zero of P_N, (2N+a+b)(1-t^2) P_N'(t) = 2(N+a)(N+b) P_{N-1}(t).
  using LD = long double;
  const LD a = p.alpha;
  const LD b = p.beta;
  std::vector<LD> w(count);
  LD total = 0;
  for (int i = 0; i < count; ++i) {
    LD t = roots[i];
    for (int it = 0; it < 3; ++it) {
      LD v, dv;
      recurrence_with_derivative<LD>(a, b, count, t, v, dv);
      if (dv == 0) break;
      t -= v / dv;
    }
    LD q, dq;
    recurrence_with_derivative<LD>(a, b, count - 1, t, q, dq);
    w[i] = (1 - t) * (1 + t) / (q * q);
    total += w[i];
    roots[i] = static_cast<double>(t);
  }
  const LD scale = static_cast<LD>(jacobi_weight_mass(p)) / total;
  std::vector<double> wd(count);
  for (int i = 0; i < count; ++i) wd[i] = static_cast<double>(w[i] * scale);

  rule.nodes = std::move(roots);
  rule.weights = std::move(wd);
  return rule;
}

std::shared_ptr<const GaussJacobiRule> cached_gauss_jacobi_rule(
    int n, const JacobiParams& p) {
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>,
                  std::shared_ptr<const GaussJacobiRule>>
      cache;
  const auto key = std::make_tuple(n, p.alpha, p.beta);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const GaussJacobiRule>(gauss_jacobi_rule(n, p));
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

}  // namespace ballspec
