#include "ballspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "ballspec/jacobi.hpp"

namespace ballspec {

BallQuadrature build_grid(int d, int n) {
  if (d != 2 && d != 3) throw std::invalid_argument("build_grid: unsupported d");
  if (n < 0) throw std::invalid_argument("build_grid: n must be >= 0");
  BallQuadrature q;
  q.d = d;
  q.n = n;
  const auto rule = cached_gauss_jacobi_rule(n, {0.0, 0.5 * d - 1.0});
  const double c = d * std::pow(2.0, -0.5 * d - 1.0);
  for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
    q.rho.push_back(std::sqrt(0.5 * (rule->nodes[i] + 1.0)));
    q.radial_weights.push_back(c * rule->weights[i]);
  }
  q.sphere = sphere_rule(d, n);
  for (std::size_t i = 0; i < q.rho.size(); ++i) {
    for (std::size_t a = 0; a < q.sphere.points.size(); ++a) {
      std::array<double, 3> x{};
      for (int k = 0; k < d; ++k) x[k] = q.rho[i] * q.sphere.points[a][k];
      q.points.push_back(x);
      q.weights.push_back(q.radial_weights[i] * q.sphere.weights[a]);
    }
  }
  return q;
}

namespace {
std::span<const double> view(const BallQuadrature& q, std::size_t k) {
  return {q.points[k].data(), static_cast<std::size_t>(q.d)};
}
}  // namespace

double discrete_inner(const BallQuadrature& q, const PointFn& f, const PointFn& g) {
  double s = 0.0;
  for (std::size_t k = 0; k < q.points.size(); ++k) {
    const auto x = view(q, k);
    s += q.weights[k] * f(x) * g(x);
  }
  return s;
}

ErrorMetrics error_metrics(const BallQuadrature& q, std::span<const double> values) {
  if (values.size() != q.points.size()) {
    throw std::invalid_argument("error_metrics: one value per grid point expected");
  }
  ErrorMetrics e;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double v = values[k];
    if (std::isnan(v)) {
      e.e_max = e.e_l2 = e.e_l2_squared = v;
      return e;
    }
    e.e_max = std::max(e.e_max, std::abs(v));
    e.e_l2_squared += q.weights[k] * v * v;
  }
  e.e_l2 = std::sqrt(e.e_l2_squared);
  return e;
}

ErrorMetrics error_metrics(const BallQuadrature& q, const PointFn& f) {
  std::vector<double> v(q.points.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(view(q, k));
  return error_metrics(q, v);
}

std::vector<double> sphere_moments(const SphereRule& s, const PointFn& g, int mmax) {
  std::vector<double> out;
  for (std::size_t a = 0; a < s.points.size(); ++a) {
    const auto ys = solid_eval_all(s.d, mmax, s.points[a]);
    if (out.empty()) out.assign(ys.size(), 0.0);
    const double wg = s.weights[a] * g({s.points[a].data(), static_cast<std::size_t>(s.d)});
    for (std::size_t h = 0; h < ys.size(); ++h) out[h] += wg * ys[h];
  }
  return out;
}

std::vector<std::vector<double>> harmonic_moments(const BallQuadrature& q,
                                                  const PointFn& f, int mmax) {
  const std::size_t na = q.sphere.points.size();
  std::vector<std::vector<double>> ys(na);
  for (std::size_t a = 0; a < na; ++a) ys[a] = solid_eval_all(q.d, mmax, q.sphere.points[a]);
  const std::size_t nh = ys[0].size();
  std::vector<std::vector<double>> out(q.rho.size(), std::vector<double>(nh, 0.0));
  for (std::size_t i = 0; i < q.rho.size(); ++i) {
    for (std::size_t a = 0; a < na; ++a) {
      const std::size_t k = i * na + a;
      const double wf = q.sphere.weights[a] * f(view(q, k));
      for (std::size_t h = 0; h < nh; ++h) out[i][h] += wf * ys[a][h];
    }
  }
  return out;
}

void write_grid_csv(std::ostream& os, const BallQuadrature& q) {
  for (int k = 0; k < q.d; ++k) os << "x" << (k + 1) << ",";
  os << "weight\n";
  char buf[64];
  for (std::size_t k = 0; k < q.points.size(); ++k) {
    for (int c = 0; c < q.d; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g,", q.points[k][c]);
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g\n", q.weights[k]);
    os << buf;
  }
}

}  // namespace ballspec
