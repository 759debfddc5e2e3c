#include "ballspec/ballfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "ballspec/jacobi.hpp"

namespace ballspec {

BallPoly BallPoly::constant(int d, double c) {
  BallPoly f(d);
  f.add({d, 0, 1}, RadialPoly{c});
  return f;
}

BallPoly BallPoly::term(const HarmonicIndex& idx, RadialPoly q) {
  BallPoly f(idx.d);
  f.add(idx, q);
  return f;
}

RadialPoly BallPoly::radial(const HarmonicIndex& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? RadialPoly{} : it->second;
}

void BallPoly::add(const HarmonicIndex& idx, const RadialPoly& q) {
  if (idx.d != d_) throw std::invalid_argument("BallPoly: dimension mismatch");
  validate(idx);
  auto it = terms_.find(idx);
  RadialPoly r = it == terms_.end() ? q : radial::add(it->second, q);
  radial::trim(r);
  if (r.empty()) {
    if (it != terms_.end()) terms_.erase(it);
  } else {
    terms_[idx] = std::move(r);
  }
}

int BallPoly::max_harmonic_degree() const {
  int m = -1;
  for (const auto& [idx, q] : terms_) m = std::max(m, idx.m);
  return m;
}

int BallPoly::degree() const {
  int deg = -1;
  for (const auto& [idx, q] : terms_) {
    deg = std::max(deg, idx.m + 2 * radial::degree(q));
  }
  return deg;
}

int BallPoly::radial_degree() const {
  int deg = -1;
  for (const auto& [idx, q] : terms_) deg = std::max(deg, radial::degree(q));
  return deg;
}

double BallPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [idx, q] : terms_) m = std::max(m, radial::max_abs(q));
  return m;
}

double BallPoly::eval(std::span<const double> x) const {
  if (terms_.empty()) return 0.0;
  double u = 0.0;
  for (int i = 0; i < d_; ++i) u += x[i] * x[i];
  const auto ys = solid_eval_all(d_, max_harmonic_degree(), x);
  double r = 0.0;
  for (const auto& [idx, q] : terms_) {
    r += radial::eval(q, u) * ys[harmonic_offset(d_, idx.m, idx.ell)];
  }
  return r;
}

BallPoly BallPoly::operator+(const BallPoly& o) const {
  BallPoly r(*this);
  for (const auto& [idx, q] : o.terms_) r.add(idx, q);
  return r;
}

BallPoly BallPoly::operator-(const BallPoly& o) const { return *this + o * -1.0; }

BallPoly BallPoly::operator*(double c) const {
  BallPoly r(d_);
  for (const auto& [idx, q] : terms_) r.add(idx, radial::scale(q, c));
  return r;
}

BallPoly BallPoly::times_radial(const RadialPoly& s) const {
  BallPoly r(d_);
  for (const auto& [idx, q] : terms_) r.add(idx, radial::mul(q, s));
  return r;
}

BallPoly laplacian(const BallPoly& f) {
  const int d = f.dim();
  BallPoly r(d);
  for (const auto& [idx, q] : f.terms()) {
    // D q = 4 [u q'' + (m + d/2) q']
    if (q.size() <= 1) continue;
    RadialPoly dq(q.size() - 1, 0.0);
    const double c = idx.m + 0.5 * d;
    for (std::size_t k = 1; k < q.size(); ++k) {
      dq[k - 1] = 4.0 * q[k] * k * ((k - 1.0) + c);
    }
    r.add(idx, dq);
  }
  return r;
}

BallPoly laplacian_pow(const BallPoly& f, int k) {
  BallPoly r = f;
  for (int i = 0; i < k; ++i) r = laplacian(r);
  return r;
}

std::map<HarmonicIndex, double> boundary_trace(const BallPoly& f) {
  std::map<HarmonicIndex, double> r;
  for (const auto& [idx, q] : f.terms()) {
    const double v = radial::eval(q, 1.0);
    if (v != 0.0) r[idx] = v;
  }
  return r;
}

std::map<HarmonicIndex, double> normal_derivative_trace(const BallPoly& f) {
  std::map<HarmonicIndex, double> r;
  for (const auto& [idx, q] : f.terms()) {
    const double v = idx.m * radial::eval(q, 1.0) +
                     2.0 * radial::eval(radial::derivative(q), 1.0);
    if (v != 0.0) r[idx] = v;
  }
  return r;
}

double radial_inner_fn(const std::function<double(double)>& g, int deg, int m, int d,
                       double mu) {
  if (deg < 0) return 0.0;
  const double beta = m + 0.5 * d - 1.0;
  const auto rule = cached_gauss_jacobi_rule(deg / 2 + 1, {mu, beta});
  const double mass = jacobi_weight_mass(rule->params);
  double s = 0.0;
  for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
    s += rule->weights[i] / mass * g(0.5 * (1.0 + rule->nodes[i]));
  }
  // B(beta+1, mu+1) / B(d/2, mu+1)
  const double ratio =
      std::exp(std::lgamma(beta + 1.0) - std::lgamma(beta + mu + 2.0) -
               std::lgamma(0.5 * d) + std::lgamma(0.5 * d + mu + 1.0));
  return s * ratio;
}

double radial_inner(const RadialPoly& q, int m, int d, double mu) {
  return radial_inner_fn([&q](double u) { return radial::eval(q, u); }, radial::degree(q), m,
                         d, mu);
}

double inner_L2(const BallPoly& f, const BallPoly& g, double mu) {
  if (!(mu > -1.0)) throw std::invalid_argument("inner_L2: mu must exceed -1");
  double r = 0.0;
  for (const auto& [idx, q] : f.terms()) {
    auto it = g.terms().find(idx);
    if (it == g.terms().end()) continue;
    r += radial_inner(radial::mul(q, it->second), idx.m, f.dim(), mu);
  }
  return r;
}

double inner_sphere(const BallPoly& f, const BallPoly& g) {
  const auto tf = boundary_trace(f);
  const auto tg = boundary_trace(g);
  double r = 0.0;
  for (const auto& [idx, v] : tf) {
    auto it = tg.find(idx);
    if (it != tg.end()) r += v * it->second;
  }
  return r;
}

double inner_grad(const BallPoly& f, const BallPoly& g) {
  const auto nf = normal_derivative_trace(f);
  const auto tg = boundary_trace(g);
  double s = 0.0;
  for (const auto& [idx, v] : nf) {
    auto it = tg.find(idx);
    if (it != tg.end()) s += v * it->second;
  }
  return f.dim() * s - inner_L2(laplacian(f), g, 0.0);
}

MultiPoly to_monomials(const BallPoly& f) {
  MultiPoly r(f.dim());
  for (const auto& [idx, q] : f.terms()) {
    r = r + MultiPoly::radial(f.dim(), q) * solid_harmonic_poly(idx);
  }
  return r;
}

RadialPoly gjacobi_radial(double alpha, double beta, int j) {
  const auto a = gjacobi_coeffs({alpha, beta}, j);
  return radial::from_jacobi_shifted(a);
}

BallPoly ballpoly_from_function(
    int d, int degree, const std::function<double(std::span<const double>)>& f) {
  BallPoly out(d);
  if (degree < 0) return out;
  const auto sphere = sphere_rule(d, degree);
  const auto rad = cached_gauss_jacobi_rule(degree / 2 + 1, {0.0, 0.5 * d - 1.0});
  const std::size_t na = sphere.points.size();
  const std::size_t nr = rad->nodes.size();

  std::vector<std::vector<double>> ys(na);
  for (std::size_t a = 0; a < na; ++a) {
    ys[a] = solid_eval_all(d, degree, sphere.points[a]);
  }
  const std::size_t nh = ys.empty() ? 0 : ys[0].size();

  // moments[i][h] = <f(rho_i .), Y_h>_S = rho_i^m q_h(rho_i^2)
  std::vector<std::vector<double>> moments(nr, std::vector<double>(nh, 0.0));
  std::vector<double> rho(nr);
  double scale = 0.0;
  for (std::size_t i = 0; i < nr; ++i) {
    rho[i] = std::sqrt(0.5 * (1.0 + rad->nodes[i]));
    std::array<double, 3> x{};
    for (std::size_t a = 0; a < na; ++a) {
      for (int c = 0; c < d; ++c) x[c] = rho[i] * sphere.points[a][c];
      const double fv = f(std::span<const double>(x.data(), d));
      scale = std::max(scale, std::abs(fv));
      const double wf = sphere.weights[a] * fv;
      for (std::size_t h = 0; h < nh; ++h) moments[i][h] += wf * ys[a][h];
    }
  }
  const double cutoff = 1e-14 * std::max(scale, 1e-300);

  for (int m = 0; m <= degree; ++m) {
    const double beta = m + 0.5 * d - 1.0;
    const int kmax = (degree - m) / 2;
    for (const auto& idx : harmonic_indices(d, m)) {
      const std::size_t h = harmonic_offset(d, m, idx.ell);
      RadialPoly q;
      for (int k = 0; k <= kmax; ++k) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < nr; ++i) {
          const double rm = std::pow(rho[i], m);
          const double pk = jacobi_eval_recurrence({0.0, beta}, k, rad->nodes[i]);
          num += rad->weights[i] * moments[i][h] * rm * pk;
          den += rad->weights[i] * rm * rm * pk * pk;
        }
        const double c = num / den;
        if (std::abs(c) <= cutoff) continue;
        q = radial::add(q, radial::scale(gjacobi_radial(0.0, beta, k),
                                         c * pochhammer(k + beta + 1.0, k)));
      }
      if (!q.empty()) out.add(idx, q);
    }
  }
  return out;
}

BallPoly from_monomials(int d, const MultiPoly& p) {
  return ballpoly_from_function(
      d, std::max(p.degree(), 0),
      [&p](std::span<const double> x) { return p.eval(x); });
}

BallPoly partial(const BallPoly& f, int i) {
  if (i < 0 || i >= f.dim()) throw std::invalid_argument("partial: bad axis");
  return from_monomials(f.dim(), to_monomials(f).partial(i));
}

std::string to_json(const BallPoly& f) {
  nlohmann::json j;
  j["d"] = f.dim();
  j["terms"] = nlohmann::json::array();
  for (const auto& [idx, q] : f.terms()) {
    j["terms"].push_back({{"m", idx.m}, {"ell", idx.ell}, {"q", q}});
  }
  return j.dump();
}

BallPoly ballpoly_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int d = j.at("d").get<int>();
  BallPoly f(d);
  for (const auto& t : j.at("terms")) {
    f.add({d, t.at("m").get<int>(), t.at("ell").get<int>()},
          t.at("q").get<std::vector<double>>());
  }
  return f;
}

}  // namespace ballspec
