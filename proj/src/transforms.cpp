#include "ballspec/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

#include "ballspec/jacobi.hpp"

namespace ballspec {

int SpectralCoeffs::max_degree() const {
  int k = -1;
  for (const auto& [idx, v] : table) k = std::max(k, idx.n);
  return k;
}

double cutoff_eval(double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  auto g = [](double tau) { return tau > 0.0 ? std::exp(-1.0 / tau) : 0.0; };
  const double a = g(2.0 - t);
  return a / (a + g(t - 1.0));
}

namespace {

bool has_harmonic(const BallPoly& f, int m, int ell) {
  return f.terms().count({f.dim(), m, ell}) > 0;
}

// <1,1> with weight (1-u)^mu over <1,1> with weight 1: B(d/2,1)/B(d/2,mu+1).
double weight_ratio(double mu, int d) {
  const double h = 0.5 * d;
  return std::exp(-std::log(h) - std::lgamma(h) - std::lgamma(mu + 1.0) + std::lgamma(h + mu + 1.0));
}

std::vector<std::array<double, 3>> random_points(int d, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::array<double, 3>> pts;
  while (static_cast<int>(pts.size()) < count) {
    std::array<double, 3> x{u(rng), u(rng), d == 3 ? u(rng) : 0.0};
    double r2 = 0;
    for (int i = 0; i < d; ++i) r2 += x[i] * x[i];
    if (r2 <= 1.0) pts.push_back(x);
  }
  return pts;
}

double relative_gap(const BallPoly& a, const BallPoly& b, int d) {
  double worst = 0.0, scale = 0.0;
  for (const auto& x : random_points(d, 40, 2024u)) {
    const std::span<const double> xs(x.data(), d);
    const double va = a.eval(xs);
    worst = std::max(worst, std::abs(va - b.eval(xs)));
    scale = std::max(scale, std::abs(va));
  }
  return worst / std::max(scale, 1.0);
}

double harmonic_power(double rho, int m) { return m == 0 ? 1.0 : std::pow(rho, m); }

// Radial factor of Delta^{floor(s/2)} Q^{-s,n}_j (closed form).
double lapQ_radial(int s, int n, int j, int d, double u) {
  const int h = s / 2;
  const double big_n = n + 0.5 * d;
  if (s % 2 == 0) {
    const int jr = j - h;
    if (jr < 0) return 0.0;
    return std::pow(2.0, s) * pochhammer(big_n - s, s) * ball_radial(0.0, n - s, jr, d, u);
  }
  if (j == h) return 1.0;
  const int jr = j - h;
  if (jr < 0) return 0.0;
  return std::pow(2.0, s - 1) * pochhammer(big_n - s + 1.0, s - 1) *
         ball_radial(-1.0, n - s + 1, jr, d, u);
}

// For odd s: V = Delta^{floor(s/2)} Q.  Radial factor of Delta V at u, and the
// normal derivative coefficient of V on the sphere.
struct OddParts {
  double c_lap = 0.0;  // Delta V = c_lap * P^{1,n'-2}_{jr-1}
  double dn = 0.0;     // d_n V |_S = dn * Y
  int np = 0;
  int jr = 0;
};

OddParts odd_parts(int s, int n, int j, int d) {
  OddParts o;
  const int h = s / 2;
  const int m = n - 2 * j;
  if (j == h) {
    o.dn = m;
    return o;
  }
  o.jr = j - h;
  if (o.jr < 1) return o;
  o.np = n - s + 1;
  const double big_n = n + 0.5 * d;
  const double c = std::pow(2.0, s - 1) * pochhammer(big_n - s + 1.0, s - 1);
  const double bn = o.np + 0.5 * d;
  o.c_lap = c * 4.0 * (bn - 2.0) * (bn - 1.0);
  // P^{-1,n'}_{jr} = kappa (u-1) P^{1,n'-2}_{jr-1}
  const double kappa = pochhammer(1.0 - bn, o.jr) /
                       (-static_cast<double>(o.jr) * pochhammer(3.0 - bn, o.jr - 1));
  o.dn = 2.0 * c * kappa * ball_radial(1.0, o.np - 2, o.jr - 1, d, 1.0);
  return o;
}

}  // namespace

SpectralCoeffs project_classical(const BallPoly& f, double mu, int n) {
  SpectralCoeffs c;
  c.family = Family::classical;
  c.d = f.dim();
  c.mu = mu;
  for (int k = 0; k <= n; ++k) {
    for (const auto& idx : basis_indices(c.d, k)) {
      const int m = idx.harmonic_degree();
      const auto it = f.terms().find({c.d, m, idx.ell});
      if (it == f.terms().end()) continue;
      // Stable radial values instead of the monomial form of the basis.
      const RadialPoly& q = it->second;
      const int j = idx.j;
      const double v = radial_inner_fn(
                           [&](double u) { return radial::eval(q, u) * ball_radial(mu, k, j, c.d, u); },
                           radial::degree(q) + j, m, c.d, mu) /
                       ball_norm(mu, k, j, c.d);
      if (v != 0.0) c.table[idx] = v;
    }
  }
  return c;
}

SpectralCoeffs project_classical(const PointFn& f, double mu, int n, int d,
                                 const BallQuadrature& q) {
  if (q.d != d) throw std::invalid_argument("project_classical: grid dimension mismatch");
  if (!(mu > -1.0)) throw std::invalid_argument("project_classical: mu must exceed -1");
  SpectralCoeffs c;
  c.family = Family::classical;
  c.d = d;
  c.mu = mu;
  const auto mom = harmonic_moments(q, f, n);
  const double ratio = weight_ratio(mu, d);
  for (int k = 0; k <= n; ++k) {
    for (const auto& idx : basis_indices(d, k)) {
      const int m = idx.harmonic_degree();
      const std::size_t h = harmonic_offset(d, m, idx.ell);
      double s = 0.0;
      for (std::size_t i = 0; i < q.rho.size(); ++i) {
        const double u = q.rho[i] * q.rho[i];
        const double w = mu == 0.0 ? 1.0 : std::pow(1.0 - u, mu);
        s += q.radial_weights[i] * w * mom[i][h] * harmonic_power(q.rho[i], m) *
             ball_radial(mu, k, idx.j, d, u);
      }
      c.table[idx] = ratio * s / ball_norm(mu, k, idx.j, d);
    }
  }
  return c;
}

SpectralCoeffs project_harmonic(const PointFn& g, int n, const SphereRule& rule) {
  SpectralCoeffs c;
  c.family = Family::harmonic;
  c.d = rule.d;
  const auto mom = sphere_moments(rule, g, n);
  for (int m = 0; m <= n; ++m) {
    for (const auto& h : harmonic_indices(rule.d, m)) {
      c.table[{m, 0, h.ell}] = mom[harmonic_offset(rule.d, m, h.ell)];
    }
  }
  return c;
}

SpectralCoeffs project_sobolev(const BallPoly& f, const SobolevParams& p, int n) {
  p.validate();
  SpectralCoeffs c;
  c.family = Family::sobolev;
  c.d = f.dim();
  c.sobolev = p;
  for (int k = 0; k <= n; ++k) {
    for (const auto& idx : basis_indices(c.d, k)) {
      if (!has_harmonic(f, idx.harmonic_degree(), idx.ell)) continue;
      const double v = sobolev_inner(f, q_basis(p, idx, c.d), p) / q_norm(p, k, idx.j, c.d);
      if (v != 0.0) c.table[idx] = v;
    }
  }
  return c;
}

SpectralCoeffs project_sobolev(const SobolevCallables& f, const SobolevParams& p, int n,
                               int d, const BallQuadrature& q) {
  p.validate();
  if (q.d != d) throw std::invalid_argument("project_sobolev: grid dimension mismatch");
  const int s = p.s;
  const int half = s / 2;
  const int traces = p.num_traces();
  if (static_cast<int>(f.laplacians.size()) < half + 1) {
    throw std::invalid_argument("project_sobolev: need Delta^k f callables for k <= floor(s/2)");
  }
  SpectralCoeffs c;
  c.family = Family::sobolev;
  c.d = d;
  c.sobolev = p;

  const auto ball_mom = harmonic_moments(q, f.laplacians[half], n);
  std::vector<std::vector<double>> sph(traces);
  for (int k = 0; k < traces; ++k) sph[k] = sphere_moments(q.sphere, f.laplacians[k], n);
  const std::vector<double> sph_half =
      half < traces ? sph[half] : sphere_moments(q.sphere, f.laplacians[half], n);

  for (int k = 0; k <= n; ++k) {
    for (const auto& idx : basis_indices(d, k)) {
      const int m = idx.harmonic_degree();
      const std::size_t h = harmonic_offset(d, m, idx.ell);
      double a = 0.0;
      if (s % 2 == 0) {
        for (std::size_t i = 0; i < q.rho.size(); ++i) {
          const double u = q.rho[i] * q.rho[i];
          a += q.radial_weights[i] * ball_mom[i][h] * harmonic_power(q.rho[i], m) *
               lapQ_radial(s, k, idx.j, d, u);
        }
      } else {
        // <grad F, grad V> = d <F, d_n V>_S - <F, Delta V>
        const auto o = odd_parts(s, k, idx.j, d);
        a = d * o.dn * sph_half[h];
        if (o.c_lap != 0.0) {
          double b = 0.0;
          for (std::size_t i = 0; i < q.rho.size(); ++i) {
            const double u = q.rho[i] * q.rho[i];
            b += q.radial_weights[i] * ball_mom[i][h] * harmonic_power(q.rho[i], m) *
                 ball_radial(1.0, o.np - 2, o.jr - 1, d, u);
          }
          a -= o.c_lap * b;
        }
      }
      if (idx.j < traces) a += p.lambdas[idx.j] * sph[idx.j][h];
      c.table[idx] = a / q_norm(p, k, idx.j, d);
    }
  }
  return c;
}

namespace {

BallPoly basis_poly(const SpectralCoeffs& c, const BasisIndex& idx) {
  switch (c.family) {
    case Family::harmonic:
      return BallPoly::term({c.d, idx.n, idx.ell}, RadialPoly{1.0});
    case Family::classical:
      return ball_basis(c.mu, idx, c.d);
    case Family::sobolev:
      return q_basis(c.sobolev, idx, c.d);
  }
  return BallPoly(c.d);
}

double basis_radial(const SpectralCoeffs& c, int n, int j, double u) {
  switch (c.family) {
    case Family::harmonic:
      return 1.0;
    case Family::classical:
      return ball_radial(c.mu, n, j, c.d, u);
    case Family::sobolev:
      return q_radial(c.sobolev, n, j, c.d, u);
  }
  return 0.0;
}

// Highest degree kept and its weight.
int truncation(int n, const std::optional<Cutoff>& eta) { return eta ? 2 * n - 1 : n; }
double degree_weight(int k, int n, const std::optional<Cutoff>& eta) {
  if (!eta) return 1.0;
  return n == 0 ? (k == 0 ? 1.0 : 0.0) : (*eta)(static_cast<double>(k) / n);
}

}  // namespace

BallPoly partial_sum(const SpectralCoeffs& c, int n, std::optional<Cutoff> eta) {
  BallPoly out(c.d);
  const int kmax = truncation(n, eta);
  for (const auto& [idx, v] : c.table) {
    if (idx.n > kmax) continue;
    const double w = degree_weight(idx.n, n, eta);
    if (w == 0.0 || v == 0.0) continue;
    out = out + basis_poly(c, idx) * (w * v);
  }
  return out;
}

std::vector<double> eval_partial_sum_on(const SpectralCoeffs& c, int n,
                                        const std::vector<std::array<double, 3>>& pts,
                                        std::optional<Cutoff> eta) {
  const int kmax = truncation(n, eta);
  int mmax = 0;
  struct Entry {
    int n, j;
    int offset;
    double value;
  };
  std::vector<Entry> entries;
  for (const auto& [idx, v] : c.table) {
    if (idx.n > kmax) continue;
    const double w = degree_weight(idx.n, n, eta);
    if (w == 0.0 || v == 0.0) continue;
    const int m = c.family == Family::harmonic ? idx.n : idx.harmonic_degree();
    mmax = std::max(mmax, m);
    entries.push_back({idx.n, idx.j, harmonic_offset(c.d, m, idx.ell), w * v});
  }
  std::vector<double> out(pts.size(), 0.0);
  if (entries.empty()) return out;
  std::vector<double> rad((kmax + 1) * (kmax / 2 + 1));
  std::vector<char> have(rad.size());
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const std::span<const double> x(pts[p].data(), c.d);
    double u = 0.0;
    for (int i = 0; i < c.d; ++i) u += x[i] * x[i];
    const auto ys = solid_eval_all(c.d, mmax, x);
    std::fill(have.begin(), have.end(), 0);
    double s = 0.0;
    for (const auto& e : entries) {
      const std::size_t r = static_cast<std::size_t>(e.n) * (kmax / 2 + 1) + e.j;
      if (!have[r]) {
        rad[r] = basis_radial(c, e.n, e.j, u);
        have[r] = 1;
      }
      s += e.value * rad[r] * ys[e.offset];
    }
    out[p] = s;
  }
  return out;
}

double eval_partial_sum(const SpectralCoeffs& c, int n, std::span<const double> x,
                        std::optional<Cutoff> eta) {
  std::array<double, 3> p{};
  for (int i = 0; i < c.d; ++i) p[i] = x[i];
  return eval_partial_sum_on(c, n, {p}, eta)[0];
}

double check_commutation_mu(const BallPoly& f, double mu, int n, int i) {
  const int d = f.dim();
  if (i < 1 || i > d) throw std::invalid_argument("check_commutation_mu: axis out of range");
  const auto lhs = partial(partial_sum(project_classical(f, mu, n), n), i - 1);
  const auto df = partial(f, i - 1);
  const auto rhs = partial_sum(project_classical(df, mu + 1.0, n - 1), n - 1);
  return relative_gap(lhs, rhs, d);
}

SobolevCommutation check_commutation_sobolev(const BallPoly& f, const SobolevParams& p, int n) {
  p.validate();
  if (n < p.s) throw std::invalid_argument("check_commutation_sobolev: need n >= s");
  const int d = f.dim();
  SobolevCommutation r;
  const auto sn = partial_sum(project_sobolev(f, p, n), n);
  if (p.s == 1) {
    for (int i = 0; i < d; ++i) {
      const auto df = partial(f, i);
      const auto rhs = partial_sum(project_classical(df, 0.0, n - 1), n - 1);
      r.gradient = std::max(r.gradient, relative_gap(partial(sn, i), rhs, d));
    }
  }
  const int h = p.s / 2;
  if (h > 0) {
    const auto lhs = laplacian_pow(sn, h);
    const auto g = laplacian_pow(f, h);
    BallPoly rhs(d);
    if (p.s % 2 == 0) {
      rhs = partial_sum(project_classical(g, 0.0, n - 2 * h), n - 2 * h);
    } else {
      const SobolevParams p1{1, {p.lambdas[h]}};
      rhs = partial_sum(project_sobolev(g, p1, n - 2 * h), n - 2 * h);
    }
    r.laplacian = relative_gap(lhs, rhs, d);
  }
  return r;
}

void write_coeffs_csv(std::ostream& os, const SpectralCoeffs& c) {
  const char* fam = c.family == Family::harmonic    ? "harmonic"
                    : c.family == Family::classical ? "classical"
                                                    : "sobolev";
  os << "family,n,j,ell,value\n";
  char buf[64];
  for (const auto& [idx, v] : c.table) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << fam << ',' << idx.n << ',' << idx.j << ',' << idx.ell << ',' << buf << '\n';
  }
}

}  // namespace ballspec
