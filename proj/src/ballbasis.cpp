#include "ballspec/ballbasis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ballspec/jacobi.hpp"

namespace ballspec {

namespace {

double beta_of(int n, int j, int d) { return n - 2 * j + 0.5 * d - 1.0; }

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// Random points in the ball, reproducible.
std::vector<std::array<double, 3>> sample_points(int d, int count, unsigned seed) {
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

}  // namespace

void validate(const BasisIndex& idx, int d) {
  if (d != 2 && d != 3) throw std::invalid_argument("basis index: unsupported d");
  if (idx.n < 0 || idx.j < 0 || 2 * idx.j > idx.n || idx.ell < 1 ||
      idx.ell > harmonic_dim(d, idx.harmonic_degree())) {
    throw std::invalid_argument("basis index out of range");
  }
}

std::vector<BasisIndex> basis_indices(int d, int n) {
  std::vector<BasisIndex> r;
  for (int j = 0; 2 * j <= n; ++j) {
    const int a = harmonic_dim(d, n - 2 * j);
    for (int ell = 1; ell <= a; ++ell) r.push_back({n, j, ell});
  }
  return r;
}

std::vector<BasisIndex> basis_indices_upto(int d, int n) {
  std::vector<BasisIndex> r;
  for (int m = 0; m <= n; ++m) {
    auto b = basis_indices(d, m);
    r.insert(r.end(), b.begin(), b.end());
  }
  return r;
}

RadialPoly ball_radial_poly(double mu, int n, int j, int d) {
  if (j < 0 || 2 * j > n) return {};
  return radial::scale(gjacobi_radial(mu, beta_of(n, j, d), j),
                       pochhammer(n - j + 0.5 * d, j));
}

double classical_scale(double mu, int n, int j, int d) {
  double r = 1.0;
  const double a = n - j + 0.5 * d;
  for (int i = 0; i < j; ++i) r *= (a + i) / (a + mu + i);
  return r;
}

double ball_radial(double mu, int n, int j, int d, double u) {
  if (j < 0 || 2 * j > n) return 0.0;
  const double beta = beta_of(n, j, d);
  const double t = 2.0 * u - 1.0;
  if (mu > -1.0) {
    return classical_scale(mu, n, j, d) * jacobi_eval_recurrence({mu, beta}, j, t);
  }
  return pochhammer(n - j + 0.5 * d, j) * gjacobi_eval({mu, beta}, j, t);
}

BallPoly ball_basis(double mu, const BasisIndex& idx, int d) {
  validate(idx, d);
  return BallPoly::term({d, idx.harmonic_degree(), idx.ell},
                        ball_radial_poly(mu, idx.n, idx.j, d));
}

double ball_norm(double mu, int n, int j, int d) {
  if (!(mu > -1.0)) throw std::invalid_argument("ball_norm: mu must exceed -1");
  if (n < 0 || j < 0 || 2 * j > n) throw std::invalid_argument("ball_norm: bad index");
  // (mu+1)_j (1-n-d/2)_j (d/2)_n / (j! (1-n-d/2-mu)_j (d/2+mu+1)_n), with the
  // n-dependent ratio accumulated factor by factor to avoid overflow.
  const double h = 0.5 * d;
  double r = 1.0;
  for (int i = 0; i < j; ++i) {
    r *= (mu + 1.0 + i) * (1.0 - n - h + i) / ((i + 1.0) * (1.0 - n - h - mu + i));
  }
  for (int i = 0; i < n; ++i) r *= (h + i) / (h + mu + 1.0 + i);
  return r;
}

BallPoly project_classical_degree(const BallPoly& f, double mu, int m) {
  const int d = f.dim();
  BallPoly out(d);
  for (const auto& idx : basis_indices(d, m)) {
    const auto p = ball_basis(mu, idx, d);
    const double c = inner_L2(f, p, mu) / ball_norm(mu, m, idx.j, d);
    if (c != 0.0) out = out + p * c;
  }
  return out;
}

double check_PN2P(int s, const BasisIndex& idx, int d) {
  validate(idx, d);
  if (idx.j < s) throw std::invalid_argument("check_PN2P: requires j >= s");
  const double h = 0.5 * d;
  const int n = idx.n;
  const int j = idx.j;
  const double c = pochhammer(1.0 - n - h, j) /
                   (pochhammer(-static_cast<double>(j), s) *
                    pochhammer(1.0 - n - h + 2.0 * s, j - s));
  const auto lhs = ball_basis(-s, idx, d);
  RadialPoly um1{-1.0, 1.0};
  RadialPoly ums{1.0};
  for (int i = 0; i < s; ++i) ums = radial::mul(ums, um1);
  const auto rhs =
      ball_basis(s, {n - 2 * s, j - s, idx.ell}, d).times_radial(radial::scale(ums, c));
  const auto diff = lhs - rhs;
  double worst = 0.0;
  double scale = 0.0;
  for (const auto& x : sample_points(d, 50, 1234u + 17u * n + j)) {
    worst = std::max(worst, std::abs(diff.eval(x)));
    scale = std::max(scale, std::abs(lhs.eval(x)));
  }
  return worst / std::max(scale, 1e-300);
}

LaplacePReport check_LaplaceP(int s, int k, const BasisIndex& idx, int d) {
  validate(idx, d);
  const int n = idx.n;
  const int j = idx.j;
  LaplacePReport rep;
  rep.j0 = gjacobi_j0({-static_cast<double>(s), beta_of(n, j, d)}, j);
  rep.degree_bound = rep.j0 - k - 1;
  rep.main_condition = s + k >= j;
  rep.appendix_condition = j + k >= s;

  const auto p = ball_basis(-s, idx, d);
  const auto lhs = laplacian_pow(p, k);
  BallPoly lead(d);
  if (j - k >= 0 && n - 2 * k >= 0) {
    const double c = std::pow(4.0, k) * pochhammer(n + 0.5 * d - 2.0 * k, 2 * k);
    lead = ball_basis(2.0 * k - s, {n - 2 * k, j - k, idx.ell}, d) * c;
  }
  const auto rem = lhs - lead;
  const double scale = std::max({lhs.max_abs_coeff(), lead.max_abs_coeff(), 1e-300});
  const HarmonicIndex h{d, idx.harmonic_degree(), idx.ell};
  const auto q = rem.radial(h);
  rep.remainder_size = rem.max_abs_coeff() / scale;
  // Degree, ignoring rounding-level coefficients.
  rep.remainder_degree = -1;
  for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
    if (std::abs(q[i]) > 1e-10 * scale) {
      rep.remainder_degree = i;
      break;
    }
  }
  const bool only_h = rem.terms().size() <= 1 &&
                      (rem.terms().empty() || rem.terms().begin()->first == h);
  rep.ok = only_h && rep.remainder_degree <= std::max(rep.degree_bound, -1);
  return rep;
}

MultiPoly monic_poly(double mu, const MultiIndex& alpha, int d) {
  int abs_alpha = 0;
  for (int i = 0; i < d; ++i) abs_alpha += alpha[i];
  const double a0 = 1.0 - mu - 0.5 * d - abs_alpha;
  // Truncate when (a0)_{|gamma|} vanishes for an admissible gamma.
  int max_gamma = 0;
  for (int i = 0; i < d; ++i) max_gamma += alpha[i] / 2;
  int limit = max_gamma;
  const double r = -a0;
  if (r >= -1e-9 && std::abs(r - std::round(r)) <= 1e-9 && std::round(r) < max_gamma) {
    limit = static_cast<int>(std::lround(r));
  }
  MultiPoly out(d);
  const MultiIndex a = alpha;
  for (int g0 = 0; 2 * g0 <= a[0]; ++g0) {
    for (int g1 = 0; 2 * g1 <= (d > 1 ? a[1] : 0); ++g1) {
      for (int g2 = 0; 2 * g2 <= (d > 2 ? a[2] : 0); ++g2) {
        const MultiIndex g{g0, g1, g2};
        const int gs = g0 + g1 + g2;
        if (gs > limit) continue;
        double num = 1.0;
        double gf = 1.0;
        for (int i = 0; i < d; ++i) {
          num *= pochhammer(-static_cast<double>(a[i]), 2 * g[i]);
          gf *= factorial(g[i]);
        }
        const double c = num / (pochhammer(a0, gs) * gf) * std::pow(0.25, gs);
        out.add_term({a[0] - 2 * g0, a[1] - 2 * g1, a[2] - 2 * g2}, c);
      }
    }
  }
  return out;
}

double monic_eval(double mu, const MultiIndex& alpha, int d, std::span<const double> x) {
  return monic_poly(mu, alpha, d).eval(x);
}

double check_DiffV(double mu, const MultiIndex& alpha, const MultiIndex& beta, int d) {
  MultiPoly lhs = monic_poly(mu, alpha, d);
  int bsum = 0;
  double coef = 1.0;
  MultiIndex rest{0, 0, 0};
  bool vanishes = false;
  for (int i = 0; i < d; ++i) {
    for (int p = 0; p < beta[i]; ++p) lhs = lhs.partial(i);
    bsum += beta[i];
    coef *= pochhammer(-static_cast<double>(alpha[i]), beta[i]);
    rest[i] = alpha[i] - beta[i];
    if (rest[i] < 0) vanishes = true;
  }
  if (bsum % 2 == 1) coef = -coef;
  MultiPoly rhs(d);
  if (!vanishes) rhs = monic_poly(mu + bsum, rest, d) * coef;
  const auto diff = lhs - rhs;
  double worst = 0.0;
  double scale = 0.0;
  for (const auto& x : sample_points(d, 30, 99u)) {
    worst = std::max(worst, std::abs(diff.eval(x)));
    scale = std::max(scale, std::abs(lhs.eval(x)));
  }
  return worst / std::max(scale, 1.0);
}

double check_eigen_Dmu(double mu, const BasisIndex& idx, int d) {
  const MultiPoly p = to_monomials(ball_basis(mu, idx, d));
  MultiPoly euler(d);
  for (int i = 0; i < d; ++i) {
    MultiIndex e{0, 0, 0};
    e[i] = 1;
    euler = euler + MultiPoly::monomial(d, e) * p.partial(i);
  }
  const MultiPoly inner = p * (2.0 * mu) + euler;
  MultiPoly dp(d);
  for (int i = 0; i < d; ++i) {
    MultiIndex e{0, 0, 0};
    e[i] = 1;
    dp = dp + p.partial(i).partial(i) - (MultiPoly::monomial(d, e) * inner).partial(i);
  }
  const int n = idx.n;
  const auto res = dp + p * ((n + d) * (n + 2.0 * mu));
  double worst = 0.0;
  double scale = 0.0;
  for (const auto& [e, c] : res.terms()) worst = std::max(worst, std::abs(c));
  for (const auto& [e, c] : p.terms()) scale = std::max(scale, std::abs(c));
  return worst / (std::max(scale, 1e-300) * std::max(1.0, (n + d) * (n + 2.0 * mu)));
}

}  // namespace ballspec
