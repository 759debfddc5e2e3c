#include "ballspec/sobolevbasis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include <Eigen/Dense>

#include "ballspec/jacobi.hpp"

namespace ballspec {

SobolevParams SobolevParams::with_default(int s, int d) {
  SobolevParams p;
  p.s = s;
  p.lambdas.assign((s + 1) / 2, static_cast<double>(d));
  return p;
}

void SobolevParams::validate() const {
  if (s < 1) throw std::invalid_argument("SobolevParams: s must be >= 1");
  if (static_cast<int>(lambdas.size()) != num_traces()) {
    throw std::invalid_argument("SobolevParams: need ceil(s/2) lambdas");
  }
  for (double l : lambdas) {
    if (!(l > 0.0)) throw std::invalid_argument("SobolevParams: lambdas must be positive");
  }
}

double sobolev_inner(const BallPoly& f, const BallPoly& g, const SobolevParams& p) {
  p.validate();
  const int m = p.s / 2;
  const auto fm = laplacian_pow(f, m);
  const auto gm = laplacian_pow(g, m);
  double r = p.s % 2 == 0 ? inner_L2(fm, gm, 0.0) : inner_grad(fm, gm);
  BallPoly fk = f;
  BallPoly gk = g;
  for (int k = 0; k < p.num_traces(); ++k) {
    r += p.lambdas[k] * inner_sphere(fk, gk);
    fk = laplacian(fk);
    gk = laplacian(gk);
  }
  return r;
}

LiftCoeffs lift_coeffs(int d, int n, int j) {
  if (j < 0 || n < 0) throw std::invalid_argument("lift_coeffs: bad index");
  static std::mutex mtx;
  static std::map<std::tuple<int, int, int>, LiftCoeffs> cache;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({d, n, j});
    if (it != cache.end()) return it->second;
  }
  const double big_n = n + 0.5 * d;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(j + 1, j + 1);
  for (int k = 0; k <= j; ++k) {
    for (int i = k; i <= j; ++i) {
      a(k, i) = std::pow(4.0, k) * pochhammer(-static_cast<double>(i), k) *
                pochhammer(-static_cast<double>(k), i - k) * pochhammer(big_n, k) /
                pochhammer(big_n, i - k);
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(j + 1);
  rhs(j) = 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  if (std::abs(lu.determinant()) == 0.0) {
    throw std::runtime_error("lift_coeffs: singular system");
  }
  const Eigen::VectorXd c = lu.solve(rhs);
  LiftCoeffs out;
  out.n = n;
  out.j = j;
  out.c.assign(c.data(), c.data() + c.size());
  out.residual = (a * c - rhs).cwiseAbs().maxCoeff() / std::max(1.0, a.cwiseAbs().maxCoeff() *
                                                                         c.cwiseAbs().maxCoeff());
  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(std::make_tuple(d, n, j), out);
  return out;
}

namespace {

RadialPoly lift_radial_poly(int d, int n, int j) {
  const auto lc = lift_coeffs(d, n, j);
  RadialPoly q;
  for (int i = 0; i <= j; ++i) {
    q = radial::add(q, radial::scale(radial::one_minus_u_pow(i), lc.c[i]));
  }
  radial::trim(q);
  return q;
}

}  // namespace

BallPoly lift_eval(int d, int n, int j, int ell) {
  if (j < 0) return BallPoly(d);
  return BallPoly::term({d, n, ell}, lift_radial_poly(d, n, j));
}

double lift_radial(int d, int n, int j, double u) {
  if (j < 0) return 0.0;
  const auto lc = lift_coeffs(d, n, j);
  double r = 0.0;
  for (int i = j; i >= 0; --i) r = r * (1.0 - u) + lc.c[i];
  return r;
}

double deltaY_trace(int d, int n, int j, int k) {
  const double big_n = n + 0.5 * d;
  if (k > j) return 0.0;
  return std::pow(4.0, k) * pochhammer(-static_cast<double>(j), k) *
         pochhammer(-static_cast<double>(k), j - k) * pochhammer(big_n, k) /
         pochhammer(big_n, j - k);
}

double deltaY_trace_denominator_j(int d, int n, int j, int k) {
  const double big_n = n + 0.5 * d;
  if (k > j) return 0.0;
  return std::pow(4.0, k) * pochhammer(-static_cast<double>(j), k) *
         pochhammer(-static_cast<double>(k), j - k) * pochhammer(big_n, k) /
         pochhammer(big_n, j);
}

namespace {

// Boundary trace of Delta^k P^{-s,n}_j as a multiple of Y^{n-2j}; only the
// radial polynomial matters, so this works on one harmonic term.
std::vector<double> correction_scalars(int s, int n, int j, int d) {
  const int traces = (s + 1) / 2;
  const HarmonicIndex h{d, n - 2 * j, 1};
  BallPoly p = BallPoly::term(h, ball_radial_poly(-s, n, j, d));
  std::vector<double> tau(traces);
  for (int k = 0; k < traces; ++k) {
    tau[k] = radial::eval(p.radial(h), 1.0);
    p = laplacian(p);
  }
  return tau;
}

}  // namespace

BallPoly q_basis(const SobolevParams& p, const BasisIndex& idx, int d) {
  validate(idx, d);
  const int s = p.s;
  const int c = p.num_traces();
  const int m = idx.harmonic_degree();
  if (idx.j >= s) return ball_basis(-s, idx, d);
  if (idx.j >= c) {
    BallPoly q = ball_basis(-s, idx, d);
    const auto tau = correction_scalars(s, idx.n, idx.j, d);
    for (int k = 0; k < c; ++k) {
      if (tau[k] != 0.0) q = q - lift_eval(d, m, k, idx.ell) * tau[k];
    }
    return q;
  }
  return lift_eval(d, m, idx.j, idx.ell);
}

double q_radial(const SobolevParams& p, int n, int j, int d, double u) {
  const int s = p.s;
  const int c = p.num_traces();
  const int m = n - 2 * j;
  if (j >= s) return ball_radial(-s, n, j, d, u);
  if (j >= c) {
    double r = ball_radial(-s, n, j, d, u);
    const auto tau = correction_scalars(s, n, j, d);
    for (int k = 0; k < c; ++k) r -= tau[k] * lift_radial(d, m, k, u);
    return r;
  }
  return lift_radial(d, m, j, u);
}

double q_norm(const SobolevParams& p, int n, int j, int d) {
  p.validate();
  if (n < 0 || j < 0 || 2 * j > n) throw std::invalid_argument("q_norm: bad index");
  const int s = p.s;
  const double big_n = n + 0.5 * d;
  if (j >= p.num_traces()) {
    return std::pow(2.0, 2 * s - 1) * d * pochhammer(big_n - s, s) *
           pochhammer(big_n - s + 1.0, s - 1);
  }
  if (s % 2 == 1 && 2 * j == s - 1) return d * (n - 2.0 * j) + p.lambdas[j];
  return p.lambdas[j];
}

BallPoly project_sobolev_degree(const BallPoly& f, const SobolevParams& p, int n) {
  const int d = f.dim();
  BallPoly out(d);
  for (const auto& idx : basis_indices(d, n)) {
    const auto q = q_basis(p, idx, d);
    const double c = sobolev_inner(f, q, p) / q_norm(p, n, idx.j, d);
    if (c != 0.0) out = out + q * c;
  }
  return out;
}

double check_boundary_projection(const SobolevParams& p, int n, int k, const BallPoly& f) {
  if (k < 0 || k >= p.num_traces()) {
    throw std::invalid_argument("check_boundary_projection: k out of range");
  }
  const int d = f.dim();
  const auto lhs = boundary_trace(laplacian_pow(project_sobolev_degree(f, p, n), k));
  auto rhs = boundary_trace(laplacian_pow(f, k));
  std::erase_if(rhs, [&](const auto& kv) { return kv.first.m != n - 2 * k; });
  std::map<HarmonicIndex, double> diff = lhs;
  for (const auto& [idx, v] : rhs) diff[idx] -= v;
  int mmax = 0;
  for (const auto& [idx, v] : diff) mmax = std::max(mmax, idx.m);
  const auto rule = sphere_rule(d, std::max(mmax, 1));
  double worst = 0.0;
  for (const auto& x : rule.points) {
    const auto ys = solid_eval_all(d, mmax, x);
    double v = 0.0;
    for (const auto& [idx, c] : diff) v += c * ys[harmonic_offset(d, idx.m, idx.ell)];
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

double check_factorization(int s, int n, const BallPoly& g) {
  const int d = g.dim();
  const auto w = radial::one_minus_u_pow(s);
  const auto p = SobolevParams::with_default(s, d);
  const auto lhs = project_sobolev_degree(g.times_radial(w), p, n);
  BallPoly rhs(d);
  if (n - 2 * s >= 0) rhs = project_classical_degree(g, s, n - 2 * s).times_radial(w);
  return (lhs - rhs).max_abs_coeff() / std::max(1.0, lhs.max_abs_coeff());
}

double check_defQ_laplacian(const SobolevParams& p, const BasisIndex& idx, int d) {
  const int s = p.s;
  const int half = s / 2;
  const double big_n = idx.n + 0.5 * d;
  const auto lhs = laplacian_pow(q_basis(p, idx, d), half);
  BallPoly rhs(d);
  const int jr = idx.j - (s % 2 == 0 ? s / 2 : (s - 1) / 2);
  if (s % 2 == 0) {
    if (jr >= 0) {
      rhs = ball_basis(0.0, {idx.n - s, jr, idx.ell}, d) *
            (std::pow(2.0, s) * pochhammer(big_n - s, s));
    }
  } else if (idx.j == half) {
    rhs = BallPoly::term({d, idx.harmonic_degree(), idx.ell}, RadialPoly{1.0});
  } else if (jr >= 0) {
    rhs = ball_basis(-1.0, {idx.n - s + 1, jr, idx.ell}, d) *
          (std::pow(2.0, s - 1) * pochhammer(big_n - s + 1.0, s - 1));
  }
  return (lhs - rhs).max_abs_coeff() / std::max(1.0, lhs.max_abs_coeff());
}

}  // namespace ballspec
