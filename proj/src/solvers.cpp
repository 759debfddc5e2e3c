#include "ballspec/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ballspec/jacobi.hpp"
#include "ballspec/parallel.hpp"

namespace ballspec {

BandedMatrix::BandedMatrix(int n, int bw)
    : size(n), bandwidth(bw), band(bw + 1, std::vector<double>(n, 0.0)) {}

double BandedMatrix::operator()(int i, int j) const {
  if (i > j) std::swap(i, j);
  return j - i > bandwidth ? 0.0 : band[j - i][i];
}

double& BandedMatrix::at(int i, int j) {
  if (i > j) std::swap(i, j);
  if (j - i > bandwidth) throw std::out_of_range("BandedMatrix: outside band");
  return band[j - i][i];
}

std::vector<double> solve_tridiagonal_ldlt(const BandedMatrix& a, std::vector<double> rhs) {
  const int n = a.size;
  if (a.bandwidth > 1) throw std::invalid_argument("solve_tridiagonal_ldlt: bandwidth > 1");
  std::vector<double> dg(n), l(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double off = i > 0 && a.bandwidth == 1 ? a.band[1][i - 1] : 0.0;
    if (i > 0) l[i] = off / dg[i - 1];
    dg[i] = a.band[0][i] - (i > 0 ? l[i] * off : 0.0);
    if (!(dg[i] > 0.0)) throw std::runtime_error("tridiagonal block is not positive definite");
  }
  for (int i = 1; i < n; ++i) rhs[i] -= l[i] * rhs[i - 1];
  for (int i = 0; i < n; ++i) rhs[i] /= dg[i];
  for (int i = n - 2; i >= 0; --i) rhs[i] -= l[i + 1] * rhs[i + 1];
  return rhs;
}

std::vector<double> solve_banded_cholesky(const BandedMatrix& a, std::vector<double> rhs) {
  const int n = a.size;
  const int bw = a.bandwidth;
  // lower factor, l[b][i] = L(i+b, i)
  std::vector<std::vector<double>> l(bw + 1, std::vector<double>(n, 0.0));
  for (int j = 0; j < n; ++j) {
    double s = a.band[0][j];
    for (int k = std::max(0, j - bw); k < j; ++k) s -= l[j - k][k] * l[j - k][k];
    if (!(s > 0.0)) throw std::runtime_error("banded block is not positive definite");
    l[0][j] = std::sqrt(s);
    for (int i = j + 1; i <= std::min(n - 1, j + bw); ++i) {
      double t = a.band[i - j][j];
      for (int k = std::max(0, i - bw); k < j; ++k) t -= l[i - k][k] * l[j - k][k];
      l[i - j][j] = t / l[0][j];
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = std::max(0, i - bw); k < i; ++k) rhs[i] -= l[i - k][k] * rhs[k];
    rhs[i] /= l[0][i];
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k <= std::min(n - 1, i + bw); ++k) rhs[i] -= l[k - i][i] * rhs[k];
    rhs[i] /= l[0][i];
  }
  return rhs;
}

double GalerkinSolution::eval(std::span<const double> x) const {
  return eval_partial_sum(coeffs, n, x);
}

std::vector<double> GalerkinSolution::eval_on(
    const std::vector<std::array<double, 3>>& pts) const {
  std::vector<double> out(pts.size());
  const std::size_t chunk = 256;
  const std::size_t nchunks = (pts.size() + chunk - 1) / chunk;
  parallel_for(nchunks, [&](std::size_t c) {
    const std::size_t lo = c * chunk;
    const std::size_t hi = std::min(pts.size(), lo + chunk);
    std::vector<std::array<double, 3>> part(pts.begin() + lo, pts.begin() + hi);
    const auto v = eval_partial_sum_on(coeffs, n, part);
    std::copy(v.begin(), v.end(), out.begin() + lo);
  });
  return out;
}

std::vector<double> GalerkinSolution::eval_on_grid(const BallQuadrature& q) const {
  if (q.d != d) throw std::invalid_argument("eval_on_grid: dimension mismatch");
  int mmax = 0;
  for (const auto& [idx, c] : coeffs.table) mmax = std::max(mmax, idx.harmonic_degree());
  const std::size_t na = q.sphere.points.size();
  const std::size_t nh = static_cast<std::size_t>(harmonic_offset(d, mmax + 1, 1));
  // radial[i][h] = rho_i^m sum_j c_{k,j,ell} R_j(rho_i^2)
  std::vector<std::vector<double>> rad(q.rho.size(), std::vector<double>(nh, 0.0));
  parallel_for(q.rho.size(), [&](std::size_t i) {
    const double r = q.rho[i];
    const double u = r * r;
    for (const auto& [idx, c] : coeffs.table) {
      const int m = idx.harmonic_degree();
      rad[i][harmonic_offset(d, m, idx.ell)] +=
          c * std::pow(r, m) * ball_radial(coeffs.mu, idx.n, idx.j, d, u);
    }
  });
  std::vector<std::vector<double>> ys(na);
  parallel_for(na, [&](std::size_t a) { ys[a] = solid_eval_all(d, mmax, q.sphere.points[a]); });
  std::vector<double> out(q.points.size(), 0.0);
  parallel_for(q.rho.size(), [&](std::size_t i) {
    for (std::size_t a = 0; a < na; ++a) {
      double s = 0.0;
      for (std::size_t h = 0; h < nh; ++h) s += rad[i][h] * ys[a][h];
      out[i * na + a] = s;
    }
  });
  return out;
}

BallPoly GalerkinSolution::to_ballpoly() const { return partial_sum(coeffs, n); }

namespace {

struct RhsData {
  const BallQuadrature* grid = nullptr;
  std::vector<std::vector<double>> ball;  // [radial node][harmonic]
  std::vector<double> sphere;             // [harmonic], empty if g is absent
};

RhsData rhs_data(const BallQuadrature& grid, const PointFn& f, const PointFn& g, int mmax) {
  RhsData r;
  r.grid = &grid;
  // Moments per radial node in parallel; each node touches its own row.
  const std::size_t na = grid.sphere.points.size();
  std::vector<std::vector<double>> ys(na);
  parallel_for(na, [&](std::size_t a) { ys[a] = solid_eval_all(grid.d, mmax, grid.sphere.points[a]); });
  const std::size_t nh = ys[0].size();
  r.ball.assign(grid.rho.size(), std::vector<double>(nh, 0.0));
  parallel_for(grid.rho.size(), [&](std::size_t i) {
    for (std::size_t a = 0; a < na; ++a) {
      const auto& x = grid.points[i * na + a];
      const double wf =
          grid.sphere.weights[a] * f({x.data(), static_cast<std::size_t>(grid.d)});
      for (std::size_t h = 0; h < nh; ++h) r.ball[i][h] += wf * ys[a][h];
    }
  });
  if (g) r.sphere = sphere_moments(grid.sphere, g, mmax);
  return r;
}

// <f, R(u) Y_h>_B from radial-node moments.
template <class R>
double ball_rhs(const RhsData& data, std::size_t h, int m, R&& radial) {
  const auto& q = *data.grid;
  double s = 0.0;
  for (std::size_t i = 0; i < q.rho.size(); ++i) {
    const double u = q.rho[i] * q.rho[i];
    s += q.radial_weights[i] * data.ball[i][h] * (m == 0 ? 1.0 : std::pow(q.rho[i], m)) *
         radial(u);
  }
  return s;
}

struct BlockKey {
  int m;
  int ell;
};

std::vector<BlockKey> block_keys(int d, int n, int min_rows_degree) {
  std::vector<BlockKey> keys;
  for (int m = 0; m + min_rows_degree <= n; ++m) {
    for (const auto& h : harmonic_indices(d, m)) keys.push_back({m, h.ell});
  }
  return keys;
}

int resolve_grid(int n, std::optional<int> grid_n) {
  const int g = grid_n.value_or(n + 8);
  if (g < n) throw std::invalid_argument("quadrature grid too coarse: grid_n < n");
  return g;
}

GalerkinSystem assemble_helmholtz_on(const HelmholtzProblem& p, int n, const RhsData& data) {
  const int d = p.d;
  GalerkinSystem sys;
  sys.kind = ProblemKind::helmholtz;
  sys.d = d;
  sys.n = n;
  const auto keys = block_keys(d, n, 0);
  sys.blocks.resize(keys.size());
  parallel_for(keys.size(), [&](std::size_t b) {
    const int m = keys[b].m;
    const std::size_t h = harmonic_offset(d, m, keys[b].ell);
    const int rows = (n - m) / 2 + 1;
    GalerkinBlock blk;
    blk.m = m;
    blk.ell = keys[b].ell;
    blk.first_j = 0;
    blk.matrix = BandedMatrix(rows, 1);
    blk.rhs.assign(rows, 0.0);
    for (int j = 0; j < rows; ++j) {
      const int k = m + 2 * j;
      const double stiff = j == 0 ? d * p.eta + d * k : 2.0 * d * (k + 0.5 * d - 1.0);
      double mass = d / (2.0 * k + d);
      if (j >= 1) mass += d / (2.0 * (k - 2) + d);
      blk.matrix.at(j, j) = stiff + p.lambda * mass;
      if (j >= 1) blk.matrix.at(j - 1, j) = -p.lambda * d / (2.0 * (k - 2) + d);
      blk.rhs[j] = ball_rhs(data, h, m, [&](double u) { return ball_radial(-1.0, k, j, d, u); });
      if (j == 0 && !data.sphere.empty()) blk.rhs[j] += d * data.sphere[h];
    }
    sys.blocks[b] = std::move(blk);
  });
  return sys;
}

GalerkinSystem assemble_biharmonic_on(const BiharmonicProblem& p, int n, const RhsData& data) {
  const int d = p.d;
  GalerkinSystem sys;
  sys.kind = ProblemKind::biharmonic;
  sys.d = d;
  sys.n = n;
  const auto keys = block_keys(d, n, 4);
  sys.blocks.resize(keys.size());
  parallel_for(keys.size(), [&](std::size_t b) {
    const int m = keys[b].m;
    const std::size_t h = harmonic_offset(d, m, keys[b].ell);
    const int rows = (n - m) / 2 - 1;  // j = 2 .. (n-m)/2
    auto radial = [&](int r, double u) { return ball_radial(-2.0, m + 2 * (r + 2), r + 2, d, u); };
    // Delta P^{-2,k}_j = 4 (N-2)(N-1) P^{0,k-2}_{j-1}, N = k + d/2
    auto lap_radial = [&](int r, double u) {
      const int j = r + 2;
      const int k = m + 2 * j;
      const double big_n = k + 0.5 * d;
      return 4.0 * (big_n - 2.0) * (big_n - 1.0) * ball_radial(0.0, k - 2, j - 1, d, u);
    };
    std::vector<std::vector<double>> a(rows, std::vector<double>(rows, 0.0));
    for (int r = 0; r < rows; ++r) {
      const int k = m + 2 * (r + 2);
      const double big_n = k + 0.5 * d;
      for (int c = r; c < rows; ++c) {
        const int deg = (r + 2) + (c + 2);
        const double mass = radial_inner_fn(
            [&](double u) { return radial(r, u) * radial(c, u); }, deg, m, d, 0.0);
        // <grad u, grad v> = -<Delta u, v>, symmetrized over the two orders
        const double g1 = radial_inner_fn(
            [&](double u) { return lap_radial(r, u) * radial(c, u); }, deg, m, d, 0.0);
        const double g2 = radial_inner_fn(
            [&](double u) { return lap_radial(c, u) * radial(r, u); }, deg, m, d, 0.0);
        double v = p.lambda0 * mass - p.lambda1 * 0.5 * (g1 + g2);
        if (c == r) v += 8.0 * d * (big_n - 2.0) * (big_n - 1.0) * (big_n - 1.0);
        a[r][c] = a[c][r] = v;
      }
    }
    GalerkinBlock blk;
    blk.m = m;
    blk.ell = keys[b].ell;
    blk.first_j = 2;
    blk.matrix = BandedMatrix(rows, std::min(2, std::max(rows - 1, 0)));
    double scale = 0.0;
    for (int r = 0; r < rows; ++r) scale = std::max(scale, std::abs(a[r][r]));
    for (int r = 0; r < rows; ++r) {
      for (int c = r; c < rows; ++c) {
        if (c - r <= blk.matrix.bandwidth) {
          blk.matrix.at(r, c) = a[r][c];
        } else {
          blk.off_band = std::max(blk.off_band, std::abs(a[r][c]) / scale);
        }
      }
    }
    blk.rhs.assign(rows, 0.0);
    for (int r = 0; r < rows; ++r) {
      blk.rhs[r] = ball_rhs(data, h, m, [&](double u) { return radial(r, u); });
    }
    sys.blocks[b] = std::move(blk);
  });
  return sys;
}

GalerkinSolution solve_on(const GalerkinSystem& sys) {
  GalerkinSolution sol;
  sol.d = sys.d;
  sol.n = sys.n;
  sol.coeffs.family = Family::classical;
  sol.coeffs.d = sys.d;
  sol.coeffs.mu = sys.kind == ProblemKind::helmholtz ? -1.0 : -2.0;
  std::vector<std::vector<double>> x(sys.blocks.size());
  parallel_for(sys.blocks.size(), [&](std::size_t b) {
    const auto& blk = sys.blocks[b];
    if (blk.off_band > 1e-10) {
      throw std::runtime_error("biharmonic block wider than bandwidth 2");
    }
    x[b] = sys.kind == ProblemKind::helmholtz ? solve_tridiagonal_ldlt(blk.matrix, blk.rhs)
                                              : solve_banded_cholesky(blk.matrix, blk.rhs);
  });
  for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
    const auto& blk = sys.blocks[b];
    for (std::size_t r = 0; r < x[b].size(); ++r) {
      const int j = blk.first_j + static_cast<int>(r);
      sol.coeffs.table[{blk.m + 2 * j, j, blk.ell}] = x[b][r];
    }
  }
  return sol;
}

template <class Problem, class Assemble>
ConvergenceResult run_study(const Problem& p, const PointFn& g, const PointFn& exact,
                            const std::vector<int>& n_list, int grid_n, Assemble assemble) {
  if (n_list.empty()) return {};
  const int nmax = *std::max_element(n_list.begin(), n_list.end());
  if (grid_n < nmax) throw std::invalid_argument("convergence_study: grid_n < max(n_list)");
  const auto grid = build_grid(p.d, grid_n);
  const auto data = rhs_data(grid, p.f, g, nmax);
  std::vector<double> u(grid.points.size());
  double scale = 1.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    u[k] = exact({grid.points[k].data(), static_cast<std::size_t>(p.d)});
    scale = std::max(scale, std::abs(u[k]));
  }
  ConvergenceResult res;
  res.rows.resize(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto sol = solve_on(assemble(p, n_list[i], data));
    auto v = sol.eval_on_grid(grid);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = u[k] - v[k];
    res.rows[i].n = n_list[i];
    res.rows[i].err = error_metrics(grid, v);
    res.rows[i].wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  });
  // Leading rows above the floor.
  int pre = 0;
  while (pre < static_cast<int>(res.rows.size()) &&
         res.rows[pre].err.e_l2 > kErrorFloor * scale) {
    ++pre;
  }
  res.pre_floor = pre;
  res.strictly_decreasing = pre >= 2;
  for (int i = 1; i < pre; ++i) {
    if (!(res.rows[i].err.e_l2 < res.rows[i - 1].err.e_l2)) res.strictly_decreasing = false;
  }
  if (pre >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < pre; ++i) {
      const double x = res.rows[i].n;
      const double y = std::log10(res.rows[i].err.e_l2);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    res.fitted_rate = (pre * sxy - sx * sy) / (pre * sxx - sx * sx);
  }
  return res;
}

}  // namespace

GalerkinSystem assemble_helmholtz(const HelmholtzProblem& p, int n, std::optional<int> grid_n) {
  if (p.d != 2 && p.d != 3) throw std::invalid_argument("helmholtz: d must be 2 or 3");
  if (n < 1) throw std::invalid_argument("helmholtz: n must be >= 1");
  if (p.lambda < 0 || p.eta < 0 || !(p.lambda + p.eta > 0)) {
    throw std::invalid_argument("helmholtz: need lambda, eta >= 0 and lambda + eta > 0");
  }
  const auto grid = build_grid(p.d, resolve_grid(n, grid_n));
  return assemble_helmholtz_on(p, n, rhs_data(grid, p.f, p.g, n));
}

GalerkinSolution solve_system(const GalerkinSystem& sys) { return solve_on(sys); }

GalerkinSolution solve_helmholtz(const HelmholtzProblem& p, int n, std::optional<int> grid_n) {
  return solve_on(assemble_helmholtz(p, n, grid_n));
}

GalerkinSystem assemble_biharmonic(const BiharmonicProblem& p, int n, std::optional<int> grid_n) {
  if (p.d != 2 && p.d != 3) throw std::invalid_argument("biharmonic: d must be 2 or 3");
  if (n < 4) throw std::invalid_argument("biharmonic: n must be >= 4");
  if (p.lambda1 < 0 || p.lambda0 < 0) {
    throw std::invalid_argument("biharmonic: lambda1, lambda0 must be >= 0");
  }
  const auto grid = build_grid(p.d, resolve_grid(n, grid_n));
  return assemble_biharmonic_on(p, n, rhs_data(grid, p.f, nullptr, n));
}

GalerkinSolution solve_biharmonic(const BiharmonicProblem& p, int n, std::optional<int> grid_n) {
  return solve_on(assemble_biharmonic(p, n, grid_n));
}

ConvergenceResult convergence_study(const HelmholtzProblem& p, const PointFn& exact,
                                    const std::vector<int>& n_list, int grid_n) {
  for (int n : n_list) {
    if (n < 1) throw std::invalid_argument("convergence_study: n must be >= 1");
  }
  return run_study(p, p.g, exact, n_list, grid_n, assemble_helmholtz_on);
}

ConvergenceResult convergence_study(const BiharmonicProblem& p, const PointFn& exact,
                                    const std::vector<int>& n_list, int grid_n) {
  for (int n : n_list) {
    if (n < 4) throw std::invalid_argument("convergence_study: n must be >= 4");
  }
  return run_study(p, nullptr, exact, n_list, grid_n, assemble_biharmonic_on);
}

Example<HelmholtzProblem> example_exam1a() {
  Example<HelmholtzProblem> e;
  e.problem.d = 2;
  e.problem.lambda = 1.0;
  e.problem.eta = 0.0;
  e.problem.f = [](std::span<const double> x) {
    return x[0] * (11.0 - x[0] * x[0] - x[1] * x[1]);
  };
  const double eta = e.problem.eta;
  e.problem.g = [eta](std::span<const double> xi) { return 2.0 * eta * xi[0]; };
  // The printed solution has a stray y_1; x_2 makes -Delta u + u = f hold.
  e.exact = [](std::span<const double> x) {
    return 3.0 * x[0] - (x[0] * x[0] + x[1] * x[1]) * x[0];
  };
  return e;
}

Example<HelmholtzProblem> example_exam1b() {
  Example<HelmholtzProblem> e;
  e.problem.d = 3;
  e.problem.lambda = 1.0;
  e.problem.eta = 1.0;
  // Poisson kernel in (x1, x2) with pole at radius 2: harmonic, so f = u.
  auto u = [](std::span<const double> x) {
    const double s = x[0] * x[0] + x[1] * x[1];
    return (4.0 - s) / (4.0 + s - 4.0 * x[0]);
  };
  e.problem.f = u;
  const double eta = e.problem.eta;
  e.problem.g = [eta](std::span<const double> xi) {
    const double t = xi[2] * xi[2];
    const double den = 5.0 - t - 4.0 * xi[0];
    return (4.0 * (1.0 - t) * (xi[0] - 4.0) + 16.0 * xi[0]) / (den * den) +
           eta * (3.0 + t) / den;
  };
  e.exact = u;
  return e;
}

Example<BiharmonicProblem> example_exam2() {
  Example<BiharmonicProblem> e;
  e.problem.d = 2;
  e.problem.lambda1 = 1.0;
  e.problem.lambda0 = 1.0;
  const double l1 = e.problem.lambda1;
  const double l0 = e.problem.lambda0;
  // u = q(w), w = ||x||^2, q = cos(2 pi w) - 1.  Radial Laplacian in w:
  // D q = 4 [w q'' + (d/2) q'].
  e.problem.f = [l1, l0](std::span<const double> x) {
    const double w = x[0] * x[0] + x[1] * x[1];
    const double a = 2.0 * M_PI;
    const double c = std::cos(a * w), s = std::sin(a * w);
    const double q = c - 1.0;
    const double q1 = -a * s, q2 = -a * a * c, q3 = a * a * a * s, q4 = a * a * a * a * c;
    const double h = 1.0;  // d/2
    const double p = 4.0 * (w * q2 + h * q1);
    const double p1 = 4.0 * (w * q3 + (1.0 + h) * q2);
    const double p2 = 4.0 * (w * q4 + (2.0 + h) * q3);
    const double lap2 = 4.0 * (w * p2 + h * p1);
    return lap2 - l1 * p + l0 * q;
  };
  e.exact = [](std::span<const double> x) {
    return std::cos(2.0 * M_PI * (x[0] * x[0] + x[1] * x[1])) - 1.0;
  };
  return e;
}

namespace {

BallPoly random_poly(int d, int degree, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BallPoly f(d);
  for (int m = 0; m <= degree; ++m) {
    for (const auto& idx : harmonic_indices(d, m)) {
      RadialPoly q;
      for (int k = 0; m + 2 * k <= degree; ++k) q.push_back(u(rng));
      f.add(idx, q);
    }
  }
  return f;
}

PointFn as_fn(BallPoly f) {
  return [f = std::move(f)](std::span<const double> x) { return f.eval(x); };
}

}  // namespace

ManufacturedHelmholtz manufactured_helmholtz(int d, double lambda, double eta, int degree,
                                             unsigned seed) {
  std::mt19937 rng(seed);
  ManufacturedHelmholtz out;
  out.exact = random_poly(d, degree, rng);
  out.problem.d = d;
  out.problem.lambda = lambda;
  out.problem.eta = eta;
  out.problem.f = as_fn(out.exact * lambda - laplacian(out.exact));
  // g = d_n u + eta u as a harmonic expansion on the sphere
  BallPoly g(d);
  for (const auto& [idx, v] : normal_derivative_trace(out.exact)) g.add(idx, RadialPoly{v});
  for (const auto& [idx, v] : boundary_trace(out.exact)) g.add(idx, RadialPoly{eta * v});
  out.problem.g = as_fn(g);
  return out;
}

ManufacturedBiharmonic manufactured_biharmonic(int d, double lambda1, double lambda0,
                                               int degree, unsigned seed) {
  if (degree < 4) throw std::invalid_argument("manufactured_biharmonic: degree must be >= 4");
  std::mt19937 rng(seed);
  ManufacturedBiharmonic out;
  out.exact = random_poly(d, degree - 4, rng).times_radial(radial::one_minus_u_pow(2));
  out.problem.d = d;
  out.problem.lambda1 = lambda1;
  out.problem.lambda0 = lambda0;
  out.problem.f = as_fn(laplacian_pow(out.exact, 2) - laplacian(out.exact) * lambda1 +
                        out.exact * lambda0);
  return out;
}

}  // namespace ballspec
