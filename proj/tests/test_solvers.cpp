#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "ballspec/ballbasis.hpp"
#include "ballspec/solvers.hpp"
#include "test_util.hpp"

using namespace ballspec;

namespace {

double max_gap(const GalerkinSolution& s, const PointFn& exact, int d, int grid_n) {
  const auto grid = build_grid(d, grid_n);
  const auto v = s.eval_on(grid.points);
  double w = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    w = std::max(w, std::abs(v[k] - exact({grid.points[k].data(), static_cast<std::size_t>(d)})));
  }
  return w;
}

PointFn as_fn(const BallPoly& f) {
  return [f](std::span<const double> x) { return f.eval(x); };
}

}  // namespace

TEST_CASE("banded solvers match dense LU") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int bw : {1, 2}) {
    const int n = 9;
    BandedMatrix a(n, bw);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j <= std::min(n - 1, i + bw); ++j) {
        const double v = i == j ? 5.0 + u(rng) : u(rng);
        a.at(i, j) = v;
        dense(i, j) = dense(j, i) = v;
      }
    }
    std::vector<double> b(n);
    Eigen::VectorXd be(n);
    for (int i = 0; i < n; ++i) be[i] = b[i] = u(rng);
    const Eigen::VectorXd ref = dense.partialPivLu().solve(be);
    const auto x = bw == 1 ? solve_tridiagonal_ldlt(a, b) : solve_banded_cholesky(a, b);
    for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-13));
  }
  BandedMatrix bad(2, 1);
  bad.at(0, 0) = 1.0;
  bad.at(1, 1) = 1.0;
  bad.at(0, 1) = 2.0;
  CHECK_THROWS_AS(solve_tridiagonal_ldlt(bad, {1.0, 1.0}), std::runtime_error);
  CHECK_THROWS_AS(solve_banded_cholesky(bad, {1.0, 1.0}), std::runtime_error);
}

TEST_CASE("helmholtz mass and stiffness equal the discrete Gram of the basis") {
  for (int d : {2, 3}) {
    HelmholtzProblem p{d, 0.0, 1.0, [](std::span<const double>) { return 0.0; }, nullptr};
    const auto s_only = assemble_helmholtz(p, 9);
    p.lambda = 1.0;
    const auto with_mass = assemble_helmholtz(p, 9);
    for (std::size_t b = 0; b < s_only.blocks.size(); ++b) {
      const auto& blk = s_only.blocks[b];
      const int rows = blk.matrix.size;
      for (int r = 0; r < rows; ++r) {
        for (int c = r; c < rows; ++c) {
          const int kr = blk.m + 2 * r, kc = blk.m + 2 * c;
          const auto fr = [&](double u) { return ball_radial(-1.0, kr, r, d, u); };
          const auto fc = [&](double u) { return ball_radial(-1.0, kc, c, d, u); };
          const double mass =
              radial_inner_fn([&](double u) { return fr(u) * fc(u); }, r + c, blk.m, d, 0.0);
          const double got_mass =
              with_mass.blocks[b].matrix(r, c) - blk.matrix(r, c);
          CHECK(std::abs(got_mass - mass) <= 1e-12 * std::max(1.0, std::abs(mass)));
          // stiffness = <grad, grad> + d eta <., .>_S, eta = 1
          const HarmonicIndex h{d, blk.m, blk.ell};
          const auto pr = BallPoly::term(h, ball_radial_poly(-1.0, kr, r, d));
          const auto pc = BallPoly::term(h, ball_radial_poly(-1.0, kc, c, d));
          const double stiff = inner_grad(pr, pc) + d * inner_sphere(pr, pc);
          CHECK(std::abs(blk.matrix(r, c) - stiff) <= 1e-9 * std::max(1.0, std::abs(stiff)));
        }
      }
    }
  }
}

TEST_CASE("exam1a is recovered to rounding for n = 5..12") {
  const auto ex = example_exam1a();
  const auto res = convergence_study(ex.problem, ex.exact, {5, 6, 7, 8, 9, 10, 11, 12}, 20);
  for (const auto& r : res.rows) {
    CHECK(r.err.e_max <= 1e-11);
    CHECK(r.err.e_l2 <= 1e-11);
  }
}

TEST_CASE("constant solution with Robin data") {
  // u = 1: -Delta u + u = 1, d_n u + eta u = eta
  HelmholtzProblem p{3, 1.0, 2.0, [](std::span<const double>) { return 1.0; },
                     [](std::span<const double>) { return 2.0; }};
  const auto s = solve_helmholtz(p, 4);
  CHECK(max_gap(s, [](std::span<const double>) { return 1.0; }, 3, 8) <= 1e-13);
}

TEST_CASE("manufactured polynomial solutions are reproduced") {
  for (int d : {2, 3}) {
    for (unsigned seed : {1u, 2u}) {
      const auto mh = manufactured_helmholtz(d, 1.5, 0.5, 7, seed);
      const auto sh = solve_helmholtz(mh.problem, 7);
      CHECK(max_gap(sh, as_fn(mh.exact), d, 12) <= 1e-11);
      const auto mb = manufactured_biharmonic(d, 1.0, 2.0, 9, seed);
      const auto sb = solve_biharmonic(mb.problem, 9);
      CHECK(max_gap(sb, as_fn(mb.exact), d, 14) <= 1e-11);
    }
  }
}

TEST_CASE("biharmonic diagonal oracle and bandwidth") {
  // d = 2, m = 2, j = 2 (k = 6) with lambda1 = lambda0 = 0: 8 d (N-2)(N-1)^2 = 2880
  BiharmonicProblem p{2, 0.0, 0.0, [](std::span<const double>) { return 0.0; }};
  const auto sys = assemble_biharmonic(p, 6);
  bool found = false;
  for (const auto& b : sys.blocks) {
    if (b.m == 2) {
      CHECK(b.matrix(0, 0) == doctest::Approx(2880.0).epsilon(1e-13));
      found = true;
    }
  }
  CHECK(found);
  p.lambda1 = 1.0;
  p.lambda0 = 1.0;
  for (int d : {2, 3}) {
    p.d = d;
    for (const auto& b : assemble_biharmonic(p, 16).blocks) {
      CHECK(b.off_band <= 1e-12);
      CHECK(b.matrix.bandwidth <= 2);
    }
  }
}

TEST_CASE("biharmonic stiffness matches exact bilinear form") {
  const int d = 3;
  BiharmonicProblem p{d, 0.7, 1.3, [](std::span<const double>) { return 0.0; }};
  const auto sys = assemble_biharmonic(p, 10);
  for (const auto& blk : sys.blocks) {
    const HarmonicIndex h{d, blk.m, blk.ell};
    for (int r = 0; r < blk.matrix.size; ++r) {
      for (int c = r; c <= std::min(blk.matrix.size - 1, r + blk.matrix.bandwidth); ++c) {
        const int jr = r + 2, jc = c + 2;
        const auto pr = BallPoly::term(h, ball_radial_poly(-2.0, blk.m + 2 * jr, jr, d));
        const auto pc = BallPoly::term(h, ball_radial_poly(-2.0, blk.m + 2 * jc, jc, d));
        const double a = inner_L2(laplacian(pr), laplacian(pc)) + 0.7 * inner_grad(pr, pc) +
                         1.3 * inner_L2(pr, pc);
        CHECK(std::abs(blk.matrix(r, c) - a) <= 1e-9 * std::max(std::abs(a), blk.matrix(r, r)));
      }
    }
  }
}

TEST_CASE("galerkin orthogonality and stability") {
  // Residual against every trial function vanishes: A x = b solved per block.
  const auto ex = example_exam1a();
  auto p = ex.problem;
  p.f = [](std::span<const double> x) { return std::exp(x[0]) * std::cos(x[1]); };
  const auto sys = assemble_helmholtz(p, 10);
  const auto sol = solve_system(sys);
  double fnorm = 0.0, unorm = 0.0;
  for (const auto& blk : sys.blocks) {
    std::vector<double> x;
    for (int r = 0; r < blk.matrix.size; ++r) {
      const int j = blk.first_j + r;
      x.push_back(sol.coeffs.table.at({blk.m + 2 * j, j, blk.ell}));
    }
    for (int r = 0; r < blk.matrix.size; ++r) {
      double ax = 0.0;
      for (int c = 0; c < blk.matrix.size; ++c) ax += blk.matrix(r, c) * x[c];
      CHECK(std::abs(ax - blk.rhs[r]) <= 1e-12 * std::max(1.0, std::abs(blk.rhs[r])));
    }
  }
  // ||u_n||_L2 <= C ||f||_L2 with lambda = 1 and eta = 0: C = 1 up to quadrature.
  const auto grid = build_grid(2, 18);
  const auto v = sol.eval_on(grid.points);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double f = p.f({grid.points[k].data(), 2});
    fnorm += grid.weights[k] * f * f;
    unorm += grid.weights[k] * v[k] * v[k];
  }
  CHECK(std::sqrt(unorm) <= 10.0 * std::sqrt(fnorm));
  CHECK(std::sqrt(unorm) <= 1.0 * std::sqrt(fnorm) + 1e-12);
}

TEST_CASE("biharmonic solutions satisfy clamped boundary conditions") {
  const auto ex = example_exam2();
  const auto s = solve_biharmonic(ex.problem, 14).to_ballpoly();
  for (const auto& [idx, v] : boundary_trace(s)) CHECK(std::abs(v) <= 1e-12);
  for (const auto& [idx, v] : normal_derivative_trace(s)) CHECK(std::abs(v) <= 1e-11);
}

TEST_CASE("exam1b data are consistent") {
  const auto ex = example_exam1b();
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  const double h = 1e-5;
  for (int t = 0; t < 20; ++t) {
    std::array<double, 3> xi{g(rng), g(rng), g(rng)};
    const double r = std::hypot(xi[0], xi[1], xi[2]);
    for (auto& c : xi) c /= r;
    auto at = [&](double s) {
      std::array<double, 3> y{s * xi[0], s * xi[1], s * xi[2]};
      return ex.exact({y.data(), 3});
    };
    const double dn = (3 * at(1.0) - 4 * at(1.0 - h) + at(1.0 - 2 * h)) / (2 * h);
    CHECK(ex.problem.g({xi.data(), 3}) ==
          doctest::Approx(dn + ex.problem.eta * at(1.0)).epsilon(1e-7));
    // harmonic: central second differences
    std::array<double, 3> x{0.5 * xi[0], 0.5 * xi[1], 0.5 * xi[2]};
    double lap = 0.0;
    const double e = 1e-4;
    for (int i = 0; i < 3; ++i) {
      auto xp = x, xm = x;
      xp[i] += e;
      xm[i] -= e;
      lap += (ex.exact({xp.data(), 3}) - 2 * ex.exact({x.data(), 3}) + ex.exact({xm.data(), 3})) /
             (e * e);
    }
    CHECK(std::abs(lap) <= 1e-5);
    CHECK(ex.problem.f({x.data(), 3}) == doctest::Approx(ex.exact({x.data(), 3})));
  }
}

TEST_CASE("exam2 right-hand side matches the BallPoly operator on a Taylor surrogate") {
  // Compare with a finite-difference bilaplacian along the radius at a few points.
  const auto ex = example_exam2();
  const double l1 = ex.problem.lambda1, l0 = ex.problem.lambda0;
  auto q = [](double w) { return std::cos(2 * M_PI * w) - 1.0; };
  // radial Laplacian in 2-D: D v(w) = 4 (w v'' + v') with w = rho^2
  auto D = [](const std::function<double(double)>& v) {
    return std::function<double(double)>([v](double w) {
      const double e = 1e-3;
      const double v1 = (v(w + e) - v(w - e)) / (2 * e);
      const double v2 = (v(w + e) - 2 * v(w) + v(w - e)) / (e * e);
      return 4 * (w * v2 + v1);
    });
  };
  const auto lq = D(q);
  const auto llq = D(lq);
  for (double w : {0.1, 0.3, 0.6}) {
    std::array<double, 2> x{std::sqrt(w), 0.0};
    const double f = ex.problem.f({x.data(), 2});
    CHECK(f == doctest::Approx(llq(w) - l1 * lq(w) + l0 * q(w)).epsilon(1e-3));
  }
}

TEST_CASE("exam1b and exam2 converge exponentially") {
  const auto e1 = example_exam1b();
  const auto r1 = convergence_study(e1.problem, e1.exact, {4, 6, 8, 10, 12, 14, 16}, 30);
  CHECK(r1.strictly_decreasing);
  CHECK(r1.fitted_rate <= -0.3);
  const auto e2 = example_exam2();
  const auto r2 = convergence_study(e2.problem, e2.exact, {8, 10, 12, 14, 16, 18, 20, 22, 24}, 40);
  CHECK(r2.strictly_decreasing);
  CHECK(r2.fitted_rate <= -0.3);
  MESSAGE("exam1b rate " << r1.fitted_rate << " exam2 rate " << r2.fitted_rate);
}

TEST_CASE("input validation") {
  HelmholtzProblem p{2, 0.0, 0.0, [](std::span<const double>) { return 0.0; }, nullptr};
  CHECK_THROWS_AS(assemble_helmholtz(p, 4), std::invalid_argument);
  p.lambda = 1.0;
  CHECK_THROWS_AS(assemble_helmholtz(p, 8, 6), std::invalid_argument);
  p.d = 4;
  CHECK_THROWS_AS(assemble_helmholtz(p, 8), std::invalid_argument);
  BiharmonicProblem b{2, 1.0, 1.0, [](std::span<const double>) { return 0.0; }};
  CHECK_THROWS_AS(assemble_biharmonic(b, 3), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(b, b.f, {6, 8}, 6), std::invalid_argument);
}

TEST_CASE("grid evaluation agrees with pointwise evaluation") {
  for (int d : {2, 3}) {
    const auto mb = manufactured_biharmonic(d, 1.0, 1.0, 8, 7u);
    const auto s = solve_biharmonic(mb.problem, 8);
    const auto grid = build_grid(d, 6);
    const auto a = s.eval_on(grid.points);
    const auto b = s.eval_on_grid(grid);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-13);
  }
}

TEST_CASE("zero data gives the zero solution") {
  HelmholtzProblem p{2, 0.0, 1.0, [](std::span<const double>) { return 0.0; }, nullptr};
  for (const auto& [idx, c] : solve_helmholtz(p, 6).coeffs.table) CHECK(c == 0.0);
  BiharmonicProblem b{3, 1.0, 1.0, [](std::span<const double>) { return 0.0; }};
  for (const auto& [idx, c] : solve_biharmonic(b, 8).coeffs.table) CHECK(c == 0.0);
}

TEST_CASE("dense helmholtz assembly decouples into the harmonic blocks") {
  const int n = 8;
  for (int d : {2, 3}) {
    const double lambda = 1.3, eta = 0.6;
    std::vector<BallPoly> basis;
    std::vector<std::pair<int, int>> block;  // (m, ell)
    for (int k = 0; k <= n; ++k) {
      for (const auto& idx : basis_indices(d, k)) {
        const HarmonicIndex h{d, idx.harmonic_degree(), idx.ell};
        basis.push_back(BallPoly::term(h, ball_radial_poly(-1.0, idx.n, idx.j, d)));
        block.emplace_back(h.m, h.ell);
      }
    }
    const auto grid = build_grid(d, n + 1);
    std::vector<std::vector<double>> vals(basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (const auto& x : grid.points) vals[a].push_back(basis[a].eval({x.data(), std::size_t(d)}));
    }
    double off = 0.0;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (std::size_t b = a + 1; b < basis.size(); ++b) {
        if (block[a] == block[b]) continue;
        double mass = 0.0;
        for (std::size_t k = 0; k < grid.points.size(); ++k) mass += grid.weights[k] * vals[a][k] * vals[b][k];
        const double e = inner_grad(basis[a], basis[b]) + d * eta * inner_sphere(basis[a], basis[b]) +
                         lambda * mass;
        off = std::max(off, std::abs(e));
      }
    }
    CHECK(off <= 1e-11);
  }
}

TEST_CASE("discrete energy stability") {
  std::mt19937 rng(11);
  double worst = 0.0;
  for (int d : {2, 3}) {
    for (int n : {4, 8, 12, 16}) {
      const auto fp = test_util::random_ballpoly(d, 6, rng);
      const auto gp = test_util::random_ballpoly(d, 5, rng);
      HelmholtzProblem p{d, 0.5, 1.0, as_fn(fp), as_fn(gp)};
      const auto sys = assemble_helmholtz(p, n);
      const auto sol = solve_system(sys);
      double energy = 0.0;
      for (const auto& blk : sys.blocks) {
        std::vector<double> x;
        for (int r = 0; r < blk.matrix.size; ++r) {
          const int j = blk.first_j + r;
          x.push_back(sol.coeffs.table.at({blk.m + 2 * j, j, blk.ell}));
        }
        for (int r = 0; r < blk.matrix.size; ++r) {
          for (int c = 0; c < blk.matrix.size; ++c) energy += x[r] * blk.matrix(r, c) * x[c];
        }
      }
      const double data = inner_L2(fp, fp) + d * inner_sphere(gp, gp);
      worst = std::max(worst, energy / data);
    }
  }
  MESSAGE("stability constant " << worst);
  CHECK(worst <= 10.0);
}

TEST_CASE("biharmonic trial space has dimension of polynomials of degree n-4") {
  for (int d : {2, 3}) {
    for (int n : {4, 5, 9}) {
      BiharmonicProblem b{d, 1.0, 1.0, [](std::span<const double>) { return 1.0; }};
      std::size_t dim = 0;
      for (int k = 0; k <= n - 4; ++k) dim += basis_indices(d, k).size();
      CHECK(solve_biharmonic(b, n).coeffs.table.size() == dim);
    }
    // (1 - |x|^2)^2 is recovered from n = 4
    const auto u = BallPoly::constant(d, 1.0).times_radial(radial::one_minus_u_pow(2));
    BiharmonicProblem b{d, 1.0, 1.0,
                        as_fn(laplacian_pow(u, 2) - laplacian(u) + u)};
    CHECK(max_gap(solve_biharmonic(b, 4), as_fn(u), d, 8) <= 1e-12);
  }
}

TEST_CASE("exam2 reaches 1e-8 by n = 40") {
  const auto ex = example_exam2();
  const auto r = convergence_study(ex.problem, ex.exact, {30, 40}, 44);
  CHECK(r.rows.back().err.e_max <= 1e-8);
}
