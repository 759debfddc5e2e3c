#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ballspec/jacobi.hpp"
#include "ballspec/quadrature.hpp"
#include "ballspec/sobolevbasis.hpp"
#include "test_util.hpp"

using namespace ballspec;

TEST_CASE("params validation") {
  CHECK_NOTHROW(SobolevParams::with_default(3, 2).validate());
  CHECK(SobolevParams::with_default(3, 2).lambdas.size() == 2);
  SobolevParams bad{2, {1.0, 2.0}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  SobolevParams neg{1, {-1.0}};
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
}

TEST_CASE("sobolev inner product oracles") {
  SobolevParams p{1, {1.0}};
  CHECK(sobolev_inner(BallPoly::constant(2, 1.0), BallPoly::constant(2, 1.0), p) ==
        doctest::Approx(1.0));
  for (int d : {2, 3}) {
    for (int n = 0; n <= 6; ++n) {
      const auto y = BallPoly::term({d, n, 1}, RadialPoly{1.0});
      const auto q = SobolevParams{1, {0.7}};
      CHECK(sobolev_inner(y, y, q) == doctest::Approx(d * n + 0.7).epsilon(1e-13));
    }
  }
  const int d = 2;
  const auto p2 = SobolevParams::with_default(2, d);
  for (int n = 2; n <= 8; ++n) {
    for (int j = 1; 2 * j <= n; ++j) {
      const auto q = q_basis(p2, {n, j, 1}, d);
      const double h = 0.5 * d;
      CHECK(sobolev_inner(q, q, p2) ==
            doctest::Approx(8.0 * d * (n + h - 2) * (n + h - 1) * (n + h - 1)).epsilon(1e-10));
    }
  }
}

TEST_CASE("gradient term agrees with brute-force quadrature") {
  std::mt19937 rng(3);
  for (int d : {2, 3}) {
    const auto f = test_util::random_ballpoly(d, 5, rng);
    const auto g = test_util::random_ballpoly(d, 5, rng);
    const auto grid = build_grid(d, 8);
    // <grad f, grad g> via exact monomial partials on the grid
    double s = 0.0;
    std::vector<MultiPoly> df, dg;
    const auto mf = to_monomials(f), mg = to_monomials(g);
    for (int i = 0; i < d; ++i) {
      df.push_back(mf.partial(i));
      dg.push_back(mg.partial(i));
    }
    for (std::size_t a = 0; a < grid.points.size(); ++a) {
      std::span<const double> x(grid.points[a].data(), d);
      for (int i = 0; i < d; ++i) s += grid.weights[a] * df[i].eval(x) * dg[i].eval(x);
    }
    SobolevParams p{1, {1.0}};
    CHECK(sobolev_inner(f, g, p) - inner_sphere(f, g) == doctest::Approx(s).epsilon(1e-11));
  }
}

TEST_CASE("lift coefficients") {
  for (int d : {2, 3}) {
    for (int n = 0; n <= 8; ++n) {
      const double big_n = n + 0.5 * d;
      CHECK(lift_coeffs(d, n, 0).c == std::vector<double>{1.0});
      const auto c1 = lift_coeffs(d, n, 1);
      CHECK(c1.c[0] == 0.0);
      CHECK(c1.c[1] == doctest::Approx(-1.0 / (4.0 * big_n)));
      const auto c2 = lift_coeffs(d, n, 2);
      CHECK(std::abs(c2.c[0]) < 1e-15);
      CHECK(c2.c[1] == doctest::Approx(1.0 / (16.0 * big_n * big_n * (big_n + 1))));
      CHECK(c2.c[2] == doctest::Approx(1.0 / (32.0 * big_n * (big_n + 1))));
      // The displayed closed forms equal (-4)^j times these lifts.
      const auto y1 = lift_eval(d, n, 1, 1);
      const auto shown1 =
          BallPoly::term({d, n, 1}, radial::scale(radial::one_minus_u_pow(1), 1.0 / big_n));
      CHECK((y1 * -4.0 - shown1).max_abs_coeff() < 1e-14);
      const auto shown2 = BallPoly::term(
          {d, n, 1},
          radial::scale(radial::add(radial::scale(radial::one_minus_u_pow(2), big_n),
                                    radial::scale(radial::one_minus_u_pow(1), 2.0)),
                        1.0 / (2.0 * big_n * pochhammer(big_n, 2))));
      CHECK((lift_eval(d, n, 2, 1) * 16.0 - shown2).max_abs_coeff() < 1e-14);
      for (int j = 0; j <= 8; ++j) {
        const auto lc = lift_coeffs(d, n, j);
        CHECK(lc.residual <= 1e-12);
        CHECK(lc.c[0] == doctest::Approx(j == 0 ? 1.0 : 0.0));
        CHECK(lc.c[j] == doctest::Approx(std::pow(-0.25, j) /
                                         (pochhammer(1.0, j) * pochhammer(big_n, j)))
                             .epsilon(1e-12));
      }
    }
  }
  CHECK(lift_eval(2, 3, -1, 1).is_zero());
}

TEST_CASE("lift identities: Delta Y^{n,j} = Y^{n,j-1}, traces delta_{kj}") {
  for (int d : {2, 3}) {
    for (int n = 0; n <= 8; ++n) {
      for (int j = 0; j <= 6; ++j) {
        const auto y = lift_eval(d, n, j, 1);
        CHECK((laplacian(y) - lift_eval(d, n, j - 1, 1)).max_abs_coeff() < 1e-12);
        BallPoly dk = y;
        for (int k = 0; k <= j + 1; ++k) {
          const double tr = radial::eval(dk.radial({d, n, 1}), 1.0);
          CHECK(tr == doctest::Approx(k == j ? 1.0 : 0.0).scale(1.0));
          dk = laplacian(dk);
        }
        for (double u : {0.0, 0.3, 0.9}) {
          CHECK(lift_radial(d, n, j, u) ==
                doctest::Approx(radial::eval(y.radial({d, n, 1}), u)).scale(1e-3));
        }
      }
    }
  }
}

TEST_CASE("boundary values of Laplacian powers of (1-u)^j Y") {
  int printed_fail = 0;
  for (int d : {2, 3}) {
    for (int n = 0; n <= 6; ++n) {
      for (int j = 0; j <= 4; ++j) {
        BallPoly f = BallPoly::term({d, n, 1}, radial::one_minus_u_pow(j));
        for (int k = 0; k <= 4; ++k) {
          const double exact = radial::eval(f.radial({d, n, 1}), 1.0);
          CHECK(deltaY_trace(d, n, j, k) == doctest::Approx(exact).epsilon(1e-13));
          if (std::abs(deltaY_trace_denominator_j(d, n, j, k) - exact) >
              1e-9 * std::max(1.0, std::abs(exact))) {
            ++printed_fail;
          }
          f = laplacian(f);
        }
      }
    }
  }
  // j=k=1: exact -4(n+d/2), the (n+d/2)_j denominator gives -4.
  CHECK(deltaY_trace(2, 3, 1, 1) == doctest::Approx(-16.0));
  CHECK(deltaY_trace_denominator_j(2, 3, 1, 1) == doctest::Approx(-4.0));
  CHECK(printed_fail > 0);
}

TEST_CASE("Q basis special cases") {
  for (int d : {2, 3}) {
    const auto p1 = SobolevParams::with_default(1, d);
    for (int n = 0; n <= 6; ++n) {
      const auto q = q_basis(p1, {n, 0, 1}, d);
      CHECK((q - BallPoly::term({d, n, 1}, RadialPoly{1.0})).max_abs_coeff() < 1e-14);
    }
    // s=2, j=1: multiple of (1-u) Y^{n-2}
    const auto p2 = SobolevParams::with_default(2, d);
    for (int n = 2; n <= 9; ++n) {
      const auto q = q_basis(p2, {n, 1, 1}, d).radial({d, n - 2, 1});
      REQUIRE(q.size() == 2);
      CHECK(q[0] == doctest::Approx(-q[1]).epsilon(1e-13));
    }
    // s=2, j>=2: (1-u)^2 times P^{2,n-4}_{j-2}
    for (int n = 4; n <= 10; ++n) {
      for (int j = 2; 2 * j <= n; ++j) {
        const auto q = q_basis(p2, {n, j, 1}, d);
        const auto r = ball_basis(2.0, {n - 4, j - 2, 1}, d).times_radial(
            radial::one_minus_u_pow(2));
        const auto hq = HarmonicIndex{d, n - 2 * j, 1};
        const double ratio = q.radial(hq).back() / r.radial(hq).back();
        CHECK((q - r * ratio).max_abs_coeff() < 1e-10 * q.max_abs_coeff());
      }
    }
    // decomposition count: Y^n, (1-u)Y^{n-2}, (1-u)^2 V_{n-4}(w_2)
    for (int n = 0; n <= 10; ++n) {
      std::size_t count = harmonic_dim(d, n) + (n >= 2 ? harmonic_dim(d, n - 2) : 0) +
                          (n >= 4 ? basis_indices(d, n - 4).size() : 0);
      CHECK(count == basis_indices(d, n).size());
    }
  }
}

TEST_CASE("q_norm oracles") {
  CHECK(q_norm(SobolevParams{1, {0.5}}, 4, 0, 2) == doctest::Approx(8.5));
  CHECK(q_norm(SobolevParams::with_default(1, 2), 3, 1, 2) == doctest::Approx(12.0));
  CHECK(q_norm(SobolevParams{3, {1.0, 0.25}}, 5, 1, 3) == doctest::Approx(9.25));
}

TEST_CASE("Q Gram matrices are diagonal with the closed-form norms") {
  for (int d : {2, 3}) {
    for (int s = 1; s <= 4; ++s) {
      const auto p = SobolevParams::with_default(s, d);
      const int nmax = 10;
      const auto idx = basis_indices_upto(d, nmax);
      std::vector<BallPoly> qs;
      for (const auto& i : idx) qs.push_back(q_basis(p, i, d));
      for (std::size_t a = 0; a < idx.size(); ++a) {
        const double ha = q_norm(p, idx[a].n, idx[a].j, d);
        for (std::size_t b = a; b < idx.size(); ++b) {
          const double v = sobolev_inner(qs[a], qs[b], p);
          if (a == b) {
            CHECK(v == doctest::Approx(ha).epsilon(1e-8));
          } else {
            CHECK(std::abs(v) <= 1e-8 * std::sqrt(ha * q_norm(p, idx[b].n, idx[b].j, d)));
          }
        }
      }
    }
  }
}

TEST_CASE("Q boundary traces and Laplacian powers") {
  for (int d : {2, 3}) {
    for (int s = 1; s <= 4; ++s) {
      const auto p = SobolevParams::with_default(s, d);
      for (int n = 0; n <= 10; ++n) {
        for (int j = 0; 2 * j <= n; ++j) {
          const BasisIndex idx{n, j, 1};
          BallPoly q = q_basis(p, idx, d);
          const HarmonicIndex h{d, n - 2 * j, 1};
          for (int k = 0; k < p.num_traces(); ++k) {
            const double tr = radial::eval(q.radial(h), 1.0);
            CHECK(tr == doctest::Approx(k == j ? 1.0 : 0.0).scale(std::max(1.0, q.max_abs_coeff()) * 1e-3));
            q = laplacian(q);
          }
          CHECK(check_defQ_laplacian(p, idx, d) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("stable Q radial values") {
  for (int d : {2, 3}) {
    for (int s = 1; s <= 4; ++s) {
      const auto p = SobolevParams::with_default(s, d);
      for (int n = 0; n <= 12; ++n) {
        for (int j = 0; 2 * j <= n; ++j) {
          const auto q = q_basis(p, {n, j, 1}, d).radial({d, n - 2 * j, 1});
          for (double u : {0.0, 0.5, 1.0}) {
            CHECK(q_radial(p, n, j, d, u) ==
                  doctest::Approx(radial::eval(q, u)).scale(1e-2 * (1.0 + radial::max_abs(q))));
          }
        }
      }
    }
  }
}

TEST_CASE("projection identities") {
  std::mt19937 rng(11);
  for (int d : {2, 3}) {
    const auto f = test_util::random_ballpoly(d, d == 2 ? 12 : 8, rng);
    for (int s = 1; s <= 4; ++s) {
      const auto p = SobolevParams::with_default(s, d);
      for (int n : {2, 4, 6, 7}) {
        for (int k = 0; k < p.num_traces(); ++k) {
          CHECK(check_boundary_projection(p, n, k, f) <= 1e-9);
        }
      }
    }
    // harmonic input: both sides its harmonic projection
    const auto y = BallPoly::term({d, 3, 1}, RadialPoly{1.0});
    CHECK(check_boundary_projection(SobolevParams::with_default(2, d), 3, 0, y) <= 1e-12);
    const auto g = test_util::random_ballpoly(d, 4, rng);
    for (int s = 1; s <= 3; ++s) {
      for (int n = 0; n <= 10; ++n) CHECK(check_factorization(s, n, g) <= 1e-9);
    }
    CHECK(check_factorization(1, 2, BallPoly::constant(d, 1.0)) <= 1e-12);
  }
}
