#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ballspec/ballfun.hpp"
#include "ballspec/harmonics.hpp"

using namespace ballspec;
using doctest::Approx;

TEST_CASE("harmonic_dim") {
  CHECK(harmonic_dim(2, 0) == 1);
  CHECK(harmonic_dim(2, 5) == 2);
  CHECK(harmonic_dim(3, 4) == 9);
  CHECK_THROWS_AS(harmonic_dim(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(validate({2, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(validate({3, 2, 0}), std::invalid_argument);
}

TEST_CASE("sph_eval and solid_eval oracle values") {
  const double e1[2] = {1.0, 0.0};
  const double z3[3] = {0.0, 0.0, 1.0};
  CHECK(sph_eval({2, 0, 1}, e1) == 1.0);
  CHECK(sph_eval({2, 1, 1}, e1) == Approx(std::sqrt(2.0)));
  // zonal degree-1 harmonic on S^2 (k = 0, ell = m + 1)
  CHECK(sph_eval({3, 1, 2}, z3) == Approx(std::sqrt(3.0)));
  const double origin[3] = {0, 0, 0};
  CHECK(solid_eval({3, 0, 1}, origin) == 1.0);
  CHECK(solid_eval({3, 3, 2}, origin) == 0.0);
  CHECK(solid_eval({2, 3, 1}, origin) == 0.0);
  const double x[2] = {0.5, 0.0};
  CHECK(solid_eval({2, 2, 1}, x) == Approx(std::sqrt(2.0) * 0.25));
  const double bad[2] = {0.5, 0.5};
  CHECK_THROWS_AS(sph_eval({2, 1, 1}, bad), std::invalid_argument);
}

TEST_CASE("solid_eval_all agrees with solid_eval and the monomial form") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 5; ++trial) {
      double x[3] = {u(rng), u(rng), u(rng)};
      const auto all = solid_eval_all(d, 8, x);
      for (int m = 0; m <= 8; ++m) {
        for (const auto& idx : harmonic_indices(d, m)) {
          const double v = solid_eval(idx, x);
          CHECK(all[harmonic_offset(d, m, idx.ell)] == Approx(v).epsilon(1e-13));
          CHECK(solid_harmonic_poly(idx).eval(x) == Approx(v).epsilon(1e-11));
        }
      }
    }
  }
}

TEST_CASE("discrete orthonormality on the sphere grid") {
  for (int d : {2, 3}) {
    const int n = 10;
    const auto rule = sphere_rule(d, n);
    double wsum = 0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == Approx(1.0).epsilon(1e-14));
    std::vector<std::vector<double>> ys;
    for (const auto& p : rule.points) ys.push_back(solid_eval_all(d, n, p));
    const std::size_t nh = ys[0].size();
    double worst = 0;
    for (std::size_t a = 0; a < nh; ++a) {
      for (std::size_t b = 0; b < nh; ++b) {
        double s = 0;
        for (std::size_t k = 0; k < ys.size(); ++k) s += rule.weights[k] * ys[k][a] * ys[k][b];
        worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
      }
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("solid harmonics are harmonic") {
  for (int d : {2, 3}) {
    for (int m = 0; m <= 12; ++m) {
      for (const auto& idx : harmonic_indices(d, m)) {
        const auto p = solid_harmonic_poly(idx);
        MultiPoly lap(d);
        for (int i = 0; i < d; ++i) lap = lap + p.partial(i).partial(i);
        double worst = 0;
        for (const auto& [e, c] : lap.terms()) worst = std::max(worst, std::abs(c));
        double scale = 0;
        for (const auto& [e, c] : p.terms()) scale = std::max(scale, std::abs(c));
        CHECK(worst <= 1e-12 * scale * (m + 1) * (m + 1));
        CHECK(laplacian(BallPoly::term(idx, {1.0})).is_zero());
      }
    }
  }
}

TEST_CASE("high degree stays finite and normalized") {
  const auto rule = sphere_rule(3, 200);
  double s = 0;
  const HarmonicIndex idx{3, 200, 150};
  for (std::size_t k = 0; k < rule.points.size(); k += 1) {
    const double v = sph_eval(idx, rule.points[k]);
    REQUIRE(std::isfinite(v));
    s += rule.weights[k] * v * v;
  }
  CHECK(s == Approx(1.0).epsilon(1e-10));
}
