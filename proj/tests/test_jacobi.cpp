#include <doctest.h>

#include <cmath>
#include <random>

#include "ballspec/jacobi.hpp"

using namespace ballspec;
using doctest::Approx;

TEST_CASE("pochhammer") {
  CHECK(pochhammer(3.0, 0) == 1.0);
  CHECK(pochhammer(-2.0, 3) == 0.0);
  CHECK(pochhammer(0.5, 2) == Approx(0.75));
  CHECK(pochhammer(2.0, 3) == 24.0);
}

TEST_CASE("jacobi_eval oracle values") {
  CHECK(jacobi_eval({0.3, -0.4}, 0, 0.2) == 1.0);
  CHECK(jacobi_eval({0, 0}, 2, 1.0) == Approx(1.0));
  CHECK(jacobi_eval({1, 0}, 1, 0.0) == Approx(0.5));
  // Legendre P_3(0.5) = (5*0.125 - 3*0.5)/2
  CHECK(jacobi_eval({0, 0}, 3, 0.5) == Approx(-0.4375));
}

TEST_CASE("jacobi_eval agrees with the recurrence through j = 50") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ut(-1.0, 1.0);
  std::uniform_real_distribution<double> up(-0.9, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    const JacobiParams p{up(rng), up(rng)};
    const double t = ut(rng);
    for (int j = 0; j <= 50; ++j) {
      CHECK(jacobi_eval(p, j, t) == jacobi_eval_recurrence(p, j, t));
    }
  }
}

// Sum of |term| in the explicit (t-1)/2 expansion: the sum's condition number.
double explicit_term_mass(const JacobiParams& p, int j, double t) {
  double s = 0.0;
  double xk = 1.0;
  double fk = 1.0;
  for (int k = 0; k <= j; ++k) {
    if (k > 0) fk *= k;
    double fjk = 1.0;
    for (int i = 2; i <= j - k; ++i) fjk *= i;
    s += std::abs(pochhammer(k + p.alpha + 1.0, j - k) *
                  pochhammer(j + p.alpha + p.beta + 1.0, k) / (fjk * fk) * xk);
    xk *= 0.5 * (t - 1.0);
  }
  return s;
}

// The explicit sum loses digits to cancellation; its error is bounded by a
// small multiple of eps times the absolute term mass.
TEST_CASE("explicit sum agrees with recurrence up to its conditioning") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ut(-1.0, 1.0);
  std::uniform_real_distribution<double> up(-0.9, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    const JacobiParams p{up(rng), up(rng)};
    const double t = ut(rng);
    for (int j = 0; j <= 30; ++j) {
      const double a = jacobi_eval_explicit(p, j, t);
      const double b = jacobi_eval_recurrence(p, j, t);
      CHECK(std::abs(a - b) <= 1e-14 * explicit_term_mass(p, j, t) + 1e-14 * std::abs(b));
    }
  }
}

TEST_CASE("gjacobi_j0") {
  CHECK(gjacobi_j0({0, 0}, 3) == 0);
  CHECK(gjacobi_j0({-2, 0}, 1) == 1);
  CHECK(gjacobi_j0({-3, 1}, 2) == 0);
  CHECK(gjacobi_j0({-3, 0.5}, 3) == 0);
}

TEST_CASE("gjacobi_eval oracle values") {
  for (double t : {-0.7, 0.0, 0.4, 1.0}) {
    CHECK(gjacobi_eval({-2, 0}, 1, t) == Approx((t - 1) / 2));
    CHECK(gjacobi_eval_explicit({-2, 0}, 1, t) == Approx((t - 1) / 2));
  }
  CHECK(gjacobi_eval({0.5, 0.5}, 0, 0.3) == 1.0);
  CHECK(gjacobi_eval({1, 0}, 1, 1.0) == Approx(2.0 / 3.0));
  CHECK(gjacobi_eval({1, 0}, -1, 0.2) == 0.0);
}

TEST_CASE("gjacobi_value_at_one") {
  CHECK(gjacobi_value_at_one({-2, 0}, 1) == 0.0);
  CHECK(gjacobi_value_at_one({0.3, 0.1}, 0) == 1.0);
  CHECK(gjacobi_value_at_one({0, 0}, 2) == Approx(1.0 / 12.0));
  for (int s = 1; s <= 3; ++s) {
    for (int j = 0; j <= 8; ++j) {
      for (double beta : {0.0, 0.5, 2.0, 3.5}) {
        const JacobiParams p{-static_cast<double>(s), beta};
        CHECK(gjacobi_value_at_one(p, j) ==
              Approx(gjacobi_eval_explicit(p, j, 1.0)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("gjacobi_derivative matches finite difference") {
  CHECK(gjacobi_derivative({0, 0}, 0, 0.3) == 0.0);
  CHECK(gjacobi_derivative({0, 0}, 1, 0.0) == Approx(0.5));
  CHECK(gjacobi_derivative({-2, 0}, 1, 0.4) == Approx(0.5));
  const double h = 1e-5;
  for (double alpha : {-3.0, -1.0, 0.0, 1.5}) {
    for (double beta : {0.0, 0.5, 2.0}) {
      for (int j = 0; j <= 7; ++j) {
        for (double t : {-0.6, 0.1, 0.7}) {
          const JacobiParams p{alpha, beta};
          const double fd =
              (gjacobi_eval(p, j, t + h) - gjacobi_eval(p, j, t - h)) / (2 * h);
          CHECK(std::abs(gjacobi_derivative(p, j, t) - fd) <= 1e-7);
        }
      }
    }
  }
}

TEST_CASE("JacPN reduction of the negative-integer family") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ut(-1.0, 1.0);
  for (int s = 1; s <= 3; ++s) {
    for (double beta : {0.0, 0.5, 1.0, 2.5, 4.0}) {
      for (int j = s; j <= 12; ++j) {
        const double t = ut(rng);
        const double lhs = gjacobi_eval_explicit({-static_cast<double>(s), beta}, j, t);
        const double rhs = std::pow(0.5 * (t - 1.0), s) *
                           gjacobi_eval({static_cast<double>(s), beta}, j - s, t) /
                           pochhammer(j - s + 1.0, s);
        CHECK(std::abs(lhs - rhs) <= 1e-11);
      }
    }
  }
}

TEST_CASE("classical generalized family is the scaled Jacobi polynomial") {
  for (double a : {0.0, 1.0, 2.0, -0.5}) {
    for (double b : {0.0, 0.5, 3.0}) {
      for (int j = 0; j <= 15; ++j) {
        for (double t : {-0.9, -0.2, 0.5, 0.95}) {
          const JacobiParams p{a, b};
          const double ref =
              jacobi_eval_recurrence(p, j, t) / pochhammer(j + a + b + 1.0, j);
          const double v = gjacobi_eval_explicit(p, j, t);
          CHECK(std::abs(v - ref) <=
                1e-12 * std::max(1.0, std::abs(gjacobi_value_at_one(p, j))) +
                    1e-12 * std::abs(ref));
        }
      }
    }
  }
}

TEST_CASE("Gauss-Jacobi oracle rules") {
  auto r0 = gauss_jacobi_rule(0, {0, 0});
  REQUIRE(r0.nodes.size() == 1);
  CHECK(r0.nodes[0] == Approx(0.0));
  CHECK(r0.weights[0] == Approx(2.0));
  auto r1 = gauss_jacobi_rule(1, {0, 0});
  CHECK(r1.nodes[0] == Approx(-1.0 / std::sqrt(3.0)));
  CHECK(r1.nodes[1] == Approx(1.0 / std::sqrt(3.0)));
  CHECK(r1.weights[0] == Approx(1.0));
  CHECK(r1.weights[1] == Approx(1.0));
  auto r4 = gauss_jacobi_rule(4, {0, 0});
  double s = 0;
  for (std::size_t i = 0; i < r4.nodes.size(); ++i) s += r4.weights[i] * std::pow(r4.nodes[i], 8);
  CHECK(std::abs(s - 2.0 / 9.0) <= 1e-13);
  CHECK_THROWS_AS(gauss_jacobi_rule(3, {-1.0, 0.0}), std::invalid_argument);
}

namespace {
// int_{-1}^1 (1+t)^k (1-t)^a (1+t)^b dt = 2^{a+b+k+1} B(a+1, b+k+1)
double moment(double a, double b, int k) {
  return std::exp((a + b + k + 1) * std::log(2.0) + std::lgamma(a + 1) +
                  std::lgamma(b + k + 1) - std::lgamma(a + b + k + 2));
}
}  // namespace

TEST_CASE("Gauss-Jacobi exactness through degree 2n+1") {
  for (int n : {0, 1, 2, 5, 10, 20, 40, 64}) {
    for (auto p : {JacobiParams{0, 0}, JacobiParams{0, 0.5}, JacobiParams{1, 2},
                   JacobiParams{-0.5, 0.5}, JacobiParams{2, 10.5}}) {
      auto r = gauss_jacobi_rule(n, p);
      REQUIRE(static_cast<int>(r.nodes.size()) == n + 1);
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        CHECK(r.weights[i] > 0);
        if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
      }
      for (int k = 0; k <= 2 * n + 1; ++k) {
        double s = 0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
          s += r.weights[i] * std::pow(1.0 + r.nodes[i], k);
        }
        const double ref = moment(p.alpha, p.beta, k);
        CHECK(std::abs(s - ref) <= 1e-12 * ref);
      }
    }
  }
}

TEST_CASE("Gauss-Jacobi symmetry and large n") {
  auto r = gauss_jacobi_rule(30, {1.5, 1.5});
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const std::size_t k = r.nodes.size() - 1 - i;
    CHECK(r.nodes[i] == Approx(-r.nodes[k]).epsilon(1e-13));
    CHECK(r.weights[i] == Approx(r.weights[k]).epsilon(1e-12));
  }
  CHECK_NOTHROW(gauss_jacobi_rule(256, {0, 0.5}));
  CHECK(cached_gauss_jacobi_rule(7, {0, 1}) == cached_gauss_jacobi_rule(7, {0, 1}));
}

TEST_CASE("discrete Jacobi orthogonality") {
  for (auto p : {JacobiParams{0, 0}, JacobiParams{1, 0.5}, JacobiParams{2, 3}}) {
    auto r = gauss_jacobi_rule(21, p);
    for (int j = 0; j <= 20; ++j) {
      for (int k = 0; k <= 20; ++k) {
        double s = 0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
          s += r.weights[i] * jacobi_eval(p, j, r.nodes[i]) * jacobi_eval(p, k, r.nodes[i]);
        }
        // h_j = 2^{a+b+1}/(2j+a+b+1) Gamma(j+a+1)Gamma(j+b+1)/(Gamma(j+a+b+1) j!)
        const double a = p.alpha, b = p.beta;
        const double hj = std::exp((a + b + 1) * std::log(2.0) - std::log(2 * j + a + b + 1) +
                                   std::lgamma(j + a + 1) + std::lgamma(j + b + 1) -
                                   std::lgamma(j + a + b + 1) - std::lgamma(j + 1.0));
        if (j == k) {
          CHECK(s == Approx(hj).epsilon(1e-10));
        } else {
          CHECK(std::abs(s) <= 1e-10 * hj);
        }
      }
    }
  }
}
