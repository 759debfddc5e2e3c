// One line per acceptance criterion; exit status 0 iff every evaluated line passes.
#include <chrono>
#include <cstdio>
#include <string>

#include "ballspec/checks.hpp"
#include "ballspec/solvers.hpp"

using namespace ballspec;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string summarize(const std::vector<CheckResult>& rs) {
  int pass = 0;
  std::string bad;
  for (const auto& r : rs) {
    if (r.pass()) {
      ++pass;
    } else {
      bad += " [" + r.name + fmt(" worst %.2e > %.0e]", r.worst, r.tolerance);
    }
  }
  return std::to_string(pass) + "/" + std::to_string(rs.size()) + " checks within tolerance" + bad;
}

void criterion1() {
  const auto ex = example_exam1a();
  const auto r = convergence_study(ex.problem, ex.exact, {5, 6, 7, 8, 9, 10, 11, 12}, 20);
  double em = 0, el = 0;
  for (const auto& row : r.rows) {
    em = std::max(em, row.err.e_max);
    el = std::max(el, row.err.e_l2);
  }
  report(1, em <= 1e-11 && el <= 1e-11,
         fmt("exam1a n=5..12: max e_M %.2e, max e_L2 %.2e (bound 1e-11)", em, el));
}

void criterion2() {
  const auto e1 = example_exam1b();
  std::vector<int> n1;
  for (int n = 4; n <= 20; ++n) n1.push_back(n);
  const auto r1 = convergence_study(e1.problem, e1.exact, n1, 28);
  // exam2 is radial and even: odd n add no new radial modes, so the sweep uses even n
  const auto e2 = example_exam2();
  std::vector<int> n2;
  for (int n = 4; n <= 40; n += 2) n2.push_back(n);
  const auto r2 = convergence_study(e2.problem, e2.exact, n2, 48);
  const bool ok1 = r1.strictly_decreasing && r1.fitted_rate <= -0.3;
  const bool ok2 = r2.strictly_decreasing && r2.fitted_rate <= -0.3;
  report(2, ok1 && ok2,
         fmt("exam1b slope %.3f over %g rows", r1.fitted_rate, r1.pre_floor) +
             (r1.strictly_decreasing ? " decreasing" : " NOT decreasing") +
             fmt("; exam2 slope %.3f over %g rows", r2.fitted_rate, r2.pre_floor) +
             (r2.strictly_decreasing ? " decreasing" : " NOT decreasing") + " (bound -0.3)");
}

// The p = 2 proxy named by the excluded criterion: geometric decay of
// f - S^{-s}_n f for the exam1b function, s = 1..3, n in [4, 24].
bool sobolev_rate_proxy(std::string& detail) {
  const auto u = example_exam1b().exact;
  const PointFn zero = [](std::span<const double>) { return 0.0; };
  const auto grid = build_grid(3, 26);
  std::vector<double> exact(grid.points.size());
  for (std::size_t k = 0; k < exact.size(); ++k) exact[k] = u({grid.points[k].data(), 3});
  bool ok = true;
  for (int s = 1; s <= 3; ++s) {
    SobolevCallables f{{u}};
    for (int k = 1; k <= s / 2; ++k) f.laplacians.push_back(zero);
    double prev = 0, first = 0;
    for (int n = 4; n <= 24; n += 4) {
      const auto c = project_sobolev(f, SobolevParams::with_default(s, 3), n, 3, grid);
      auto v = eval_partial_sum_on(c, n, grid.points);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= exact[k];
      const double e = error_metrics(grid, v).e_l2;
      if (n == 4) first = e;
      if (n > 4 && prev > 1e-11 && !(e <= 0.5 * prev)) ok = false;
      prev = e;
    }
    detail += fmt(" s=%g: %.1e -> %.1e;", s, first, prev);
  }
  return ok;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();

  CheckOptions o;  // d in {2,3}, s <= 4, n <= 10
  report(3, all_pass(norm_suite(o)), summarize(norm_suite(o)));
  const auto ids = identity_suite(o);
  report(4, all_pass(ids), summarize(ids));
  CheckOptions q = o;
  q.nmax = 12;
  const auto quad = quadrature_suite(q, 64);
  report(5, all_pass(quad), summarize(quad));
  const auto rep = reproduction_suite(o);
  report(6, all_pass(rep), summarize(rep));

  std::string detail;
  const bool proxy = sobolev_rate_proxy(detail);
  std::printf(
      "criterion 7: EXCLUDED  L^p (p != 2) rate constants and K-functional equivalences are not "
      "measured; p=2 proxy (S^{-s}_n on the exam1b function, n=4..24) %s:%s\n",
      proxy ? "PASS" : "FAIL", detail.c_str());
  if (!proxy) ++failures;

  std::printf("total %.1f s, %d failing line(s)\n",
              std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), failures);
  return failures == 0 ? 0 : 1;
}
