#include "ballspec/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "ballspec/checks.hpp"
#include "ballspec/solvers.hpp"

namespace ballspec::cli {

namespace fs = std::filesystem;

std::string command_name(Command c) {
  switch (c) {
    case Command::check: return "check";
    case Command::project: return "project";
    case Command::solve_helmholtz: return "solve-helmholtz";
    case Command::solve_biharmonic: return "solve-biharmonic";
    case Command::convergence: return "convergence";
  }
  return "?";
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw ConfigError("bad_nlist", "cannot parse n list '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto colon = text.find(':', dots);
    const int lo = to_int(text.substr(0, dots));
    const int hi = to_int(text.substr(dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2));
    const int step = colon == std::string::npos ? 1 : to_int(text.substr(colon + 1));
    if (step <= 0 || hi < lo) throw ConfigError("bad_nlist", "empty or descending range '" + text + "'");
    for (int n = lo; n <= hi; n += step) out.push_back(n);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  }
  if (out.empty()) throw ConfigError("bad_nlist", "empty n list");
  return out;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Spectral approximation and spectral-Galerkin solvers on the unit ball"};
  app.set_config("--config", "", "TOML file mirroring the flags; [command] section selects the command");
  app.require_subcommand(1);
  app.fallthrough();

  std::string nlist;
  std::optional<int> d, s;
  app.add_option("--d", d, "dimension (2 or 3)");
  app.add_option("--n", cfg.n, "polynomial degree");
  app.add_option("--nlist", nlist, "degrees for convergence: 3..10, 3..10:2 or 4,6,8");
  app.add_option("--grid-n", cfg.grid_n, "quadrature / measuring grid parameter");
  app.add_option("--example", cfg.example, "exam1a | exam1b | exam2 | manufactured");
  app.add_option("--problem", cfg.problem, "convergence of a manufactured solution: helmholtz | biharmonic")
      ->check(CLI::IsMember({"helmholtz", "biharmonic"}));
  app.add_option("--degree", cfg.degree, "degree of the manufactured solution");
  app.add_option("--seed", cfg.seed, "seed of the manufactured solution and check instances");
  app.add_option("--lambda", cfg.lambda, "Helmholtz lambda (manufactured only)");
  app.add_option("--eta", cfg.eta, "Robin eta (manufactured only)");
  app.add_option("--lambda1", cfg.lambda1, "biharmonic lambda1 (manufactured only)");
  app.add_option("--lambda0", cfg.lambda0, "biharmonic lambda0 (manufactured only)");
  app.add_option("--family", cfg.family, "projection family: classical | sobolev")
      ->check(CLI::IsMember({"classical", "sobolev"}));
  app.add_option("--mu", cfg.mu, "classical weight exponent (> -1)");
  app.add_option("--s", s, "Sobolev order (project) or largest order checked (check)");
  app.add_option("--lambdas", cfg.lambdas, "Sobolev lambda_k, k = 0..ceil(s/2)-1");
  app.add_flag("--cutoff", cfg.cutoff, "use the smooth cut-off partial sum");
  app.add_option("--nmax", cfg.nmax, "largest degree in the check instance grids");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--prefix", cfg.prefix, "output file stem (default: command name)");
  app.add_flag("--timing", cfg.timing, "record wall-clock times (otherwise 0)");
  app.add_flag("--field", cfg.field, "solve: also write the solution sampled on the measuring grid");

  const std::pair<const char*, Command> cmds[] = {
      {"check", Command::check},
      {"project", Command::project},
      {"solve-helmholtz", Command::solve_helmholtz},
      {"solve-biharmonic", Command::solve_biharmonic},
      {"convergence", Command::convergence},
  };
  const char* help[] = {"run the identity, norm, quadrature and reproduction suites",
                        "project an example function and report the approximation error",
                        "solve the Helmholtz problem with Robin data",
                        "solve the clamped biharmonic problem",
                        "errors against n with a fitted exponential rate and an SVG plot"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(cmds); ++i) {
    subs.push_back(app.add_subcommand(cmds[i].first, help[i])->configurable());
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError("invalid_arguments", e.what());
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) cfg.command = cmds[i].second;
  }
  cfg.d = d.value_or(0);
  if (cfg.command == Command::check) {
    cfg.s_max = s.value_or(4);
  } else {
    cfg.s = s.value_or(1);
  }
  if (!nlist.empty()) cfg.n_list = parse_n_list(nlist);
  return cfg;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct ResultRow {
  int d = 2;
  int n = 0;
  double e_m = 0.0;
  double e_l2 = 0.0;
  double fitted_rate = std::numeric_limits<double>::quiet_NaN();
  double wall_ms = 0.0;
};

void write_results(const fs::path& path, const std::string& command, const std::vector<ResultRow>& rows) {
  std::ofstream os(path);
  if (!os) throw ConfigError("io", "cannot write " + path.string());
  os << "command,d,n,e_M,e_L2,fitted_rate,wall_ms\n";
  for (const auto& r : rows) {
    os << command << ',' << r.d << ',' << r.n << ',' << fmt(r.e_m) << ',' << fmt(r.e_l2) << ','
       << fmt(r.fitted_rate) << ',' << fmt(r.wall_ms) << '\n';
  }
}

// Function together with Delta f and Delta^2 f.
struct Target {
  int d = 2;
  std::vector<PointFn> laplacians;
};

PointFn from_poly(const BallPoly& p) {
  return [p](std::span<const double> x) { return p.eval(x); };
}

bool is_builtin(const std::string& e) { return e == "exam1a" || e == "exam1b" || e == "exam2"; }

void require_example(const RunConfig& c, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (c.example == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw ConfigError("unknown_example", "example '" + c.example + "' not valid here; expected one of " + list);
}

int resolve_d(const RunConfig& c, int example_d) {
  if (example_d != 0 && c.d != 0 && c.d != example_d) {
    throw ConfigError("dimension_mismatch", "example " + c.example + " is posed in d=" +
                                                std::to_string(example_d));
  }
  const int d = example_d != 0 ? example_d : (c.d != 0 ? c.d : 2);
  if (d != 2 && d != 3) throw ConfigError("invalid_dimension", "d must be 2 or 3");
  return d;
}

void reject_overrides(const RunConfig& c) {
  if (is_builtin(c.example) && (c.lambda || c.eta || c.lambda1 || c.lambda0)) {
    throw ConfigError("unsupported_override",
                      "built-in examples fix their parameters; use --example manufactured");
  }
}

Target project_target(const RunConfig& c) {
  require_example(c, {"exam1a", "exam1b", "exam2", "manufactured"});
  Target t;
  if (c.example == "exam1a") {
    t.d = resolve_d(c, 2);
    const auto e = example_exam1a();
    // Delta [x1 (3 - |x|^2)] = -8 x1 in the plane
    t.laplacians = {e.exact, [](std::span<const double> x) { return -8.0 * x[0]; },
                    [](std::span<const double>) { return 0.0; }};
  } else if (c.example == "exam1b") {
    t.d = resolve_d(c, 3);
    const PointFn zero = [](std::span<const double>) { return 0.0; };
    t.laplacians = {example_exam1b().exact, zero, zero};
  } else if (c.example == "exam2") {
    t.d = resolve_d(c, 2);
    // u = q(w), w = |x|^2, Delta = 4 (w D^2 + D) on radial functions in the plane
    auto radial_lap = [](int times) {
      return PointFn([times](std::span<const double> x) {
        const double w = x[0] * x[0] + x[1] * x[1];
        const double a = 2.0 * M_PI;
        const double c = std::cos(a * w), s = std::sin(a * w);
        const double q[5] = {c - 1.0, -a * s, -a * a * c, a * a * a * s, a * a * a * a * c};
        if (times == 0) return q[0];
        const double p[3] = {4.0 * (w * q[2] + q[1]), 4.0 * (w * q[3] + 2.0 * q[2]),
                             4.0 * (w * q[4] + 3.0 * q[3])};
        if (times == 1) return p[0];
        return 4.0 * (w * p[2] + 2.0 * p[1]);
      });
    };
    t.laplacians = {radial_lap(0), radial_lap(1), radial_lap(2)};
  } else {
    t.d = resolve_d(c, 0);
    const auto u = manufactured_helmholtz(t.d, 1.0, 0.0, c.degree, c.seed).exact;
    t.laplacians = {from_poly(u), from_poly(laplacian(u)), from_poly(laplacian_pow(u, 2))};
  }
  return t;
}

Example<HelmholtzProblem> helmholtz_example(const RunConfig& c, int& d) {
  require_example(c, {"exam1a", "exam1b", "manufactured"});
  reject_overrides(c);
  if (c.example == "exam1a") {
    d = resolve_d(c, 2);
    return example_exam1a();
  }
  if (c.example == "exam1b") {
    d = resolve_d(c, 3);
    return example_exam1b();
  }
  d = resolve_d(c, 0);
  const auto m = manufactured_helmholtz(d, c.lambda.value_or(1.0), c.eta.value_or(1.0), c.degree, c.seed);
  return {m.problem, from_poly(m.exact)};
}

Example<BiharmonicProblem> biharmonic_example(const RunConfig& c, int& d) {
  require_example(c, {"exam2", "manufactured"});
  reject_overrides(c);
  if (c.example == "exam2") {
    d = resolve_d(c, 2);
    return example_exam2();
  }
  d = resolve_d(c, 0);
  if (c.degree < 4) throw ConfigError("invalid_degree", "manufactured biharmonic needs --degree >= 4");
  const auto m = manufactured_biharmonic(d, c.lambda1.value_or(1.0), c.lambda0.value_or(1.0), c.degree, c.seed);
  return {m.problem, from_poly(m.exact)};
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct Paths {
  fs::path dir;
  std::string stem;
  fs::path operator()(const std::string& suffix) const { return dir / (stem + suffix); }
};

Paths output_paths(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  if (ec) throw ConfigError("io", "cannot create " + c.out_dir + ": " + ec.message());
  return {fs::path(c.out_dir), c.prefix.empty() ? command_name(c.command) : c.prefix};
}

void write_coeffs(const fs::path& p, const SpectralCoeffs& c) {
  std::ofstream os(p);
  if (!os) throw ConfigError("io", "cannot write " + p.string());
  write_coeffs_csv(os, c);
}

int run_check(const RunConfig& c, const Paths& out, std::ostream& log, std::ostream& err) {
  CheckOptions o;
  if (c.d != 0) {
    if (c.d != 2 && c.d != 3) throw ConfigError("invalid_dimension", "d must be 2 or 3");
    o.dims = {c.d};
  }
  if (c.s_max < 1 || c.s_max > 4) throw ConfigError("invalid_s", "--s must be in 1..4 for check");
  if (c.nmax < 0 || c.nmax > 16) throw ConfigError("invalid_nmax", "--nmax must be in 0..16");
  o.smax = c.s_max;
  o.nmax = c.nmax;
  o.seed = c.seed;
  std::vector<CheckResult> all;
  for (auto suite : {identity_suite, norm_suite, reproduction_suite}) {
    const auto r = suite(o);
    all.insert(all.end(), r.begin(), r.end());
  }
  const auto q = quadrature_suite(o);
  all.insert(all.end(), q.begin(), q.end());

  std::ofstream os(out("_checks.csv"));
  if (!os) throw ConfigError("io", "cannot write checks CSV");
  os << "suite,name,cases,worst,tolerance,pass\n";
  int failed = 0;
  for (const auto& r : all) {
    os << r.suite << ",\"" << r.name << "\"," << r.cases << ',' << fmt(r.worst) << ',' << fmt(r.tolerance)
       << ',' << (r.pass() ? 1 : 0) << '\n';
    log << (r.pass() ? "PASS " : "FAIL ") << r.suite << '/' << r.name << " worst=" << r.worst
        << " tol=" << r.tolerance << " cases=" << r.cases << '\n';
    if (!r.pass()) {
      ++failed;
      err << "error code=check_failed suite=" << r.suite << " name=\"" << r.name << "\" worst=" << fmt(r.worst)
          << " tolerance=" << fmt(r.tolerance) << '\n';
    }
  }
  log << all.size() - failed << '/' << all.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

int run_project(const RunConfig& c, const Paths& out, std::ostream& log) {
  const auto t = project_target(c);
  if (c.n < 0) throw ConfigError("invalid_n", "--n must be >= 0");
  const int grid_n = c.grid_n.value_or(c.n + 8);
  if (grid_n < c.n) throw ConfigError("grid_too_coarse", "--grid-n must be >= --n");
  const auto grid = build_grid(t.d, grid_n);
  const auto t0 = std::chrono::steady_clock::now();
  SpectralCoeffs coeffs;
  if (c.family == "classical") {
    if (!(c.mu > -1.0)) throw ConfigError("invalid_mu", "--mu must be > -1");
    coeffs = project_classical(t.laplacians[0], c.mu, c.cutoff ? 2 * c.n : c.n, t.d, grid);
  } else {
    if (c.s < 1 || c.s > 4) throw ConfigError("invalid_s", "--s must be in 1..4");
    if (c.cutoff) throw ConfigError("unsupported_cutoff", "--cutoff applies to the classical family");
    SobolevParams p = SobolevParams::with_default(c.s, t.d);
    if (!c.lambdas.empty()) p.lambdas = c.lambdas;
    try {
      p.validate();
    } catch (const std::exception& e) {
      throw ConfigError("invalid_lambdas", e.what());
    }
    coeffs = project_sobolev(SobolevCallables{t.laplacians}, p, c.n, t.d, grid);
  }
  auto v = c.cutoff ? eval_partial_sum_on(coeffs, c.n, grid.points, Cutoff(cutoff_eval))
                    : eval_partial_sum_on(coeffs, c.n, grid.points);
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] -= t.laplacians[0]({grid.points[k].data(), static_cast<std::size_t>(t.d)});
  }
  const auto e = error_metrics(grid, v);
  ResultRow row{t.d, c.n, e.e_max, e.e_l2};
  if (c.timing) row.wall_ms = elapsed_ms(t0);
  write_coeffs(out("_coeffs.csv"), coeffs);
  write_results(out(".csv"), "project", {row});
  log << "project " << c.example << " family=" << c.family << " d=" << t.d << " n=" << c.n
      << " e_M=" << e.e_max << " e_L2=" << e.e_l2 << '\n';
  return 0;
}

template <class Problem>
int run_solve(const RunConfig& c, const Paths& out, std::ostream& log, const Example<Problem>& ex, int d,
              const std::string& cmd) {
  const int grid_n = c.grid_n.value_or(c.n + 8);
  if (grid_n < c.n) throw ConfigError("grid_too_coarse", "--grid-n must be >= --n");
  const auto t0 = std::chrono::steady_clock::now();
  GalerkinSolution sol;
  if constexpr (std::is_same_v<Problem, HelmholtzProblem>) {
    sol = solve_helmholtz(ex.problem, c.n, grid_n);
  } else {
    sol = solve_biharmonic(ex.problem, c.n, grid_n);
  }
  const double ms = elapsed_ms(t0);
  const auto grid = build_grid(d, grid_n);
  const auto un = sol.eval_on_grid(grid);
  std::vector<double> diff(un.size()), exact(un.size());
  for (std::size_t k = 0; k < un.size(); ++k) {
    exact[k] = ex.exact({grid.points[k].data(), static_cast<std::size_t>(d)});
    diff[k] = un[k] - exact[k];
  }
  const auto e = error_metrics(grid, diff);
  ResultRow row{d, c.n, e.e_max, e.e_l2};
  if (c.timing) row.wall_ms = ms;
  write_results(out(".csv"), cmd, {row});
  write_coeffs(out("_coeffs.csv"), sol.coeffs);
  if (c.field) {
    std::ofstream os(out("_field.csv"));
    for (int i = 0; i < d; ++i) os << 'x' << i + 1 << ',';
    os << "u_n,exact\n";
    for (std::size_t k = 0; k < un.size(); ++k) {
      for (int i = 0; i < d; ++i) os << fmt(grid.points[k][i]) << ',';
      os << fmt(un[k]) << ',' << fmt(exact[k]) << '\n';
    }
  }
  // profile along the x1 axis
  Series s_un{"u_n", {}, {}, false}, s_ex{"exact", {}, {}, true};
  for (int i = 0; i <= 200; ++i) {
    std::array<double, 3> x{-1.0 + i / 100.0, 0.0, 0.0};
    const std::span<const double> xs(x.data(), static_cast<std::size_t>(d));
    s_un.x.push_back(x[0]);
    s_un.y.push_back(sol.eval(xs));
    s_ex.x.push_back(x[0]);
    s_ex.y.push_back(ex.exact(xs));
  }
  std::ofstream svg(out(".svg"));
  write_svg_chart(svg, cmd + " " + c.example + ", n = " + std::to_string(c.n), "x1", "u", {s_un, s_ex}, false);
  log << cmd << ' ' << c.example << " d=" << d << " n=" << c.n << " e_M=" << e.e_max << " e_L2=" << e.e_l2
      << '\n';
  return 0;
}

template <class Problem>
int run_convergence(const RunConfig& c, const Paths& out, std::ostream& log, const Example<Problem>& ex, int d) {
  if (c.n_list.empty()) throw ConfigError("missing_nlist", "convergence needs --nlist");
  const int nmax = *std::max_element(c.n_list.begin(), c.n_list.end());
  const int grid_n = c.grid_n.value_or(nmax + 8);
  if (grid_n < nmax) throw ConfigError("grid_too_coarse", "--grid-n must be >= max(nlist)");
  ConvergenceResult res;
  try {
    res = convergence_study(ex.problem, ex.exact, c.n_list, grid_n);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("invalid_nlist", e.what());
  }
  std::vector<ResultRow> rows;
  Series l2{"e_L2", {}, {}, false}, em{"e_M", {}, {}, true};
  for (const auto& r : res.rows) {
    ResultRow row{d, r.n, r.err.e_max, r.err.e_l2, res.fitted_rate, c.timing ? r.wall_ms : 0.0};
    if (res.pre_floor < 2) row.fitted_rate = std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
    l2.x.push_back(r.n);
    l2.y.push_back(r.err.e_l2);
    em.x.push_back(r.n);
    em.y.push_back(r.err.e_max);
    log << "n=" << r.n << " e_M=" << r.err.e_max << " e_L2=" << r.err.e_l2 << '\n';
  }
  write_results(out(".csv"), "convergence", rows);
  std::ofstream svg(out(".svg"));
  write_svg_chart(svg, "convergence " + c.example + ", d = " + std::to_string(d), "n", "log10 error",
                  {l2, em}, true);
  log << "fitted rate " << res.fitted_rate << " over " << res.pre_floor << " rows"
      << (res.strictly_decreasing ? ", strictly decreasing" : "") << '\n';
  return 0;
}

}  // namespace

int run(const RunConfig& c, std::ostream& log, std::ostream& err) {
  const std::string cmd = command_name(c.command);
  try {
    if (c.command != Command::check && c.example.empty()) {
      throw ConfigError("missing_example", cmd + " needs --example");
    }
    if (c.command != Command::check && !is_builtin(c.example) && c.example != "manufactured") {
      throw ConfigError("unknown_example", "unknown example '" + c.example +
                                               "'; expected exam1a, exam1b, exam2 or manufactured");
    }
    if (c.command == Command::check) return run_check(c, output_paths(c), log, err);
    if (c.command == Command::project) return run_project(c, output_paths(c), log);
    if (c.command == Command::solve_helmholtz || c.command == Command::solve_biharmonic) {
      if (c.n < 1) throw ConfigError("invalid_n", "--n must be >= 1");
    }
    int d = 2;
    const bool helm = c.command == Command::solve_helmholtz ||
                      (c.command == Command::convergence && c.example != "exam2" &&
                       c.problem != "biharmonic");
    if (helm) {
      const auto ex = helmholtz_example(c, d);
      const Paths out = output_paths(c);
      return c.command == Command::convergence ? run_convergence(c, out, log, ex, d)
                                               : run_solve(c, out, log, ex, d, cmd);
    }
    const auto ex = biharmonic_example(c, d);
    if (c.command == Command::solve_biharmonic && c.n < 4) throw ConfigError("invalid_n", "--n must be >= 4");
    const Paths out = output_paths(c);
    return c.command == Command::convergence ? run_convergence(c, out, log, ex, d)
                                             : run_solve(c, out, log, ex, d, cmd);
  } catch (const ConfigError& e) {
    err << "error code=" << e.code << " command=" << cmd << " message=\"" << e.what() << "\"\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error code=runtime command=" << cmd << " message=\"" << e.what() << "\"\n";
    return 1;
  }
}

void write_svg_chart(std::ostream& os, const std::string& title, const std::string& xlabel,
                     const std::string& ylabel, const std::vector<Series>& series, bool log_y) {
  const double W = 640, H = 420, L = 70, R = 130, T = 40, B = 50;
  auto ty = [&](double y) { return log_y ? std::log10(std::max(y, 1e-17)) : y; };
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 1, x1 += 1;
  if (y1 == y0) y0 -= 1, y1 += 1;
  // tick step: whole decades on a log axis, 1-2-5 steps otherwise
  double ystep = 1.0;
  if (log_y) {
    y0 = std::floor(y0);
    y1 = std::ceil(y1);
    ystep = std::max(1.0, std::ceil((y1 - y0) / 12));
  } else {
    const double raw = (y1 - y0) / 5;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    ystep = raw / mag <= 1 ? mag : raw / mag <= 2 ? 2 * mag : raw / mag <= 5 ? 5 * mag : 10 * mag;
    y0 = std::floor(y0 / ystep) * ystep;
    y1 = std::ceil(y1 / ystep) * ystep;
  }
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  auto num = [](double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", v);
    return std::string(b);
  };
  auto label = [](double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%g", v);
    return std::string(b);
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  os << "<path d=\"M" << L << ' ' << T << " V" << H - B << " H" << W - R << "\" stroke=\"black\" fill=\"none\"/>\n";

  for (double y = y0; y <= y1 + 1e-9 * ystep; y += ystep) {
    if (std::abs(y) < 1e-9 * ystep) y = 0.0;
    os << "<line x1=\"" << L - 4 << "\" x2=\"" << W - R << "\" y1=\"" << num(py(y)) << "\" y2=\"" << num(py(y))
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << num(py(y) + 4) << "\" text-anchor=\"end\">" << label(y)
       << "</text>\n";
  }
  const double span = x1 - x0;
  const double xstep = span <= 12 ? (span <= 3 ? span / 4 : 1) : std::ceil(span / 10);
  for (double x = x0; x <= x1 + 1e-9; x += xstep) {
    os << "<line x1=\"" << num(px(x)) << "\" x2=\"" << num(px(x)) << "\" y1=\"" << H - B << "\" y2=\""
       << H - B + 4 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(px(x)) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << label(x)
       << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">" << xlabel
     << "</text>\n";
  os << "<text transform=\"translate(18," << (T + H - B) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
     << ylabel << "</text>\n";

  const char* colors[] = {"#1f4e9c", "#c0392b", "#2e7d32", "#6a1b9a"};
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* col = colors[k % 4];
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.8\""
       << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      os << num(px(s.x[i])) << ',' << num(py(ty(s.y[i]))) << ' ';
    }
    os << "\"/>\n";
    if (s.x.size() <= 40) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.y[i])) continue;
        os << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(ty(s.y[i]))) << "\" r=\"2.5\" fill=\""
           << col << "\"/>\n";
      }
    }
    const double ly = T + 10 + 18 * k;
    os << "<line x1=\"" << W - R + 10 << "\" x2=\"" << W - R + 40 << "\" y1=\"" << ly << "\" y2=\"" << ly
       << "\" stroke=\"" << col << "\" stroke-width=\"1.8\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
       << "/>\n";
    os << "<text x=\"" << W - R + 46 << "\" y=\"" << ly + 4 << "\">" << s.name << "</text>\n";
  }
  os << "</svg>\n";
}

int main_entry(int argc, const char* const* argv) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_args(argc, argv, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "error code=" << e.code << " message=\"" << e.what() << "\"\n";
    return 2;
  }
  if (!cfg) return 0;
  return run(*cfg, std::cout, std::cerr);
}

}  // namespace ballspec::cli
