#include "ballspec/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <cstdio>
#include <random>

#include "ballspec/ballbasis.hpp"
#include "ballspec/jacobi.hpp"
#include "ballspec/parallel.hpp"
#include "ballspec/sobolevbasis.hpp"
#include "ballspec/transforms.hpp"

namespace ballspec {

namespace {

class Recorder {
 public:
  Recorder(std::string suite, std::string name, double tol) {
    r_.suite = std::move(suite);
    r_.name = std::move(name);
    r_.tolerance = tol;
  }
  void add(double residual) {
    ++r_.cases;
    // NaN must fail
    if (!(residual <= r_.worst)) r_.worst = std::isnan(residual) ? INFINITY : residual;
  }
  CheckResult done() const { return r_; }

 private:
  CheckResult r_;
};

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

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// Runs the named checks concurrently; results keep the listed order.
std::vector<CheckResult> run_all(const std::vector<std::function<CheckResult()>>& jobs) {
  std::vector<CheckResult> out(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) { out[i] = jobs[i](); });
  return out;
}

}  // namespace

bool all_pass(const std::vector<CheckResult>& r) {
  return std::all_of(r.begin(), r.end(), [](const CheckResult& c) { return c.pass(); });
}

std::vector<CheckResult> identity_suite(const CheckOptions& o) {
  const std::string S = "identity";
  std::vector<std::function<CheckResult()>> jobs;

  jobs.push_back([&] {
    Recorder r(S, "PN2P", 1e-10);
    for (int d : o.dims)
      for (int s = 1; s <= o.smax; ++s)
        for (int n = 2 * s; n <= std::max(o.nmax, 12); ++n)
          for (int j = s; 2 * j <= n; ++j) r.add(check_PN2P(s, {n, j, 1}, d));
    return r.done();
  });
  jobs.push_back([&] {
    // remainder degree within j0 - k - 1 (zero when j0 <= k); 0 = ok
    Recorder r(S, "LaplaceP", 0.0);
    for (int d : o.dims)
      for (int s = 1; s <= o.smax; ++s)
        for (int k = 1; k <= s; ++k)
          for (int n = 0; n <= o.nmax; ++n)
            for (int j = 0; 2 * j <= n; ++j) r.add(check_LaplaceP(s, k, {n, j, 1}, d).ok ? 0.0 : 1.0);
    return r.done();
  });
  jobs.push_back([&] {
    Recorder r(S, "DeltaY", 1e-12);
    for (int d : o.dims)
      for (int n = 0; n <= std::min(o.nmax, 8); ++n)
        for (int j = 0; j <= o.smax; ++j) {
          const HarmonicIndex h{d, n, 1};
          BallPoly f = BallPoly::term(h, radial::one_minus_u_pow(j));
          for (int k = 0; k <= o.smax; ++k) {
            r.add(rel(deltaY_trace(d, n, j, k), radial::eval(f.radial(h), 1.0)));
            f = laplacian(f);
          }
        }
    return r.done();
  });
  jobs.push_back([&] {
    Recorder r(S, "lift Y^{n,j}", 1e-12);
    for (int d : o.dims)
      for (int n = 0; n <= std::min(o.nmax, 8); ++n)
        for (int j = 0; j <= 6; ++j) {
          const HarmonicIndex h{d, n, 1};
          const auto y = lift_eval(d, n, j, 1);
          r.add((laplacian(y) - lift_eval(d, n, j - 1, 1)).max_abs_coeff());
          BallPoly dk = y;
          for (int k = 0; k <= j + 1; ++k) {
            r.add(std::abs(radial::eval(dk.radial(h), 1.0) - (k == j ? 1.0 : 0.0)));
            dk = laplacian(dk);
          }
        }
    return r.done();
  });
  jobs.push_back([&] {
    Recorder r(S, "Q traces (item 1)", 1e-8);
    for (int d : o.dims)
      for (int s = 1; s <= o.smax; ++s) {
        const auto p = SobolevParams::with_default(s, d);
        for (int n = 0; n <= o.nmax; ++n)
          for (int j = 0; 2 * j <= n; ++j) {
            BallPoly q = q_basis(p, {n, j, 1}, d);
            const HarmonicIndex h{d, n - 2 * j, 1};
            const double scale = std::max(1.0, q.max_abs_coeff());
            for (int k = 0; k < p.num_traces(); ++k) {
              r.add(std::abs(radial::eval(q.radial(h), 1.0) - (k == j ? 1.0 : 0.0)) / scale);
              q = laplacian(q);
            }
          }
      }
    return r.done();
  });
  jobs.push_back([&] {
    Recorder r(S, "Q Laplacian (items 2-3)", 1e-10);
    for (int d : o.dims)
      for (int s = 1; s <= o.smax; ++s) {
        const auto p = SobolevParams::with_default(s, d);
        for (int n = 0; n <= o.nmax; ++n)
          for (int j = 0; 2 * j <= n; ++j) r.add(check_defQ_laplacian(p, {n, j, 1}, d));
      }
    return r.done();
  });
  jobs.push_back([&] {
    Recorder r(S, "DeltBndproj", 1e-8);
    std::mt19937 rng(o.seed);
    for (int d : o.dims) {
      const auto f = random_poly(d, d == 2 ? 12 : 8, rng);
      for (int s = 1; s <= o.smax; ++s) {
        const auto p = SobolevParams::with_default(s, d);
        for (int n : {2, 4, 6, 7})
          for (int k = 0; k < p.num_traces(); ++k) r.add(check_boundary_projection(p, n, k, f));
      }
    }
    return r.done();
  });
  jobs.push_back([&] {
    Recorder r(S, "proj-f=0g", 1e-8);
    std::mt19937 rng(o.seed + 1);
    for (int d : o.dims) {
      const auto g = random_poly(d, 4, rng);
      for (int s = 1; s <= std::min(o.smax, 3); ++s)
        for (int n = 0; n <= o.nmax; ++n) r.add(check_factorization(s, n, g));
    }
    return r.done();
  });
  jobs.push_back([&] {
    Recorder r(S, "diff-Sn-mu", 1e-8);
    std::mt19937 rng(o.seed + 2);
    for (int d : o.dims) {
      const auto f = random_poly(d, d == 2 ? 8 : 7, rng);
      for (double mu : {0.0, 1.0})
        for (int n : {4, 5, 6})
          for (int i = 1; i <= d; ++i) r.add(check_commutation_mu(f, mu, n, i));
    }
    return r.done();
  });
  jobs.push_back([&] {
    Recorder r(S, "main-lemma", 1e-8);
    std::mt19937 rng(o.seed + 3);
    for (int d : o.dims) {
      const auto f = random_poly(d, d == 2 ? 9 : 7, rng);
      for (int n : {4, 6}) r.add(check_commutation_sobolev(f, SobolevParams::with_default(1, d), n).gradient);
    }
    return r.done();
  });
  jobs.push_back([&] {
    Recorder r(S, "DeltaS", 1e-8);
    std::mt19937 rng(o.seed + 4);
    for (int d : o.dims) {
      const auto f = random_poly(d, d == 2 ? 9 : 7, rng);
      for (int s = 2; s <= o.smax; ++s) {
        r.add(check_commutation_sobolev(f, SobolevParams::with_default(s, d), std::max(s, 6)).laplacian);
      }
      r.add(check_commutation_sobolev(f, SobolevParams{3, {1.5, 0.7}}, 6).laplacian);
    }
    return r.done();
  });
  jobs.push_back([&] {
    // central difference, h = 1e-5
    Recorder r(S, "DiffP", 1e-7);
    const double h = 1e-5;
    for (double alpha : {-3.0, -2.0, -1.0, 0.0, 1.5})
      for (double beta : {0.0, 0.5, 2.0})
        for (int j = 0; j <= 8; ++j)
          for (double t : {-0.6, 0.1, 0.7}) {
            const JacobiParams p{alpha, beta};
            const double fd = (gjacobi_eval(p, j, t + h) - gjacobi_eval(p, j, t - h)) / (2 * h);
            r.add(std::abs(gjacobi_derivative(p, j, t) - fd));
          }
    return r.done();
  });
  jobs.push_back([&] {
    Recorder r(S, "JacPN", 1e-11);
    std::mt19937 rng(o.seed + 5);
    std::uniform_real_distribution<double> ut(-1.0, 1.0);
    for (int s = 1; s <= 3; ++s)
      for (double beta : {0.0, 0.5, 1.0, 2.5, 4.0})
        for (int j = s; j <= 12; ++j) {
          const double t = ut(rng);
          const double lhs = gjacobi_eval_explicit({-double(s), beta}, j, t);
          const double rhs = std::pow(0.5 * (t - 1.0), s) * gjacobi_eval({double(s), beta}, j - s, t) /
                             pochhammer(j - s + 1.0, s);
          r.add(std::abs(lhs - rhs));
        }
    return r.done();
  });
  jobs.push_back([&] {
    Recorder r(S, "BndP", 1e-12);
    for (double alpha : {-3.0, -2.0, -1.0, 0.0, 1.0, 2.5})
      for (double beta : {0.0, 0.5, 2.0, 3.5})
        for (int j = 0; j <= 10; ++j) {
          const JacobiParams p{alpha, beta};
          r.add(rel(gjacobi_value_at_one(p, j), gjacobi_eval_explicit(p, j, 1.0)));
        }
    return r.done();
  });
  jobs.push_back([&] {
    Recorder r(S, "DiffV", 1e-12);
    for (int d : o.dims)
      for (double mu : {0.0, 0.5, 2.0, -0.5})
        for (MultiIndex a : {MultiIndex{4, 1, 2}, MultiIndex{2, 3, 1}, MultiIndex{5, 0, 0}})
          for (MultiIndex b : {MultiIndex{1, 0, 0}, MultiIndex{2, 1, 0}, MultiIndex{0, 1, 1},
                               MultiIndex{3, 0, 0}}) {
            if (d == 2) a[2] = b[2] = 0;
            r.add(check_DiffV(mu, a, b, d));
          }
    return r.done();
  });
  return run_all(jobs);
}

std::vector<CheckResult> norm_suite(const CheckOptions& o) {
  const std::string S = "norm";
  std::vector<std::function<CheckResult()>> jobs;
  for (double mu : {0.0, 1.0, 2.0}) {
    jobs.push_back([&o, S, mu] {
      Recorder r(S, "Gram P^{mu}, mu=" + std::to_string(int(mu)), 1e-8);
      for (int d : o.dims) {
        const auto idx = basis_indices_upto(d, o.nmax);
        std::vector<BallPoly> ps;
        for (const auto& i : idx) ps.push_back(ball_basis(mu, i, d));
        for (std::size_t a = 0; a < idx.size(); ++a) {
          const double ha = ball_norm(mu, idx[a].n, idx[a].j, d);
          for (std::size_t b = a; b < idx.size(); ++b) {
            // different harmonics are orthogonal by construction of BallPoly terms
            if (idx[a].harmonic_degree() != idx[b].harmonic_degree() || idx[a].ell != idx[b].ell) continue;
            const double v = inner_L2(ps[a], ps[b], mu);
            const double hb = ball_norm(mu, idx[b].n, idx[b].j, d);
            r.add(a == b ? std::abs(v - ha) / ha : std::abs(v) / std::sqrt(ha * hb));
          }
        }
      }
      return r.done();
    });
  }
  jobs.push_back([&o, S] {
    // <P^{-1,k}_j, P^{-1,k}_j>_{-1} with lambda_0 = d: d m + d for j = 0, 2d(k + d/2 - 1) otherwise
    Recorder r(S, "Gram P^{-1}", 1e-8);
    for (int d : o.dims) {
      const auto p = SobolevParams::with_default(1, d);
      const auto idx = basis_indices_upto(d, o.nmax);
      std::vector<BallPoly> ps;
      for (const auto& i : idx) ps.push_back(ball_basis(-1.0, i, d));
      for (std::size_t a = 0; a < idx.size(); ++a) {
        const int m = idx[a].harmonic_degree();
        const double ha = idx[a].j == 0 ? d * m + p.lambdas[0] : 2.0 * d * (idx[a].n + 0.5 * d - 1.0);
        for (std::size_t b = a; b < idx.size(); ++b) {
          if (m != idx[b].harmonic_degree() || idx[a].ell != idx[b].ell) continue;
          const double v = sobolev_inner(ps[a], ps[b], p);
          r.add(a == b ? std::abs(v - ha) / ha : std::abs(v) / std::sqrt(ha * sobolev_inner(ps[b], ps[b], p)));
        }
      }
    }
    return r.done();
  });
  for (int s = 1; s <= o.smax; ++s) {
    jobs.push_back([&o, S, s] {
      Recorder r(S, "Gram Q^{-s}, s=" + std::to_string(s), 1e-8);
      for (int d : o.dims) {
        const auto p = SobolevParams::with_default(s, d);
        const auto idx = basis_indices_upto(d, o.nmax);
        std::vector<BallPoly> qs;
        for (const auto& i : idx) qs.push_back(q_basis(p, i, d));
        for (std::size_t a = 0; a < idx.size(); ++a) {
          const int m = idx[a].harmonic_degree();
          const double ha = q_norm(p, idx[a].n, idx[a].j, d);
          for (std::size_t b = a; b < idx.size(); ++b) {
            if (m != idx[b].harmonic_degree() || idx[a].ell != idx[b].ell) continue;
            const double v = sobolev_inner(qs[a], qs[b], p);
            r.add(a == b ? std::abs(v - ha) / ha
                         : std::abs(v) / std::sqrt(ha * q_norm(p, idx[b].n, idx[b].j, d)));
          }
        }
      }
      return r.done();
    });
  }
  return run_all(jobs);
}

std::vector<CheckResult> quadrature_suite(const CheckOptions& o, int gj_nmax) {
  const std::string S = "quadrature";
  std::vector<std::function<CheckResult()>> jobs;
  jobs.push_back([&] {
    // moments of (1+t)^k against (1-t)^a (1+t)^b: 2^{a+b+k+1} B(a+1, b+k+1)
    Recorder r(S, "Gauss-Jacobi moments through 2n+1", 1e-12);
    for (int n = 0; n <= gj_nmax; n += (n < 8 ? 1 : 8)) {
      for (auto p : {JacobiParams{0, 0}, JacobiParams{0, 0.5}, JacobiParams{1, 2},
                     JacobiParams{-0.5, 0.5}, JacobiParams{2, 10.5}, JacobiParams{0.5, -0.5}}) {
        const auto rule = gauss_jacobi_rule(n, p);
        for (int k = 0; k <= 2 * n + 1; ++k) {
          long double s = 0;
          for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            s += rule.weights[i] * std::pow(1.0L + rule.nodes[i], k);
          }
          const double ref =
              std::exp((p.alpha + p.beta + k + 1) * std::log(2.0) + std::lgamma(p.alpha + 1) +
                       std::lgamma(p.beta + k + 1) - std::lgamma(p.alpha + p.beta + k + 2));
          r.add(std::abs(double(s) - ref) / ref);
        }
      }
    }
    return r.done();
  });
  jobs.push_back([&] {
    Recorder r(S, "ball grid <1,1> and h^0_{j,n}", 1e-12);
    for (int d : o.dims) {
      for (int n = 0; n <= o.nmax; ++n) {
        const auto q = build_grid(d, n);
        double one = 0.0;
        for (double w : q.weights) one += w;
        r.add(std::abs(one - 1.0));
        const std::size_t na = q.sphere.points.size();
        for (const auto& idx : basis_indices(d, n)) {
          const HarmonicIndex h{d, idx.harmonic_degree(), idx.ell};
          std::vector<double> y(na);
          for (std::size_t a = 0; a < na; ++a) y[a] = sph_eval(h, q.sphere.points[a]);
          double v = 0.0;
          for (std::size_t i = 0; i < q.rho.size(); ++i) {
            const double rad = std::pow(q.rho[i], h.m) *
                               ball_radial(0.0, idx.n, idx.j, d, q.rho[i] * q.rho[i]);
            for (std::size_t a = 0; a < na; ++a) {
              const double f = rad * y[a];
              v += q.weights[i * na + a] * f * f;
            }
          }
          const double hn = ball_norm(0.0, idx.n, idx.j, d);
          r.add(std::abs(v - hn) / hn);
        }
      }
    }
    return r.done();
  });
  return run_all(jobs);
}

std::vector<CheckResult> reproduction_suite(const CheckOptions& o) {
  const std::string S = "reproduction";
  struct Case {
    std::string name;
    std::function<SpectralCoeffs(const BallPoly&, int)> project;
    bool cutoff;
  };
  std::vector<Case> cases;
  for (double mu : {0.0, 0.5, 1.0, 2.0}) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "S^mu_n, mu=%g", mu);
    cases.push_back({buf, [mu](const BallPoly& f, int n) { return project_classical(f, mu, n); }, false});
  }
  cases.push_back({"S_{n,eta}", [](const BallPoly& f, int n) { return project_classical(f, 0.0, 2 * n); }, true});
  for (int s = 1; s <= o.smax; ++s) {
    cases.push_back({"S^{-s}_n, s=" + std::to_string(s),
                     [s](const BallPoly& f, int n) {
                       return project_sobolev(f, SobolevParams::with_default(s, f.dim()), n);
                     },
                     false});
  }
  std::vector<std::function<CheckResult()>> jobs;
  for (const auto& c : cases) {
    jobs.push_back([&o, S, c] {
      // e_M relative to max |f| on the grid
      Recorder r(S, c.name, 1e-12);
      std::mt19937 rng(o.seed + 17);
      for (int d : o.dims) {
        for (int n : {2, 5, std::min(o.nmax, d == 2 ? 12 : 8)}) {
          const auto f = random_poly(d, n, rng);
          const auto q = build_grid(d, n + 2);
          const auto coeffs = c.project(f, n);
          const auto v = c.cutoff ? eval_partial_sum_on(coeffs, n, q.points, Cutoff(cutoff_eval))
                                  : eval_partial_sum_on(coeffs, n, q.points);
          double em = 0.0, fm = 0.0;
          for (std::size_t k = 0; k < v.size(); ++k) {
            const double fv = f.eval({q.points[k].data(), std::size_t(d)});
            em = std::max(em, std::abs(v[k] - fv));
            fm = std::max(fm, std::abs(fv));
          }
          r.add(em / std::max(1.0, fm));
        }
      }
      return r.done();
    });
  }
  return run_all(jobs);
}

}  // namespace ballspec
