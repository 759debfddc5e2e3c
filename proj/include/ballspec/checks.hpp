#ifndef BALLSPEC_CHECKS_HPP
#define BALLSPEC_CHECKS_HPP

#include <string>
#include <vector>

namespace ballspec {

/// Worst residual of one identity over its instance grid.
struct CheckResult {
  std::string suite;
  std::string name;
  int cases = 0;
  double worst = 0.0;
  double tolerance = 0.0;

  bool pass() const { return cases > 0 && worst <= tolerance; }
};

struct CheckOptions {
  std::vector<int> dims{2, 3};
  int smax = 4;     // Sobolev orders 1..smax
  int nmax = 10;    // largest degree in the instance grids
  unsigned seed = 1;
};

/// Closed-form identities of the bases, lifts and projections.
std::vector<CheckResult> identity_suite(const CheckOptions& o);
/// Gram matrices of P^{mu,n} (mu = 0, 1, 2), P^{-1,n} and Q^{-s,n} against
/// their closed-form norms.
std::vector<CheckResult> norm_suite(const CheckOptions& o);
/// Gauss-Jacobi moments through degree 2n+1 (n <= gj_nmax) and ball-grid
/// norms for n <= o.nmax.
std::vector<CheckResult> quadrature_suite(const CheckOptions& o, int gj_nmax = 64);
/// S^mu_n, S_{n,eta} and S^{-s}_n act as the identity on Pi_n.
std::vector<CheckResult> reproduction_suite(const CheckOptions& o);

bool all_pass(const std::vector<CheckResult>& r);

}  // namespace ballspec

#endif  // BALLSPEC_CHECKS_HPP
