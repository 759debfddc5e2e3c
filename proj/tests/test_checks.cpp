#include <doctest.h>

#include "ballspec/checks.hpp"

using namespace ballspec;

namespace {
void require_all(const std::vector<CheckResult>& rs) {
  CHECK_FALSE(rs.empty());
  for (const auto& r : rs) {
    CHECK_MESSAGE(r.pass(), r.suite << "/" << r.name << " worst " << r.worst << " tol " << r.tolerance
                                    << " cases " << r.cases);
  }
}
}  // namespace

TEST_CASE("identity suite") { require_all(identity_suite({})); }
TEST_CASE("norm suite") { require_all(norm_suite({})); }
TEST_CASE("quadrature suite") {
  CheckOptions o;
  o.nmax = 12;
  require_all(quadrature_suite(o));
}
TEST_CASE("reproduction suite") { require_all(reproduction_suite({})); }

TEST_CASE("a failing residual is reported as a failure") {
  CheckResult r{"x", "y", 3, 1e-6, 1e-8};
  CHECK_FALSE(r.pass());
  CHECK_FALSE(all_pass({r}));
  r.cases = 0;
  r.worst = 0.0;
  CHECK_FALSE(r.pass());
}
