#ifndef BALLSPEC_JACOBI_HPP
#define BALLSPEC_JACOBI_HPP

#include <memory>
#include <stdexcept>
#include <vector>

namespace ballspec {

/// Parameters of the Jacobi weight (1-t)^alpha (1+t)^beta.  Negative values are
/// allowed for the generalized family.
struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rising factorial (a)_k = a (a+1) ... (a+k-1).
double pochhammer(double a, int k);

/// Classical Jacobi polynomial P_j^{(alpha,beta)}(t).
///
/// Uses the three-term recurrence when alpha, beta > -1 and the explicit sum in
/// powers of (t-1)/2 otherwise.
double jacobi_eval(const JacobiParams& p, int j, double t);

/// P_j^{(alpha,beta)}(t) by the explicit finite sum in powers of (t-1)/2 with
/// compensated summation.  Valid for all real parameters; loses accuracy to
/// cancellation for large j away from t = 1.
double jacobi_eval_explicit(const JacobiParams& p, int j, double t);

/// P_j^{(alpha,beta)}(t) by the three-term recurrence.  Requires that no
/// recurrence denominator vanishes (always true for alpha, beta > -1).
double jacobi_eval_recurrence(const JacobiParams& p, int j, double t);

/// Value and t-derivative of P_j^{(alpha,beta)} by recurrence.
void jacobi_eval_with_derivative(const JacobiParams& p, int j, double t,
                                 double& value, double& derivative);

/// Truncation index j0 of the generalized Jacobi polynomial: -j-alpha-beta when
/// that is an integer in {1, ..., j}, else 0.
int gjacobi_j0(const JacobiParams& p, int j);

/// Coefficients a_k, k = 0..j, of the generalized Jacobi polynomial
/// hat P_j^{(alpha,beta)}(t) = sum_k a_k ((t-1)/2)^k.  Entries below j0 are 0.
std::vector<double> gjacobi_coeffs(const JacobiParams& p, int j);

/// Generalized Jacobi polynomial hat P_j^{(alpha,beta)}(t); zero for j < 0.
///
/// Dispatches to a numerically stable route where one exists: the recurrence
/// (scaled by 1/(j+alpha+beta+1)_j) in the classical range, the reduction
/// hat P_j^{(-s,beta)} = ((t-1)/2)^s hat P_{j-s}^{(s,beta)} / (j-s+1)_s for a
/// negative integer alpha = -s with j >= s, and the truncated explicit sum
/// otherwise.
double gjacobi_eval(const JacobiParams& p, int j, double t);

/// The truncated explicit sum alone (no dispatch).
double gjacobi_eval_explicit(const JacobiParams& p, int j, double t);

/// hat P_j^{(alpha,beta)}(1) in closed form.
double gjacobi_value_at_one(const JacobiParams& p, int j);

/// d/dt hat P_j^{(alpha,beta)}(t) = 1/2 hat P_{j-1}^{(alpha+1,beta+1)}(t).
double gjacobi_derivative(const JacobiParams& p, int j, double t);

/// Gauss-Jacobi rule with n+1 nodes (zeros of P_{n+1}^{(alpha,beta)}) and the
/// corresponding Christoffel numbers.  Exact for polynomials of degree 2n+1.
struct GaussJacobiRule {
  int degree_exactness = 1;
  JacobiParams params;
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive
};

GaussJacobiRule gauss_jacobi_rule(int n, const JacobiParams& p);

/// Memoized rule; the returned object is immutable and shared.
std::shared_ptr<const GaussJacobiRule> cached_gauss_jacobi_rule(
    int n, const JacobiParams& p);

/// Integral of (1-t)^alpha (1+t)^beta over [-1, 1].
double jacobi_weight_mass(const JacobiParams& p);

}  // namespace ballspec

#endif  // BALLSPEC_JACOBI_HPP
