#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "dclab/coupling.hpp"

namespace dclab {

/// Power-series solution u(r) = r^s sum_k u_k r^k of (S - E)u = 0 about
/// the singular endpoint r = 0, with indicial exponent s = +/- sqrt(kappa^2
/// - nu^2).  The matrix recurrence [M0 + (s+k)J] u_k = (E - M1) u_{k-1}
/// is solvable for every k >= 1 as long as 2s is not an integer, which
/// holds throughout the coupling windows used here.
class FrobeniusSeries {
 public:
  FrobeniusSeries() = default;
  FrobeniusSeries(const Coupling& c, double E, double s, int n_terms = 64);

  /// Series value r^s * poly(r); reliable for r <= 6 at default length.
  RealSpinorValue eval(double r) const;

  /// poly(r) alone, without the r^s prefactor.
  RealSpinorValue eval_scaled(double r) const;

  double exponent() const { return s_; }
  const RealSpinorValue& leading() const { return u_.front(); }
  const std::vector<RealSpinorValue>& coefficients() const { return u_; }

  /// Pinned normalisation of the indicial null vector ((kappa-s)c, -nu c):
  /// for kappa = +1, c = (1+nu-s)/((1+nu)(1-s)), which reproduces the
  /// conventional leading vectors of the closed-form solutions; for
  /// kappa = -1, c = 1.
  static RealSpinorValue leading_vector(const Coupling& c, double s);

 private:
  double s_ = 0.0;
  std::vector<RealSpinorValue> u_;
};

/// Wronskian det [[f+, g+], [f-, g-]] of two pointwise spinor values.
std::complex<double> wronskian_at(const SpinorValue& f, const SpinorValue& g);
double wronskian_at(const RealSpinorValue& f, const RealSpinorValue& g);

/// Pointwise evaluator of a homogeneous solution.
using SolutionEvaluator = std::function<RealSpinorValue(double)>;

/// The closed-form solution pair at E = 0 for kappa = +1: u0 carries the
/// pure r^{-B} branch (Kummer functions), u_inf the solution decaying at
/// infinity (Tricomi functions).  Both switch to the Frobenius series
/// below r = 1/2, where the hypergeometric assembly loses digits.
struct UPair {
  SolutionEvaluator u0;
  SolutionEvaluator u_inf;
};
UPair build_u_pair(const Coupling& c);

/// Rebased fundamental system at E = 0: v_inf is the decaying solution,
/// v0 = gamma_tilde-free combination carrying the pure r^{+B} branch, so
/// that v_inf = gamma_tilde F_minus + q_scale F_plus and
/// v0 = q_scale F_plus in terms of the series branches.
struct FundamentalSystem {
  Coupling coupling;
  SolutionEvaluator eval_v0;
  SolutionEvaluator eval_v_inf;
  double w0_inf = 0.0;       ///< constant Wronskian W_r(v0, v_inf)
  double q_plus = 0.0;       ///< upper r^{+B} coefficient of v0
  double q_minus = 0.0;      ///< lower r^{+B} coefficient of v0
  double gamma_tilde = 0.0;  ///< F_minus coefficient of v_inf
  double q_scale = 0.0;      ///< F_plus coefficient of v0 (and of v_inf)
  double gamma_nu = 0.0;     ///< upper r^{-B} coefficient of v_inf
  FrobeniusSeries f_minus;   ///< E = 0 series branch, exponent -B
  FrobeniusSeries f_plus;    ///< E = 0 series branch, exponent +B
};

/// Construct the fundamental system for a critical coupling.  kappa = +1
/// uses the closed hypergeometric forms; kappa = -1 has no printed closed
/// form and is rebuilt numerically (series seeds continued by the IVP
/// integrator), normalised to the same gamma_tilde convention.
FundamentalSystem build_fundamental_system(const Coupling& c);

/// Analytic endpoint integral int_0^delta <a(rho), b(rho)> drho of two
/// series branches, summed through cross-order m_max.  Exact up to the
/// truncation order; used for the (0, r_min) tails that the quadrature
/// grid cannot see (the integrand may behave like rho^{-2B}).
double tail_integral_product(const FrobeniusSeries& a,
                             const FrobeniusSeries& b, double delta,
                             int m_max = 8);

/// Same endpoint integral with the second factor frozen at a constant
/// spinor value g: int_0^delta <a(rho), g> drho.
std::complex<double> tail_integral_frozen(const FrobeniusSeries& a,
                                          const SpinorValue& g, double delta,
                                          int m_max = 8);

}  // namespace dclab
