#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "dclab/greenop.hpp"
#include "dclab/homogeneous.hpp"
#include "dclab/radial.hpp"

namespace dclab {

/// One self-adjoint realisation, labelled by the boundary parameter.
/// Finite beta encodes the condition g1+/g0+ = c_nu beta + d_nu; the
/// distinguished extension (beta = infinity) demands g0 = 0 instead.
struct ExtensionSpec {
  double beta = 0.0;
  bool is_infinite = false;
  std::complex<double> ratio_target{0.0, 0.0};  ///< c_nu beta + d_nu

  static ExtensionSpec finite(double beta, double c_nu, double d_nu);
  static ExtensionSpec distinguished();
};

/// Leading boundary coefficients of an adjoint-domain element near 0:
/// g(r) = g0 r^{-B} + g1 r^{B} + o(r^{1/2}).
struct BoundaryData {
  SpinorValue g0{};         ///< coefficient vector of r^{-B}
  SpinorValue g1{};         ///< coefficient vector of r^{B}
  double fit_residual = 0.0;  ///< relative window misfit, sub-window spread
};

/// Unique decomposition of g in the adjoint domain:
/// g = (a0 + b_inf(r)) v0 + (a_inf + b0(r)) v_inf, with b-functions
/// vanishing at the origin.  The b closures interpolate nodal
/// cumulative integrals of <v, Sg>/W.
struct AdjointDecomposition {
  std::complex<double> a0{0.0, 0.0};
  std::complex<double> a_inf{0.0, 0.0};
  std::function<std::complex<double>(double)> b0_fn;
  std::function<std::complex<double>(double)> b_inf_fn;
};

/// Deficiency index of the radial channel: 1 when nu^2 > kappa^2 - 1/4,
/// else 0 (essentially self-adjoint).
int deficiency_index(double nu, int kappa);

struct ChannelInfo {
  double j = 0.5;
  double m_j = 0.5;
  int kappa = 0;
  int index = 0;
};

/// Enumerate all angular channels with j <= j_max.  In the window
/// sqrt(3)/2 < |nu| < 1 exactly the four j = 1/2 channels carry
/// deficiency index 1.
std::vector<ChannelInfo> channel_census(double nu, double j_max);

/// Classification constants (c_nu, d_nu) of the boundary-condition map
/// beta -> c_nu beta + d_nu: c_nu = p+/gamma_nu, d_nu = q+/gamma_nu.
std::pair<double, double> cd_constants(const Coupling& c,
                                       const GreenOperator& G);

/// Extract (g0, g1) over a fit window contained in (0, 1e-2].  The raw
/// monomial pair r^{-B}, r^{B} is completed in two ways before fitting,
/// without which the slowly decaying o(r^{1/2}) remainder contaminates
/// g1 at order one: (a) the fit columns are the full power-series
/// branches, absorbing all higher orders of the homogeneous part; (b)
/// the inhomogeneous part is removed first, by cumulative quadrature of
/// the variation-of-parameters coefficients driven by Sg (computed
/// internally when not supplied), with the (0, r_min) ends integrated
/// against a two-branch model of Sg fitted near the grid start.
/// Reliability: relative misfit above 1e-4, or disagreement above 1e-3
/// between the two half-window fits, throws NumericsError.
BoundaryData extract_boundary_data(const Coupling& c, const SpinorFunction& g,
                                   std::pair<double, double> window,
                                   const SpinorFunction* Sg = nullptr);
BoundaryData extract_boundary_data(const Coupling& c, const SpinorFunction& g,
                                   const SpinorFunction* Sg = nullptr);

/// Scale-invariant defect of the boundary condition: for finite beta
/// |g1+ - (c_nu beta + d_nu) g0+| / (|g1+| + |g0+|); for the
/// distinguished extension |g0+| / (|g0+| + |g1+|).  Throws
/// NumericsError when both upper coefficients vanish (closure element,
/// condition vacuous).
double boundary_residual(const ExtensionSpec& spec, const BoundaryData& bd);

/// Decompose g against the fundamental pair.  The b-functions come from
/// cumulative quadrature; the constants come from the Wronskian limits
/// lim_{r->0} W_r(v, g), evaluated in their b-corrected form (constant
/// in r), averaged over several small radii.  The spread across those
/// radii is the convergence diagnostic; above tolerance the limit is
/// declared non-convergent and a NumericsError is thrown.
AdjointDecomposition decompose_adjoint(const Coupling& c,
                                       const FundamentalSystem& F,
                                       const SpinorFunction& g,
                                       const SpinorFunction& Sg);

struct ClosureCertificate {
  bool member = false;
  double a0_mag = 0.0;
  double a_inf_mag = 0.0;
};

/// g is in the closure domain iff both constants vanish: |a0| <= tol
/// and |a_inf| <= tol.
ClosureCertificate closure_membership(const AdjointDecomposition& dec,
                                      double tol);

/// The coefficient of the singular element in g, computed through two
/// independent routes that must agree to 1e-3 relative: the Wronskian
/// limit of the v_inf-coefficient, and the integral
/// <v_inf, Sg> / (beta ||v_inf||^2).
struct SingularCoefficient {
  std::complex<double> by_limit{0.0, 0.0};
  std::complex<double> by_integral{0.0, 0.0};
  std::complex<double> value{0.0, 0.0};  ///< adopted value (limit route)
  double disagreement = 0.0;
};

SingularCoefficient singular_coefficient(const GreenOperator& G,
                                         const SpinorFunction& g, double beta,
                                         const SpinorFunction& Sg);
SingularCoefficient singular_coefficient(const Coupling& c,
                                         const SpinorFunction& g, double beta,
                                         const SpinorFunction& Sg);

/// Split g into the kernel component and the rest:
/// g_sing = a_inf v_inf, g_reg = g - g_sing.
std::pair<SpinorFunction, SpinorFunction> regular_singular_split(
    const FundamentalSystem& F, const SpinorFunction& g,
    const AdjointDecomposition& dec);
std::pair<SpinorFunction, SpinorFunction> regular_singular_split(
    const Coupling& c, const SpinorFunction& g,
    const AdjointDecomposition& dec);

}  // namespace dclab
