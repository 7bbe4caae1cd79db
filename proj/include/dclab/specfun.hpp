#pragma once

#include "dclab/errors.hpp"

namespace dclab {

/// Parameter pair (a, b) of the confluent hypergeometric functions.
/// b must not be a non-positive integer; the boundary-exponent window
/// B in (0, 1/2) keeps b inside (0,1) or (1,2) for every use below.
struct HypergeometricParams {
  double a;
  double b;
};

/// Gamma function for real non-pole arguments.  Arguments below 1/2 go
/// through the reflection formula, so negative non-integer x is fine.
/// Throws DomainError at non-positive integers.
double gamma_fn(double x);

/// Kummer function M_{a,b}(x) for x >= 0, by Taylor summation with
/// compensated accumulation.  For the parameter window used here the
/// series has at most one sign change, so the sum is cancellation-free
/// at every x; a monitor raises NumericsError if that assumption is
/// violated, and overflow past the exponential range is signalled.
double kummer_m(const HypergeometricParams& p, double x);

/// Tricomi function U_{a,b}(x) for x > 0.  Below the measured branch
/// point x = 16 it is assembled from two Kummer evaluations through the
/// connection formula; above, from the optimally truncated large-x
/// expansion x^{-a} 2F0(a, a-b+1; -1/x).  Raises NumericsError on
/// catastrophic connection-formula cancellation (result below 2e-9 of
/// the largest term) or when the asymptotic tail cannot reach 1e-7.
double tricomi_u(const HypergeometricParams& p, double x);

}  // namespace dclab
