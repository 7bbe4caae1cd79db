#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "dclab/errors.hpp"

namespace dclab {

/// Pointwise value of a two-component radial spinor.
using SpinorValue = std::array<std::complex<double>, 2>;

/// Real-valued spinor sample, used by the homogeneous solutions which
/// are real on the half-line.
using RealSpinorValue = std::array<double, 2>;

/// One angular-momentum channel of the radial operator
///
///   S = [ 1 + nu/r      -d/dr + kappa/r ]
///       [ d/dr + kappa/r   -1 + nu/r    ]
///
/// acting on two-component spinors over (0, inf).  Only |kappa| = 1 is
/// admitted here since those are the channels whose boundary behaviour
/// this library resolves; higher |kappa| channels are regular and enter
/// only through the symbolic census in extensions.hpp.
struct Coupling {
  double nu = 0.0;   ///< Coulomb coupling, |nu| < 1
  int kappa = 1;     ///< angular quantum number, +1 or -1
  double B = 1.0;    ///< sqrt(1 - nu^2), the boundary exponent scale

  /// Channel in the critical window sqrt(3)/2 < |nu| < 1, where the
  /// defect index is one and the boundary classification is nontrivial.
  static Coupling critical(double nu, int kappa);

  /// Any |kappa| = 1 channel with |nu| < 1 (sub-critical allowed).
  static Coupling channel(double nu, int kappa);

  /// True when nu lies strictly inside the critical window.
  bool is_critical() const {
    const double a = std::abs(nu);
    return a > std::sqrt(3.0) / 2.0 && a < 1.0;
  }
};

inline Coupling Coupling::channel(double nu, int kappa) {
  if (!(std::abs(nu) < 1.0))
    throw DomainError("Coupling: |nu| must be < 1, got nu=" + std::to_string(nu));
  if (kappa != 1 && kappa != -1)
    throw DomainError("Coupling: kappa must be +1 or -1");
  return Coupling{nu, kappa, std::sqrt((1.0 - nu) * (1.0 + nu))};
}

inline Coupling Coupling::critical(double nu, int kappa) {
  Coupling c = channel(nu, kappa);
  if (!c.is_critical())
    throw DomainError("Coupling: nu=" + std::to_string(nu) +
                      " is outside the critical window sqrt(3)/2 < |nu| < 1");
  return c;
}

}  // namespace dclab
