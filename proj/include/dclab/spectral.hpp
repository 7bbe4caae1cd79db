#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dclab/extensions.hpp"
#include "dclab/greenop.hpp"

namespace dclab {

/// The inverse of the boundary-condition map at one energy: beta such
/// that the decaying solution at E satisfies the S_beta condition, or
/// the distinguished marker when the singular coefficient vanishes.
struct BetaValue {
  double value = 0.0;
  bool is_infinite = false;
};

struct EigenvalueRecord {
  double E = 0.0;
  double residual = 0.0;  ///< boundary_residual at the root
  BoundaryData boundary;
};

struct SpectralReport {
  Coupling coupling;
  ExtensionSpec spec;
  std::vector<EigenvalueRecord> eigenvalues;  ///< sorted by E
  double gap_bound = 0.0;    ///< |beta|/(|beta| norm + 1); 1/norm for inf
  double sd_inv_norm = 0.0;  ///< power-iteration estimate (critical only)
  std::vector<std::string> diagnostics;  ///< skipped scan points etc.
};

/// Shared state for repeated spectral queries in one channel: the
/// distinguished inverse and classification constants (critical
/// channels only; sub-critical channels support the regular condition
/// without them) and a cache of extracted boundary ratios keyed by E.
struct SpectralContext {
  Coupling c;
  std::shared_ptr<const RadialGrid> grid;
  bool has_classification = false;
  std::optional<GreenOperator> op;
  std::pair<double, double> cd{0.0, 0.0};  ///< (c_nu, d_nu)
  NormEstimate norm{};
  std::map<double, std::pair<double, double>> g01_cache;
};

SpectralContext make_spectral_context(const Coupling& c,
                                      std::shared_ptr<const RadialGrid> grid =
                                          nullptr);

/// The L2-normalised solution of (S - E)u = 0 decaying at infinity,
/// integrated inward from R with the asymptotic direction
/// (sqrt(1+E), -sqrt(1-E)) e^{-lambda R} R^s, lambda = sqrt(1-E^2),
/// including the 1/R correction.  The Coulomb power of the decaying
/// branch is s = -nu E / lambda (for an attractive tail nu < 0 and
/// E > 0 the profile swells by R^{|nu|E/lambda} under the exponential).
/// R starts at max(48, 40/lambda-ish) and doubles until the extracted
/// boundary direction stabilises to 1e-5 (projective angle); failure to
/// stabilise within the cap throws NumericsError.
SpinorFunction decaying_solution(const Coupling& c, double E,
                                 std::shared_ptr<const RadialGrid> grid =
                                     nullptr);

/// beta(E) = ((g1+/g0+) - d_nu)/c_nu from the decaying solution's
/// boundary data; infinite when g0+ vanishes within fit tolerance.
BetaValue beta_of_energy(const Coupling& c, double E,
                         std::pair<double, double> constants);

/// Scan the root function over E_range (n_scan+1 uniform samples) and
/// bisect each sign change to 1e-9, re-validating every root through
/// boundary_residual <= 1e-4.  The root function is projective in the
/// boundary data: g1+ cos(t) - g0+ sin(t) with tan(t) the target ratio
/// for finite beta, and g0+ itself for the distinguished condition, so
/// poles of beta(E) never masquerade as roots.  Scan points where both
/// coefficients vanish are skipped and logged in diagnostics.
SpectralReport eigenvalues_in_gap(SpectralContext& ctx,
                                  const ExtensionSpec& spec,
                                  std::pair<double, double> E_range,
                                  int n_scan);
SpectralReport eigenvalues_in_gap(const Coupling& c, const ExtensionSpec& spec,
                                  std::pair<double, double> E_range,
                                  int n_scan);

/// Fine-structure energy (1 + nu^2/(n + sqrt(kappa^2 - nu^2))^2)^{-1/2}
/// in natural units.  Requires kappa^2 > nu^2.
double sommerfeld_energy(double nu, int n, int kappa);

/// Rank-one inverse of an invertible extension:
/// S_beta^{-1} g = S_D^{-1} g + <v_inf, g> v_inf / (beta ||v_inf||^2);
/// reduces to the distinguished inverse for the infinite marker; beta=0
/// is not invertible and is rejected.
SpinorFunction apply_sbeta_inverse(const GreenOperator& G,
                                   const ExtensionSpec& spec,
                                   const SpinorFunction& g);

/// Gap half-width |beta| / (|beta| sd_inv_norm + 1) around zero in the
/// spectrum of S_beta.
double gap_lower_bound(double beta, double sd_inv_norm);

/// Deficiency family Phi(z) = Phi + z (S_D - z)^{-1} Phi, realised by a
/// boundary-value solve of (S - z)w = z Phi (regular at 0, decaying at
/// infinity) through a z-shifted Green construction.  Throws when z is
/// close enough to the spectrum of S_D that the shifted Wronskian
/// degenerates.
SpinorFunction krein_phi_z(const GreenOperator& G, double z);

/// Dispatch count independent cells to the worker pool (size capped by
/// DCLAB_THREADS); fn(k) runs exactly once per index.  Results must be
/// stored in per-index slots, which keeps assembled output identical
/// for every worker count.  Nested calls degrade to serial execution
/// on the calling worker, so pool users may themselves use the pool.
void parallel_cells(std::size_t count,
                    const std::function<void(std::size_t)>& fn);

}  // namespace dclab
