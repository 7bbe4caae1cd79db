#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "dclab/coupling.hpp"

namespace dclab {

/// Composite Gauss-Legendre grid on [r_min, r_max] with geometrically
/// graded panels (constant ratio between consecutive panel edges), the
/// natural discretisation for functions behaving like r^{-B} near the
/// origin and e^{-r} at infinity.
struct RadialGrid {
  std::vector<double> nodes;        ///< strictly increasing radii
  std::vector<double> weights;      ///< positive quadrature weights
  std::vector<double> panel_edges;  ///< panels+1 geometric edges
  int order = 0;                    ///< Gauss order per panel
  double r_min = 0.0;
  double r_max = 0.0;

  std::size_t size() const { return nodes.size(); }
  std::size_t panels() const { return panel_edges.size() - 1; }
};

/// Build a geometric-panel Gauss-Legendre grid.  Requires
/// 0 < r_min < r_max (r_min >= 1e-10), panels >= 1, order in [2, 20].
std::shared_ptr<const RadialGrid> make_grid(double r_min, double r_max,
                                            int panels, int order);

/// The library-wide default grid: (1e-8, 40, 400 panels, order 8).
const std::shared_ptr<const RadialGrid>& default_grid();

/// Two-component complex function sampled on a shared grid.
struct SpinorFunction {
  std::shared_ptr<const RadialGrid> grid;
  std::vector<std::complex<double>> upper;
  std::vector<std::complex<double>> lower;

  /// Nodes within this margin of either end carry one-sided stencil
  /// values after differentiation; zero for directly sampled data.
  std::size_t edge_margin = 0;

  static SpinorFunction zero(std::shared_ptr<const RadialGrid> g);
};

/// L2 inner product, conjugate-linear in the first argument:
/// sum_i w_i (conj(f+_i) g+_i + conj(f-_i) g-_i).
std::complex<double> inner_product(const SpinorFunction& f,
                                   const SpinorFunction& g);

/// sqrt(<f,f>).
double l2_norm(const SpinorFunction& f);

/// L2 norm restricted to nodes at least `margin` positions away from
/// both grid ends; used when comparing differentiated data.
double l2_norm_interior(const SpinorFunction& f, std::size_t margin);

/// Apply the formal operator (S - E) by 7-point Lagrange stencils in
/// the log-radius variable (difference form, which cancels the
/// roundoff amplification of the geometric spacing).  The first and
/// last 3 nodes use one-sided windows and are flagged through
/// edge_margin on the result.  If stencil_error is non-null it
/// receives a comparison-order error estimate relative to ||g||.
SpinorFunction apply_dirac(const Coupling& c, double E,
                           const SpinorFunction& g,
                           double* stencil_error = nullptr);

/// Cumulative integral I(r_i) = int_{r_min}^{r_i} h, computed panel by
/// panel with the spectral integration matrix of the Gauss basis, so
/// each node value carries full quadrature accuracy.
std::vector<std::complex<double>> cumulative_integral(
    const RadialGrid& grid, const std::vector<std::complex<double>>& h);

/// Complementary cumulative I(r_i) = int_{r_i}^{r_max} h, accumulated
/// from the right.  Never computed as total minus prefix: that carries
/// absolute roundoff of the total, which turns into O(1) garbage when
/// the tail is later multiplied by the exponentially growing solution.
/// Here each value has roundoff relative to the remaining tail itself.
std::vector<std::complex<double>> backward_cumulative_integral(
    const RadialGrid& grid, const std::vector<std::complex<double>>& h);

/// Lagrange interpolation of nodal data at r inside [r_min, r_max],
/// using the Gauss nodes of the panel containing r.
std::complex<double> interpolate(const RadialGrid& grid,
                                 const std::vector<std::complex<double>>& data,
                                 double r);
SpinorValue interpolate(const SpinorFunction& f, double r);

/// Write nodal data as CSV with header
/// r,re_upper,im_upper,re_lower,im_lower and 17-significant-digit
/// values, so re-parsing recovers every double exactly.
void write_spinor_csv(std::ostream& os, const SpinorFunction& f);

/// Parse the CSV form back onto the given grid.  Accepts an optional
/// leading header line and # comment lines; requires one row per node
/// with radii matching the grid nodes to 1e-12 relative.  Throws
/// DomainError on any mismatch.
SpinorFunction read_spinor_csv(std::istream& is,
                               const std::shared_ptr<const RadialGrid>& grid);

/// Integration direction for initial-value solves.
enum class Direction { inward, outward };

/// Path of an initial-value integration: radii in traversal order and
/// the spinor values there.  The final entry sits exactly at r_end.
struct IvpTrace {
  std::vector<double> r;
  std::vector<SpinorValue> u;
  const SpinorValue& end() const { return u.back(); }
};

/// Integrate (S - E)u = 0 as a first-order 2x2 system in log-radius
/// with an adaptive embedded Runge-Kutta pair of order 8, local
/// tolerance 1e-12.  sample_at lists additional radii (strictly between
/// r_start and r_end) at which the solution is recorded, in traversal
/// order.  Throws NumericsError when r_end < 1e-10 (step underflow at
/// the singular endpoint).
IvpTrace integrate_ivp(const Coupling& c, double E, double r_start,
                       const SpinorValue& u_start, Direction direction,
                       double r_end, const std::vector<double>& sample_at = {});

}  // namespace dclab
