#include "dclab/greenop.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "dclab/errors.hpp"

namespace dclab {

namespace {

double dot(const RealSpinorValue& a, const RealSpinorValue& b) {
  return a[0] * b[0] + a[1] * b[1];
}

std::complex<double> dot(const RealSpinorValue& a,
                         const std::complex<double>& up,
                         const std::complex<double>& lo) {
  return a[0] * up + a[1] * lo;
}

}  // namespace

GreenOperator make_green_operator(const Coupling& c,
                                  std::shared_ptr<const RadialGrid> grid) {
  GreenOperator op;
  op.system = build_fundamental_system(c);
  op.grid = grid ? std::move(grid) : default_grid();

  const auto& nodes = op.grid->nodes;
  op.v0_nodes.resize(nodes.size());
  op.v_inf_nodes.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    op.v0_nodes[i] = op.system.eval_v0(nodes[i]);
    op.v_inf_nodes[i] = op.system.eval_v_inf(nodes[i]);
  }

  // ||v_inf||^2 = grid quadrature + exact series integral over (0, r_min).
  // The integrand behaves like r^{-2B} there; at the default r_min the
  // sub-grid mass is percent-scale and cannot be dropped.
  double quad = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    quad += op.grid->weights[i] * dot(op.v_inf_nodes[i], op.v_inf_nodes[i]);
  const double gt = op.system.gamma_tilde, qs = op.system.q_scale;
  const auto& fm = op.system.f_minus;
  const auto& fp = op.system.f_plus;
  const double rmin = op.grid->r_min;
  const double tail = gt * gt * tail_integral_product(fm, fm, rmin) +
                      2.0 * gt * qs * tail_integral_product(fm, fp, rmin) +
                      qs * qs * tail_integral_product(fp, fp, rmin);
  op.cached_vinf_norm_sq = quad + tail;
  return op;
}

KernelMatrix green_kernel(const FundamentalSystem& sys, double r, double rho) {
  if (!(r > 0.0) || !(rho > 0.0))
    throw DomainError("green_kernel requires r, rho > 0");
  const RealSpinorValue a =
      r <= rho ? sys.eval_v0(r) : sys.eval_v_inf(r);
  const RealSpinorValue b =
      r <= rho ? sys.eval_v_inf(rho) : sys.eval_v0(rho);
  KernelMatrix k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k[i][j] = -a[i] * b[j] / sys.w0_inf;
  return k;
}

KernelMatrix green_kernel(const Coupling& c, double r, double rho) {
  return green_kernel(build_fundamental_system(c), r, rho);
}

SpinorFunction apply_sd_inverse(const GreenOperator& op,
                                const SpinorFunction& g,
                                double* residual_out) {
  if (g.grid != op.grid)
    throw DomainError("apply_sd_inverse: input not sampled on the "
                      "operator's grid");
  const auto& grid = *op.grid;
  const std::size_t n = grid.size();

  std::vector<std::complex<double>> h0(n), hinf(n);
  for (std::size_t i = 0; i < n; ++i) {
    h0[i] = dot(op.v0_nodes[i], g.upper[i], g.lower[i]);
    hinf[i] = dot(op.v_inf_nodes[i], g.upper[i], g.lower[i]);
  }

  std::vector<std::complex<double>> i0 = cumulative_integral(grid, h0);
  // endpoint piece int_0^{r_min} <v0, g>: series form of v0 = q_scale F_plus,
  // g frozen at its first node
  const std::complex<double> tail0 =
      op.system.q_scale *
      tail_integral_frozen(op.system.f_plus,
                           SpinorValue{g.upper.front(), g.lower.front()},
                           grid.r_min);
  for (auto& v : i0) v += tail0;

  // suffix-accumulated: the tail is multiplied by the growing solution
  // below, so its error must be relative to the tail, not the total
  const std::vector<std::complex<double>> iinf =
      backward_cumulative_integral(grid, hinf);

  SpinorFunction f = SpinorFunction::zero(op.grid);
  const double w = op.system.w0_inf;
  for (std::size_t i = 0; i < n; ++i) {
    const std::complex<double> th0 = i0[i] / w;
    const std::complex<double> thinf = iinf[i] / w;
    f.upper[i] = -(thinf * op.v0_nodes[i][0] + th0 * op.v_inf_nodes[i][0]);
    f.lower[i] = -(thinf * op.v0_nodes[i][1] + th0 * op.v_inf_nodes[i][1]);
  }

  if (residual_out) {
    const SpinorFunction sf = apply_dirac(op.system.coupling, 0.0, f);
    const std::size_t m = sf.edge_margin + g.edge_margin;
    double num = 0.0, den = 0.0;
    for (std::size_t i = m; i + m < n; ++i) {
      const double wi = grid.weights[i];
      num += wi * (std::norm(sf.upper[i] - g.upper[i]) +
                   std::norm(sf.lower[i] - g.lower[i]));
      den += wi * (std::norm(g.upper[i]) + std::norm(g.lower[i]));
    }
    const double res = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    *residual_out = res;
    if (res > 1e-4)
      throw NumericsError("apply_sd_inverse: residual check failed (" +
                          std::to_string(res) + ")");
  }
  return f;
}

double vinf_norm_sq(const GreenOperator& op) {
  return op.cached_vinf_norm_sq;
}

std::pair<double, double> p_pm(const GreenOperator& op) {
  const double factor = -op.cached_vinf_norm_sq / op.system.w0_inf;
  return {op.system.q_plus * factor, op.system.q_minus * factor};
}

NormEstimate estimate_sd_inverse_norm(const GreenOperator& op, double tol,
                                      int max_iter) {
  constexpr unsigned kSeed = 12345u;
  std::mt19937 rng(kSeed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SpinorFunction x = SpinorFunction::zero(op.grid);
  for (std::size_t i = 0; i < op.grid->size(); ++i) {
    x.upper[i] = gauss(rng);
    x.lower[i] = gauss(rng);
  }
  const double nx = l2_norm(x);
  for (std::size_t i = 0; i < op.grid->size(); ++i) {
    x.upper[i] /= nx;
    x.lower[i] /= nx;
  }

  double lam_prev = 0.0;
  for (int k = 1; k <= max_iter; ++k) {
    SpinorFunction y = apply_sd_inverse(op, x);
    const double lam = l2_norm(y);
    if (!(lam > 0.0))
      throw NumericsError("norm estimate: start vector annihilated");
    const double rel = std::abs(lam - lam_prev) / lam;
    for (std::size_t i = 0; i < op.grid->size(); ++i) {
      y.upper[i] /= lam;
      y.lower[i] /= lam;
    }
    x = std::move(y);
    if (k >= 2 && rel <= tol) return {lam, k, rel, kSeed};
    lam_prev = lam;
  }
  throw NumericsError("norm estimate: power iteration did not converge");
}

}  // namespace dclab
