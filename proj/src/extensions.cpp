#include "dclab/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "dclab/errors.hpp"

namespace dclab {

namespace {

constexpr double kSqrt3Half = 0.86602540378443864676;

// E = 0 series branches with their (constant) Wronskian; the basis every
// boundary-data computation works in.
struct SeriesPair {
  FrobeniusSeries fm;  // exponent -B
  FrobeniusSeries fp;  // exponent +B
  double wf = 0.0;
};

SeriesPair make_series_pair(const Coupling& c) {
  SeriesPair sp;
  const double bk = std::sqrt(static_cast<double>(c.kappa) * c.kappa -
                              c.nu * c.nu);
  sp.fm = FrobeniusSeries(c, 0.0, -bk);
  sp.fp = FrobeniusSeries(c, 0.0, +bk);
  sp.wf = wronskian_at(sp.fm.leading(), sp.fp.leading());
  if (std::abs(sp.wf) < 1e-12)
    throw NumericsError("series pair: degenerate Wronskian");
  return sp;
}

std::complex<double> spinor_dot(const RealSpinorValue& a,
                                const std::complex<double>& up,
                                const std::complex<double>& lo) {
  return a[0] * up + a[1] * lo;
}

// W_r(v, g) = v+ g- - v- g+ for a real row against complex samples.
std::complex<double> wronskian_mixed(const RealSpinorValue& v,
                                     const std::complex<double>& up,
                                     const std::complex<double>& lo) {
  return v[0] * lo - v[1] * up;
}

struct BranchFit {
  std::complex<double> cm{0.0, 0.0};
  std::complex<double> cp{0.0, 0.0};
};

// Complex least squares of spinor samples against two real columns,
// by column-scaled normal equations (the system is 2x2; conditioning
// is controlled by the window width, which the callers enforce).
BranchFit solve_two_branch(const std::vector<RealSpinorValue>& col_m,
                           const std::vector<RealSpinorValue>& col_p,
                           const std::vector<SpinorValue>& y) {
  double sm = 0.0, sp = 0.0;
  for (std::size_t i = 0; i < col_m.size(); ++i) {
    sm = std::max({sm, std::abs(col_m[i][0]), std::abs(col_m[i][1])});
    sp = std::max({sp, std::abs(col_p[i][0]), std::abs(col_p[i][1])});
  }
  if (sm == 0.0 || sp == 0.0)
    throw NumericsError("branch fit: vanishing column");
  double g11 = 0.0, g12 = 0.0, g22 = 0.0;
  std::complex<double> b1{0.0, 0.0}, b2{0.0, 0.0};
  for (std::size_t i = 0; i < col_m.size(); ++i) {
    for (int s = 0; s < 2; ++s) {
      const double vm = col_m[i][s] / sm;
      const double vp = col_p[i][s] / sp;
      g11 += vm * vm;
      g12 += vm * vp;
      g22 += vp * vp;
      b1 += vm * y[i][s];
      b2 += vp * y[i][s];
    }
  }
  const double det = g11 * g22 - g12 * g12;
  if (!(det > 1e-12 * g11 * g22))
    throw NumericsError("branch fit: near-parallel columns (window too "
                        "narrow)");
  BranchFit out;
  out.cm = (g22 * b1 - g12 * b2) / det / sm;
  out.cp = (g11 * b2 - g12 * b1) / det / sp;
  return out;
}

// Two-branch model of Sg near the grid start, used to integrate the
// variation-of-parameters coefficients over (0, r_min) where no nodes
// exist.  Falls back to freezing Sg at its first reliable node when the
// grid is too coarse to fit.
struct HModel {
  bool fitted = false;
  std::complex<double> dm{0.0, 0.0};
  std::complex<double> dp{0.0, 0.0};
  SpinorValue frozen{};
};

HModel fit_h_model(const RadialGrid& grid, const SpinorFunction& h,
                   const SeriesPair& sp) {
  HModel model;
  const std::size_t skip = h.edge_margin;
  const double lo = grid.nodes[std::min(skip, grid.size() - 1)];
  const double hi = std::min({1e-6, grid.r_max, grid.r_min * 316.0});
  std::vector<std::size_t> sel;
  double last = 0.0;
  for (std::size_t i = skip; i < grid.size() && grid.nodes[i] <= hi; ++i) {
    if (sel.empty() || grid.nodes[i] > last * 1.2) {
      sel.push_back(i);
      last = grid.nodes[i];
      if (sel.size() >= 32) break;
    }
  }
  model.frozen = {h.upper[std::min(skip, grid.size() - 1)],
                  h.lower[std::min(skip, grid.size() - 1)]};
  if (sel.size() < 6 || hi <= lo * 3.0) return model;

  std::vector<RealSpinorValue> cm(sel.size()), cp(sel.size());
  std::vector<SpinorValue> y(sel.size());
  for (std::size_t k = 0; k < sel.size(); ++k) {
    const double r = grid.nodes[sel[k]];
    cm[k] = sp.fm.eval(r);
    cp[k] = sp.fp.eval(r);
    y[k] = {h.upper[sel[k]], h.lower[sel[k]]};
  }
  const BranchFit fit = solve_two_branch(cm, cp, y);
  model.fitted = true;
  model.dm = fit.cm;
  model.dp = fit.cp;
  return model;
}

// int_0^delta <F, h_model> with F one of the series branches.
std::complex<double> model_tail(const FrobeniusSeries& F, const HModel& m,
                                const SeriesPair& sp, double delta) {
  if (m.fitted)
    return m.dm * tail_integral_product(F, sp.fm, delta) +
           m.dp * tail_integral_product(F, sp.fp, delta);
  return tail_integral_frozen(F, m.frozen, delta);
}

void require_same_grid(const SpinorFunction& g, const SpinorFunction& h,
                       const char* what) {
  if (g.grid != h.grid) throw DomainError(std::string(what) +
                                          ": grids differ");
}

}  // namespace

ExtensionSpec ExtensionSpec::finite(double beta, double c_nu, double d_nu) {
  ExtensionSpec s;
  s.beta = beta;
  s.is_infinite = false;
  s.ratio_target = {c_nu * beta + d_nu, 0.0};
  return s;
}

ExtensionSpec ExtensionSpec::distinguished() {
  ExtensionSpec s;
  s.is_infinite = true;
  return s;
}

int deficiency_index(double nu, int kappa) {
  if (kappa == 0) throw DomainError("deficiency_index: kappa must be nonzero");
  const double k2 = static_cast<double>(kappa) * kappa;
  return nu * nu > k2 - 0.25 ? 1 : 0;
}

std::vector<ChannelInfo> channel_census(double nu, double j_max) {
  if (!(std::abs(nu) > kSqrt3Half) || !(std::abs(nu) < 1.0))
    throw DomainError("channel_census: |nu| must lie in (sqrt(3)/2, 1)");
  const double two_j_max = 2.0 * j_max;
  if (!(j_max >= 0.5) ||
      std::abs(two_j_max - std::round(two_j_max)) > 1e-9 ||
      std::abs(std::remainder(std::round(two_j_max), 2.0)) < 0.5)
    throw DomainError("channel_census: j_max must be a half-integer >= 1/2");
  std::vector<ChannelInfo> out;
  for (double j = 0.5; j <= j_max + 1e-9; j += 1.0) {
    const int k0 = static_cast<int>(std::lround(j + 0.5));
    for (const int kappa : {-k0, k0}) {
      for (double m = -j; m <= j + 1e-9; m += 1.0)
        out.push_back({j, m, kappa, deficiency_index(nu, kappa)});
    }
  }
  return out;
}

std::pair<double, double> cd_constants(const Coupling& c,
                                       const GreenOperator& G) {
  if (c.kappa != G.system.coupling.kappa ||
      std::abs(c.nu - G.system.coupling.nu) > 0.0)
    throw DomainError("cd_constants: coupling does not match the operator");
  const double g_nu = G.system.gamma_nu;
  if (g_nu == 0.0) throw NumericsError("cd_constants: gamma_nu vanished");
  return {p_pm(G).first / g_nu, G.system.q_plus / g_nu};
}

BoundaryData extract_boundary_data(const Coupling& c, const SpinorFunction& g,
                                   std::pair<double, double> window,
                                   const SpinorFunction* Sg) {
  if (!g.grid) throw DomainError("extract_boundary_data: no grid");
  const RadialGrid& grid = *g.grid;
  const auto [r_lo, r_hi] = window;
  if (!(r_lo > 0.0) || !(r_lo < r_hi) || !(r_hi <= 1e-2))
    throw DomainError("extract_boundary_data: window must satisfy "
                      "0 < r_lo < r_hi <= 1e-2");

  const auto lo_it =
      std::lower_bound(grid.nodes.begin(), grid.nodes.end(), r_lo);
  const auto hi_it =
      std::upper_bound(grid.nodes.begin(), grid.nodes.end(), r_hi);
  const std::size_t i_lo = static_cast<std::size_t>(lo_it -
                                                    grid.nodes.begin());
  const std::size_t i_hi_end = static_cast<std::size_t>(hi_it -
                                                        grid.nodes.begin());
  if (i_hi_end < i_lo + 8)
    throw DomainError("extract_boundary_data: window resolves fewer than "
                      "8 grid nodes");

  SpinorFunction Sg_local;
  if (!Sg) {
    Sg_local = apply_dirac(c, 0.0, g);
    Sg = &Sg_local;
  } else {
    require_same_grid(g, *Sg, "extract_boundary_data");
  }

  const SeriesPair sp = make_series_pair(c);
  const HModel hm = fit_h_model(grid, *Sg, sp);

  // integrands <F, Sg> are needed only up to the window; the series
  // basis is not valid on the far grid, so fill through the panel
  // holding the last window node and leave the rest zero (prefix
  // integrals at window nodes are unaffected)
  const std::size_t p_hi = (i_hi_end - 1) / static_cast<std::size_t>(grid.order);
  const std::size_t fill_end =
      std::min(grid.size(), (p_hi + 1) * static_cast<std::size_t>(grid.order));
  std::vector<std::complex<double>> hp(grid.size(), {0.0, 0.0});
  std::vector<std::complex<double>> hmv(grid.size(), {0.0, 0.0});
  std::vector<RealSpinorValue> fm_nodes(fill_end), fp_nodes(fill_end);
  for (std::size_t i = 0; i < fill_end; ++i) {
    fm_nodes[i] = sp.fm.eval(grid.nodes[i]);
    fp_nodes[i] = sp.fp.eval(grid.nodes[i]);
    hp[i] = spinor_dot(fp_nodes[i], Sg->upper[i], Sg->lower[i]);
    hmv[i] = spinor_dot(fm_nodes[i], Sg->upper[i], Sg->lower[i]);
  }
  const auto cum_p = cumulative_integral(grid, hp);
  const auto cum_m = cumulative_integral(grid, hmv);
  const std::complex<double> tail_m =
      model_tail(sp.fp, hm, sp, grid.r_min) / sp.wf;
  const std::complex<double> tail_p =
      -model_tail(sp.fm, hm, sp, grid.r_min) / sp.wf;

  // up to 40 log-spaced fit nodes across the window
  std::vector<std::size_t> sel;
  {
    const std::size_t count = i_hi_end - i_lo;
    const std::size_t stride = std::max<std::size_t>(1, count / 40);
    for (std::size_t i = i_lo; i < i_hi_end; i += stride) sel.push_back(i);
    if (sel.back() != i_hi_end - 1) sel.push_back(i_hi_end - 1);
  }

  std::vector<RealSpinorValue> cm(sel.size()), cp(sel.size());
  std::vector<SpinorValue> y(sel.size());
  double rms_g = 0.0;
  for (std::size_t k = 0; k < sel.size(); ++k) {
    const std::size_t i = sel[k];
    cm[k] = fm_nodes[i];
    cp[k] = fp_nodes[i];
    const std::complex<double> beta_m = tail_m + cum_p[i] / sp.wf;
    const std::complex<double> beta_p = tail_p - cum_m[i] / sp.wf;
    y[k] = {g.upper[i] - beta_m * cm[k][0] - beta_p * cp[k][0],
            g.lower[i] - beta_m * cm[k][1] - beta_p * cp[k][1]};
    rms_g += std::norm(g.upper[i]) + std::norm(g.lower[i]);
  }
  rms_g = std::sqrt(rms_g / static_cast<double>(sel.size()));

  BoundaryData bd;
  if (rms_g == 0.0) return bd;  // zero input: zero data, zero residual

  const BranchFit fit = solve_two_branch(cm, cp, y);

  double misfit = 0.0;
  for (std::size_t k = 0; k < sel.size(); ++k) {
    misfit += std::norm(y[k][0] - fit.cm * cm[k][0] - fit.cp * cp[k][0]) +
              std::norm(y[k][1] - fit.cm * cm[k][1] - fit.cp * cp[k][1]);
  }
  misfit = std::sqrt(misfit / static_cast<double>(sel.size())) / rms_g;

  // half-window cross-check; O(r^{1/2}) remainders that survived the
  // subtraction show up as drift between the halves
  const std::size_t half = sel.size() / 2;
  const auto split = [&](std::size_t from, std::size_t to) {
    std::vector<RealSpinorValue> scm(cm.begin() + from, cm.begin() + to);
    std::vector<RealSpinorValue> scp(cp.begin() + from, cp.begin() + to);
    std::vector<SpinorValue> sy(y.begin() + from, y.begin() + to);
    return solve_two_branch(scm, scp, sy);
  };
  const BranchFit f_lo = split(0, half);
  const BranchFit f_hi = split(half, sel.size());
  double rms_m = 0.0, rms_p = 0.0;
  for (std::size_t k = 0; k < sel.size(); ++k) {
    rms_m += cm[k][0] * cm[k][0] + cm[k][1] * cm[k][1];
    rms_p += cp[k][0] * cp[k][0] + cp[k][1] * cp[k][1];
  }
  rms_m = std::sqrt(rms_m / static_cast<double>(sel.size()));
  rms_p = std::sqrt(rms_p / static_cast<double>(sel.size()));
  const double spread = (std::abs(f_lo.cm - f_hi.cm) * rms_m +
                         std::abs(f_lo.cp - f_hi.cp) * rms_p) /
                        rms_g;

  if (misfit > 1e-4)
    throw NumericsError("extract_boundary_data: unreliable fit (residual " +
                        std::to_string(misfit) + ")");
  if (spread > 1e-3)
    throw NumericsError("extract_boundary_data: half-window fits disagree (" +
                        std::to_string(spread) + ")");

  const RealSpinorValue wm = sp.fm.leading();
  const RealSpinorValue wp = sp.fp.leading();
  bd.g0 = {fit.cm * wm[0], fit.cm * wm[1]};
  bd.g1 = {fit.cp * wp[0], fit.cp * wp[1]};
  bd.fit_residual = std::max(misfit, spread);
  return bd;
}

BoundaryData extract_boundary_data(const Coupling& c, const SpinorFunction& g,
                                   const SpinorFunction* Sg) {
  return extract_boundary_data(c, g, {1e-6, 1e-3}, Sg);
}

double boundary_residual(const ExtensionSpec& spec, const BoundaryData& bd) {
  const double m0 = std::abs(bd.g0[0]);
  const double m1 = std::abs(bd.g1[0]);
  const double full = m0 + m1 + std::abs(bd.g0[1]) + std::abs(bd.g1[1]);
  if (m0 + m1 <= 1e-12 * (1.0 + full))
    throw NumericsError("boundary_residual: degenerate boundary data "
                        "(closure element, condition vacuous)");
  if (spec.is_infinite) return m0 / (m0 + m1);
  return std::abs(bd.g1[0] - spec.ratio_target * bd.g0[0]) / (m0 + m1);
}

AdjointDecomposition decompose_adjoint(const Coupling& c,
                                       const FundamentalSystem& F,
                                       const SpinorFunction& g,
                                       const SpinorFunction& Sg) {
  if (!g.grid) throw DomainError("decompose_adjoint: no grid");
  require_same_grid(g, Sg, "decompose_adjoint");
  if (F.coupling.kappa != c.kappa || F.coupling.nu != c.nu)
    throw DomainError("decompose_adjoint: system/coupling mismatch");
  const RadialGrid& grid = *g.grid;
  const std::size_t n = grid.size();

  std::vector<RealSpinorValue> v0(n), vinf(n);
  for (std::size_t i = 0; i < n; ++i) {
    v0[i] = F.eval_v0(grid.nodes[i]);
    vinf[i] = F.eval_v_inf(grid.nodes[i]);
  }

  std::vector<std::complex<double>> h0(n), hinf(n);
  for (std::size_t i = 0; i < n; ++i) {
    h0[i] = spinor_dot(v0[i], Sg.upper[i], Sg.lower[i]);
    hinf[i] = spinor_dot(vinf[i], Sg.upper[i], Sg.lower[i]);
  }
  const auto cum0 = cumulative_integral(grid, h0);
  const auto cuminf = cumulative_integral(grid, hinf);

  const SeriesPair sp{F.f_minus, F.f_plus,
                      wronskian_at(F.f_minus.leading(), F.f_plus.leading())};
  const HModel hm = fit_h_model(grid, Sg, sp);
  const double W = F.w0_inf;
  const double gt = F.gamma_tilde, qs = F.q_scale;
  // v_inf = gt F- + qs F+, v0 = qs F+ below the grid start
  const std::complex<double> tinf_raw =
      gt * model_tail(sp.fm, hm, sp, grid.r_min) +
      qs * model_tail(sp.fp, hm, sp, grid.r_min);
  const std::complex<double> t0_raw =
      qs * model_tail(sp.fp, hm, sp, grid.r_min);

  auto b_inf_nodal = std::make_shared<std::vector<std::complex<double>>>(n);
  auto b0_nodal = std::make_shared<std::vector<std::complex<double>>>(n);
  for (std::size_t i = 0; i < n; ++i) {
    (*b_inf_nodal)[i] = (tinf_raw + cuminf[i]) / W;
    (*b0_nodal)[i] = -(t0_raw + cum0[i]) / W;
  }

  // constants from the b-corrected Wronskian limits, constant in r;
  // sampled on a spread of small radii as the convergence diagnostic
  std::vector<std::size_t> sel;
  {
    const double lo = std::max(1e-6, grid.r_min);
    const double hi = std::min(1e-3, grid.r_max);
    double last = 0.0;
    for (std::size_t i = 0; i < n && grid.nodes[i] <= hi; ++i) {
      if (grid.nodes[i] >= lo && (sel.empty() || grid.nodes[i] > last * 2.0)) {
        sel.push_back(i);
        last = grid.nodes[i];
        if (sel.size() >= 8) break;
      }
    }
    if (sel.size() < 3) {
      const std::size_t skip = std::min(n - 3, Sg.edge_margin);
      sel = {skip, skip + 1, skip + 2};
    }
  }

  std::complex<double> a0_acc{0.0, 0.0}, ainf_acc{0.0, 0.0};
  std::vector<std::complex<double>> x0(sel.size()), xinf(sel.size());
  double rms_g = 0.0, rms_v0 = 0.0, rms_vinf = 0.0;
  for (std::size_t k = 0; k < sel.size(); ++k) {
    const std::size_t i = sel[k];
    xinf[k] = wronskian_mixed(v0[i], g.upper[i], g.lower[i]) / W -
              (*b0_nodal)[i];
    x0[k] = -wronskian_mixed(vinf[i], g.upper[i], g.lower[i]) / W -
            (*b_inf_nodal)[i];
    a0_acc += x0[k];
    ainf_acc += xinf[k];
    rms_g += std::norm(g.upper[i]) + std::norm(g.lower[i]);
    rms_v0 += v0[i][0] * v0[i][0] + v0[i][1] * v0[i][1];
    rms_vinf += vinf[i][0] * vinf[i][0] + vinf[i][1] * vinf[i][1];
  }
  const double nk = static_cast<double>(sel.size());
  AdjointDecomposition dec;
  dec.a0 = a0_acc / nk;
  dec.a_inf = ainf_acc / nk;
  rms_g = std::sqrt(rms_g / nk);
  rms_v0 = std::sqrt(rms_v0 / nk);
  rms_vinf = std::sqrt(rms_vinf / nk);

  double spread0 = 0.0, spreadinf = 0.0;
  for (std::size_t k = 0; k < sel.size(); ++k) {
    spread0 = std::max(spread0, std::abs(x0[k] - dec.a0));
    spreadinf = std::max(spreadinf, std::abs(xinf[k] - dec.a_inf));
  }
  const double scale0 = rms_v0 > 0.0 ? rms_g / rms_v0 : 1.0;
  const double scaleinf = rms_vinf > 0.0 ? rms_g / rms_vinf : 1.0;
  if (spread0 > 1e-5 * std::max(std::abs(dec.a0), 1e-3 * scale0) + 1e-13 ||
      spreadinf >
          1e-5 * std::max(std::abs(dec.a_inf), 1e-3 * scaleinf) + 1e-13)
    throw NumericsError("decompose_adjoint: Wronskian limits did not settle");

  // closures: analytic model below the grid, interpolated prefix
  // integrals on it
  auto gridp = g.grid;
  const FrobeniusSeries fm = sp.fm, fp = sp.fp;
  dec.b_inf_fn = [gridp, b_inf_nodal, hm, fm, fp, gt, qs, W](double r) {
    if (r < gridp->r_min) {
      SeriesPair local{fm, fp, 0.0};
      return (gt * model_tail(fm, hm, local, r) +
              qs * model_tail(fp, hm, local, r)) /
             W;
    }
    return interpolate(*gridp, *b_inf_nodal, r);
  };
  dec.b0_fn = [gridp, b0_nodal, hm, fm, fp, qs, W](double r) {
    if (r < gridp->r_min) {
      SeriesPair local{fm, fp, 0.0};
      return -qs * model_tail(fp, hm, local, r) / W;
    }
    return interpolate(*gridp, *b0_nodal, r);
  };
  return dec;
}

ClosureCertificate closure_membership(const AdjointDecomposition& dec,
                                      double tol) {
  ClosureCertificate cert;
  cert.a0_mag = std::abs(dec.a0);
  cert.a_inf_mag = std::abs(dec.a_inf);
  cert.member = cert.a0_mag <= tol && cert.a_inf_mag <= tol;
  return cert;
}

SingularCoefficient singular_coefficient(const GreenOperator& G,
                                         const SpinorFunction& g, double beta,
                                         const SpinorFunction& Sg) {
  if (beta == 0.0)
    throw DomainError("singular_coefficient: beta must be nonzero");
  if (g.grid != G.grid)
    throw DomainError("singular_coefficient: input not on the operator grid");
  require_same_grid(g, Sg, "singular_coefficient");
  const RadialGrid& grid = *G.grid;
  const std::size_t n = grid.size();
  const FundamentalSystem& F = G.system;

  const SeriesPair sp{F.f_minus, F.f_plus,
                      wronskian_at(F.f_minus.leading(), F.f_plus.leading())};
  const HModel hm = fit_h_model(grid, Sg, sp);
  const double gt = F.gamma_tilde, qs = F.q_scale, W = F.w0_inf;

  // integral route: <v_inf, Sg> / (beta ||v_inf||^2), tail included
  std::complex<double> moment =
      gt * model_tail(sp.fm, hm, sp, grid.r_min) +
      qs * model_tail(sp.fp, hm, sp, grid.r_min);
  for (std::size_t i = 0; i < n; ++i)
    moment += grid.weights[i] *
              spinor_dot(G.v_inf_nodes[i], Sg.upper[i], Sg.lower[i]);
  SingularCoefficient out;
  out.by_integral = moment / (beta * G.cached_vinf_norm_sq);

  // limit route: b-corrected Wronskian limit of the v_inf-coefficient
  std::vector<std::complex<double>> h0(n);
  for (std::size_t i = 0; i < n; ++i)
    h0[i] = spinor_dot(G.v0_nodes[i], Sg.upper[i], Sg.lower[i]);
  const auto cum0 = cumulative_integral(grid, h0);
  const std::complex<double> t0_raw =
      qs * model_tail(sp.fp, hm, sp, grid.r_min);

  std::vector<std::size_t> sel;
  double last = 0.0;
  for (std::size_t i = 0; i < n && grid.nodes[i] <= 1e-3; ++i) {
    if (grid.nodes[i] >= std::max(1e-6, grid.r_min) &&
        (sel.empty() || grid.nodes[i] > last * 2.0)) {
      sel.push_back(i);
      last = grid.nodes[i];
      if (sel.size() >= 8) break;
    }
  }
  if (sel.empty()) sel = {Sg.edge_margin, Sg.edge_margin + 1};
  std::complex<double> acc{0.0, 0.0};
  for (const std::size_t i : sel) {
    const std::complex<double> b0_i = -(t0_raw + cum0[i]) / W;
    acc += wronskian_mixed(G.v0_nodes[i], g.upper[i], g.lower[i]) / W - b0_i;
  }
  out.by_limit = acc / static_cast<double>(sel.size());
  out.value = out.by_limit;

  const double denom = std::abs(out.by_limit) + std::abs(out.by_integral);
  const double floor =
      1e-6 * l2_norm(g) / std::sqrt(G.cached_vinf_norm_sq);
  if (denom > floor) {
    out.disagreement = std::abs(out.by_limit - out.by_integral) / denom;
    if (out.disagreement > 1e-3)
      throw NumericsError("singular_coefficient: routes disagree (" +
                          std::to_string(out.disagreement) + ")");
  }
  return out;
}

SingularCoefficient singular_coefficient(const Coupling& c,
                                         const SpinorFunction& g, double beta,
                                         const SpinorFunction& Sg) {
  return singular_coefficient(make_green_operator(c, g.grid), g, beta, Sg);
}

std::pair<SpinorFunction, SpinorFunction> regular_singular_split(
    const FundamentalSystem& F, const SpinorFunction& g,
    const AdjointDecomposition& dec) {
  if (!g.grid) throw DomainError("regular_singular_split: no grid");
  SpinorFunction sing = SpinorFunction::zero(g.grid);
  SpinorFunction reg = SpinorFunction::zero(g.grid);
  reg.edge_margin = g.edge_margin;
  for (std::size_t i = 0; i < g.grid->size(); ++i) {
    const RealSpinorValue v = F.eval_v_inf(g.grid->nodes[i]);
    sing.upper[i] = dec.a_inf * v[0];
    sing.lower[i] = dec.a_inf * v[1];
    reg.upper[i] = g.upper[i] - sing.upper[i];
    reg.lower[i] = g.lower[i] - sing.lower[i];
  }
  return {reg, sing};
}

std::pair<SpinorFunction, SpinorFunction> regular_singular_split(
    const Coupling& c, const SpinorFunction& g,
    const AdjointDecomposition& dec) {
  return regular_singular_split(build_fundamental_system(c), g, dec);
}

}  // namespace dclab
