#include "dclab/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "dclab/errors.hpp"

namespace dclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

int thread_count() {
  static const int n = [] {
    if (const char* s = std::getenv("DCLAB_THREADS")) {
      const int v = std::atoi(s);
      if (v >= 1) return std::min(v, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(std::min(4u, hw)) : 1;
  }();
  return n;
}

thread_local bool tl_in_pool = false;

// Index-parallel map with per-index result slots: bit-stable output for
// any worker count.  fn(k) may throw NumericsError/DomainError, which
// the caller observes as a missing slot plus a diagnostic.  Nested use
// (a pool worker reaching another parallel_for) runs serially.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const int workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), count));
  if (workers <= 1 || tl_in_pool) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mu;
  auto body = [&] {
    tl_in_pool = true;
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= count) return;
      try {
        fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(fatal_mu);
        if (!fatal) fatal = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (fatal) std::rethrow_exception(fatal);
}

struct DecayResult {
  SpinorFunction f;
  BoundaryData bd;
};

// One inward sweep from R; nodal samples of the decaying direction.
SpinorFunction integrate_decay(const Coupling& c, double E, double R,
                               const std::shared_ptr<const RadialGrid>& grid) {
  const double lambda = std::sqrt(1.0 - E * E);
  const double s = -c.nu * E / lambda;
  const double w0u = std::sqrt(1.0 + E), w0l = -std::sqrt(1.0 - E);
  const double w1u = ((s + c.kappa) * w0u + c.nu * w0l) / lambda;
  const SpinorValue seed{std::complex<double>(w0u + w1u / R),
                         std::complex<double>(w0l)};

  std::vector<double> samples(grid->nodes.rbegin(), grid->nodes.rend());
  const IvpTrace trace =
      integrate_ivp(c, E, R, seed, Direction::inward, grid->r_min, samples);

  SpinorFunction f = SpinorFunction::zero(grid);
  const std::size_t n = grid->size();
  for (std::size_t k = 0; k < n; ++k) {
    // trace: [R, samples (descending), r_min]
    const SpinorValue& u = trace.u[1 + k];
    f.upper[n - 1 - k] = u[0].real();
    f.lower[n - 1 - k] = u[1].real();
  }
  const double nrm = l2_norm(f);
  if (!(nrm > 0.0))
    throw NumericsError("decaying_solution: vanished along the sweep");
  for (std::size_t i = 0; i < n; ++i) {
    f.upper[i] /= nrm;
    f.lower[i] /= nrm;
  }
  return f;
}

BoundaryData boundary_of(const Coupling& c, double E, const SpinorFunction& f) {
  SpinorFunction sf = f;
  for (std::size_t i = 0; i < f.grid->size(); ++i) {
    sf.upper[i] = E * f.upper[i];
    sf.lower[i] = E * f.lower[i];
  }
  return extract_boundary_data(c, f, {1e-6, 1e-3}, &sf);
}

double fold_angle(double t) {
  while (t < -kPi / 2) t += kPi;
  while (t >= kPi / 2) t -= kPi;
  return t;
}

double boundary_angle(const BoundaryData& bd) {
  return fold_angle(std::atan2(bd.g1[0].real(), bd.g0[0].real()));
}

DecayResult decaying_solution_internal(
    const Coupling& c, double E, std::shared_ptr<const RadialGrid> grid) {
  if (!(E > -1.0) || !(E < 1.0))
    throw DomainError("decaying_solution: E must lie in (-1, 1)");
  if (!grid) grid = default_grid();
  const double lambda = std::sqrt(1.0 - E * E);
  // the unwanted direction shrinks inward like e^{-2 lambda (R - r)};
  // R >= 12/lambda clears 1e-10 of it by the top of the grid
  const double R1 = std::max(1.2 * grid->r_max, 12.0 / lambda);

  DecayResult cur;
  cur.f = integrate_decay(c, E, R1, grid);
  cur.bd = boundary_of(c, E, cur.f);
  double theta = boundary_angle(cur.bd);
  double R = R1;
  for (int pass = 0; pass < 2; ++pass) {
    const double R2 = 2.0 * R;
    DecayResult nxt;
    nxt.f = integrate_decay(c, E, R2, grid);
    nxt.bd = boundary_of(c, E, nxt.f);
    const double theta2 = boundary_angle(nxt.bd);
    const double moved = std::abs(fold_angle(theta2 - theta));
    cur = std::move(nxt);
    theta = theta2;
    R = R2;
    if (moved <= 1e-5) return cur;
    if (pass == 1 && moved > 1e-4)
      throw NumericsError("decaying_solution: start radius insufficient "
                          "(boundary direction still moving)");
  }
  return cur;
}

BetaValue beta_from_g01(double g0p, double g1p, double fit_residual,
                        std::pair<double, double> cd) {
  const double thr = std::max(1e-9, 10.0 * fit_residual);
  BetaValue out;
  if (std::abs(g0p) <= thr * std::abs(g1p)) {
    out.is_infinite = true;
    return out;
  }
  out.value = (g1p / g0p - cd.second) / cd.first;
  return out;
}

std::pair<double, double> eval_g01(SpectralContext& ctx, double E,
                                   std::mutex& mu) {
  {
    std::lock_guard<std::mutex> lock(mu);
    const auto it = ctx.g01_cache.find(E);
    if (it != ctx.g01_cache.end()) return it->second;
  }
  const DecayResult dr = decaying_solution_internal(ctx.c, E, ctx.grid);
  const std::pair<double, double> out{dr.bd.g0[0].real(), dr.bd.g1[0].real()};
  std::lock_guard<std::mutex> lock(mu);
  ctx.g01_cache.emplace(E, out);
  return out;
}

}  // namespace

void parallel_cells(std::size_t count,
                    const std::function<void(std::size_t)>& fn) {
  parallel_for(count, [&](std::size_t k) { fn(k); });
}

SpectralContext make_spectral_context(const Coupling& c,
                                      std::shared_ptr<const RadialGrid> grid) {
  SpectralContext ctx;
  ctx.c = c;
  ctx.grid = grid ? std::move(grid) : default_grid();
  if (c.is_critical()) {
    ctx.op = make_green_operator(c, ctx.grid);
    ctx.cd = cd_constants(c, *ctx.op);
    ctx.norm = estimate_sd_inverse_norm(*ctx.op);
    ctx.has_classification = true;
  }
  return ctx;
}

SpinorFunction decaying_solution(const Coupling& c, double E,
                                 std::shared_ptr<const RadialGrid> grid) {
  return decaying_solution_internal(c, E, std::move(grid)).f;
}

BetaValue beta_of_energy(const Coupling& c, double E,
                         std::pair<double, double> constants) {
  if (constants.first == 0.0)
    throw DomainError("beta_of_energy: c_nu must be nonzero");
  const DecayResult dr = decaying_solution_internal(c, E, nullptr);
  const double g0p = dr.bd.g0[0].real(), g1p = dr.bd.g1[0].real();
  if (std::abs(g0p) + std::abs(g1p) < 1e-10)
    throw NumericsError("beta_of_energy: degenerate boundary data");
  return beta_from_g01(g0p, g1p, dr.bd.fit_residual, constants);
}

SpectralReport eigenvalues_in_gap(SpectralContext& ctx,
                                  const ExtensionSpec& spec,
                                  std::pair<double, double> E_range,
                                  int n_scan) {
  const auto [lo, hi] = E_range;
  if (!(lo > -1.0) || !(lo < hi) || !(hi < 1.0))
    throw DomainError("eigenvalues_in_gap: E_range must lie inside (-1, 1)");
  if (n_scan < 2) throw DomainError("eigenvalues_in_gap: n_scan < 2");
  if (!spec.is_infinite && !ctx.has_classification)
    throw DomainError("eigenvalues_in_gap: finite-beta conditions need a "
                      "critical channel");

  SpectralReport report;
  report.coupling = ctx.c;
  report.spec = spec;
  report.sd_inv_norm = ctx.norm.value;
  if (spec.is_infinite)
    report.gap_bound = ctx.norm.value > 0.0 ? 1.0 / ctx.norm.value : 0.0;
  else
    report.gap_bound = gap_lower_bound(spec.beta, std::max(ctx.norm.value,
                                                           1e-300));

  const double theta_t =
      spec.is_infinite ? kPi / 2 : std::atan(spec.ratio_target.real());
  const double ct = std::cos(theta_t), st = std::sin(theta_t);

  const std::size_t count = static_cast<std::size_t>(n_scan) + 1;
  std::vector<double> Es(count);
  for (std::size_t k = 0; k < count; ++k)
    Es[k] = lo + (hi - lo) * static_cast<double>(k) /
                     static_cast<double>(n_scan);

  std::mutex mu;
  std::vector<char> valid(count, 0);
  std::vector<double> fval(count, 0.0);
  std::vector<std::string> diag(count);
  parallel_for(count, [&](std::size_t k) {
    try {
      const auto [g0, g1] = eval_g01(ctx, Es[k], mu);
      if (std::abs(g0) < 1e-10 && std::abs(g1) < 1e-10) {
        diag[k] = "degenerate boundary data at E = " + std::to_string(Es[k]) +
                  ", sample skipped";
        return;
      }
      fval[k] = g1 * ct - g0 * st;
      valid[k] = 1;
    } catch (const NumericsError& e) {
      diag[k] = "sample at E = " + std::to_string(Es[k]) + " failed: " +
                e.what();
    }
  });
  for (auto& d : diag)
    if (!d.empty()) report.diagnostics.push_back(std::move(d));

  auto eval_f = [&](double E) {
    const auto [g0, g1] = eval_g01(ctx, E, mu);
    return g1 * ct - g0 * st;
  };

  std::vector<double> roots;
  for (std::size_t k = 0; k + 1 < count; ++k) {
    if (!valid[k] || !valid[k + 1]) continue;
    if (fval[k] == 0.0) {
      roots.push_back(Es[k]);
      continue;
    }
    if (fval[k] * fval[k + 1] >= 0.0) continue;
    double a = Es[k], b = Es[k + 1], fa = fval[k];
    try {
      while (b - a > 1e-9) {
        const double m = 0.5 * (a + b);
        const double fm = eval_f(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if (fa * fm < 0.0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      roots.push_back(0.5 * (a + b));
    } catch (const NumericsError& e) {
      report.diagnostics.push_back("bisection in (" + std::to_string(Es[k]) +
                                   ", " + std::to_string(Es[k + 1]) +
                                   ") abandoned: " + e.what());
    }
  }
  if (valid[count - 1] && fval[count - 1] == 0.0) roots.push_back(Es.back());

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double x, double y) {
                            return std::abs(x - y) <= 2e-9;
                          }),
              roots.end());

  for (const double E : roots) {
    try {
      const DecayResult dr = decaying_solution_internal(ctx.c, E, ctx.grid);
      const double res = boundary_residual(spec, dr.bd);
      if (res <= 1e-4) {
        report.eigenvalues.push_back({E, res, dr.bd});
      } else {
        report.diagnostics.push_back("root at E = " + std::to_string(E) +
                                     " rejected, boundary residual " +
                                     std::to_string(res));
      }
    } catch (const NumericsError& e) {
      report.diagnostics.push_back("root at E = " + std::to_string(E) +
                                   " rejected: " + e.what());
    }
  }
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
            [](const EigenvalueRecord& x, const EigenvalueRecord& y) {
              return x.E < y.E;
            });
  return report;
}

SpectralReport eigenvalues_in_gap(const Coupling& c, const ExtensionSpec& spec,
                                  std::pair<double, double> E_range,
                                  int n_scan) {
  SpectralContext ctx = make_spectral_context(c);
  return eigenvalues_in_gap(ctx, spec, E_range, n_scan);
}

double sommerfeld_energy(double nu, int n, int kappa) {
  if (kappa == 0) throw DomainError("sommerfeld_energy: kappa must be nonzero");
  if (n < 0) throw DomainError("sommerfeld_energy: n must be >= 0");
  const double k2 = static_cast<double>(kappa) * kappa;
  if (!(k2 > nu * nu))
    throw DomainError("sommerfeld_energy: requires kappa^2 > nu^2");
  const double denom = n + std::sqrt(k2 - nu * nu);
  return 1.0 / std::sqrt(1.0 + nu * nu / (denom * denom));
}

SpinorFunction apply_sbeta_inverse(const GreenOperator& G,
                                   const ExtensionSpec& spec,
                                   const SpinorFunction& g) {
  if (spec.is_infinite) return apply_sd_inverse(G, g);
  if (spec.beta == 0.0)
    throw DomainError("apply_sbeta_inverse: S_beta is not invertible at "
                      "beta = 0");
  if (g.grid != G.grid)
    throw DomainError("apply_sbeta_inverse: input not on the operator grid");

  SpinorFunction f = apply_sd_inverse(G, g);
  const RadialGrid& grid = *G.grid;
  std::complex<double> moment{0.0, 0.0};
  for (std::size_t i = 0; i < grid.size(); ++i)
    moment += grid.weights[i] * (G.v_inf_nodes[i][0] * g.upper[i] +
                                 G.v_inf_nodes[i][1] * g.lower[i]);
  const SpinorValue g_first{g.upper.front(), g.lower.front()};
  moment += G.system.gamma_tilde *
                tail_integral_frozen(G.system.f_minus, g_first, grid.r_min) +
            G.system.q_scale *
                tail_integral_frozen(G.system.f_plus, g_first, grid.r_min);

  const std::complex<double> coef =
      moment / (spec.beta * G.cached_vinf_norm_sq);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    f.upper[i] += coef * G.v_inf_nodes[i][0];
    f.lower[i] += coef * G.v_inf_nodes[i][1];
  }
  return f;
}

double gap_lower_bound(double beta, double sd_inv_norm) {
  if (!(sd_inv_norm > 0.0))
    throw DomainError("gap_lower_bound: sd_inv_norm must be positive");
  const double ab = std::abs(beta);
  return ab / (ab * sd_inv_norm + 1.0);
}

SpinorFunction krein_phi_z(const GreenOperator& G, double z) {
  const RadialGrid& grid = *G.grid;
  const std::size_t n = grid.size();
  SpinorFunction phi = SpinorFunction::zero(G.grid);
  for (std::size_t i = 0; i < n; ++i) {
    phi.upper[i] = G.v_inf_nodes[i][0];
    phi.lower[i] = G.v_inf_nodes[i][1];
  }
  if (z == 0.0) return phi;
  if (!(std::abs(z) < 1.0))
    throw DomainError("krein_phi_z: z must lie in the gap (-1, 1)");

  const Coupling& c = G.system.coupling;
  const double bk = std::sqrt(static_cast<double>(c.kappa) * c.kappa -
                              c.nu * c.nu);

  // z-shifted fundamental pair: regular branch by series + outward
  // sweep, decaying branch by inward sweep
  const FrobeniusSeries fpz(c, z, +bk);
  std::vector<RealSpinorValue> v0z(n), vinfz(n);
  {
    constexpr double kSwitch = 0.5;
    std::vector<double> far;
    std::size_t i_switch = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (grid.nodes[i] <= kSwitch) {
        v0z[i] = fpz.eval(grid.nodes[i]);
      } else {
        if (i_switch == n) i_switch = i;
        far.push_back(grid.nodes[i]);
      }
    }
    if (!far.empty()) {
      const RealSpinorValue at = fpz.eval(kSwitch);
      const SpinorValue seed{std::complex<double>(at[0]),
                             std::complex<double>(at[1])};
      far.pop_back();
      const IvpTrace trace = integrate_ivp(c, z, kSwitch, seed,
                                           Direction::outward,
                                           grid.nodes.back(), far);
      for (std::size_t k = 0; k + 1 < trace.u.size(); ++k) {
        const SpinorValue& u = trace.u[k + 1];
        v0z[i_switch + k] = {u[0].real(), u[1].real()};
      }
      const SpinorValue& last = trace.u.back();
      v0z[n - 1] = {last[0].real(), last[1].real()};
    }
  }
  {
    const double lambda = std::sqrt(1.0 - z * z);
    const double s = -c.nu * z / lambda;
    const double w0u = std::sqrt(1.0 + z), w0l = -std::sqrt(1.0 - z);
    const double w1u = ((s + c.kappa) * w0u + c.nu * w0l) / lambda;
    const double R = std::max(1.2 * grid.r_max, 12.0 / lambda);
    const SpinorValue seed{std::complex<double>(w0u + w1u / R),
                           std::complex<double>(w0l)};
    std::vector<double> samples(grid.nodes.rbegin(), grid.nodes.rend());
    const IvpTrace trace =
        integrate_ivp(c, z, R, seed, Direction::inward, grid.r_min, samples);
    for (std::size_t k = 0; k < n; ++k) {
      const SpinorValue& u = trace.u[1 + k];
      vinfz[n - 1 - k] = {u[0].real(), u[1].real()};
    }
  }

  // shifted Wronskian, checked for constancy and conditioning
  double W = 0.0;
  {
    double ref = 0.0, spread = 0.0;
    bool first = true;
    for (const double probe : {0.1, 1.0, 5.0}) {
      const auto it = std::lower_bound(grid.nodes.begin(), grid.nodes.end(),
                                       probe);
      const std::size_t i = std::min<std::size_t>(
          static_cast<std::size_t>(it - grid.nodes.begin()), n - 1);
      const double wi = v0z[i][0] * vinfz[i][1] - v0z[i][1] * vinfz[i][0];
      const double scale =
          std::hypot(v0z[i][0], v0z[i][1]) * std::hypot(vinfz[i][0],
                                                        vinfz[i][1]);
      if (std::abs(wi) < 1e-6 * scale)
        throw NumericsError("krein_phi_z: z too close to the spectrum of "
                            "the distinguished extension");
      if (first) {
        ref = wi;
        first = false;
      }
      spread = std::max(spread, std::abs(wi - ref));
      W = wi;
    }
    if (spread > 1e-6 * std::abs(ref))
      throw NumericsError("krein_phi_z: shifted Wronskian not constant");
    W = ref;
  }

  // Theta-apply of the shifted inverse to z*Phi
  std::vector<std::complex<double>> h0(n), hinf(n);
  for (std::size_t i = 0; i < n; ++i) {
    h0[i] = z * (v0z[i][0] * phi.upper[i] + v0z[i][1] * phi.lower[i]);
    hinf[i] = z * (vinfz[i][0] * phi.upper[i] + vinfz[i][1] * phi.lower[i]);
  }
  const auto cum0 = cumulative_integral(grid, h0);
  const auto iinf = backward_cumulative_integral(grid, hinf);
  // sub-grid endpoint of the regular cumulative: Phi in series form
  const std::complex<double> tail0 =
      z * (G.system.gamma_tilde *
               tail_integral_product(fpz, G.system.f_minus, grid.r_min) +
           G.system.q_scale *
               tail_integral_product(fpz, G.system.f_plus, grid.r_min));

  SpinorFunction out = SpinorFunction::zero(G.grid);
  for (std::size_t i = 0; i < n; ++i) {
    const std::complex<double> th0 = (tail0 + cum0[i]) / W;
    const std::complex<double> thinf = iinf[i] / W;
    out.upper[i] = phi.upper[i] -
                   (thinf * v0z[i][0] + th0 * vinfz[i][0]);
    out.lower[i] = phi.lower[i] -
                   (thinf * v0z[i][1] + th0 * vinfz[i][1]);
  }
  return out;
}

}  // namespace dclab
