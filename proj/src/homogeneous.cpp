#include "dclab/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "dclab/radial.hpp"
#include "dclab/specfun.hpp"

namespace dclab {

FrobeniusSeries::FrobeniusSeries(const Coupling& c, double E, double s,
                                 int n_terms) {
  if (n_terms < 2) throw DomainError("FrobeniusSeries: n_terms too small");
  s_ = s;
  u_.resize(n_terms);
  u_[0] = leading_vector(c, s);
  const double Bsq = static_cast<double>(c.kappa) * c.kappa - c.nu * c.nu;
  for (int k = 1; k < n_terms; ++k) {
    const double sk = s + k;
    const double det = sk * sk - Bsq;
    // rhs = (E - M1) u_{k-1}
    const double r0 = (E - 1.0) * u_[k - 1][0];
    const double r1 = (E + 1.0) * u_[k - 1][1];
    // adjugate of [[nu, kappa - sk], [kappa + sk, nu]]
    u_[k][0] = (c.nu * r0 - (c.kappa - sk) * r1) / det;
    u_[k][1] = (-(c.kappa + sk) * r0 + c.nu * r1) / det;
  }
}

RealSpinorValue FrobeniusSeries::eval_scaled(double r) const {
  RealSpinorValue acc{0.0, 0.0};
  for (auto it = u_.rbegin(); it != u_.rend(); ++it) {
    acc[0] = acc[0] * r + (*it)[0];
    acc[1] = acc[1] * r + (*it)[1];
  }
  return acc;
}

RealSpinorValue FrobeniusSeries::eval(double r) const {
  if (!(r > 0.0)) throw DomainError("FrobeniusSeries::eval: r must be > 0");
  const double p = std::pow(r, s_);
  RealSpinorValue v = eval_scaled(r);
  return {p * v[0], p * v[1]};
}

RealSpinorValue FrobeniusSeries::leading_vector(const Coupling& c, double s) {
  double scale = 1.0;
  if (c.kappa == 1) scale = (1.0 + c.nu - s) / ((1.0 + c.nu) * (1.0 - s));
  return {(c.kappa - s) * scale, -c.nu * scale};
}

std::complex<double> wronskian_at(const SpinorValue& f, const SpinorValue& g) {
  return f[0] * g[1] - f[1] * g[0];
}

double wronskian_at(const RealSpinorValue& f, const RealSpinorValue& g) {
  return f[0] * g[1] - f[1] * g[0];
}

namespace {

// Shared constants of the kappa = +1 closed forms.
struct ClosedFormContext {
  double nu, B;
  double A;     // (1+nu+B)/(1+nu), upper leading entry
  double C;     // -(1+nu-B)/(1+nu), lower leading entry
  FrobeniusSeries f_minus, f_plus;
  double gamma_tilde, q_scale;

  explicit ClosedFormContext(const Coupling& c)
      : nu(c.nu),
        B(c.B),
        A((1.0 + c.nu + c.B) / (1.0 + c.nu)),
        C(-(1.0 + c.nu - c.B) / (1.0 + c.nu)),
        f_minus(c, 0.0, -c.B),
        f_plus(c, 0.0, c.B),
        gamma_tilde(gamma_fn(2.0 * c.B) / gamma_fn(c.B)),
        q_scale(std::pow(4.0, c.B) * gamma_fn(-2.0 * c.B) / gamma_fn(-c.B)) {}

  RealSpinorValue u0_closed(double r) const {
    const double m1 = kummer_m({-B, 1.0 - 2.0 * B}, 2.0 * r);
    const double m2 = kummer_m({1.0 - B, 2.0 - 2.0 * B}, 2.0 * r);
    const double d = 2.0 * r * B / ((1.0 + nu) * (1.0 - 2.0 * B));
    const double pre = std::exp(-r) * std::pow(r, -B);
    return {pre * (A * m1 + d * m2), pre * (C * m1 + d * m2)};
  }

  RealSpinorValue uinf_closed(double r) const {
    const double t1 = tricomi_u({-B, 1.0 - 2.0 * B}, 2.0 * r);
    const double t2 = tricomi_u({1.0 - B, 2.0 - 2.0 * B}, 2.0 * r);
    const double d = 2.0 * r * B / (1.0 + nu);
    const double pre = std::exp(-r) * std::pow(r, -B);
    return {pre * (A * t1 - d * t2), pre * (C * t1 - d * t2)};
  }

  RealSpinorValue series_combo(double r, double cm, double cp) const {
    const RealSpinorValue fm = f_minus.eval(r);
    const RealSpinorValue fp = f_plus.eval(r);
    return {cm * fm[0] + cp * fp[0], cm * fm[1] + cp * fp[1]};
  }
};

constexpr double kSeriesSwitch = 0.5;

void require_positive_radius(double r) {
  if (!(r > 0.0)) throw DomainError("solution evaluator: r must be > 0");
}

}  // namespace

UPair build_u_pair(const Coupling& c) {
  if (!c.is_critical())
    throw DomainError("build_u_pair: coupling must be critical");
  if (c.kappa != 1)
    throw DomainError(
        "build_u_pair: closed forms are wired for kappa=+1; use "
        "build_fundamental_system for kappa=-1");
  auto ctx = std::make_shared<ClosedFormContext>(c);
  UPair pair;
  pair.u0 = [ctx](double r) {
    require_positive_radius(r);
    return r <= kSeriesSwitch ? ctx->f_minus.eval(r) : ctx->u0_closed(r);
  };
  pair.u_inf = [ctx](double r) {
    require_positive_radius(r);
    return r <= kSeriesSwitch
               ? ctx->series_combo(r, ctx->gamma_tilde, ctx->q_scale)
               : ctx->uinf_closed(r);
  };
  return pair;
}

namespace {

// Numeric solution handle: values anchored on a dense radius ladder,
// off-anchor queries resolved by a short IVP hop from the nearest anchor.
struct AnchoredSolution {
  Coupling c;
  double E = 0.0;
  std::vector<double> r_anchor;        // increasing
  std::vector<RealSpinorValue> val;

  RealSpinorValue eval(double r) const {
    const auto it = std::lower_bound(r_anchor.begin(), r_anchor.end(), r);
    std::size_t i;
    if (it == r_anchor.begin()) {
      i = 0;
    } else if (it == r_anchor.end()) {
      i = r_anchor.size() - 1;
    } else {
      i = static_cast<std::size_t>(it - r_anchor.begin());
      if (std::abs(r_anchor[i - 1] - r) < std::abs(r_anchor[i] - r)) --i;
    }
    const double ra = r_anchor[i];
    if (ra == r) return val[i];
    const SpinorValue seed{std::complex<double>(val[i][0]),
                           std::complex<double>(val[i][1])};
    const auto dir = r > ra ? Direction::outward : Direction::inward;
    const auto trace = integrate_ivp(c, E, ra, seed, dir, r);
    return {trace.end()[0].real(), trace.end()[1].real()};
  }
};

// Least-squares coefficients (c_minus, c_plus) of samples against the
// two series branches; plain 2x2 normal equations with column scaling.
std::pair<double, double> fit_two_branch(const std::vector<double>& radii,
                                         const std::vector<RealSpinorValue>& y,
                                         const FrobeniusSeries& fm,
                                         const FrobeniusSeries& fp) {
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const RealSpinorValue vm = fm.eval(radii[i]);
    const RealSpinorValue vp = fp.eval(radii[i]);
    for (int s = 0; s < 2; ++s) {
      a11 += vm[s] * vm[s];
      a12 += vm[s] * vp[s];
      a22 += vp[s] * vp[s];
      b1 += vm[s] * y[i][s];
      b2 += vp[s] * y[i][s];
    }
  }
  const double det = a11 * a22 - a12 * a12;
  if (det == 0.0)
    throw NumericsError("fit_two_branch: degenerate normal equations");
  return {(b1 * a22 - b2 * a12) / det, (a11 * b2 - a12 * b1) / det};
}

FundamentalSystem build_system_kappa_minus(const Coupling& c) {
  FundamentalSystem sys;
  sys.coupling = c;
  sys.f_minus = FrobeniusSeries(c, 0.0, -c.B);
  sys.f_plus = FrobeniusSeries(c, 0.0, c.B);
  sys.gamma_tilde = gamma_fn(2.0 * c.B) / gamma_fn(c.B);

  // decaying solution: seed the asymptotic direction (1,-1) with its 1/R
  // correction at E = 0 (power-free since the Coulomb power is -nu E/lambda)
  const double R = 40.0;
  const double w1_up = (c.kappa * 1.0 + c.nu * -1.0);  // [(kappa+s)w0+ + nu w0-]/lambda
  const SpinorValue seed{std::complex<double>(1.0 + w1_up / R),
                         std::complex<double>(-1.0)};

  auto vinf = std::make_shared<AnchoredSolution>();
  vinf->c = c;
  const auto& grid = *default_grid();
  std::vector<double> samples(grid.nodes.rbegin(), grid.nodes.rend());
  auto trace = integrate_ivp(c, 0.0, R, seed, Direction::inward,
                             grid.r_min * 0.5, samples);
  vinf->r_anchor.assign(trace.r.rbegin(), trace.r.rend());
  vinf->val.resize(trace.u.size());
  for (std::size_t i = 0; i < trace.u.size(); ++i) {
    const auto& u = trace.u[trace.u.size() - 1 - i];
    vinf->val[i] = {u[0].real(), u[1].real()};
  }

  // normalise so the F_minus coefficient equals gamma_tilde
  std::vector<double> fit_r;
  std::vector<RealSpinorValue> fit_y;
  for (std::size_t i = 0; i < vinf->r_anchor.size(); ++i) {
    const double r = vinf->r_anchor[i];
    if (r >= 1e-6 && r <= 1e-3 && fit_r.size() < 48 &&
        (fit_r.empty() || r > fit_r.back() * 1.15)) {
      fit_r.push_back(r);
      fit_y.push_back(vinf->val[i]);
    }
  }
  auto [cm, cp] = fit_two_branch(fit_r, fit_y, sys.f_minus, sys.f_plus);
  if (cm == 0.0)
    throw NumericsError("fundamental system: decaying solution has no "
                        "singular branch component");
  const double scale = sys.gamma_tilde / cm;
  for (auto& v : vinf->val) {
    v[0] *= scale;
    v[1] *= scale;
  }
  sys.q_scale = cp * scale;

  // v0: pure r^{+B} branch, series inside, continued outward by the IVP
  auto v0 = std::make_shared<AnchoredSolution>();
  v0->c = c;
  const double q_scale = sys.q_scale;
  const FrobeniusSeries fp_series = sys.f_plus;
  {
    const RealSpinorValue at_half = fp_series.eval(kSeriesSwitch);
    const SpinorValue seed0{std::complex<double>(q_scale * at_half[0]),
                            std::complex<double>(q_scale * at_half[1])};
    std::vector<double> out_samples;
    for (double rn : grid.nodes)
      if (rn > kSeriesSwitch) out_samples.push_back(rn);
    auto t0 = integrate_ivp(c, 0.0, kSeriesSwitch, seed0, Direction::outward,
                            grid.r_max, out_samples);
    v0->r_anchor = t0.r;
    v0->val.resize(t0.u.size());
    for (std::size_t i = 0; i < t0.u.size(); ++i)
      v0->val[i] = {t0.u[i][0].real(), t0.u[i][1].real()};
  }

  sys.eval_v_inf = [vinf, ctx = std::make_shared<FrobeniusSeries>(sys.f_minus),
                    fp = std::make_shared<FrobeniusSeries>(sys.f_plus),
                    gt = sys.gamma_tilde, qs = sys.q_scale](double r) {
    require_positive_radius(r);
    if (r <= kSeriesSwitch) {
      const RealSpinorValue fm = ctx->eval(r);
      const RealSpinorValue fpv = fp->eval(r);
      return RealSpinorValue{gt * fm[0] + qs * fpv[0],
                             gt * fm[1] + qs * fpv[1]};
    }
    return vinf->eval(r);
  };
  sys.eval_v0 = [v0, fp = std::make_shared<FrobeniusSeries>(sys.f_plus),
                 qs = sys.q_scale](double r) {
    require_positive_radius(r);
    if (r <= kSeriesSwitch) {
      const RealSpinorValue fpv = fp->eval(r);
      return RealSpinorValue{qs * fpv[0], qs * fpv[1]};
    }
    return v0->eval(r);
  };

  const RealSpinorValue wp = sys.f_plus.leading();
  sys.q_plus = sys.q_scale * wp[0];
  sys.q_minus = sys.q_scale * wp[1];
  sys.gamma_nu = sys.gamma_tilde * sys.f_minus.leading()[0];
  sys.w0_inf = wronskian_at(sys.eval_v0(1.0), sys.eval_v_inf(1.0));
  if (sys.w0_inf == 0.0)
    throw NumericsError("fundamental system: vanishing Wronskian");
  return sys;
}

}  // namespace

FundamentalSystem build_fundamental_system(const Coupling& c) {
  if (!c.is_critical())
    throw DomainError("build_fundamental_system: coupling must be critical");
  if (c.kappa == -1) return build_system_kappa_minus(c);

  FundamentalSystem sys;
  sys.coupling = c;
  auto ctx = std::make_shared<ClosedFormContext>(c);
  sys.f_minus = ctx->f_minus;
  sys.f_plus = ctx->f_plus;
  sys.gamma_tilde = ctx->gamma_tilde;
  sys.q_scale = ctx->q_scale;

  sys.eval_v_inf = [ctx](double r) {
    require_positive_radius(r);
    return r <= kSeriesSwitch
               ? ctx->series_combo(r, ctx->gamma_tilde, ctx->q_scale)
               : ctx->uinf_closed(r);
  };
  sys.eval_v0 = [ctx](double r) {
    require_positive_radius(r);
    if (r <= kSeriesSwitch) return ctx->series_combo(r, 0.0, ctx->q_scale);
    // v0 = u_inf - gamma_tilde u0; benign subtraction away from 0
    const RealSpinorValue ui = ctx->uinf_closed(r);
    const RealSpinorValue u0 = ctx->u0_closed(r);
    return RealSpinorValue{ui[0] - ctx->gamma_tilde * u0[0],
                           ui[1] - ctx->gamma_tilde * u0[1]};
  };

  const double B = c.B, nu = c.nu;
  sys.w0_inf =
      std::pow(4.0, B) * B / ((1.0 + nu) * std::cos(B * 3.14159265358979323846));
  const RealSpinorValue wp = sys.f_plus.leading();
  sys.q_plus = sys.q_scale * wp[0];
  sys.q_minus = sys.q_scale * wp[1];
  sys.gamma_nu = sys.gamma_tilde * sys.f_minus.leading()[0];
  return sys;
}

double tail_integral_product(const FrobeniusSeries& a,
                             const FrobeniusSeries& b, double delta,
                             int m_max) {
  if (!(delta > 0.0)) throw DomainError("tail integral needs delta > 0");
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  const double s = a.exponent() + b.exponent();
  double total = 0.0;
  for (int m = 0; m <= m_max; ++m) {
    double dot = 0.0;
    for (int k = 0; k <= m; ++k) {
      const int l = m - k;
      if (k >= static_cast<int>(ca.size()) || l >= static_cast<int>(cb.size()))
        continue;
      dot += ca[k][0] * cb[l][0] + ca[k][1] * cb[l][1];
    }
    const double p = s + m + 1.0;  // never zero: |s| <= 2B < 1
    total += dot * std::pow(delta, p) / p;
  }
  return total;
}

std::complex<double> tail_integral_frozen(const FrobeniusSeries& a,
                                          const SpinorValue& g, double delta,
                                          int m_max) {
  if (!(delta > 0.0)) throw DomainError("tail integral needs delta > 0");
  const auto& ca = a.coefficients();
  std::complex<double> total = 0.0;
  for (int k = 0; k <= m_max && k < static_cast<int>(ca.size()); ++k) {
    const double p = a.exponent() + k + 1.0;
    total += (ca[k][0] * g[0] + ca[k][1] * g[1]) * std::pow(delta, p) / p;
  }
  return total;
}

}  // namespace dclab
