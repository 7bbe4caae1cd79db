#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dclab/radial.hpp"

namespace dclab {

namespace {

// First-order form of (S - E)u = 0 in t = log r:
//   du/dt = r A(r) u,  A(r) = [[-kappa/r, (1+E) - nu/r],
//                              [(1-E) + nu/r, kappa/r]],
// polynomial in r = e^t, so the singular endpoint is regularised.
// State packs (re u+, im u+, re u-, im u-).
struct LogRadiusRhs {
  double nu, E;
  int kappa;
  void operator()(const std::array<double, 4>& y, std::array<double, 4>& dy,
                  double t) const {
    const double r = std::exp(t);
    const double a12 = (1.0 + E) * r - nu;
    const double a21 = (1.0 - E) * r + nu;
    dy[0] = -kappa * y[0] + a12 * y[2];
    dy[1] = -kappa * y[1] + a12 * y[3];
    dy[2] = a21 * y[0] + kappa * y[2];
    dy[3] = a21 * y[1] + kappa * y[3];
  }
};

}  // namespace

IvpTrace integrate_ivp(const Coupling& c, double E, double r_start,
                       const SpinorValue& u_start, Direction direction,
                       double r_end, const std::vector<double>& sample_at) {
  if (!(r_start > 0.0) || !(r_end > 0.0))
    throw DomainError("integrate_ivp: radii must be positive");
  if (r_end < 1e-10)
    throw NumericsError(
        "integrate_ivp: step underflow, r_end below 1e-10 at the singular "
        "endpoint");
  const bool inward = direction == Direction::inward;
  if (inward ? !(r_end < r_start) : !(r_end > r_start))
    throw DomainError("integrate_ivp: r_end inconsistent with direction");
  if (u_start[0] == std::complex<double>{} && u_start[1] == std::complex<double>{})
    throw DomainError("integrate_ivp: u_start must be nonzero");

  std::vector<double> times;
  times.reserve(sample_at.size() + 2);
  times.push_back(std::log(r_start));
  for (double r : sample_at) {
    if (inward ? !(r < r_start && r > r_end) : !(r > r_start && r < r_end))
      throw DomainError("integrate_ivp: sample radius outside the range");
    times.push_back(std::log(r));
  }
  times.push_back(std::log(r_end));
  if (!std::is_sorted(times.begin(), times.end(),
                      [&](double a, double b) { return inward ? a > b : a < b; }))
    throw DomainError("integrate_ivp: sample radii not ordered along the path");

  std::array<double, 4> y{u_start[0].real(), u_start[0].imag(),
                          u_start[1].real(), u_start[1].imag()};

  IvpTrace trace;
  trace.r.reserve(times.size());
  trace.u.reserve(times.size());

  namespace ode = boost::numeric::odeint;
  using stepper_t = ode::runge_kutta_fehlberg78<std::array<double, 4>>;
  auto stepper = ode::make_controlled<stepper_t>(1e-13, 1e-12);
  const double dt0 = (inward ? -1.0 : 1.0) * 1e-3;
  ode::integrate_times(
      stepper, LogRadiusRhs{c.nu, E, c.kappa}, y, times.begin(), times.end(),
      dt0, [&](const std::array<double, 4>& s, double t) {
        trace.r.push_back(std::exp(t));
        trace.u.push_back(SpinorValue{std::complex<double>{s[0], s[1]},
                                      std::complex<double>{s[2], s[3]}});
      });
  // pin the endpoints against exp/log roundoff
  trace.r.front() = r_start;
  trace.r.back() = r_end;
  return trace;
}

}  // namespace dclab
