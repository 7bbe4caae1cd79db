#include "dclab/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

namespace dclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on the
// Legendre recurrence; machine precision for order <= 64.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

}  // namespace

std::shared_ptr<const RadialGrid> make_grid(double r_min, double r_max,
                                            int panels, int order) {
  if (!(r_min > 0.0) || !(r_max > r_min) || r_min < 1e-10)
    throw DomainError("make_grid: need 1e-10 <= r_min < r_max");
  if (panels < 1) throw DomainError("make_grid: panels must be >= 1");
  if (order < 2 || order > 20)
    throw DomainError("make_grid: order must lie in [2, 20]");

  auto grid = std::make_shared<RadialGrid>();
  grid->order = order;
  grid->r_min = r_min;
  grid->r_max = r_max;

  const double ratio = std::pow(r_max / r_min, 1.0 / panels);
  grid->panel_edges.resize(panels + 1);
  for (int p = 0; p <= panels; ++p)
    grid->panel_edges[p] = r_min * std::pow(ratio, p);
  grid->panel_edges.front() = r_min;
  grid->panel_edges.back() = r_max;

  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  grid->nodes.reserve(static_cast<std::size_t>(panels) * order);
  grid->weights.reserve(static_cast<std::size_t>(panels) * order);
  for (int p = 0; p < panels; ++p) {
    const double a = grid->panel_edges[p], b = grid->panel_edges[p + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int j = 0; j < order; ++j) {
      grid->nodes.push_back(mid + half * gx[j]);
      grid->weights.push_back(half * gw[j]);
    }
  }
  return grid;
}

const std::shared_ptr<const RadialGrid>& default_grid() {
  static const std::shared_ptr<const RadialGrid> g =
      make_grid(1e-8, 40.0, 400, 8);
  return g;
}

SpinorFunction SpinorFunction::zero(std::shared_ptr<const RadialGrid> g) {
  SpinorFunction f;
  f.upper.assign(g->size(), {0.0, 0.0});
  f.lower.assign(g->size(), {0.0, 0.0});
  f.grid = std::move(g);
  return f;
}

namespace {

void require_same_grid(const SpinorFunction& f, const SpinorFunction& g) {
  if (f.grid.get() != g.grid.get())
    throw DomainError("spinor functions live on different grids");
}

void require_consistent(const SpinorFunction& f) {
  if (!f.grid || f.upper.size() != f.grid->size() ||
      f.lower.size() != f.grid->size())
    throw DomainError("spinor function arrays do not match the grid");
}

}  // namespace

std::complex<double> inner_product(const SpinorFunction& f,
                                   const SpinorFunction& g) {
  require_consistent(f);
  require_consistent(g);
  require_same_grid(f, g);
  std::complex<double> acc{0.0, 0.0};
  const auto& w = f.grid->weights;
  for (std::size_t i = 0; i < w.size(); ++i)
    acc += w[i] * (std::conj(f.upper[i]) * g.upper[i] +
                   std::conj(f.lower[i]) * g.lower[i]);
  return acc;
}

double l2_norm(const SpinorFunction& f) {
  return std::sqrt(std::abs(inner_product(f, f)));
}

double l2_norm_interior(const SpinorFunction& f, std::size_t margin) {
  require_consistent(f);
  const auto& w = f.grid->weights;
  if (2 * margin >= w.size()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = margin; i + margin < w.size(); ++i)
    acc += w[i] * (std::norm(f.upper[i]) + std::norm(f.lower[i]));
  return std::sqrt(acc);
}

namespace {

// Lagrange differentiation weights at the point t[i0] for the window
// t[lo..lo+m): d_j = l_j'(t_i0).  Standard barycentric-free direct
// construction, adequate for m = 7.
void stencil_weights(const std::vector<double>& t, std::size_t lo,
                     std::size_t m, std::size_t i0, double* d) {
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t pj = lo + j;
    if (pj == i0) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k)
        if (lo + k != i0) s += 1.0 / (t[i0] - t[lo + k]);
      d[j] = s;
    } else {
      // l_j'(t_i0) = [prod_{k != j, i0} (t_i0 - t_k)/(t_j - t_k)] / (t_j - t_i0)
      double num = 1.0;
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t pk = lo + k;
        if (pk == pj || pk == i0) continue;
        num *= (t[i0] - t[pk]) / (t[pj] - t[pk]);
      }
      d[j] = num / (t[pj] - t[i0]);
    }
  }
}

// d/dt of samples via an m-point moving window in difference form
// sum_j d_j (f_j - f_i); the weights sum to zero analytically, and the
// difference form keeps the cancellation exact in floating point.
void differentiate_log(const std::vector<double>& t,
                       const std::vector<std::complex<double>>& f,
                       std::size_t m,
                       std::vector<std::complex<double>>& out) {
  const std::size_t n = t.size();
  out.assign(n, {0.0, 0.0});
  std::array<double, 16> d{};
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = (i > m / 2) ? i - m / 2 : 0;
    if (lo + m > n) lo = n - m;
    stencil_weights(t, lo, m, i, d.data());
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < m; ++j)
      acc += d[j] * (f[lo + j] - f[i]);
    out[i] = acc;
  }
}

}  // namespace

SpinorFunction apply_dirac(const Coupling& c, double E,
                           const SpinorFunction& g, double* stencil_error) {
  require_consistent(g);
  const auto& grid = *g.grid;
  const std::size_t n = grid.size();
  if (n < 8) throw DomainError("apply_dirac: grid too small for the stencil");

  static thread_local std::vector<double> t;
  t.resize(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = std::log(grid.nodes[i]);

  constexpr std::size_t m = 7;
  std::vector<std::complex<double>> dup, dlo;
  differentiate_log(t, g.upper, m, dup);
  differentiate_log(t, g.lower, m, dlo);

  SpinorFunction out;
  out.grid = g.grid;
  out.edge_margin = m / 2;
  out.upper.resize(n);
  out.lower.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid.nodes[i];
    const std::complex<double> gpp = dup[i] / r;  // dg+/dr
    const std::complex<double> gmp = dlo[i] / r;  // dg-/dr
    out.upper[i] =
        (1.0 + c.nu / r - E) * g.upper[i] - gmp + (c.kappa / r) * g.lower[i];
    out.lower[i] =
        gpp + (c.kappa / r) * g.upper[i] + (-1.0 + c.nu / r - E) * g.lower[i];
  }

  if (stencil_error) {
    // compare against the 5-point window on a thinned node set
    std::vector<std::complex<double>> d5;
    differentiate_log(t, g.upper, 5, d5);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 3; i + 3 < n; i += 5) {
      num += std::norm((dup[i] - d5[i]) / grid.nodes[i]) * grid.weights[i];
      den += std::norm(g.upper[i]) * grid.weights[i];
    }
    *stencil_error = den > 0.0 ? std::sqrt(num / den) : 0.0;
  }
  return out;
}

namespace {

// Reference cumulative matrix for the Gauss basis of a given order:
// C[i][j] = int_{-1}^{x_i} l_j, exact through order-20 quadrature.
struct CumulativeRef {
  std::vector<double> full;  // int_{-1}^{1} l_j
  std::vector<double> part;  // row-major order x order
};

const CumulativeRef& cumulative_ref(int order) {
  static thread_local int cached_order = -1;
  static thread_local CumulativeRef ref;
  if (cached_order == order) return ref;

  std::vector<double> x, w, qx, qw;
  gauss_legendre(order, x, w);
  gauss_legendre(24, qx, qw);  // exact for degree <= 47 integrands

  auto lagrange = [&](int j, double s) {
    double v = 1.0;
    for (int k = 0; k < order; ++k)
      if (k != j) v *= (s - x[k]) / (x[j] - x[k]);
    return v;
  };

  ref.part.assign(static_cast<std::size_t>(order) * order, 0.0);
  ref.full.assign(order, 0.0);
  for (int j = 0; j < order; ++j) {
    for (int i = 0; i < order; ++i) {
      const double a = -1.0, b = x[i];
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      double acc = 0.0;
      for (std::size_t q = 0; q < qx.size(); ++q)
        acc += half * qw[q] * lagrange(j, mid + half * qx[q]);
      ref.part[static_cast<std::size_t>(i) * order + j] = acc;
    }
    ref.full[j] = w[j];  // Gauss weights integrate the basis exactly
  }
  cached_order = order;
  return ref;
}

}  // namespace

std::vector<std::complex<double>> cumulative_integral(
    const RadialGrid& grid, const std::vector<std::complex<double>>& h) {
  if (h.size() != grid.size())
    throw DomainError("cumulative_integral: sample length mismatch");
  const int order = grid.order;
  const auto& ref = cumulative_ref(order);
  std::vector<std::complex<double>> out(h.size());
  std::complex<double> running{0.0, 0.0};
  for (std::size_t p = 0; p < grid.panels(); ++p) {
    const double half = 0.5 * (grid.panel_edges[p + 1] - grid.panel_edges[p]);
    const std::size_t base = p * order;
    std::complex<double> panel_total{0.0, 0.0};
    for (int i = 0; i < order; ++i) {
      std::complex<double> acc{0.0, 0.0};
      for (int j = 0; j < order; ++j)
        acc += ref.part[static_cast<std::size_t>(i) * order + j] * h[base + j];
      out[base + i] = running + half * acc;
    }
    for (int j = 0; j < order; ++j) panel_total += ref.full[j] * h[base + j];
    running += half * panel_total;
  }
  return out;
}

std::vector<std::complex<double>> backward_cumulative_integral(
    const RadialGrid& grid, const std::vector<std::complex<double>>& h) {
  if (h.size() != grid.size())
    throw DomainError("backward_cumulative_integral: sample length mismatch");
  const int order = grid.order;
  const auto& ref = cumulative_ref(order);
  const std::size_t np = grid.panels();
  std::vector<std::complex<double>> totals(np);
  for (std::size_t p = 0; p < np; ++p) {
    const double half = 0.5 * (grid.panel_edges[p + 1] - grid.panel_edges[p]);
    const std::size_t base = p * static_cast<std::size_t>(order);
    std::complex<double> panel_total{0.0, 0.0};
    for (int j = 0; j < order; ++j) panel_total += ref.full[j] * h[base + j];
    totals[p] = half * panel_total;
  }
  std::vector<std::complex<double>> out(h.size());
  std::complex<double> suffix{0.0, 0.0};
  for (std::size_t p = np; p-- > 0;) {
    const double half = 0.5 * (grid.panel_edges[p + 1] - grid.panel_edges[p]);
    const std::size_t base = p * static_cast<std::size_t>(order);
    for (int i = 0; i < order; ++i) {
      // node-to-panel-end weights, assembled coefficient-wise so the
      // subtraction happens between O(1) quadrature weights
      std::complex<double> acc{0.0, 0.0};
      for (int j = 0; j < order; ++j)
        acc += (ref.full[j] -
                ref.part[static_cast<std::size_t>(i) * order + j]) *
               h[base + j];
      out[base + i] = suffix + half * acc;
    }
    suffix += totals[p];
  }
  return out;
}

std::complex<double> interpolate(const RadialGrid& grid,
                                 const std::vector<std::complex<double>>& data,
                                 double r) {
  if (data.size() != grid.size())
    throw DomainError("interpolate: sample length mismatch");
  if (!(r >= grid.r_min) || !(r <= grid.r_max))
    throw DomainError("interpolate: radius outside the grid");
  const auto& edges = grid.panel_edges;
  auto it = std::upper_bound(edges.begin(), edges.end(), r);
  std::size_t p = it == edges.begin()
                      ? 0
                      : static_cast<std::size_t>(it - edges.begin()) - 1;
  if (p >= grid.panels()) p = grid.panels() - 1;
  const std::size_t base = p * static_cast<std::size_t>(grid.order);
  std::complex<double> acc{0.0, 0.0};
  for (int j = 0; j < grid.order; ++j) {
    double lj = 1.0;
    const double rj = grid.nodes[base + j];
    for (int k = 0; k < grid.order; ++k) {
      if (k == j) continue;
      lj *= (r - grid.nodes[base + k]) / (rj - grid.nodes[base + k]);
    }
    acc += lj * data[base + j];
  }
  return acc;
}

SpinorValue interpolate(const SpinorFunction& f, double r) {
  return {interpolate(*f.grid, f.upper, r), interpolate(*f.grid, f.lower, r)};
}

void write_spinor_csv(std::ostream& os, const SpinorFunction& f) {
  os << "r,re_upper,im_upper,re_lower,im_lower\n";
  char buf[32];
  const auto put = [&](double x, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf << sep;
  };
  for (std::size_t i = 0; i < f.grid->size(); ++i) {
    put(f.grid->nodes[i], ',');
    put(f.upper[i].real(), ',');
    put(f.upper[i].imag(), ',');
    put(f.lower[i].real(), ',');
    put(f.lower[i].imag(), '\n');
  }
}

SpinorFunction read_spinor_csv(std::istream& is,
                               const std::shared_ptr<const RadialGrid>& grid) {
  std::vector<std::array<double, 5>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::array<double, 5> row{};
    std::size_t col = 0, pos = 0;
    bool numeric = true;
    while (col < 5 && pos <= line.size()) {
      const std::size_t comma = line.find(',', pos);
      const std::string tok =
          line.substr(pos, comma == std::string::npos ? std::string::npos
                                                      : comma - pos);
      try {
        std::size_t used = 0;
        row[col] = std::stod(tok, &used);
        while (used < tok.size() &&
               std::isspace(static_cast<unsigned char>(tok[used])))
          ++used;
        if (used != tok.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
      if (!numeric) break;
      ++col;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!numeric) {
      if (rows.empty()) continue;  // header line
      throw DomainError("spinor CSV: malformed line: " + line);
    }
    if (col != 5)
      throw DomainError("spinor CSV: expected 5 columns "
                        "(r,re_upper,im_upper,re_lower,im_lower)");
    rows.push_back(row);
  }
  if (rows.size() != grid->size())
    throw DomainError("spinor CSV: sample count " +
                      std::to_string(rows.size()) +
                      " does not match the grid (" +
                      std::to_string(grid->size()) +
                      " nodes); radii must be grid nodes");
  SpinorFunction g = SpinorFunction::zero(grid);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::abs(rows[i][0] - grid->nodes[i]) >
        1e-12 * std::max(1.0, grid->nodes[i])) {
      char a[32], b[32];
      std::snprintf(a, sizeof a, "%.17g", rows[i][0]);
      std::snprintf(b, sizeof b, "%.17g", grid->nodes[i]);
      throw DomainError(std::string("spinor CSV: radius ") + a +
                        " is not grid node " + b);
    }
    g.upper[i] = {rows[i][1], rows[i][2]};
    g.lower[i] = {rows[i][3], rows[i][4]};
  }
  return g;
}

}  // namespace dclab
