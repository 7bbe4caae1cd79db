#include "dclab/cli.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dclab/errors.hpp"
#include "dclab/extensions.hpp"
#include "dclab/greenop.hpp"
#include "dclab/homogeneous.hpp"
#include "dclab/radial.hpp"
#include "dclab/spectral.hpp"
#include "dclab/specfun.hpp"

namespace dclab {
namespace {

using ojson = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Insertion-ordered writer with floats pinned at 17 significant
// digits, so identical configs give byte-identical artifacts.
void write_json(std::ostream& os, const ojson& v, int depth) {
  if (v.is_object()) {
    if (v.empty()) {
      os << "{}";
      return;
    }
    const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
    os << "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) os << ",\n";
      first = false;
      os << pad << ojson(it.key()).dump() << ": ";
      write_json(os, it.value(), depth + 1);
    }
    os << "\n" << std::string(2 * static_cast<std::size_t>(depth), ' ') << "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      os << "[]";
      return;
    }
    const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
    os << "[\n";
    bool first = true;
    for (const auto& e : v) {
      if (!first) os << ",\n";
      first = false;
      os << pad;
      write_json(os, e, depth + 1);
    }
    os << "\n" << std::string(2 * static_cast<std::size_t>(depth), ' ') << "]";
  } else if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isfinite(x))
      os << format_real(x);
    else
      os << "null";
  } else {
    os << v.dump();
  }
}

std::string render(const ojson& v) {
  std::ostringstream os;
  write_json(os, v, 0);
  os << "\n";
  return os.str();
}

void deliver(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot open output path: " + path);
  f << text;
}

ojson complex_json(const std::complex<double>& z) {
  return ojson::array({z.real(), z.imag()});
}

ojson spinor_json(const SpinorValue& v) {
  return ojson::array({complex_json(v[0]), complex_json(v[1])});
}

struct GridOpts {
  double rmin = 1e-8;
  double rmax = 40.0;
  int panels = 400;
  int order = 8;
};

void add_grid_options(CLI::App* sub, GridOpts& g) {
  sub->add_option("--rmin", g.rmin, "Grid start radius")
      ->capture_default_str();
  sub->add_option("--rmax", g.rmax, "Grid end radius")->capture_default_str();
  sub->add_option("--panels", g.panels, "Geometric panel count")
      ->capture_default_str();
  sub->add_option("--order", g.order, "Gauss nodes per panel")
      ->capture_default_str();
}

std::shared_ptr<const RadialGrid> resolve_grid(const GridOpts& g) {
  if (g.rmin == 1e-8 && g.rmax == 40.0 && g.panels == 400 && g.order == 8)
    return default_grid();
  return make_grid(g.rmin, g.rmax, g.panels, g.order);
}

ojson grid_json(const GridOpts& g) {
  ojson j;
  j["rmin"] = g.rmin;
  j["rmax"] = g.rmax;
  j["panels"] = g.panels;
  j["order"] = g.order;
  return j;
}

Coupling critical_channel(double nu, int kappa, const std::string& cmd) {
  const Coupling c = Coupling::channel(nu, kappa);
  if (!c.is_critical())
    throw DomainError(cmd + " needs the critical regime sqrt(3)/2 < |nu| < 1 "
                            "on kappa = +/-1; got nu = " + format_real(nu) +
                      ", kappa = " + std::to_string(kappa));
  return c;
}

// "inf" (any case) selects the distinguished condition; anything else
// must parse fully as a real number.
bool parse_beta(const std::string& s, double& value) {
  std::string t;
  for (const char ch : s) t.push_back(static_cast<char>(std::tolower(ch)));
  if (t == "inf" || t == "infinity" || t == "distinguished") return true;
  std::size_t used = 0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    throw DomainError("cannot parse beta value '" + s + "'");
  }
  if (used != t.size())
    throw DomainError("cannot parse beta value '" + s + "'");
  return false;
}

ojson channel_json(double nu, int kappa) {
  ojson j;
  j["nu"] = nu;
  j["kappa"] = kappa;
  j["B_kappa"] = std::sqrt(static_cast<double>(kappa) * kappa - nu * nu);
  j["deficiency_index"] = deficiency_index(nu, kappa);
  return j;
}

ojson eigenvalue_json(const EigenvalueRecord& rec) {
  ojson e;
  e["E"] = rec.E;
  e["residual"] = rec.residual;
  e["g0"] = spinor_json(rec.boundary.g0);
  e["g1"] = spinor_json(rec.boundary.g1);
  return e;
}

ojson report_json(const SpectralReport& rep) {
  ojson j;
  if (rep.spec.is_infinite)
    j["beta"] = "inf";
  else
    j["beta"] = rep.spec.beta;
  j["gap_bound"] = rep.gap_bound;
  j["sd_inv_norm"] = rep.sd_inv_norm;
  ojson evs = ojson::array();
  for (const auto& rec : rep.eigenvalues) evs.push_back(eigenvalue_json(rec));
  j["eigenvalues"] = std::move(evs);
  ojson diags = ojson::array();
  for (const auto& d : rep.diagnostics) diags.push_back(d);
  j["diagnostics"] = std::move(diags);
  return j;
}

ojson header_json(const std::string& command) {
  ojson j;
  j["format_version"] = kFormatVersion;
  j["command"] = command;
  return j;
}

// ---------------------------------------------------------------- commands

struct ConstantsArgs {
  double nu = 0.0;
  int kappa = 1;
  GridOpts grid;
  double tol = 1e-8;
  std::string output;
};

void cmd_constants(const ConstantsArgs& a) {
  const Coupling c = Coupling::channel(a.nu, a.kappa);
  ojson out = header_json("constants");
  ojson cfg;
  cfg["nu"] = a.nu;
  cfg["kappa"] = a.kappa;
  cfg["grid"] = grid_json(a.grid);
  cfg["tol"] = a.tol;
  out["config"] = std::move(cfg);

  ojson res = channel_json(a.nu, a.kappa);
  res["critical"] = c.is_critical();
  if (c.is_critical()) {
    const GreenOperator G = make_green_operator(c, resolve_grid(a.grid));
    res["B"] = c.B;
    res["w0_inf"] = G.system.w0_inf;
    res["gamma_tilde"] = G.system.gamma_tilde;
    res["q_scale"] = G.system.q_scale;
    res["gamma_nu"] = G.system.gamma_nu;
    res["q_plus"] = G.system.q_plus;
    res["q_minus"] = G.system.q_minus;
    res["phi_norm_sq"] = vinf_norm_sq(G);
    const auto [pp, pm] = p_pm(G);
    res["p_plus"] = pp;
    res["p_minus"] = pm;
    const auto [cnu, dnu] = cd_constants(c, G);
    res["c_nu"] = cnu;
    res["d_nu"] = dnu;
    const NormEstimate ne = estimate_sd_inverse_norm(G, a.tol);
    ojson nj;
    nj["value"] = ne.value;
    nj["iterations"] = ne.iterations;
    nj["rel_change"] = ne.rel_change;
    nj["seed"] = ne.seed;
    res["sd_inv_norm"] = std::move(nj);
  } else {
    res["note"] = "channel is essentially self-adjoint (|nu| outside "
                  "(sqrt(3)/2, 1)); extension constants are undefined";
  }
  out["results"] = std::move(res);
  deliver(render(out), a.output);
}

struct KernelArgs {
  double nu = 0.0;
  int kappa = 1;
  double r = 0.0;
  double rho = 0.0;
  std::string output;
};

void cmd_kernel(const KernelArgs& a) {
  const Coupling c = critical_channel(a.nu, a.kappa, "kernel");
  const FundamentalSystem sys = build_fundamental_system(c);
  const KernelMatrix K = green_kernel(sys, a.r, a.rho);
  ojson out = header_json("kernel");
  ojson cfg;
  cfg["nu"] = a.nu;
  cfg["kappa"] = a.kappa;
  cfg["r"] = a.r;
  cfg["rho"] = a.rho;
  out["config"] = std::move(cfg);
  ojson res;
  res["w0_inf"] = sys.w0_inf;
  res["K"] = ojson::array({ojson::array({K[0][0], K[0][1]}),
                           ojson::array({K[1][0], K[1][1]})});
  out["results"] = std::move(res);
  deliver(render(out), a.output);
}

struct DumpArgs {
  double nu = 0.0;
  int kappa = 1;
  std::vector<double> radii;
  std::string format = "json";
  std::string output;
};

void cmd_dump_solutions(const DumpArgs& a) {
  const Coupling c = critical_channel(a.nu, a.kappa, "dump-solutions");
  for (const double r : a.radii)
    if (!(r >= 1e-10) || !(r <= 40.0))
      throw DomainError("dump-solutions: radii must lie in [1e-10, 40]");
  const FundamentalSystem sys = build_fundamental_system(c);

  if (a.format == "csv") {
    std::ostringstream os;
    os << "# dclab dump-solutions format_version=" << kFormatVersion << "\n";
    os << "# nu=" << format_real(a.nu) << " kappa=" << a.kappa << "\n";
    os << "r,v0_upper,v0_lower,vinf_upper,vinf_lower\n";
    for (const double r : a.radii) {
      const RealSpinorValue v0 = sys.eval_v0(r);
      const RealSpinorValue vi = sys.eval_v_inf(r);
      os << format_real(r) << "," << format_real(v0[0]) << ","
         << format_real(v0[1]) << "," << format_real(vi[0]) << ","
         << format_real(vi[1]) << "\n";
    }
    deliver(os.str(), a.output);
    return;
  }
  if (a.format != "json")
    throw DomainError("dump-solutions: format must be json or csv");

  ojson out = header_json("dump-solutions");
  ojson cfg;
  cfg["nu"] = a.nu;
  cfg["kappa"] = a.kappa;
  ojson rl = ojson::array();
  for (const double r : a.radii) rl.push_back(r);
  cfg["radii"] = std::move(rl);
  out["config"] = std::move(cfg);
  ojson res;
  res["w0_inf"] = sys.w0_inf;
  ojson rows = ojson::array();
  for (const double r : a.radii) {
    const RealSpinorValue v0 = sys.eval_v0(r);
    const RealSpinorValue vi = sys.eval_v_inf(r);
    ojson row;
    row["r"] = r;
    row["v0"] = ojson::array({v0[0], v0[1]});
    row["v_inf"] = ojson::array({vi[0], vi[1]});
    rows.push_back(std::move(row));
  }
  res["rows"] = std::move(rows);
  out["results"] = std::move(res);
  deliver(render(out), a.output);
}

struct ClassifyArgs {
  double nu = 0.0;
  int kappa = 1;
  std::string input;
  std::vector<std::string> betas;  // candidate extensions to test
  std::vector<double> window{1e-6, 1e-3};
  GridOpts grid;
  std::string output;
};

// Reads a sampled spinor from CSV (module radial's record form) or a
// JSON array of {r, re_upper, im_upper, re_lower, im_lower} records,
// distinguished by the first non-space byte.
SpinorFunction load_spinor(const std::string& path,
                           const std::shared_ptr<const RadialGrid>& grid) {
  std::istream* in = &std::cin;
  std::ifstream file;
  if (!path.empty() && path != "-") {
    file.open(path);
    if (!file) throw DomainError("classify: cannot open input: " + path);
    in = &file;
  }
  int ch = in->peek();
  while (ch == ' ' || ch == '\n' || ch == '\r' || ch == '\t') {
    in->get();
    ch = in->peek();
  }
  if (ch != '[') return read_spinor_csv(*in, grid);

  ojson arr;
  try {
    arr = ojson::parse(*in);
  } catch (const std::exception& e) {
    throw DomainError(std::string("classify: JSON parse failure: ") +
                      e.what());
  }
  if (!arr.is_array() || arr.size() != grid->size())
    throw DomainError("classify: JSON input must be an array with one "
                      "record per grid node (" +
                      std::to_string(grid->size()) + ")");
  SpinorFunction g = SpinorFunction::zero(grid);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const ojson& rec = arr[i];
    if (!rec.is_object() || !rec.contains("r"))
      throw DomainError("classify: JSON record " + std::to_string(i) +
                        " lacks the r field");
    const double r = rec.at("r").get<double>();
    if (std::abs(r - grid->nodes[i]) > 1e-12 * std::max(1.0, grid->nodes[i]))
      throw DomainError("classify: radius " + format_real(r) +
                        " is not grid node " + format_real(grid->nodes[i]));
    g.upper[i] = {rec.value("re_upper", 0.0), rec.value("im_upper", 0.0)};
    g.lower[i] = {rec.value("re_lower", 0.0), rec.value("im_lower", 0.0)};
  }
  return g;
}

void cmd_classify(const ClassifyArgs& a) {
  const Coupling c = critical_channel(a.nu, a.kappa, "classify");
  const auto grid = resolve_grid(a.grid);
  const SpinorFunction g = load_spinor(a.input, grid);
  const SpinorFunction Sg = apply_dirac(c, 0.0, g);
  const BoundaryData bd =
      extract_boundary_data(c, g, {a.window[0], a.window[1]}, &Sg);

  const GreenOperator G = make_green_operator(c, grid);
  const AdjointDecomposition dec = decompose_adjoint(c, G.system, g, Sg);
  const ClosureCertificate cert = closure_membership(dec, 1e-8);
  const auto [cnu, dnu] = cd_constants(c, G);

  ojson out = header_json("classify");
  ojson cfg;
  cfg["nu"] = a.nu;
  cfg["kappa"] = a.kappa;
  cfg["input"] = a.input.empty() ? std::string("-") : a.input;
  if (!a.betas.empty()) {
    ojson bl = ojson::array();
    for (const auto& b : a.betas) bl.push_back(b);
    cfg["beta"] = std::move(bl);
  }
  cfg["window"] = ojson::array({a.window[0], a.window[1]});
  cfg["grid"] = grid_json(a.grid);
  out["config"] = std::move(cfg);

  ojson res;
  res["g0"] = spinor_json(bd.g0);
  res["g1"] = spinor_json(bd.g1);
  res["fit_residual"] = bd.fit_residual;
  res["a0"] = complex_json(dec.a0);
  res["a_inf"] = complex_json(dec.a_inf);
  ojson cj;
  cj["member"] = cert.member;
  cj["a0_mag"] = cert.a0_mag;
  cj["a_inf_mag"] = cert.a_inf_mag;
  res["closure"] = std::move(cj);

  // extension label of the boundary data, when it determines one
  const double g0p = std::abs(bd.g0[0]), g1p = std::abs(bd.g1[0]);
  ojson bj;
  if (g0p + g1p < 1e-12) {
    bj["determined"] = false;
    bj["note"] = "boundary data vanishes (closure element)";
  } else if (g0p <= std::max(1e-9, 10.0 * bd.fit_residual) * g1p) {
    bj["determined"] = true;
    bj["beta"] = "inf";
  } else {
    bj["determined"] = true;
    const std::complex<double> ratio = bd.g1[0] / bd.g0[0];
    bj["beta"] = (ratio.real() - dnu) / cnu;
    bj["ratio_im"] = ratio.imag();
  }
  res["extension"] = std::move(bj);

  // membership residual against each requested extension
  if (!a.betas.empty()) {
    ojson rl = ojson::array();
    for (const auto& bs : a.betas) {
      double bv = 0.0;
      const bool inf = parse_beta(bs, bv);
      const ExtensionSpec spec =
          inf ? ExtensionSpec::distinguished()
              : ExtensionSpec::finite(bv, cnu, dnu);
      ojson rec;
      if (inf)
        rec["beta"] = "inf";
      else
        rec["beta"] = bv;
      rec["residual"] = boundary_residual(spec, bd);
      rl.push_back(std::move(rec));
    }
    res["beta_residuals"] = std::move(rl);
  }
  out["results"] = std::move(res);
  deliver(render(out), a.output);
}

struct SpectrumArgs {
  double nu = 0.0;
  int kappa = 1;
  std::string beta = "inf";
  double emin = -0.99;
  double emax = 0.99;
  int nscan = 240;
  GridOpts grid;
  std::string output;
};

void cmd_spectrum(const SpectrumArgs& a) {
  const Coupling c = Coupling::channel(a.nu, a.kappa);
  double beta_value = 0.0;
  const bool infinite = parse_beta(a.beta, beta_value);
  if (!infinite && !c.is_critical())
    throw DomainError("spectrum: finite beta needs the critical regime "
                      "sqrt(3)/2 < |nu| < 1 on kappa = +/-1; only the "
                      "regular condition (--beta inf) applies here");

  SpectralContext ctx = make_spectral_context(c, resolve_grid(a.grid));
  const ExtensionSpec spec =
      infinite ? ExtensionSpec::distinguished()
               : ExtensionSpec::finite(beta_value, ctx.cd.first,
                                       ctx.cd.second);
  const SpectralReport rep =
      eigenvalues_in_gap(ctx, spec, {a.emin, a.emax}, a.nscan);

  ojson out = header_json("spectrum");
  ojson cfg;
  cfg["nu"] = a.nu;
  cfg["kappa"] = a.kappa;
  cfg["beta"] = a.beta;
  cfg["emin"] = a.emin;
  cfg["emax"] = a.emax;
  cfg["nscan"] = a.nscan;
  cfg["grid"] = grid_json(a.grid);
  out["config"] = std::move(cfg);
  out["results"] = report_json(rep);
  deliver(render(out), a.output);
}

struct FlowArgs {
  double nu = 0.0;
  int kappa = 1;
  double emin = -0.99;
  double emax = 0.99;
  int count = 101;
  std::string format = "csv";
  std::string output;
};

void cmd_flow(const FlowArgs& a) {
  const Coupling c = critical_channel(a.nu, a.kappa, "flow");
  if (a.count < 2) throw DomainError("flow: count must be >= 2");
  if (!(a.emin > -1.0) || !(a.emin < a.emax) || !(a.emax < 1.0))
    throw DomainError("flow: energy range must lie inside (-1, 1)");
  const GreenOperator G = make_green_operator(c);
  const auto cd = cd_constants(c, G);

  std::vector<std::pair<double, BetaValue>> rows;
  rows.reserve(static_cast<std::size_t>(a.count));
  std::vector<std::string> notes;
  for (int k = 0; k < a.count; ++k) {
    const double E = a.emin + (a.emax - a.emin) * k / (a.count - 1);
    try {
      rows.emplace_back(E, beta_of_energy(c, E, cd));
    } catch (const NumericsError& e) {
      BetaValue bv;
      bv.value = std::numeric_limits<double>::quiet_NaN();
      rows.emplace_back(E, bv);
      notes.push_back("E = " + format_real(E) + ": " + e.what());
    }
  }

  if (a.format == "csv") {
    std::ostringstream os;
    os << "# dclab flow format_version=" << kFormatVersion << "\n";
    os << "# nu=" << format_real(a.nu) << " kappa=" << a.kappa
       << " emin=" << format_real(a.emin) << " emax=" << format_real(a.emax)
       << " count=" << a.count << "\n";
    for (const auto& n : notes) os << "# note: " << n << "\n";
    os << "E,beta\n";
    for (const auto& [E, bv] : rows) {
      os << format_real(E) << ",";
      if (bv.is_infinite)
        os << "inf";
      else
        os << format_real(bv.value);
      os << "\n";
    }
    deliver(os.str(), a.output);
    return;
  }
  if (a.format != "json") throw DomainError("flow: format must be json or csv");

  ojson out = header_json("flow");
  ojson cfg;
  cfg["nu"] = a.nu;
  cfg["kappa"] = a.kappa;
  cfg["emin"] = a.emin;
  cfg["emax"] = a.emax;
  cfg["count"] = a.count;
  out["config"] = std::move(cfg);
  ojson rj = ojson::array();
  for (const auto& [E, bv] : rows) {
    ojson row;
    row["E"] = E;
    if (bv.is_infinite)
      row["beta"] = "inf";
    else
      row["beta"] = bv.value;
    rj.push_back(std::move(row));
  }
  ojson res;
  res["rows"] = std::move(rj);
  ojson nj = ojson::array();
  for (const auto& n : notes) nj.push_back(n);
  res["notes"] = std::move(nj);
  out["results"] = std::move(res);
  deliver(render(out), a.output);
}

struct SweepArgs {
  std::vector<double> nus;
  int kappa = 1;
  std::vector<std::string> betas;
  double emin = -0.99;
  double emax = 0.99;
  int nscan = 240;
  GridOpts grid;
  std::string output;
};

void cmd_sweep(const SweepArgs& a) {
  if (a.nus.empty() || a.betas.empty())
    throw DomainError("sweep: need at least one nu and one beta");
  struct Cell {
    double nu;
    std::string beta;
  };
  std::vector<Cell> cells;
  for (const double nu : a.nus)
    for (const auto& b : a.betas) cells.push_back({nu, b});

  // contexts are built serially, one per coupling; cells then share
  // them (the boundary-ratio cache is mutex-guarded)
  std::map<double, SpectralContext> contexts;
  const auto grid = resolve_grid(a.grid);
  for (const double nu : a.nus) {
    const Coupling c = critical_channel(nu, a.kappa, "sweep");
    if (!contexts.count(nu))
      contexts.emplace(nu, make_spectral_context(c, grid));
    // validate betas up front so bad input fails before any scan
    for (const auto& b : a.betas) {
      double v = 0.0;
      parse_beta(b, v);
    }
  }

  std::vector<SpectralReport> reports(cells.size());
  std::vector<std::string> failures(cells.size());
  // worker pool over cells; the inner scans run serially when nested
  parallel_cells(cells.size(), [&](std::size_t i) {
    const Cell& cell = cells[i];
    SpectralContext& ctx = contexts.at(cell.nu);
    double bv = 0.0;
    const bool infinite = parse_beta(cell.beta, bv);
    const ExtensionSpec spec =
        infinite ? ExtensionSpec::distinguished()
                 : ExtensionSpec::finite(bv, ctx.cd.first, ctx.cd.second);
    try {
      reports[i] = eigenvalues_in_gap(ctx, spec, {a.emin, a.emax}, a.nscan);
    } catch (const NumericsError& e) {
      failures[i] = e.what();
    }
  });

  ojson out = header_json("sweep");
  ojson cfg;
  ojson nl = ojson::array();
  for (const double nu : a.nus) nl.push_back(nu);
  cfg["nu"] = std::move(nl);
  cfg["kappa"] = a.kappa;
  ojson bl = ojson::array();
  for (const auto& b : a.betas) bl.push_back(b);
  cfg["beta"] = std::move(bl);
  cfg["emin"] = a.emin;
  cfg["emax"] = a.emax;
  cfg["nscan"] = a.nscan;
  cfg["grid"] = grid_json(a.grid);
  out["config"] = std::move(cfg);

  ojson cj = ojson::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    ojson cell;
    cell["nu"] = cells[i].nu;
    cell["kappa"] = a.kappa;
    if (!failures[i].empty()) {
      cell["beta"] = cells[i].beta;
      cell["error"] = failures[i];
    } else {
      const ojson rj = report_json(reports[i]);
      for (auto it = rj.begin(); it != rj.end(); ++it) cell[it.key()] = *it;
    }
    cj.push_back(std::move(cell));
  }
  ojson res;
  res["cells"] = std::move(cj);
  out["results"] = std::move(res);
  deliver(render(out), a.output);
}

struct NormArgs {
  double nu = 0.0;
  int kappa = 1;
  double tol = 1e-8;
  int max_iter = 300;
  GridOpts grid;
  std::string output;
};

void cmd_sdinv_norm(const NormArgs& a) {
  const Coupling c = critical_channel(a.nu, a.kappa, "sdinv-norm");
  const GreenOperator G = make_green_operator(c, resolve_grid(a.grid));
  const NormEstimate ne = estimate_sd_inverse_norm(G, a.tol, a.max_iter);
  ojson out = header_json("sdinv-norm");
  ojson cfg;
  cfg["nu"] = a.nu;
  cfg["kappa"] = a.kappa;
  cfg["tol"] = a.tol;
  cfg["max_iter"] = a.max_iter;
  cfg["grid"] = grid_json(a.grid);
  out["config"] = std::move(cfg);
  ojson res;
  res["value"] = ne.value;
  res["iterations"] = ne.iterations;
  res["rel_change"] = ne.rel_change;
  res["seed"] = ne.seed;
  res["phi_norm_sq"] = vinf_norm_sq(G);
  out["results"] = std::move(res);
  deliver(render(out), a.output);
}

void selftest_check(bool ok, const std::string& what) {
  if (!ok) throw NumericsError("selftest failed: " + what);
  std::cout << "ok: " << what << "\n";
}

void cmd_selftest() {
  selftest_check(deficiency_index(0.9, 1) == 1 &&
                     deficiency_index(0.9, -1) == 1 &&
                     deficiency_index(0.9, 2) == 0 &&
                     deficiency_index(0.5, 1) == 0,
                 "deficiency indices on the reference couplings");
  {
    const auto census = channel_census(0.9, 3.5);
    int critical = 0;
    for (const auto& ch : census)
      if (deficiency_index(0.9, ch.kappa) == 1) ++critical;
    selftest_check(critical == 4, "exactly 4 critical channels at nu = 0.9");
  }
  for (const int kappa : {1, -1}) {
    const Coupling c = Coupling::channel(0.9, kappa);
    const FundamentalSystem sys = build_fundamental_system(c);
    double dev = 0.0;
    for (const double r : {0.05, 0.5, 2.0, 5.0}) {
      const double w = wronskian_at(sys.eval_v0(r), sys.eval_v_inf(r));
      dev = std::max(dev, std::abs(w - sys.w0_inf));
    }
    selftest_check(dev <= 1e-8 * std::abs(sys.w0_inf),
                   "Wronskian constancy, kappa = " + std::to_string(kappa));
  }
  const Coupling c = Coupling::channel(0.9, 1);
  const GreenOperator G = make_green_operator(c);
  {
    const KernelMatrix K = green_kernel(G.system, 0.3, 1.7);
    const KernelMatrix Kt = green_kernel(G.system, 1.7, 0.3);
    double dev = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        dev = std::max(dev, std::abs(K[i][j] - Kt[j][i]));
    selftest_check(dev <= 1e-13, "kernel transpose symmetry");
  }
  {
    SpinorFunction g = SpinorFunction::zero(G.grid);
    for (std::size_t i = 0; i < G.grid->size(); ++i) {
      const double r = G.grid->nodes[i];
      const double bump = std::exp(-(r - 3.0) * (r - 3.0));
      g.upper[i] = bump;
      g.lower[i] = 0.5 * bump;
    }
    double residual = 0.0;
    apply_sd_inverse(G, g, &residual);
    selftest_check(residual <= 1e-6, "distinguished inverse residual");
  }
  {
    const auto [pp, pm] = p_pm(G);
    const double lhs = pp * G.system.q_minus, rhs = pm * G.system.q_plus;
    selftest_check(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs),
                   "p/q proportionality");
  }
  {
    const NormEstimate ne = estimate_sd_inverse_norm(G);
    selftest_check(std::abs(ne.value - 1.0 / c.B) <= 1e-4 / c.B,
                   "inverse norm close to 1/B");
  }
  selftest_check(std::abs(sommerfeld_energy(-0.5, 0, -1) -
                          std::sqrt(3.0) / 2.0) <= 1e-15,
                 "fine-structure ground level at nu = -0.5");
  {
    const auto cd = cd_constants(c, G);
    const BetaValue b0 = beta_of_energy(c, 0.0, cd);
    selftest_check(!b0.is_infinite && std::abs(b0.value) <= 1e-5,
                   "beta(0) = 0 on the critical channel");
  }
  std::cout << "selftest: all checks passed\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"dclab: self-adjoint realisations of the critical "
               "Dirac-Coulomb radial operator"};
  app.require_subcommand(1);
  app.fallthrough();  // lets "dclab <cmd> --config f" reach the app-level option
  app.set_config("--config", "",
                 "Config file (key=value lines; [subcommand] sections); "
                 "flags override");
  app.set_version_flag("--version", "dclab 1.0.0");

  ConstantsArgs ca;
  auto* sc = app.add_subcommand("constants",
                                "Channel and classification constants");
  sc->add_option("--nu", ca.nu, "Coupling strength")->required();
  sc->add_option("--kappa", ca.kappa, "Angular channel (+1 or -1)")
      ->capture_default_str();
  sc->add_option("--tol", ca.tol, "Norm-estimate tolerance")
      ->capture_default_str();
  add_grid_options(sc, ca.grid);
  sc->add_option("--output", ca.output, "Output path (default stdout)");
  sc->callback([&ca] { cmd_constants(ca); });

  KernelArgs ka;
  auto* sk = app.add_subcommand("kernel", "Green kernel matrix at (r, rho)");
  sk->add_option("--nu", ka.nu, "Coupling strength")->required();
  sk->add_option("--kappa", ka.kappa, "Angular channel (+1 or -1)")
      ->capture_default_str();
  sk->add_option("--r", ka.r, "First radius")->required();
  sk->add_option("--rho", ka.rho, "Second radius")->required();
  sk->add_option("--output", ka.output, "Output path (default stdout)");
  sk->callback([&ka] { cmd_kernel(ka); });

  DumpArgs da;
  auto* sd = app.add_subcommand("dump-solutions",
                                "Fundamental pair v0, v_inf at given radii");
  sd->add_option("--nu", da.nu, "Coupling strength")->required();
  sd->add_option("--kappa", da.kappa, "Angular channel (+1 or -1)")
      ->capture_default_str();
  sd->add_option("--radii", da.radii, "Radii (comma separated)")
      ->required()
      ->delimiter(',');
  sd->add_option("--format", da.format, "json or csv")->capture_default_str();
  sd->add_option("--output", da.output, "Output path (default stdout)");
  sd->callback([&da] { cmd_dump_solutions(da); });

  ClassifyArgs cla;
  auto* scl = app.add_subcommand("classify",
                                 "Boundary data and extension membership of "
                                 "sampled spinor data");
  scl->add_option("--nu", cla.nu, "Coupling strength")->required();
  scl->add_option("--kappa", cla.kappa, "Angular channel (+1 or -1)")
      ->capture_default_str();
  scl->add_option("--input", cla.input,
                  "Sampled spinor on the grid nodes, CSV "
                  "(r,re_upper,im_upper,re_lower,im_lower) or a JSON array "
                  "of records with those fields ('-' for stdin)")
      ->required();
  scl->add_option("--beta", cla.betas,
                  "Extension parameters to test (real or inf); reports the "
                  "membership residual of each")
      ->delimiter(',');
  scl->add_option("--window", cla.window, "Fit window (two radii)")
      ->expected(2)
      ->delimiter(',');
  add_grid_options(scl, cla.grid);
  scl->add_option("--output", cla.output, "Output path (default stdout)");
  scl->callback([&cla] { cmd_classify(cla); });

  SpectrumArgs sa;
  auto* ss = app.add_subcommand("spectrum",
                                "Gap eigenvalues of one extension");
  ss->add_option("--nu", sa.nu, "Coupling strength")->required();
  ss->add_option("--kappa", sa.kappa, "Angular channel (+1 or -1)")
      ->capture_default_str();
  ss->add_option("--beta", sa.beta, "Extension parameter (real or inf)")
      ->capture_default_str();
  ss->add_option("--emin", sa.emin, "Scan start energy")
      ->capture_default_str();
  ss->add_option("--emax", sa.emax, "Scan end energy")->capture_default_str();
  ss->add_option("--nscan,--scan", sa.nscan, "Scan sample count")
      ->capture_default_str();
  add_grid_options(ss, sa.grid);
  ss->add_option("--output", sa.output, "Output path (default stdout)");
  ss->callback([&sa] { cmd_spectrum(sa); });

  FlowArgs fa;
  auto* sf = app.add_subcommand("flow",
                                "beta(E) flow of the boundary-condition map");
  sf->add_option("--nu", fa.nu, "Coupling strength")->required();
  sf->add_option("--kappa", fa.kappa, "Angular channel (+1 or -1)")
      ->capture_default_str();
  sf->add_option("--emin", fa.emin, "First energy")->capture_default_str();
  sf->add_option("--emax", fa.emax, "Last energy")->capture_default_str();
  sf->add_option("--count,--points", fa.count, "Sample count")->capture_default_str();
  sf->add_option("--format", fa.format, "csv or json")->capture_default_str();
  sf->add_option("--output", fa.output, "Output path (default stdout)");
  sf->callback([&fa] { cmd_flow(fa); });

  SweepArgs swa;
  auto* sw = app.add_subcommand("sweep",
                                "Eigenvalue sweep over nu x beta cells");
  sw->add_option("--nu", swa.nus, "Coupling strengths (comma separated)")
      ->required()
      ->delimiter(',');
  sw->add_option("--kappa", swa.kappa, "Angular channel (+1 or -1)")
      ->capture_default_str();
  sw->add_option("--beta", swa.betas,
                 "Extension parameters (comma separated; 'inf' allowed)")
      ->required()
      ->delimiter(',');
  sw->add_option("--emin", swa.emin, "Scan start energy")
      ->capture_default_str();
  sw->add_option("--emax", swa.emax, "Scan end energy")
      ->capture_default_str();
  sw->add_option("--nscan,--scan", swa.nscan, "Scan sample count per cell")
      ->capture_default_str();
  add_grid_options(sw, swa.grid);
  sw->add_option("--output", swa.output, "Output path (default stdout)");
  sw->callback([&swa] { cmd_sweep(swa); });

  NormArgs na;
  auto* sn = app.add_subcommand("sdinv-norm",
                                "Power-iteration norm of the distinguished "
                                "inverse");
  sn->add_option("--nu", na.nu, "Coupling strength")->required();
  sn->add_option("--kappa", na.kappa, "Angular channel (+1 or -1)")
      ->capture_default_str();
  sn->add_option("--tol", na.tol, "Convergence tolerance")
      ->capture_default_str();
  sn->add_option("--max-iter", na.max_iter, "Iteration cap")
      ->capture_default_str();
  add_grid_options(sn, na.grid);
  sn->add_option("--output", na.output, "Output path (default stdout)");
  sn->callback([&na] { cmd_sdinv_norm(na); });

  auto* st = app.add_subcommand("selftest", "Run the invariant suite");
  st->callback([] { cmd_selftest(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace dclab
