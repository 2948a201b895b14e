#include "hyper1d/runio.hpp"

#include "hyper1d/adiabatic.hpp"
#include "hyper1d/contact_model.hpp"
#include "hyper1d/numutil.hpp"
#include "hyper1d/observables.hpp"
#include "hyper1d/rmatrix.hpp"
#include "hyper1d/threshold.hpp"
#include "hyper1d/twobody.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#ifndef HYPER1D_VERSION
#define HYPER1D_VERSION "unknown"
#endif

namespace hyper1d {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

const ordered_json& need(const ordered_json& j, const std::string& key) {
  const auto it = j.find(key);
  if (it == j.end()) bad("missing key '" + key + "'");
  return *it;
}

double need_num(const ordered_json& j, const std::string& key) {
  const auto& v = need(j, key);
  if (!v.is_number()) bad("'" + key + "' must be a number");
  return v.get<double>();
}

int need_int(const ordered_json& j, const std::string& key) {
  const auto& v = need(j, key);
  if (!v.is_number_integer()) bad("'" + key + "' must be an integer");
  return v.get<int>();
}

std::string need_str(const ordered_json& j, const std::string& key) {
  const auto& v = need(j, key);
  if (!v.is_string()) bad("'" + key + "' must be a string");
  return v.get<std::string>();
}

double opt_num(const ordered_json& j, const std::string& key, double def) {
  const auto it = j.find(key);
  if (it == j.end()) return def;
  if (!it->is_number()) bad("'" + key + "' must be a number");
  return it->get<double>();
}

int opt_int(const ordered_json& j, const std::string& key, int def) {
  const auto it = j.find(key);
  if (it == j.end()) return def;
  if (!it->is_number_integer()) bad("'" + key + "' must be an integer");
  return it->get<int>();
}

std::string opt_str(const ordered_json& j, const std::string& key,
                    const std::string& def) {
  const auto it = j.find(key);
  if (it == j.end()) return def;
  if (!it->is_string()) bad("'" + key + "' must be a string");
  return it->get<std::string>();
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::vector<double> parse_grid(const ordered_json& g, const std::string& what) {
  std::vector<double> out;
  if (g.is_array()) {
    for (const auto& v : g) {
      if (!v.is_number()) bad(what + ": entries must be numbers");
      out.push_back(v.get<double>());
    }
    if (out.empty()) bad(what + ": empty grid");
    return out;
  }
  if (!g.is_object()) bad(what + ": expected an array or {lo, hi, points}");
  const double lo = need_num(g, "lo"), hi = need_num(g, "hi");
  const int n = need_int(g, "points");
  const std::string sp = opt_str(g, "spacing", "log");
  if (n < 1) bad(what + ": points >= 1");
  if (n == 1) return {lo};
  if (!(hi > lo)) bad(what + ": hi > lo");
  if (sp == "log") {
    if (!(lo > 0)) bad(what + ": log spacing needs lo > 0");
    for (int i = 0; i < n; ++i)
      out.push_back(lo * std::exp(std::log(hi / lo) * i / (n - 1)));
  } else if (sp == "linear") {
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  } else {
    bad(what + ": spacing must be 'log' or 'linear'");
  }
  return out;
}

std::array<double, 3> parse_masses(const ordered_json& cfg) {
  const auto& m = need(cfg, "masses");
  if (!m.is_array() || m.size() != 3) bad("'masses' must be [m1, m2, m3]");
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    if (!m[i].is_number() || !(m[i].get<double>() > 0))
      bad("masses must be positive numbers");
    out[i] = m[i].get<double>();
  }
  return out;
}

Statistics parse_stats(const ordered_json& cfg) {
  const std::string s = opt_str(cfg, "statistics", "boson");
  if (s == "boson") return Statistics::boson;
  if (s == "fermion") return Statistics::fermion;
  bad("statistics must be 'boson' or 'fermion'");
}

Parity parse_parity(const ordered_json& cfg) {
  const std::string s = opt_str(cfg, "parity", "even");
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  bad("parity must be 'even' or 'odd'");
}

void validate_model_block(const ordered_json& cfg) {
  parse_masses(cfg);
  parse_stats(cfg);
  parse_parity(cfg);
  const int n = need_int(cfg, "nchan");
  if (n < 1 || n > 8) bad("nchan must be in [1, 8]");
  const auto& itx = need(cfg, "interaction");
  const std::string t = need_str(itx, "type");
  const bool tuned = itx.contains("tune");
  if (t == "contact") {
    if (!tuned && !itx.contains("g")) bad("contact: give 'g' or 'tune'");
    if (tuned) need_num(need(itx, "tune"), "a");
  } else if (t == "sech2") {
    need_num(itx, "width");
    if (!tuned && !itx.contains("depth")) bad("sech2: give 'depth' or 'tune'");
    if (tuned) need_num(need(itx, "tune"), "a");
  } else if (t == "square_well") {
    need_num(itx, "depth");
    need_num(itx, "width");
  } else if (t == "gaussian_core") {
    need_num(itx, "lambda");
    need_num(itx, "mass_scale");
    if (tuned) {
      need_num(need(itx, "tune"), "a");
      need_num(need(itx, "tune"), "r0");
    } else if (!itx.contains("c") || !itx.contains("d")) {
      bad("gaussian_core: give (c, d) or 'tune'");
    }
  } else {
    bad("unknown interaction type '" + t + "'");
  }
}

std::shared_ptr<const PairPotential> build_potential(const ordered_json& itx,
                                                     double mu2b,
                                                     ordered_json& derived) {
  const std::string type = need_str(itx, "type");
  if (type == "sech2") {
    const double L = need_num(itx, "width");
    const double D = itx.contains("tune")
                         ? tune_sech_depth(L, mu2b,
                                           need_num(need(itx, "tune"), "a"))
                         : need_num(itx, "depth");
    derived["depth"] = D;
    derived["width"] = L;
    return std::make_shared<SechSquared>(D, L);
  }
  if (type == "square_well")
    return std::make_shared<SquareWell>(need_num(itx, "depth"),
                                        need_num(itx, "width"));
  if (type == "gaussian_core") {
    const double lambda = need_num(itx, "lambda");
    const double ms = need_num(itx, "mass_scale");
    if (itx.contains("tune")) {
      const auto& t = need(itx, "tune");
      const GaussianCore V =
          tune_gaussian_core(lambda, ms, mu2b, need_num(t, "a"),
                             need_num(t, "r0"), opt_num(itx, "c", 2.0),
                             opt_num(itx, "d", -1.5));
      derived["c"] = V.c();
      derived["d"] = V.d();
      return std::make_shared<GaussianCore>(V);
    }
    return std::make_shared<GaussianCore>(lambda, need_num(itx, "c"),
                                          need_num(itx, "d"), ms);
  }
  bad("unknown interaction type '" + type + "'");
}

RMatrixOptions rmx_options(const ordered_json& cfg) {
  RMatrixOptions o;
  const auto it = cfg.find("rmatrix");
  if (it == cfg.end()) return o;
  const auto& r = *it;
  o.order = opt_int(r, "order", o.order);
  o.spans_per_sector = opt_int(r, "spans_per_sector", o.spans_per_sector);
  o.grow = opt_num(r, "grow", o.grow);
  o.osc_rad = opt_num(r, "osc_rad", o.osc_rad);
  o.evan_rad = opt_num(r, "evan_rad", o.evan_rad);
  o.r_first = opt_num(r, "r_first", o.r_first);
  o.quad_pts = opt_int(r, "quad_pts", o.quad_pts);
  return o;
}

std::shared_ptr<const ChannelModel> apply_three_body(
    std::shared_ptr<const ChannelModel> base, const ordered_json& cfg,
    ordered_json& derived) {
  const auto it = cfg.find("three_body");
  if (it == cfg.end()) return base;
  const double v3 = need_num(*it, "V3");
  const double l3 = need_num(*it, "L3");
  if (!(l3 > 0)) bad("three_body: L3 > 0");
  derived["V3"] = v3;
  derived["L3"] = l3;
  return std::make_shared<AugmentedChannelModel>(
      std::move(base),
      [v3, l3](double R) { return v3 * std::exp(-(R / l3) * (R / l3)); });
}

class Csv {
 public:
  Csv(const fs::path& p, const std::vector<std::string>& header) : f_(p) {
    if (!f_) throw std::runtime_error("cannot open " + p.string());
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      f_ << (i ? "," : "") << cells[i];
    f_ << "\n";
  }

 private:
  std::ofstream f_;
};

// ---- task drivers ----------------------------------------------------------

void run_map(const ordered_json& cfg, const fs::path& dir,
             ordered_json& derived, std::vector<std::string>& arts) {
  std::vector<double> as;
  const auto& aj = need(cfg, "a");
  if (aj.is_array())
    for (const auto& v : aj) as.push_back(v.get<double>());
  else
    as.push_back(aj.get<double>());
  const double r0 = need_num(cfg, "r0");
  Csv csv(dir / "data.csv", {"a", "r0", "a3d", "aperp"});
  for (double a : as) {
    double a3d = 0, aperp = 0;
    ConfinementMap::invert(a, r0, a3d, aperp);
    csv.row({num(a), num(r0), num(a3d), num(aperp)});
  }
  derived["rows"] = as.size();
  arts.push_back("data.csv");
}

void run_channels(const ordered_json& cfg, const fs::path& dir,
                  ordered_json& derived, std::vector<std::string>& arts) {
  const BuiltModel bm = build_channel_model(cfg);
  derived["model"] = bm.derived;
  const auto grid = parse_grid(need(cfg, "rgrid"), "rgrid");
  const auto& model = *bm.model;
  const int n = model.nchan();
  const double mu = model.hypermass();
  std::vector<std::string> hdr{"R"};
  for (int i = 0; i < n; ++i) hdr.push_back("lambda_" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) hdr.push_back("U_" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      hdr.push_back("P_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      hdr.push_back("Q_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
  Csv csv(dir / "data.csv", hdr);
  Eigen::VectorXd lam;
  Eigen::MatrixXd P, Q;
  for (double R : grid) {
    if (!(R > 0)) bad("rgrid: R must be positive");
    model.eval(R, lam, P, Q);
    std::vector<std::string> cells{num(R)};
    for (int i = 0; i < n; ++i) cells.push_back(num(lam[i]));
    for (int i = 0; i < n; ++i) cells.push_back(num(lam[i] / (2 * mu * R * R)));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) cells.push_back(num(P(i, j)));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) cells.push_back(num(Q(i, j)));
    csv.row(cells);
  }
  const Eigen::VectorXd thr = model.thresholds(), kinf = model.kappa_inf(),
                        lam0 = model.lambda0();
  derived["thresholds"] = std::vector<double>(thr.data(), thr.data() + n);
  derived["kappa_inf"] = std::vector<double>(kinf.data(), kinf.data() + n);
  derived["lambda0"] = std::vector<double>(lam0.data(), lam0.data() + n);
  arts.push_back("data.csv");
}

std::vector<RMatrixPropagator::Scatter> solve_grid(
    const RMatrixPropagator& prop, const std::vector<double>& Es,
    int threads) {
  std::vector<RMatrixPropagator::Scatter> sols(Es.size());
  parallel_for(Es.size(), threads, [&](std::size_t i) {
    try {
      sols[i] = prop.solve(Es[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string(e.what()) +
                               " [grid point E=" + num(Es[i]) + "]");
    }
  });
  return sols;
}

void run_scatter(const ordered_json& cfg, const RunOptions& opt,
                 const fs::path& dir, ordered_json& derived,
                 std::vector<std::string>& arts) {
  const BuiltModel bm = build_channel_model(cfg);
  derived["model"] = bm.derived;
  const auto model = apply_three_body(bm.model, cfg, derived);
  const double rmax = need_num(cfg, "rmax");
  const auto Es = parse_grid(need(cfg, "energies"), "energies");
  const double thr_lo = model->thresholds().minCoeff();
  for (double E : Es)
    if (!(E > thr_lo)) bad("energies: E must exceed the lowest threshold");
  const double emax = *std::max_element(Es.begin(), Es.end());
  const RMatrixPropagator prop(model, rmax, emax, rmx_options(cfg));
  const auto sols = solve_grid(prop, Es, opt.threads);
  Csv csv(dir / "data.csv", {"E", "chan_i", "chan_j", "re_s", "im_s", "abs2_s"});
  double udef = 0;
  for (const auto& s : sols) {
    const int no = static_cast<int>(s.open.size());
    const Eigen::MatrixXcd D =
        s.S * s.S.adjoint() - Eigen::MatrixXcd::Identity(no, no);
    udef = std::max(udef, D.cwiseAbs().maxCoeff());
    for (int p = 0; p < no; ++p)
      for (int q = p; q < no; ++q)
        csv.row({num(s.E), std::to_string(s.open[p] + 1),
                 std::to_string(s.open[q] + 1), num(s.S(p, q).real()),
                 num(s.S(p, q).imag()), num(std::norm(s.S(p, q)))});
  }
  derived["nsectors"] = prop.nsectors();
  derived["max_unitarity_defect"] = udef;
  arts.push_back("data.csv");
}

void run_bound(const ordered_json& cfg, const fs::path& dir,
               ordered_json& derived, std::vector<std::string>& arts) {
  const BuiltModel bm = build_channel_model(cfg);
  derived["model"] = bm.derived;
  const auto model = apply_three_body(bm.model, cfg, derived);
  const double r_lo = need_num(cfg, "r_lo"), r_hi = need_num(cfg, "r_hi");
  const int count = need_int(cfg, "count");
  const int bp = need_int(cfg, "breakpoints");
  std::vector<double> levels;
  try {
    levels = bound_states(*model, r_lo, r_hi, count, bp,
                          opt_num(cfg, "reltol", 1e-3));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(std::string(e.what()) +
                             " [box r_hi=" + num(r_hi) + "]");
  }
  Csv csv(dir / "data.csv", {"n", "E"});
  for (std::size_t i = 0; i < levels.size(); ++i)
    csv.row({std::to_string(i), num(levels[i])});
  derived["levels"] = levels;
  arts.push_back("data.csv");
}

void run_threshold_scan(const ordered_json& cfg, const RunOptions& opt,
                        const fs::path& dir, ordered_json& derived,
                        std::vector<std::string>& arts) {
  const BuiltModel bm = build_channel_model(cfg);
  derived["model"] = bm.derived;
  const auto model = apply_three_body(bm.model, cfg, derived);
  if (model->kappa_inf()[0] != 0)
    bad("threshold-scan: the model has no atom-dimer channel");
  const double rmax = need_num(cfg, "rmax");
  const double prefactor = opt_num(cfg, "prefactor", 6.0);
  const auto Es = parse_grid(need(cfg, "energies"), "energies");
  for (double E : Es)
    if (!(E > 0)) bad("energies: threshold-scan needs E > 0");
  const double emax = *std::max_element(Es.begin(), Es.end());
  const RMatrixPropagator prop(model, rmax, emax, rmx_options(cfg));
  const auto sols = solve_grid(prop, Es, opt.threads);
  const double mu = model->hypermass();
  Csv csv(dir / "data.csv", {"E", "k", "prob", "sigma", "K3"});
  std::vector<std::pair<double, double>> samples;
  for (const auto& s : sols) {
    const RateResult r = rate_k3(s, mu, 0, prefactor);
    csv.row({num(r.E), num(r.k), num(r.prob), num(r.sigma), num(r.K3)});
    samples.emplace_back(r.E, r.prob);
  }
  try {
    const ThresholdFit fit = fit_threshold(
        samples, opt_num(cfg, "fit_cap",
                         std::numeric_limits<double>::infinity()));
    derived["fit"] = {{"exponent", fit.exponent}, {"A0", fit.A0}};
  } catch (const std::invalid_argument&) {
    derived["fit"] = nullptr;
  }
  derived["nsectors"] = prop.nsectors();
  arts.push_back("data.csv");
}

void run_universality(const ordered_json& cfg, const fs::path& dir,
                      ordered_json& derived, std::vector<std::string>& arts) {
  const BuiltModel bm = build_channel_model(cfg);
  derived["model"] = bm.derived;
  const auto& model = *bm.model;
  if (!bm.derived.contains("a"))
    bad("universality-scan: interaction does not define a scattering length");
  const double a = bm.derived["a"].get<double>();
  const double mu = model.hypermass();
  const auto grid = parse_grid(need(cfg, "rgrid"), "rgrid");
  Csv csv(dir / "data.csv", {"R", "U1", "scaled"});
  Eigen::VectorXd lam;
  Eigen::MatrixXd P, Q;
  for (double R : grid) {
    if (!(R > 0)) bad("rgrid: R must be positive");
    model.eval(R, lam, P, Q);
    const double U1 = lam[0] / (2 * mu * R * R);
    csv.row({num(R), num(U1), num(2 * mu * a * R * U1)});
  }
  arts.push_back("data.csv");
}

// Channel table for identical unit-mass bosons bound by -D sech^2(x/L),
// shared by the fig3 recipe.
std::shared_ptr<const ChannelModel> sech_model(double D, double L, int nchan,
                                               double table_hi, int table_pts,
                                               int backbone) {
  AngularModelSpec spec;
  spec.pot = std::make_shared<SechSquared>(D, L);
  const ThreeBodySystem sys = ThreeBodySystem::make(1, 1, 1);
  const TwoBody tb(*spec.pot, sys.mu12);
  const auto eb = tb.bound_states();
  const int nb = static_cast<int>(eb.size());
  Eigen::VectorXd thr = Eigen::VectorXd::Zero(nchan);
  for (int i = 0; i < nb && i < nchan; ++i) thr[i] = eb[i];
  const AngularSolver solver(spec, nchan, backbone);
  const auto grid =
      parse_grid({{"lo", std::min(0.05, L / 8)}, {"hi", table_hi},
                  {"points", table_pts}},
                 "table");
  const auto table = build_channel_table(
      solver, grid, thr, breakup_kappa_inf(spec, nb, nchan),
      free_wedge_lambda0(spec, nchan));
  return std::make_shared<InterpolatedChannelModel>(table);
}

void run_fig3(const ordered_json& cfg, const RunOptions& opt,
              const fs::path& dir, ordered_json& derived,
              std::vector<std::string>& arts) {
  const int nchan = opt_int(cfg, "nchan", 5);
  const double rmax = opt_num(cfg, "rmax", 150);
  const double b2 = 0.25;  // contact dimer binding at a = 2, unit masses
  std::vector<double> Ls{2, 1, 0.5, 0.125};
  if (cfg.contains("L_list")) Ls = parse_grid(cfg.at("L_list"), "L_list");
  const auto Es = cfg.contains("energies")
                      ? parse_grid(cfg.at("energies"), "energies")
                      : parse_grid({{"lo", 0.25 * b2}, {"hi", 2 * b2},
                                    {"points", 8}, {"spacing", "linear"}},
                                   "energies");
  const double emax = *std::max_element(Es.begin(), Es.end());
  Csv csv(dir / "data.csv", {"curve", "E", "abs2_s11"});
  auto emit = [&](const std::string& label,
                  std::shared_ptr<const ChannelModel> model) {
    const RMatrixPropagator prop(std::move(model), rmax, emax,
                                 rmx_options(cfg));
    const auto sols = solve_grid(prop, Es, opt.threads);
    for (const auto& s : sols)
      csv.row({label, num(s.E), num(std::norm(s.S(0, 0)))});
  };
  emit("delta", std::make_shared<ContactChannelModel>(1.0, -1.0, nchan,
                                                      Parity::even));
  ordered_json depths;
  for (double L : Ls) {
    const double D = tune_sech_depth(L, 0.5, 2.0);
    depths["L=" + num(L)] = D;
    emit("L=" + num(L),
         sech_model(D, L, nchan, 1.35 * rmax,
                    opt_int(cfg, "table_points", 140),
                    opt_int(cfg, "backbone_spans", 64)));
  }
  derived["depths"] = depths;
  arts.push_back("data.csv");
}

void run_fig4(const ordered_json& cfg, const RunOptions& opt,
              const fs::path& dir, ordered_json& derived,
              std::vector<std::string>& arts) {
  std::vector<double> as{52, 104, 208};
  if (cfg.contains("a_list")) as = parse_grid(cfg.at("a_list"), "a_list");
  const double r0 = opt_num(cfg, "r0", 14);
  const double ms = opt_num(cfg, "mass", 7296.299);
  const double lambda = opt_num(cfg, "lambda", 0.16);
  const int nchan = opt_int(cfg, "nchan", 4);
  const int npts = opt_int(cfg, "energy_points", 5);
  Csv csv(dir / "data.csv", {"a", "exponent", "A0"});
  ordered_json fits;
  for (double a : as) {
    ordered_json dj;
    ordered_json mcfg = {
        {"masses", {ms, ms, ms}},
        {"nchan", nchan},
        {"interaction",
         {{"type", "gaussian_core"}, {"lambda", lambda}, {"mass_scale", ms},
          {"tune", {{"a", a}, {"r0", r0}}}}},
        {"table", {{"lo", 0.5}, {"hi", opt_num(cfg, "rmax_over_a", 6) * a * 1.3},
                   {"points", opt_int(cfg, "table_points", 150)}}}};
    const BuiltModel bm = build_channel_model(mcfg);
    const double b2 = -bm.model->thresholds().minCoeff();
    const auto Es = parse_grid(
        {{"lo", 1e-4 * b2}, {"hi", 1e-2 * b2}, {"points", npts}}, "energies");
    const RMatrixPropagator prop(bm.model, opt_num(cfg, "rmax_over_a", 6) * a,
                                 Es.back(), rmx_options(cfg));
    const auto sols = solve_grid(prop, Es, opt.threads);
    std::vector<std::pair<double, double>> samples;
    for (const auto& s : sols)
      samples.emplace_back(s.E, recombination_probability(s));
    const ThresholdFit fit = fit_threshold(samples);
    csv.row({num(a), num(fit.exponent), num(fit.A0)});
    dj["model"] = bm.derived;
    dj["exponent"] = fit.exponent;
    dj["A0"] = fit.A0;
    fits["a=" + num(a)] = dj;
  }
  derived["fits"] = fits;
  arts.push_back("data.csv");
}

void run_fig5(const ordered_json& cfg, const fs::path& dir,
              ordered_json& derived, std::vector<std::string>& arts) {
  std::vector<double> as{-800, -3200, -12800};
  if (cfg.contains("a_list")) as = parse_grid(cfg.at("a_list"), "a_list");
  const double r0 = opt_num(cfg, "r0", 14);
  const double ms = opt_num(cfg, "mass", 7296.299);
  const double lambda = opt_num(cfg, "lambda", 0.16);
  const int rpts = opt_int(cfg, "r_points", 36);
  Csv csv(dir / "data.csv", {"a", "R", "U1", "scaled"});
  ordered_json tuned;
  for (double a : as) {
    if (!(a < 0)) bad("fig5: a_list must be negative");
    ordered_json mcfg = {
        {"masses", {ms, ms, ms}},
        {"nchan", 1},
        {"interaction",
         {{"type", "gaussian_core"}, {"lambda", lambda}, {"mass_scale", ms},
          {"tune", {{"a", a}, {"r0", r0}}}}},
        {"rgrid", {{"lo", r0 / 3}, {"hi", 3 * std::abs(a)}, {"points", rpts}}}};
    const BuiltModel bm = build_channel_model(mcfg);
    const double mu = bm.model->hypermass();
    const auto grid = parse_grid(mcfg.at("rgrid"), "rgrid");
    Eigen::VectorXd lam;
    Eigen::MatrixXd P, Q;
    for (double R : grid) {
      bm.model->eval(R, lam, P, Q);
      const double U1 = lam[0] / (2 * mu * R * R);
      csv.row({num(a), num(R), num(U1), num(2 * mu * a * R * U1)});
    }
    tuned["a=" + num(a)] = bm.derived;
  }
  derived["tuned"] = tuned;
  arts.push_back("data.csv");
}

void write_manifest(const fs::path& dir, const std::string& task,
                    const std::string& key, const ordered_json& cfg,
                    const ordered_json& derived,
                    const std::vector<std::string>& arts, double wall) {
  ordered_json m;
  m["schema_version"] = 1;
  m["task"] = task;
  m["version"] = tool_version();
  m["key"] = key;
  m["wall_time_s"] = wall;
  m["config"] = cfg;
  m["derived"] = derived;
  m["artifacts"] = arts;
  m["complete"] = true;
  std::ofstream f(dir / "manifest.json");
  f << m.dump(2) << "\n";
}

} // namespace

ordered_json load_config(const fs::path& path) {
  std::ifstream f(path);
  if (!f) bad("cannot read config file " + path.string());
  try {
    return ordered_json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

void validate_config(const ordered_json& cfg) {
  if (!cfg.is_object()) bad("top level must be an object");
  const std::string task = need_str(cfg, "task");
  static const std::set<std::string> tasks{
      "channels",       "scatter",           "bound",    "threshold-scan",
      "universality-scan", "map-1d3d",       "fig-recipe"};
  if (!tasks.count(task)) bad("unknown task '" + task + "'");
  if (task == "map-1d3d") {
    const auto& a = need(cfg, "a");
    auto check = [](const ordered_json& v) {
      if (!v.is_number() || v.get<double>() == 0)
        bad("'a' entries must be nonzero numbers");
    };
    if (a.is_array()) {
      if (a.empty()) bad("'a' must not be empty");
      for (const auto& v : a) check(v);
    } else {
      check(a);
    }
    if (!(need_num(cfg, "r0") > 0)) bad("r0 must be positive");
    return;
  }
  if (task == "fig-recipe") {
    const std::string r = need_str(cfg, "recipe");
    if (r != "fig3" && r != "fig4" && r != "fig5")
      bad("recipe must be one of fig3, fig4, fig5");
    return;
  }
  validate_model_block(cfg);
  if (task == "channels" || task == "universality-scan")
    need(cfg, "rgrid");
  if (task == "scatter" || task == "threshold-scan") {
    if (!(need_num(cfg, "rmax") > 0)) bad("rmax must be positive");
    need(cfg, "energies");
  }
  if (task == "bound") {
    const double r_lo = need_num(cfg, "r_lo"), r_hi = need_num(cfg, "r_hi");
    if (!(r_lo > 0 && r_hi > r_lo)) bad("need 0 < r_lo < r_hi");
    if (need_int(cfg, "count") < 1) bad("count >= 1");
    if (need_int(cfg, "breakpoints") < 8) bad("breakpoints >= 8");
  }
}

std::string config_key(const ordered_json& cfg) {
  const nlohmann::json sorted = nlohmann::json::parse(cfg.dump());
  const auto h = fnv1a(sorted.dump() + "|" + tool_version());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string tool_version() { return HYPER1D_VERSION; }

BuiltModel build_channel_model(const ordered_json& cfg) {
  validate_model_block(cfg);
  const auto m = parse_masses(cfg);
  const Statistics st = parse_stats(cfg);
  const Parity pa = parse_parity(cfg);
  const int nchan = need_int(cfg, "nchan");
  const ThreeBodySystem sys = ThreeBodySystem::make(m[0], m[1], m[2]);
  const bool identical = m[0] == m[1] && m[1] == m[2];
  const auto& itx = need(cfg, "interaction");
  const std::string type = need_str(itx, "type");

  ordered_json derived;
  derived["mu"] = sys.mu;
  derived["mu12"] = sys.mu12;
  derived["phi23"] = sys.phi23;

  if (type == "contact") {
    if (!identical || st != Statistics::boson)
      bad("contact channel model: three identical bosons only");
    const double g =
        itx.contains("tune")
            ? -1.0 / (sys.mu12 * need_num(need(itx, "tune"), "a"))
            : need_num(itx, "g");
    if (g == 0) bad("contact: g must be nonzero");
    auto model = std::make_shared<ContactChannelModel>(m[0], g, nchan, pa);
    derived["g"] = g;
    derived["a"] = contact_scattering_length(g, sys.mu12);
    if (g < 0) derived["B2"] = contact_binding(g, sys.mu12);
    return {std::move(model), std::move(derived)};
  }

  if (!identical) bad("numeric channel tables support identical masses only");

  AngularModelSpec spec;
  spec.m1 = m[0];
  spec.m2 = m[1];
  spec.m3 = m[2];
  spec.stats = st;
  spec.parity = pa;
  spec.pot = build_potential(itx, sys.mu12, derived);

  const TwoBody tb(*spec.pot, sys.mu12);
  const auto eb = tb.bound_states();
  const int nb = static_cast<int>(eb.size());
  if (nb >= nchan) bad("nchan must exceed the number of pair bound states");
  const auto sp = tb.effective_range(0.05 / spec.pot->range());
  derived["a"] = sp.a;
  derived["r0"] = sp.r0;
  derived["dimers"] = eb;

  Eigen::VectorXd thr = Eigen::VectorXd::Zero(nchan);
  for (int i = 0; i < nb; ++i) thr[i] = eb[i];
  const ordered_json* gridspec = nullptr;
  if (cfg.contains("table"))
    gridspec = &cfg.at("table");
  else if (cfg.contains("rgrid"))
    gridspec = &cfg.at("rgrid");
  else
    bad("numeric model needs a 'table' (or 'rgrid') grid");
  const auto grid = parse_grid(*gridspec, "table");
  if (grid.size() < 8) bad("table: at least 8 points");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] > 0 && grid[i] < grid[i + 1]))
      bad("table: grid must be positive ascending");

  const AngularSolver solver(spec, nchan, opt_int(cfg, "backbone_spans", 64));
  const auto table = build_channel_table(
      solver, grid, thr, breakup_kappa_inf(spec, nb, nchan),
      free_wedge_lambda0(spec, nchan));
  auto model = std::make_shared<InterpolatedChannelModel>(table);
  derived["table_points"] = grid.size();
  return {std::move(model), std::move(derived)};
}

fs::path run_task(const ordered_json& cfg, const RunOptions& opt) {
  validate_config(cfg);
  const std::string task = cfg.at("task").get<std::string>();
  const std::string key = config_key(cfg);
  const fs::path dir = opt.out_dir / (task + "-" + key);
  if (opt.use_cache && fs::exists(dir / "manifest.json")) {
    try {
      std::ifstream f(dir / "manifest.json");
      const auto m = ordered_json::parse(f);
      if (m.value("complete", false) && m.value("version", "") == tool_version())
        return dir;
    } catch (...) {
      // fall through and recompute
    }
  }
  fs::create_directories(dir);
  const auto t0 = std::chrono::steady_clock::now();
  ordered_json derived;
  std::vector<std::string> arts;
  if (task == "map-1d3d") {
    run_map(cfg, dir, derived, arts);
  } else if (task == "channels") {
    run_channels(cfg, dir, derived, arts);
  } else if (task == "scatter") {
    run_scatter(cfg, opt, dir, derived, arts);
  } else if (task == "bound") {
    run_bound(cfg, dir, derived, arts);
  } else if (task == "threshold-scan") {
    run_threshold_scan(cfg, opt, dir, derived, arts);
  } else if (task == "universality-scan") {
    run_universality(cfg, dir, derived, arts);
  } else {
    const std::string recipe = need_str(cfg, "recipe");
    if (recipe == "fig3")
      run_fig3(cfg, opt, dir, derived, arts);
    else if (recipe == "fig4")
      run_fig4(cfg, opt, dir, derived, arts);
    else
      run_fig5(cfg, dir, derived, arts);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_manifest(dir, task, key, cfg, derived, arts, wall);
  return dir;
}

} // namespace hyper1d
