#include "hyper1d/threshold.hpp"

#include "hyper1d/constants.hpp"
#include "hyper1d/numutil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyper1d {

ThresholdLaw threshold_law(Statistics st, Parity pa, bool identical,
                           double phi23) {
  // Reflection about the symmetry axis composes the pair exchange with
  // inversion, so the axis condition is Neumann exactly when statistics and
  // parity carry the same sign.
  const bool axis_neumann =
      (st == Statistics::boson) == (pa == Parity::even);
  double kmin;
  if (identical) {
    kmin = (axis_neumann ? 0.5 : 1.0) * pi / (pi / 6);
  } else {
    if (!(phi23 > 0 && phi23 < pi / 2))
      throw std::invalid_argument("threshold_law: phi23 outside (0, pi/2)");
    // Smallest member of either asymptotic family: the subwedge between the
    // 2-3 line and the 1-2 coalescence (nodes at both ends), or the subwedge
    // against the symmetry axis.
    const double fam_pair = pi / (pi / 2 - phi23);
    const double fam_axis = (axis_neumann ? 0.5 : 1.0) * pi / phi23;
    kmin = std::min(fam_pair, fam_axis);
  }
  return {kmin, 2 * kmin, kmin};
}

double universal_potential(double R, double a, double mu) {
  if (!(R > 0) || a == 0 || !(mu > 0))
    throw std::invalid_argument("universal_potential: need R > 0, a != 0");
  return universal_slope / (2 * mu * a * R);
}

double infinite_a_potential(double R, int n, double L, double mu) {
  if (!(R > 0) || n < 1 || !(L > 0) || !(mu > 0))
    throw std::invalid_argument("infinite_a_potential: bad arguments");
  return -std::pow(0.75, 0.25) * n * n * pi * L / (2 * mu * R * R * R);
}

double rate_modulation(double a, double L, double xi, double phi_sr) {
  if (!(L > 0) || !(std::abs(a) > L))
    throw std::invalid_argument("rate_modulation: need |a| > L > 0");
  const double root = std::sqrt(-universal_slope);
  const double window = 1 - xi * std::sqrt(L / std::abs(a));
  if (a < 0) return std::exp(-4 * root * window);
  const double s = std::sin(2 * root * window + phi_sr);
  return s * s;
}

namespace {

// integral of sqrt(2 mu (E - W)) over one allowed interval; the cosine map
// absorbs the sqrt vanishing at true turning points
double allowed_integral(const std::function<double(double)>& W, double x1,
                        double x2, double mu, double E) {
  static const GaussLegendre gl(16);
  const double mid = 0.5 * (x1 + x2), half = 0.5 * (x2 - x1);
  const int panels = 8;
  double sum = 0;
  for (int p = 0; p < panels; ++p) {
    std::vector<double> us, ws;
    gl.mapped(double(p) / panels, double(p + 1) / panels, us, ws);
    for (std::size_t q = 0; q < us.size(); ++q) {
      const double u = us[q];
      const double R = mid - half * std::cos(pi * u);
      const double v = E - W(R);
      if (v <= 0) continue;
      sum += ws[q] * std::sqrt(2 * mu * v) * half * pi * std::sin(pi * u);
    }
  }
  return sum;
}

} // namespace

double wkb_phase(const std::function<double(double)>& W, double rlo,
                 double rhi, double mu, double E) {
  if (!(rhi > rlo) || !(rlo > 0) || !(mu > 0))
    throw std::invalid_argument("wkb_phase: need 0 < rlo < rhi, mu > 0");
  const int N = 2000;
  const double lr = std::log(rhi / rlo);
  double phase = 0;
  double xprev = rlo, vprev = W(rlo) - E;
  double xin = vprev < 0 ? rlo : -1;  // left edge of the current allowed run
  for (int i = 1; i < N; ++i) {
    const double x = rlo * std::exp(lr * i / (N - 1));
    const double v = W(x) - E;
    if ((vprev < 0) != (v < 0)) {
      const double xc =
          find_root([&](double r) { return W(r) - E; }, xprev, x);
      if (v < 0) {
        xin = xc;
      } else {
        phase += allowed_integral(W, xin, xc, mu, E);
        xin = -1;
      }
    }
    xprev = x;
    vprev = v;
  }
  if (xin > 0) phase += allowed_integral(W, xin, rhi, mu, E);
  return phase;
}

std::optional<double> wkb_bound_energy(const std::function<double(double)>& W,
                                       double rlo, double rhi, double mu,
                                       int n) {
  if (n < 0) throw std::invalid_argument("wkb_bound_energy: n < 0");
  const int N = 4000;
  const double lr = std::log(rhi / rlo);
  double wmin = W(rlo);
  for (int i = 1; i < N; ++i)
    wmin = std::min(wmin, W(rlo * std::exp(lr * i / (N - 1))));
  const double wall = W(rhi);
  if (!(wmin < wall)) return std::nullopt;
  const double target = (n + 0.5) * pi;
  const double span = wall - wmin;
  const double elo = wmin + 1e-9 * span;
  const double ehi = wall - 1e-9 * span;
  auto f = [&](double E) { return wkb_phase(W, rlo, rhi, mu, E) - target; };
  if (f(ehi) < 0) return std::nullopt;
  if (f(elo) >= 0)
    throw std::invalid_argument("wkb_bound_energy: curve minimum unresolved");
  const double xtol = std::max(std::abs(wmin), std::abs(wall)) * 1e-14;
  return find_root(f, elo, ehi, xtol);
}

ThresholdFit fit_threshold(
    const std::vector<std::pair<double, double>>& samples, double e_cap) {
  if (samples.size() < 4)
    throw std::invalid_argument("fit_threshold: need at least 4 samples");
  double emin = std::numeric_limits<double>::infinity(), emax = 0;
  std::vector<double> lx, ly;
  lx.reserve(samples.size());
  ly.reserve(samples.size());
  for (const auto& [E, p] : samples) {
    if (!(E > 0) || !(E < e_cap))
      throw std::invalid_argument("fit_threshold: E outside (0, e_cap)");
    if (!(p > 0))
      throw std::invalid_argument("fit_threshold: nonpositive probability");
    emin = std::min(emin, E);
    emax = std::max(emax, E);
    lx.push_back(std::log(E));
    ly.push_back(std::log(p));
  }
  if (emax / emin < 100 * (1 - 1e-12))
    throw std::invalid_argument("fit_threshold: samples span < 2 decades");
  const auto [intercept, slope] = fit_line(lx, ly);
  return {slope, std::exp(intercept)};
}

} // namespace hyper1d
