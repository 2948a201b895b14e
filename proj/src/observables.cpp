#include "hyper1d/observables.hpp"

#include "hyper1d/numutil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hyper1d {

double recombination_probability(const RMatrixPropagator::Scatter& s,
                                 int dimer_chan) {
  int io = -1, ib = -1;
  for (std::size_t p = 0; p < s.open.size(); ++p) {
    if (s.open[p] == dimer_chan && io < 0) io = static_cast<int>(p);
    if (s.open[p] != dimer_chan && ib < 0) ib = static_cast<int>(p);
  }
  if (io < 0 || ib < 0)
    throw std::invalid_argument(
        "recombination_probability: need the dimer and a breakup channel open");
  return std::norm(s.S(io, ib));
}

double recombination_sigma(double k, double prob, double prefactor) {
  if (!(k > 0)) throw std::invalid_argument("recombination_sigma: k <= 0");
  return prefactor * prob / k;
}

RateResult rate_k3(const RMatrixPropagator::Scatter& s, double mu,
                   int dimer_chan, double prefactor) {
  if (!(s.E > 0))
    throw std::invalid_argument("rate_k3: need E above breakup");
  RateResult r;
  r.E = s.E;
  r.k = std::sqrt(2 * mu * s.E);
  r.prob = recombination_probability(s, dimer_chan);
  r.sigma = recombination_sigma(r.k, r.prob, prefactor);
  r.K3 = r.k / mu * r.sigma;
  return r;
}

std::vector<double> bound_states(const ChannelModel& model, double r_lo,
                                 double r_hi, int count, int breakpoints,
                                 double reltol) {
  const double thr_min = model.thresholds().minCoeff();
  auto below = [&](std::vector<double> all) {
    std::vector<double> out;
    for (double e : all)
      if (e < thr_min) out.push_back(e);
    return out;
  };
  const auto narrow =
      below(bound_state_energies(model, r_lo, r_hi, breakpoints, count));
  // keep the breakpoint density when the box grows
  const int extra = static_cast<int>(
      std::ceil(breakpoints * std::log(2.0) / std::log(r_hi / r_lo)));
  const auto wide = below(bound_state_energies(model, r_lo, 2 * r_hi,
                                               breakpoints + extra, count));
  for (std::size_t i = 0; i < narrow.size() && i < wide.size(); ++i) {
    const double binding = thr_min - wide[i];
    if (std::abs(narrow[i] - wide[i]) > reltol * std::abs(binding))
      throw std::runtime_error("bound_states: box too small (level " +
                               std::to_string(i) + " unconverged)");
  }
  return wide;
}

double atom_dimer_scattering_length(
    const std::vector<std::pair<double, double>>& k_delta,
    double max_rel_resid) {
  if (k_delta.size() < 3)
    throw std::invalid_argument(
        "atom_dimer_scattering_length: need >= 3 samples");
  auto pts = k_delta;
  std::sort(pts.begin(), pts.end());
  for (const auto& [k, d] : pts)
    if (!(k > 0))
      throw std::invalid_argument("atom_dimer_scattering_length: k <= 0");
  auto y = [](const std::pair<double, double>& p) {
    return p.first * std::tan(p.second);
  };
  auto x = [](const std::pair<double, double>& p) {
    return p.first * p.first;
  };
  const double slope = (y(pts[1]) - y(pts[0])) / (x(pts[1]) - x(pts[0]));
  const double c0 = y(pts[0]) - slope * x(pts[0]);
  const double scale =
      std::max({std::abs(c0), std::abs(y(pts[0])), std::abs(y(pts[1]))});
  for (std::size_t i = 2; i < pts.size(); ++i) {
    const double resid = std::abs(c0 + slope * x(pts[i]) - y(pts[i]));
    if (resid > max_rel_resid * scale)
      throw std::runtime_error(
          "atom_dimer_scattering_length: quadratic term contaminates the fit");
  }
  if (c0 == 0) return std::numeric_limits<double>::infinity();
  return 1.0 / c0;
}

std::vector<RMatrixPropagator::Scatter> scatter_scan(
    const RMatrixPropagator& prop, const std::vector<double>& energies,
    int nthreads) {
  std::vector<RMatrixPropagator::Scatter> out(energies.size());
  parallel_for(energies.size(), nthreads,
               [&](std::size_t i) { out[i] = prop.solve(energies[i]); });
  return out;
}

} // namespace hyper1d
