#pragma once

#include "hyper1d/rmatrix.hpp"

#include <utility>
#include <vector>

namespace hyper1d {

// Cross section and event-rate constant built from one recombination
// amplitude. In atomic units (hbar = 1) K3 = (k/mu) sigma, so K3/prob is the
// energy-independent constant prefactor/mu.
struct RateResult {
  double E = 0;      // total energy above breakup
  double k = 0;      // entrance momentum sqrt(2 mu E)
  double prob = 0;   // |S(dimer, lowest breakup)|^2
  double sigma = 0;  // prefactor * prob / k
  double K3 = 0;     // (k/mu) * sigma
};

// |S|^2 between the atom-dimer channel and the lowest open breakup channel.
// Requires E > 0 (both channel families open).
double recombination_probability(const RMatrixPropagator::Scatter& s,
                                 int dimer_chan = 0);

// sigma = prefactor * prob / k. The prefactor counts identical-particle
// permutations of the entrance flux: 6 for three identical bosons; other
// symmetries supply their own value.
double recombination_sigma(double k, double prob, double prefactor = 6);

RateResult rate_k3(const RMatrixPropagator::Scatter& s, double mu,
                   int dimer_chan = 0, double prefactor = 6);

// Coupled bound levels below the lowest threshold, ascending. The box
// [r_lo, r_hi] is validated by doubling r_hi and re-solving: a level shifting
// by more than reltol of its binding signals an undersized box
// (std::runtime_error). Returns the wide-box values.
std::vector<double> bound_states(const ChannelModel& model, double r_lo,
                                 double r_hi, int count, int breakpoints,
                                 double reltol = 1e-3);

// Even-channel scattering length from phase-shift samples (k, delta) just
// above the channel threshold: intercept of k tan(delta) against k^2 through
// the two lowest-k samples. Remaining samples act as consistency checks; a
// relative deviation beyond max_rel_resid of the intercept throws
// std::runtime_error. Needs at least three samples.
double atom_dimer_scattering_length(
    const std::vector<std::pair<double, double>>& k_delta,
    double max_rel_resid = 0.25);

// Solve the same propagator over an energy grid (parallel over energies).
std::vector<RMatrixPropagator::Scatter> scatter_scan(
    const RMatrixPropagator& prop, const std::vector<double>& energies,
    int nthreads = 1);

} // namespace hyper1d
