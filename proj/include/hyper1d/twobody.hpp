#pragma once

#include "hyper1d/potentials.hpp"

#include <vector>

namespace hyper1d {

struct ScatteringParams {
  double a;   // even-wave scattering length: psi(x; E=0) ~ (x - a)
  double r0;  // effective range in k tan(delta) = 1/a + r0 k^2 / 2, where the
              // expansion variable is continued so that a weakly bound level
              // sits at kappa = [1 - sqrt(1 - 2 r0/a)]/r0. Operationally
              // r0 = -2 d(k tan delta)/d(k^2) for the physical phase below.
};

// Even-wave two-body solver on the half line (Numerov, O(h^4)).
class TwoBody {
 public:
  TwoBody(const PairPotential& V, double reduced_mass, int npts = 6000);

  // even-channel phase: psi ~ cos(k x + delta) outside the interaction;
  // delta(0+) = pi/2 - a k + O(k^3) for finite a
  double phase_shift(double k) const;
  double scattering_length() const;
  // khi sets the larger of the two momenta used for the r0 fit; keep
  // khi * r0 well below 1.
  ScatteringParams effective_range(double khi) const;
  std::vector<double> bound_states() const;  // ascending (most bound first)
  int count_bound() const;

 private:
  const PairPotential& V_;
  double mu_;
  double h_;
  int n_;        // grid points on [0, (n-1) h]; potential negligible past icut_
  int icut_;
  // integrate outward at energy E; returns node count up to i_stop, fills psi
  int integrate(double E, std::vector<double>& psi, int i_stop) const;
};

// contact interaction g delta(x) closed forms
double contact_scattering_length(double g, double mu2b);
double contact_binding(double g, double mu2b);  // requires g < 0

// -D sech^2(x/L) closed forms (even sector)
struct SechSquaredRef {
  static double eta(double D, double L, double mu2b);
  static double scattering_length(double D, double L, double mu2b);
  static std::vector<double> energies(double D, double L, double mu2b);
};

// Map between quasi-1D even-wave parameters (a, r0) and the 3-D scattering
// length under transverse harmonic confinement of oscillator length aperp.
struct ConfinementMap {
  static double a1d(double a3d, double aperp);
  static double r0_1d(double a1d, double aperp);
  // closed-form inverse of the pair above
  static void invert(double a1d, double r0, double& a3d, double& aperp);
};

// Calibrate GaussianCore coefficients (c, d) so the potential reproduces the
// target (a, r0) at the given reduced mass. Damped Newton in (1/a, r0) space;
// seeds (c0, d0) matter only for speed. Throws std::runtime_error if the
// iteration stalls or the result fails the single-bound-state sanity check
// (expects one dimer for a > 0, none for a < 0).
GaussianCore tune_gaussian_core(double lambda, double mass_scale, double mu2b,
                                double target_a, double target_r0,
                                double c0 = 2.0, double d0 = -1.5);

// Depth D of -D sech^2(x/L) reproducing the target even-wave scattering
// length while keeping exactly one even-sector bound state.
double tune_sech_depth(double L, double mu2b, double target_a);

} // namespace hyper1d
