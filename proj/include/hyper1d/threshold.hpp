#pragma once

#include "hyper1d/geometry.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace hyper1d {

// Power law governing breakup-entrance processes near E = 0:
// |S|^2 ~ k^{2 kappa_min} ~ E^{kappa_min}.
struct ThresholdLaw {
  double kappa_min;
  double exponent_k;  // 2 kappa_min
  double exponent_E;  // kappa_min
};

// Lowest asymptotic channel index of a symmetry block. phi23 (the 2-3
// coalescence angle) is required for two-identical sectors and ignored when
// all three particles are identical.
ThresholdLaw threshold_law(Statistics st, Parity pa, bool identical,
                           double phi23 = 0);

// Long-range channel potential in the window L << R << |a|:
// U = slope/(2 mu a R), attractive for a > 0, repulsive for a < 0.
double universal_potential(double R, double a, double mu);

// Lowest continuum potential at |a| = infinity when the pair holds n bound
// states: U = -(3/4)^{1/4} n^2 pi L / (2 mu R^3).
double infinite_a_potential(double R, int n, double L, double mu);

// Multiplicative modification of the threshold rate by the universal window.
// a < 0: tunneling factor exp[-4 sqrt|slope| (1 - xi sqrt(L/|a|))];
// a > 0: interference factor sin^2[2 sqrt|slope| (1 - xi sqrt(L/|a|)) + phi_sr].
// xi and phi_sr are caller-supplied shape parameters, not fitted here.
double rate_modulation(double a, double L, double xi, double phi_sr = 0);

// WKB phase integral int sqrt(2 mu (E - W)) dR over the classically allowed
// set {W < E} within [rlo, rhi]. W is the effective potential of the
// flat-measure radial problem (the R^{-2} term generated by removing the
// first-derivative term is assumed already absorbed into W); no Langer shift
// is applied.
double wkb_phase(const std::function<double(double)>& W, double rlo,
                 double rhi, double mu, double E);

// Solve phase(E) = (n + 1/2) pi for the n-th level by bisection in E, with
// turning points located on the supplied curve. Returns nullopt when the
// requested phase is not reached anywhere below the outer wall.
std::optional<double> wkb_bound_energy(const std::function<double(double)>& W,
                                       double rlo, double rhi, double mu,
                                       int n);

// Log-log least squares on probability samples (E, p): p = A0 * E^exponent.
// Requires at least four samples spanning two decades in E, every E inside
// (0, e_cap), every p positive.
struct ThresholdFit {
  double exponent;
  double A0;
};
ThresholdFit fit_threshold(
    const std::vector<std::pair<double, double>>& samples,
    double e_cap = std::numeric_limits<double>::infinity());

} // namespace hyper1d
