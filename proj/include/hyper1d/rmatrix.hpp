#pragma once

#include "hyper1d/channels.hpp"

#include <Eigen/Dense>
#include <memory>
#include <vector>

namespace hyper1d {

struct RMatrixOptions {
  int order = 5;             // B-spline order within a sector
  int spans_per_sector = 6;  // order + spans - 1 basis functions per channel
  double grow = 1.16;        // geometric sector growth
  double osc_rad = 2.5;      // max oscillation phase per sector
  double evan_rad = 3.0;     // max closed-channel decay exponent per sector
  double r_first = -1;       // end of the first sector; <= 0 picks rmax * 1e-7
  int quad_pts = 10;
};

// Sector-by-sector eigenchannel R-matrix propagation of the coupled
// hyperradial equations in the metric R dR, from R = 0 to the matching
// radius. Sector forms are assembled once; each energy costs one small
// eigensolve per sector. Matching uses Bessel pairs J/Y of order kappa for
// breakup channels, sqrt(2/(pi k R)) {cos, sin}(kR) for atom-dimer channels,
// and eliminates weakly closed channels through decaying Bessel K tails.
class RMatrixPropagator {
 public:
  RMatrixPropagator(std::shared_ptr<const ChannelModel> model, double rmax,
                    double emax, RMatrixOptions opt = {});

  struct Scatter {
    double E = 0;
    std::vector<int> open;  // matched channel indices, in model order
    Eigen::VectorXd k;      // their asymptotic momenta
    Eigen::MatrixXd K;
    Eigen::MatrixXcd S;
  };

  // E is the total energy: breakup threshold at 0, atom-dimer thresholds
  // negative. Must be above the lowest threshold and off all thresholds.
  Scatter solve(double E) const;

  double rmax() const { return rmax_; }
  int nsectors() const { return static_cast<int>(sectors_.size()); }
  const ChannelModel& model() const { return *model_; }

 private:
  struct Sector {
    double r1 = 0, r2 = 0;
    int nspl = 0;
    Eigen::MatrixXd A0;   // energy-independent part of the sector form
    Eigen::MatrixXd Ssp;  // per-spline measure overlap (shared by channels)
    std::vector<int> surf, inner;  // index partition of the sector basis
    int nsurf_lo = 0;              // surface functions on the r1 side
  };

  std::shared_ptr<const ChannelModel> model_;
  double rmax_, emax_;
  RMatrixOptions opt_;
  int n_;
  Eigen::VectorXd thr_, kinf_;
  std::vector<Sector> sectors_;

  Sector build_sector(double r1, double r2, bool first) const;
};

// Lowest `count` eigenenergies of the coupled hyperradial problem in a box
// [r_lo, r_hi] with log-spaced breakpoints; Dirichlet at r_hi, and at r_lo
// except for channels whose small-R index kappa_free is 0 (those take the
// natural condition). Returns absolute energies.
std::vector<double> bound_state_energies(const ChannelModel& model, double r_lo,
                                         double r_hi, int breakpoints, int count,
                                         int order = 5);

} // namespace hyper1d
