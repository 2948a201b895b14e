#pragma once

#include "hyper1d/bspline.hpp"
#include "hyper1d/channels.hpp"
#include "hyper1d/geometry.hpp"
#include "hyper1d/potentials.hpp"

#include <Eigen/Dense>
#include <memory>
#include <vector>

namespace hyper1d {

// Symmetry block and interaction of the angular problem. All pairs share the
// same interaction: a finite-range potential, a contact strength g, or both.
// Supported mass patterns: three identical (m1 = m2 = m3) on the wedge
// [pi/2, 2pi/3] with the pair coalescence at the lower edge, or two identical
// particles (m1 = m2) plus a distinct third on [0, pi/2] with the 1-2
// coalescence at the upper edge and the 2-3 line inside the wedge.
struct AngularModelSpec {
  double m1 = 1, m2 = 1, m3 = 1;
  Statistics stats = Statistics::boson;
  Parity parity = Parity::even;
  std::shared_ptr<const PairPotential> pot;  // may be null
  double g = 0;                              // contact strength, 0 = none
};

// One angular eigensolve: eigenvalues lambda_nu = 2 mu R^2 U_nu and channel
// functions as B-spline expansions (normalized; coefficients of basis
// functions removed by Dirichlet conditions stay zero).
struct AngularSolution {
  double R = 0;
  Eigen::VectorXd lambda;
  std::shared_ptr<const BSplineBasis> basis;
  Eigen::MatrixXd coef;  // nbasis x nchan

  // values of all channels at the given angles; out is npts x nchan
  void eval(const std::vector<double>& phi, Eigen::MatrixXd& out) const;
};

// Galerkin solver on a graded B-spline mesh. Contact interactions enter
// exactly through Robin boundary terms and a C^0 kink in the basis; finite
// potentials through per-span quadrature with focus refinement around the
// coalescence lines.
class AngularSolver {
 public:
  AngularSolver(AngularModelSpec spec, int nchan, int backbone_spans = 64,
                int order = 5);

  double wedge_lo() const { return lo_; }
  double wedge_hi() const { return hi_; }
  const ThreeBodySystem& system() const { return sys_; }
  int nchan() const { return nchan_; }

  AngularSolution solve(double R) const;

  // eigenvalues plus P and Psq from central differences in R with step
  // eps_rel * R; the returned solution is the central one and fixes the
  // sign gauge of P
  AngularSolution couplings(double R, Eigen::VectorXd& lambda, Eigen::MatrixXd& P,
                            Eigen::MatrixXd& Psq, double eps_rel = 1e-4) const;

  // quadrature nodes/weights covering the mesh used at R
  void quadrature(const BSplineBasis& basis, std::vector<double>& xs,
                  std::vector<double>& ws) const;

 private:
  AngularModelSpec spec_;
  ThreeBodySystem sys_;
  int nchan_, backbone_, order_;
  double lo_, hi_;
  bool identical_;
  double edge_phi_;        // coalescence edge (lo for identical, hi otherwise)
  double kink_phi_;        // interior 2-3 line, < 0 if absent
  double robin_c_, kink_j_;  // contact coefficients per unit R

  std::vector<double> mesh(double R, std::vector<int>& mult) const;
  double angular_potential(double R, double phi) const;
};

// Free-wedge angular spectrum (R -> 0 limit) for the symmetry block.
Eigen::VectorXd free_wedge_lambda0(const AngularModelSpec& spec, int n);

// Asymptotic breakup indices kappa (lambda -> kappa^2 as R -> infinity) for a
// generic short-range interaction; the first n_dimer entries of the channel
// list are atom-dimer channels marked 0.
Eigen::VectorXd breakup_kappa_inf(const AngularModelSpec& spec, int n_dimer, int n);

// Sweep the solver over an ascending R grid, keeping a continuous sign gauge
// between neighbouring points. Threshold/asymptote labels are supplied by the
// caller.
ChannelTable build_channel_table(const AngularSolver& solver,
                                 const std::vector<double>& Rgrid,
                                 const Eigen::VectorXd& thresholds,
                                 const Eigen::VectorXd& kappa_inf,
                                 const Eigen::VectorXd& lambda0,
                                 double fd_eps = 1e-4);

} // namespace hyper1d
