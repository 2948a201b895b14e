#pragma once

#include "hyper1d/channels.hpp"
#include "hyper1d/geometry.hpp"

namespace hyper1d {

// Exact adiabatic channels for three identical bosons with pairwise contact
// interactions of strength g. Reduced to the wedge theta in [0, X], X = pi/6:
// theta = 0 is the inversion axis (Neumann for even parity, Dirichlet for
// odd), theta = X is a pair coalescence carrying the Robin condition
// Phi'(X) = -c R Phi(X) with c = mu g / d12. Eigenvalues come from one
// continued transcendental equation per branch; couplings are evaluated in
// closed form, so this model doubles as the reference for the numerical
// angular solver.
class ContactChannelModel final : public ChannelModel {
 public:
  ContactChannelModel(double mass, double g, int nchan, Parity parity);

  int nchan() const override { return n_; }
  double hypermass() const override { return mu_; }
  void eval(double R, Eigen::VectorXd& lambda, Eigen::MatrixXd& P,
            Eigen::MatrixXd& Psq) const override;
  Eigen::VectorXd thresholds() const override { return thr_; }
  Eigen::VectorXd kappa_inf() const override { return kinf_; }
  Eigen::VectorXd lambda0() const override { return lam0_; }

  double coupling() const { return g_; }
  // Robin slope c: the boundary condition is Phi'(X) = -cR Phi(X)
  double robin_slope() const { return c_; }
  double wedge() const { return X_; }
  // dimer binding energy (g < 0), B2 = mu12 g^2 / 2
  double pair_binding() const;

  // single-branch access, branches counted from below
  double root(double R, int branch) const;
  double root_slope(double R, int branch) const;  // d lambda / dR

 private:
  double mass_, g_, mu_, c_, X_;
  int n_;
  Parity pa_;
  Eigen::VectorXd thr_, kinf_, lam0_;
};

} // namespace hyper1d
