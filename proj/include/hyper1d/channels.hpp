#pragma once

#include "hyper1d/numutil.hpp"

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

namespace hyper1d {

// Adiabatic channel data: potential curves and nonadiabatic couplings as
// functions of the hyperradius.
//
//   lambda_nu(R) = 2 mu R^2 U_nu(R)
//   P_ij  = <Phi_i | d/dR Phi_j>          (antisymmetric)
//   Psq_ij = -<dPhi_i/dR | dPhi_j/dR>     (symmetric, negative semidefinite)
class ChannelModel {
 public:
  virtual ~ChannelModel() = default;
  virtual int nchan() const = 0;
  virtual double hypermass() const = 0;
  virtual void eval(double R, Eigen::VectorXd& lambda, Eigen::MatrixXd& P,
                    Eigen::MatrixXd& Psq) const = 0;
  // channel energies at R = infinity (0 for breakup channels, -B2 for
  // atom-dimer channels)
  virtual Eigen::VectorXd thresholds() const = 0;
  // exact asymptotic index kappa of breakup channels (lambda -> kappa^2);
  // 0 marks an atom-dimer channel
  virtual Eigen::VectorXd kappa_inf() const = 0;
  // R -> 0 limit of lambda (free-wedge eigenvalues)
  virtual Eigen::VectorXd lambda0() const = 0;

  Eigen::VectorXd potentials(double R) const;
};

// Plain tabulation on an ascending R grid.
struct ChannelTable {
  double mu = 0;
  std::vector<double> R;
  Eigen::MatrixXd lambda;                // nR x n
  std::vector<Eigen::MatrixXd> P, Psq;   // nR entries, n x n each
  Eigen::VectorXd thresholds, kappa_inf, lambda0;
  int nchan() const { return static_cast<int>(lambda.cols()); }
};

void save_channel_table(const ChannelTable& t, const std::string& path);
ChannelTable load_channel_table(const std::string& path);

// Cubic-spline interpolation of a ChannelTable in x = ln R with the scaled
// variables lambda, R*P, R^2*Psq. Below the table the exact small-R laws
// lambda -> lambda0 + (lambda(Rmin) - lambda0)(R/Rmin)^2, P ~ R, Psq ~ R^2
// are used.
class InterpolatedChannelModel final : public ChannelModel {
 public:
  explicit InterpolatedChannelModel(const ChannelTable& t);
  int nchan() const override { return n_; }
  double hypermass() const override { return mu_; }
  void eval(double R, Eigen::VectorXd& lambda, Eigen::MatrixXd& P,
            Eigen::MatrixXd& Psq) const override;
  Eigen::VectorXd thresholds() const override { return thresholds_; }
  Eigen::VectorXd kappa_inf() const override { return kappa_inf_; }
  Eigen::VectorXd lambda0() const override { return lambda0_; }
  double rmin() const { return rmin_; }
  double rmax() const { return rmax_; }

 private:
  int n_;
  double mu_, rmin_, rmax_;
  Eigen::VectorXd thresholds_, kappa_inf_, lambda0_, lam_at_rmin_;
  std::vector<CubicSpline> lam_;        // per channel
  std::vector<CubicSpline> p_, s_;      // packed upper triangles
  static int tri(int i, int j, int n);  // i < j
};

// Adds a hyperradius-dependent diagonal term 2 mu R^2 V3(R) to every channel
// (a three-body force leaves the channel functions untouched).
class AugmentedChannelModel final : public ChannelModel {
 public:
  AugmentedChannelModel(std::shared_ptr<const ChannelModel> base,
                        std::function<double(double)> v3);
  int nchan() const override { return base_->nchan(); }
  double hypermass() const override { return base_->hypermass(); }
  void eval(double R, Eigen::VectorXd& lambda, Eigen::MatrixXd& P,
            Eigen::MatrixXd& Psq) const override;
  Eigen::VectorXd thresholds() const override { return base_->thresholds(); }
  Eigen::VectorXd kappa_inf() const override { return base_->kappa_inf(); }
  Eigen::VectorXd lambda0() const override { return base_->lambda0(); }

 private:
  std::shared_ptr<const ChannelModel> base_;
  std::function<double(double)> v3_;
};

} // namespace hyper1d
