#pragma once

#include <Eigen/Dense>
#include <vector>

namespace hyper1d {

// Clamped B-spline basis of given order (= polynomial degree + 1) on a
// breakpoint sequence. Interior breakpoints may carry a multiplicity to lower
// continuity there (multiplicity order-1 gives a C^0 point, used to represent
// derivative kinks exactly).
class BSplineBasis {
 public:
  BSplineBasis(int order, const std::vector<double>& breakpoints,
               const std::vector<int>& interior_mult = {});

  int order() const { return k_; }
  int size() const { return nbasis_; }
  double tmin() const { return knots_[k_ - 1]; }
  double tmax() const { return knots_[nbasis_]; }
  const std::vector<double>& knots() const { return knots_; }

  // Distinct spans [span_lo(i), span_hi(i)), i in [0, nspans()).
  int nspans() const { return static_cast<int>(spans_.size()) - 1; }
  double span_lo(int i) const { return spans_[i]; }
  double span_hi(int i) const { return spans_[i + 1]; }

  // Index of the first of the `order` basis functions that are nonzero at x.
  int first_nonzero(double x) const;

  // Values (and derivatives up to nderiv) of the `order` nonzero basis
  // functions at x: out[d * order + j] = d^d/dx^d B_{first+j}(x).
  // out must have room for (nderiv + 1) * order doubles.
  void eval(double x, int nderiv, double* out, int& first) const;

  Eigen::VectorXd dense_row(double x, int deriv = 0) const;

 private:
  int k_;        // order
  int nbasis_;
  std::vector<double> knots_;
  std::vector<double> spans_;
  int find_knot_span(double x) const;
};

} // namespace hyper1d
