#include "hyper1d/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyper1d {

BSplineBasis::BSplineBasis(int order, const std::vector<double>& breakpoints,
                           const std::vector<int>& interior_mult)
    : k_(order) {
  const int nb = static_cast<int>(breakpoints.size());
  if (k_ < 2) throw std::invalid_argument("BSplineBasis: order >= 2");
  if (nb < 2) throw std::invalid_argument("BSplineBasis: need >= 2 breakpoints");
  for (int i = 1; i < nb; ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw std::invalid_argument("BSplineBasis: breakpoints not increasing");
  if (!interior_mult.empty() &&
      interior_mult.size() != breakpoints.size() - 2)
    throw std::invalid_argument("BSplineBasis: interior_mult size mismatch");

  spans_ = breakpoints;
  knots_.reserve(2 * k_ + nb);
  for (int i = 0; i < k_; ++i) knots_.push_back(breakpoints.front());
  for (int i = 1; i < nb - 1; ++i) {
    int m = interior_mult.empty() ? 1 : interior_mult[i - 1];
    if (m < 1 || m > k_ - 1)
      throw std::invalid_argument("BSplineBasis: multiplicity out of range");
    for (int j = 0; j < m; ++j) knots_.push_back(breakpoints[i]);
  }
  for (int i = 0; i < k_; ++i) knots_.push_back(breakpoints.back());
  nbasis_ = static_cast<int>(knots_.size()) - k_;
}

int BSplineBasis::find_knot_span(double x) const {
  // last index s with knots_[s] <= x and knots_[s] < knots_[s+1], clamped
  const int lo = k_ - 1, hi = nbasis_;  // valid knot range [t_{k-1}, t_{nbasis}]
  if (x >= knots_[hi]) {
    int s = hi - 1;
    while (knots_[s] == knots_[s + 1]) --s;
    return s;
  }
  if (x <= knots_[lo]) {
    int s = lo;
    while (knots_[s] == knots_[s + 1]) ++s;
    return s;
  }
  int s = static_cast<int>(std::upper_bound(knots_.begin() + lo,
                                            knots_.begin() + hi + 1, x) -
                           knots_.begin()) - 1;
  return s;
}

int BSplineBasis::first_nonzero(double x) const {
  return find_knot_span(x) - (k_ - 1);
}

void BSplineBasis::eval(double x, int nderiv, double* out, int& first) const {
  const int p = k_ - 1;  // degree
  const int s = find_knot_span(x);
  first = s - p;
  const int nd = std::min(nderiv, p);

  // ndu: basis values and knot differences (The triangular table of the
  // classic derivative algorithm).
  std::vector<double> ndu((p + 1) * (p + 1)), left(p + 1), right(p + 1);
  auto NDU = [&](int i, int j) -> double& { return ndu[i * (p + 1) + j]; };
  NDU(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - knots_[s + 1 - j];
    right[j] = knots_[s + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      NDU(j, r) = right[r + 1] + left[j - r];
      const double temp = NDU(r, j - 1) / NDU(j, r);
      NDU(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    NDU(j, j) = saved;
  }
  for (int j = 0; j <= p; ++j) out[j] = NDU(j, p);
  // derivatives above the degree vanish identically
  for (int d = nd + 1; d <= nderiv; ++d)
    for (int j = 0; j <= p; ++j) out[d * k_ + j] = 0.0;
  if (nd == 0) return;

  // derivatives
  std::vector<double> a(2 * (p + 1));
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a[0] = 1.0;
    for (int d = 1; d <= nd; ++d) {
      double dd = 0.0;
      const int rk = r - d, pk = p - d;
      if (r >= d) {
        a[s2 * (p + 1)] = a[s1 * (p + 1)] / NDU(pk + 1, rk);
        dd = a[s2 * (p + 1)] * NDU(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? d - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2 * (p + 1) + j] =
            (a[s1 * (p + 1) + j] - a[s1 * (p + 1) + j - 1]) / NDU(pk + 1, rk + j);
        dd += a[s2 * (p + 1) + j] * NDU(rk + j, pk);
      }
      if (r <= pk) {
        a[s2 * (p + 1) + d] = -a[s1 * (p + 1) + d - 1] / NDU(pk + 1, r);
        dd += a[s2 * (p + 1) + d] * NDU(r, pk);
      }
      out[d * k_ + r] = dd;
      std::swap(s1, s2);
    }
  }
  double fac = p;
  for (int d = 1; d <= nd; ++d) {
    for (int j = 0; j <= p; ++j) out[d * k_ + j] *= fac;
    fac *= (p - d);
  }
}

Eigen::VectorXd BSplineBasis::dense_row(double x, int deriv) const {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(nbasis_);
  std::vector<double> buf((deriv + 1) * k_);
  int first = 0;
  eval(x, deriv, buf.data(), first);
  for (int j = 0; j < k_; ++j) {
    const int idx = first + j;
    if (idx >= 0 && idx < nbasis_) row(idx) = buf[deriv * k_ + j];
  }
  return row;
}

} // namespace hyper1d
