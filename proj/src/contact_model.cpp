#include "hyper1d/contact_model.hpp"

#include "hyper1d/angular_roots.hpp"
#include "hyper1d/constants.hpp"
#include "hyper1d/numutil.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace hyper1d {

namespace {

using cplx = std::complex<double>;

// d(tan_like)/d(lambda) and d(cot_like)/d(lambda)
double dtan_like(double lambda, double theta) {
  const double z = lambda * theta * theta;
  if (std::abs(z) < 1e-6) return theta * (1 + 2 * z / 3 + 2 * z * z / 5);
  if (lambda > 0) {
    const double k = std::sqrt(lambda), t = std::tan(k * theta);
    return (t + k * theta * (1 + t * t)) / (2 * k);
  }
  const double q = std::sqrt(-lambda), th = std::tanh(q * theta);
  return (th + q * theta * (1 - th * th)) / (2 * q);
}

double dcot_like(double lambda, double theta) {
  const double z = lambda * theta * theta;
  if (std::abs(z) < 1e-6) return -theta * (1.0 / 3 + 2 * z / 45 + 2 * z * z / 315);
  if (lambda > 0) {
    const double k = std::sqrt(lambda), ct = 1 / std::tan(k * theta);
    return (ct - k * theta * (1 + ct * ct)) / (2 * k);
  }
  const double q = std::sqrt(-lambda), cth = 1 / std::tanh(q * theta);
  return (q * theta * (cth * cth - 1) - cth) / (2 * q);
}

// One summand a * phi^n * e^{s phi} * e^{-sigma X}; channel functions and
// their lambda-derivatives are short sums of these, so every inner product
// on [0, X] reduces to moments that have stable closed forms.
struct Term {
  cplx a;
  cplx s;
  int n;
  double sigma;  // >= max(Re s, 0), keeps exponentials bounded
};
using Rep = std::vector<Term>;

// integral_0^X phi^n e^{s phi} dphi, scaled by e^{-sigma X}
cplx moment(int n, cplx s, double sigma, double X) {
  const double zmag = std::abs(s) * X;
  if (zmag <= 8.0) {
    const double scale = std::exp(-sigma * X);
    if (scale == 0) return 0;
    cplx sum = 0, term = 1;  // term = (sX)^k / k!
    for (int k = 0; k < 80; ++k) {
      const cplx add = term / double(n + 1 + k);
      sum += add;
      if (std::abs(add) < 1e-17 * std::abs(sum)) break;
      term *= s * X / double(k + 1);
    }
    return scale * std::pow(X, n + 1) * sum;
  }
  // e^{sX} p_n(sX) - p_n(0), with p_m(z) = z^m - m p_{m-1}(z), p_0 = 1
  const cplx z = s * X;
  cplx p = 1.0, zm = 1.0;
  double p0 = 1.0;
  for (int m = 1; m <= n; ++m) {
    zm *= z;
    p = zm - double(m) * p;
    p0 *= -double(m);
  }
  const cplx top = std::exp((s - sigma) * X) * p - std::exp(-sigma * X) * p0;
  return top / std::pow(s, n + 1);
}

double inner(const Rep& f, const Rep& g, double X) {
  cplx acc = 0;
  for (const auto& t : f)
    for (const auto& u : g)
      acc += t.a * u.a * moment(t.n + u.n, t.s + u.s, t.sigma + u.sigma, X);
  return acc.real();
}

double at_end(const Rep& f, double X) {
  cplx acc = 0;
  for (const auto& t : f)
    acc += t.a * std::pow(X, t.n) * std::exp((t.s - t.sigma) * X);
  return acc.real();
}

// Channel function in the wedge (even: cos-type, odd: sin-type with unit
// slope at 0) and a representative of its lambda-derivative; any component
// along the function itself is irrelevant because the normalized derivative
// is projected orthogonal to the channel function.
void make_rep(double lambda, double X, bool even, Rep& chi, Rep& dchi) {
  chi.clear();
  dchi.clear();
  const double z = lambda * X * X;
  if (std::abs(z) < 1e-3) {
    // short power series around lambda = 0 (both signs), exact enough at
    // this cutoff; terms have s = 0, so cross products use plain monomials.
    // chi = sum_m a_m phi^nn, a_m = (-lambda)^m / nn!, nn = 2m (+1 if odd);
    // d a_m/dlambda = -m (-lambda)^(m-1) / nn!
    double a = 1, b = even ? 0.5 : 1.0 / 6;  // b_m = (-lambda)^(m-1)/nn! at m=1
    for (int m = 0; m <= 3; ++m) {
      const int nn = even ? 2 * m : 2 * m + 1;
      chi.push_back({a, 0.0, nn, 0.0});
      const double step = even ? (2 * m + 1.0) * (2 * m + 2.0)
                               : (2 * m + 2.0) * (2 * m + 3.0);
      a *= -lambda / step;
      if (m >= 1) {
        dchi.push_back({-m * b, 0.0, nn, 0.0});
        b *= -lambda / step;
      }
    }
    dchi.push_back({-4 * b, 0.0, even ? 8 : 9, 0.0});
    return;
  }
  if (lambda > 0) {
    const double k = std::sqrt(lambda);
    const cplx ik(0, k);
    if (even) {
      chi = {{0.5, ik, 0, 0}, {0.5, -ik, 0, 0}};
      dchi = {{cplx(0, 1 / (4 * k)), ik, 1, 0}, {cplx(0, -1 / (4 * k)), -ik, 1, 0}};
    } else {
      chi = {{cplx(0, -1 / (2 * k)), ik, 0, 0}, {cplx(0, 1 / (2 * k)), -ik, 0, 0}};
      dchi = {{1 / (4 * lambda), ik, 1, 0}, {1 / (4 * lambda), -ik, 1, 0}};
    }
    return;
  }
  const double q = std::sqrt(-lambda);
  if (even) {
    chi = {{0.5, q, 0, q}, {0.5, -q, 0, q}};
    dchi = {{-1 / (4 * q), q, 1, q}, {1 / (4 * q), -q, 1, q}};
  } else {
    chi = {{1 / (2 * q), q, 0, q}, {-1 / (2 * q), -q, 0, q}};
    dchi = {{1 / (4 * lambda), q, 1, q}, {1 / (4 * lambda), -q, 1, q}};
  }
}

} // namespace

ContactChannelModel::ContactChannelModel(double mass, double g, int nchan, Parity parity)
    : mass_(mass), g_(g), n_(nchan), pa_(parity) {
  if (!(mass > 0)) throw std::invalid_argument("contact model: mass must be positive");
  if (g == 0) throw std::invalid_argument("contact model: coupling must be nonzero");
  if (nchan < 1) throw std::invalid_argument("contact model: need at least one channel");
  const auto sys = ThreeBodySystem::make(mass, mass, mass);
  mu_ = sys.mu;
  c_ = mu_ * g / sys.d12;
  X_ = pi / 6;

  thr_ = Eigen::VectorXd::Zero(n_);
  kinf_.resize(n_);
  lam0_.resize(n_);
  const bool even = pa_ == Parity::even;
  const bool dimer = g < 0;
  if (dimer) thr_[0] = -pair_binding();
  for (int b = 0; b < n_; ++b) {
    lam0_[b] = even ? 36.0 * b * b : double(6 * b + 3) * (6 * b + 3);
    double k;
    if (dimer)
      k = b == 0 ? 0.0 : (even ? 6.0 * b - 3.0 : 6.0 * b);
    else
      k = even ? 6.0 * b + 3.0 : 6.0 * b + 6.0;
    kinf_[b] = k;
  }
}

double ContactChannelModel::pair_binding() const {
  if (g_ >= 0) return 0;
  const double mu12 = mass_ / 2;
  return mu12 * g_ * g_ / 2;
}

double ContactChannelModel::root(double R, int branch) const {
  if (!(R > 0)) throw std::invalid_argument("contact model: R must be positive");
  if (branch < 0) throw std::invalid_argument("contact model: branch < 0");
  const double rhs = c_ * R;
  const bool even = pa_ == Parity::even;
  // even: tan_like(lambda, X) = cR, poles at kappa = 3 + 6m (increasing);
  // odd: cot_like(lambda, X) = -cR, poles at kappa = 6m, m >= 1 (decreasing)
  auto f = [&](double lam) {
    return even ? tan_like(lam, X_) - rhs : cot_like(lam, X_) + rhs;
  };
  const double hi_pole = even ? 9.0 * (2 * branch + 1) * (2 * branch + 1)
                              : 36.0 * (branch + 1) * (branch + 1);
  const double eps = 1e-12 * hi_pole + 1e-13;
  double lo;
  if (branch == 0) {
    // expand downward until the sign flips (bound branch can be very deep)
    lo = -rhs * rhs - 10;
    const double flo_want = even ? -1.0 : 1.0;
    for (int it = 0; it < 200 && f(lo) * flo_want < 0; ++it) lo = 2 * lo - 10;
  } else {
    const double lo_pole = even ? 9.0 * (2 * branch - 1) * (2 * branch - 1)
                                : 36.0 * branch * branch;
    lo = lo_pole + 1e-12 * lo_pole + 1e-13;
  }
  return find_root(f, lo, hi_pole - eps, 1e-15);
}

double ContactChannelModel::root_slope(double R, int branch) const {
  const double lam = root(R, branch);
  return pa_ == Parity::even ? c_ / dtan_like(lam, X_) : -c_ / dcot_like(lam, X_);
}

void ContactChannelModel::eval(double R, Eigen::VectorXd& lambda, Eigen::MatrixXd& P,
                               Eigen::MatrixXd& Psq) const {
  lambda.resize(n_);
  P.setZero(n_, n_);
  Psq.setZero(n_, n_);
  const bool even = pa_ == Parity::even;

  std::vector<double> dlam(n_);
  std::vector<Rep> chi(n_), dchi(n_);
  std::vector<double> norm2(n_), proj(n_), phiX(n_);
  for (int b = 0; b < n_; ++b) {
    lambda[b] = root(R, b);
    dlam[b] = even ? c_ / dtan_like(lambda[b], X_) : -c_ / dcot_like(lambda[b], X_);
    make_rep(lambda[b], X_, even, chi[b], dchi[b]);
    norm2[b] = inner(chi[b], chi[b], X_);
    proj[b] = inner(chi[b], dchi[b], X_) / norm2[b];
    phiX[b] = at_end(chi[b], X_) / std::sqrt(norm2[b]);
  }

  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      const double v = c_ * phiX[i] * phiX[j] / (lambda[j] - lambda[i]);
      P(i, j) = v;
      P(j, i) = -v;
    }

  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) {
      const double gram = inner(dchi[i], dchi[j], X_) -
                          proj[j] * inner(dchi[i], chi[j], X_) -
                          proj[i] * inner(chi[i], dchi[j], X_) +
                          proj[i] * proj[j] * inner(chi[i], chi[j], X_);
      const double v = -dlam[i] * dlam[j] * gram / std::sqrt(norm2[i] * norm2[j]);
      Psq(i, j) = Psq(j, i) = v;
    }
}

} // namespace hyper1d
