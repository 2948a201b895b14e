#include "hyper1d/twobody.hpp"

#include "hyper1d/constants.hpp"
#include "hyper1d/numutil.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <stdexcept>

namespace hyper1d {

namespace {
constexpr double kRescale = 1e140;
}

TwoBody::TwoBody(const PairPotential& V, double reduced_mass, int npts)
    : V_(V), mu_(reduced_mass) {
  if (!(reduced_mass > 0)) throw std::invalid_argument("TwoBody: mass > 0");
  if (npts < 200) throw std::invalid_argument("TwoBody: npts too small");
  const double xcut = V.range();
  const double xend = 1.5 * xcut;
  double h = xend / (npts - 1);
  const double disc = V.discontinuity();
  if (disc > 0) {
    // land the discontinuity exactly on a grid point
    const int m = std::max(1, static_cast<int>(std::lround(disc / h)));
    h = disc / m;
  }
  h_ = h;
  n_ = static_cast<int>(std::ceil(xend / h)) + 1;
  icut_ = std::min(n_ - 4, static_cast<int>(std::ceil(xcut / h)) + 1);
}

int TwoBody::integrate(double E, std::vector<double>& psi, int i_stop) const {
  psi.assign(i_stop + 1, 0.0);
  const double h2 = h_ * h_;
  auto T = [&](int i) { return h2 * (2 * mu_ * (V_(i * h_) - E)) / 12.0; };
  psi[0] = 1.0;
  double T0 = T(0), T1 = T(1);
  psi[1] = (1 + 5 * T0) * psi[0] / (1 - T1);  // even start, psi(-h) = psi(h)
  int nodes = 0;
  double Tm = T0, Tc = T1;
  for (int i = 1; i < i_stop; ++i) {
    const double Tp = T(i + 1);
    psi[i + 1] = (2 * (1 + 5 * Tc) * psi[i] - (1 - Tm) * psi[i - 1]) / (1 - Tp);
    if (psi[i + 1] * psi[i] < 0) ++nodes;
    if (std::abs(psi[i + 1]) > kRescale) {
      const double s = 1.0 / kRescale;
      for (int j = 0; j <= i + 1; ++j) psi[j] *= s;
    }
    Tm = Tc; Tc = Tp;
  }
  return nodes;
}

double TwoBody::phase_shift(double k) const {
  if (!(k > 0)) throw std::invalid_argument("phase_shift: k > 0");
  const double E = k * k / (2 * mu_);
  std::vector<double> psi;
  integrate(E, psi, n_ - 1);
  const int i1 = icut_, i2 = n_ - 1;
  const double x1 = i1 * h_, x2 = i2 * h_;
  const double p1 = psi[i1], p2 = psi[i2];
  const double num = p2 * std::cos(k * x1) - p1 * std::cos(k * x2);
  const double den = p2 * std::sin(k * x1) - p1 * std::sin(k * x2);
  return std::atan2(num, den);
}

double TwoBody::scattering_length() const {
  std::vector<double> psi;
  integrate(0.0, psi, n_ - 1);
  const int i = n_ - 2;
  const double dpsi = (psi[i + 1] - psi[i - 1]) / (2 * h_);  // exact: psi linear
  if (dpsi == 0) return std::numeric_limits<double>::infinity();
  return i * h_ - psi[i] / dpsi;
}

ScatteringParams TwoBody::effective_range(double khi) const {
  if (!(khi > 0)) throw std::invalid_argument("effective_range: khi > 0");
  const double k2 = khi, k1 = 0.5 * khi;
  const double kt1 = k1 * std::tan(phase_shift(k1));
  const double kt2 = k2 * std::tan(phase_shift(k2));
  // k tan(delta) = 1/a - (r0/2) k^2 for the physical phase; r0 is quoted with
  // the sign that puts the bound pole at kappa = 1/a + (r0/2) kappa^2
  const double r0 = -2 * (kt2 - kt1) / (k2 * k2 - k1 * k1);
  const double s = kt1 + 0.5 * r0 * k1 * k1;
  ScatteringParams p;
  p.a = (s == 0) ? std::numeric_limits<double>::infinity() : 1.0 / s;
  p.r0 = r0;
  return p;
}

int TwoBody::count_bound() const {
  std::vector<double> psi;
  int nodes = integrate(0.0, psi, n_ - 1);
  const int i = n_ - 2;
  const double dpsi = (psi[i + 1] - psi[i - 1]) / (2 * h_);
  if (psi[i] * dpsi < 0) ++nodes;  // zero-energy node beyond the grid (a > x_end)
  return nodes;
}

std::vector<double> TwoBody::bound_states() const {
  const int count = count_bound();
  std::vector<double> out;
  if (count == 0) return out;

  double vmin = 0.0;
  for (int i = 0; i < n_; ++i) vmin = std::min(vmin, V_(i * h_));
  if (!(vmin < 0)) return out;

  // match point: potential minimum (fallback: half the interaction region)
  int im = icut_ / 2;
  double vb = 0.0;
  for (int i = 1; i < icut_; ++i)
    if (V_(i * h_) < vb) { vb = V_(i * h_); im = i; }
  im = std::max(2, std::min(im, n_ - 3));

  auto nodes_at = [&](double E) {
    std::vector<double> psi;
    return integrate(E, psi, n_ - 1);
  };
  // Numerov-consistent derivative, O(h^4)
  auto deriv = [&](const std::vector<double>& psi, int i, double E) {
    const double fp = 2 * mu_ * (V_((i + 1) * h_) - E);
    const double fm = 2 * mu_ * (V_((i - 1) * h_) - E);
    return (psi[i + 1] - psi[i - 1]) / (2 * h_) -
           (h_ / 12.0) * (fp * psi[i + 1] - fm * psi[i - 1]);
  };
  auto wron = [&](double E) {
    std::vector<double> po;
    integrate(E, po, im + 2);
    // inward solution from the grid end, decaying start
    const double kap = std::sqrt(-2 * mu_ * E);
    std::vector<double> pi_(n_, 0.0);
    pi_[n_ - 1] = 1.0;
    pi_[n_ - 2] = std::exp(kap * h_);
    const double h2 = h_ * h_;
    auto T = [&](int i) { return h2 * (2 * mu_ * (V_(i * h_) - E)) / 12.0; };
    double Tp = T(n_ - 1), Tc = T(n_ - 2);
    for (int i = n_ - 2; i > im - 2; --i) {
      const double Tm = T(i - 1);
      pi_[i - 1] = (2 * (1 + 5 * Tc) * pi_[i] - (1 - Tp) * pi_[i + 1]) / (1 - Tm);
      if (std::abs(pi_[i - 1]) > kRescale) {
        const double s = 1.0 / kRescale;
        for (int j = n_ - 1; j >= i - 1; --j) pi_[j] *= s;
      }
      Tp = Tc; Tc = Tm;
    }
    const double w = po[im] * deriv(pi_, im, E) - deriv(po, im, E) * pi_[im];
    const double scale = std::abs(po[im] * pi_[im]) + std::abs(deriv(po, im, E) * pi_[im] * h_);
    return (scale > 0) ? w / scale : w;
  };

  const double Elo_all = 1.0000001 * vmin;
  for (int idx = 0; idx < count; ++idx) {
    // integer bisection on the node count: N(E) = #levels below E
    double a = Elo_all, b = -std::abs(vmin) * 1e-14;
    for (int it = 0; it < 90; ++it) {
      const double mid = 0.5 * (a + b);
      if (nodes_at(mid) <= idx) a = mid; else b = mid;
      if (std::abs(b - a) < 1e-3 * std::abs(a) + 1e-300) break;
    }
    double lo = a, hi = b;
    double wlo = wron(lo), whi = wron(hi);
    // A level with 1/kappa beyond the grid end develops its node only at
    // E > 0, so the node window collapses near zero while the Wronskian zero
    // sits much deeper: widen geometrically, staying above the level below.
    const double lo_min = idx > 0 ? out[idx - 1] * (1 - 1e-9) : Elo_all;
    double span = hi - lo;
    while (wlo * whi > 0 && lo > lo_min) {
      span = std::max(4 * span, std::abs(hi) * 1e-6);
      lo = std::max(lo_min, hi - span);
      wlo = wron(lo);
    }
    if (wlo * whi > 0) throw std::runtime_error("bound_states: lost bracket");
    const double E = find_root([&](double e) { return wron(e); }, lo, hi,
                               1e-14 * std::abs(vmin));
    out.push_back(E);
  }
  return out;
}

double contact_scattering_length(double g, double mu2b) {
  if (g == 0) throw std::invalid_argument("contact: g != 0");
  return -1.0 / (mu2b * g);
}

double contact_binding(double g, double mu2b) {
  if (!(g < 0)) throw std::invalid_argument("contact_binding: g < 0");
  return mu2b * g * g / 2;
}

double SechSquaredRef::eta(double D, double L, double mu2b) {
  return std::sqrt(1 + 8 * mu2b * D * L * L);
}

namespace {
double sech2_a_raw(double eta, double L) {
  return (L / 2) * (2 * euler_gamma + boost::math::digamma(0.5 - eta / 2) +
                    boost::math::digamma(0.5 + eta / 2) -
                    pi / std::cos(eta * pi / 2));
}
} // namespace

double SechSquaredRef::scattering_length(double D, double L, double mu2b) {
  const double e = eta(D, L, mu2b);
  const double n = std::round(e);
  // eta = 1 is a genuine pole (D -> 0), only odd eta >= 3 are removable
  if (n >= 3 && std::abs(e - n) < 1e-5 && std::fmod(n, 2.0) == 1.0) {
    const double d1 = 1e-4, d2 = 5e-5;
    const double A1 = 0.5 * (sech2_a_raw(e + d1, L) + sech2_a_raw(e - d1, L));
    const double A2 = 0.5 * (sech2_a_raw(e + d2, L) + sech2_a_raw(e - d2, L));
    return (4 * A2 - A1) / 3;
  }
  return sech2_a_raw(e, L);
}

std::vector<double> SechSquaredRef::energies(double D, double L, double mu2b) {
  const double e = eta(D, L, mu2b);
  std::vector<double> out;
  for (int n = 0; 2 * n + 1 < e; ++n) {
    const double t = 2 * n + 1 - e;
    out.push_back(-t * t / (8 * mu2b * L * L));
  }
  return out;
}

double ConfinementMap::a1d(double a3d, double aperp) {
  return -(aperp * aperp / (2 * a3d)) * (1 + zeta_half * a3d / aperp);
}

double ConfinementMap::r0_1d(double a1d, double aperp) {
  return zeta_three_half * aperp * aperp * aperp / (8 * a1d * a1d);
}

void ConfinementMap::invert(double a1d, double r0, double& a3d, double& aperp) {
  if (!(r0 > 0)) throw std::invalid_argument("ConfinementMap: r0 > 0");
  aperp = std::cbrt(8 * a1d * a1d * r0 / zeta_three_half);
  a3d = -aperp * aperp / (2 * a1d + zeta_half * aperp);
}

GaussianCore tune_gaussian_core(double lambda, double mass_scale, double mu2b,
                                double target_a, double target_r0,
                                double c0, double d0) {
  if (target_a == 0) throw std::invalid_argument("tune: target_a != 0");
  if (!(target_r0 > 0)) throw std::invalid_argument("tune: target_r0 > 0");
  const double s_t = 1.0 / target_a;
  const double khi = 0.15 / target_r0;
  const int npts = 9000;

  auto meas = [&](double c, double d, double& s, double& r) {
    GaussianCore V(lambda, c, d, mass_scale);
    TwoBody tb(V, mu2b, npts);
    s = 1.0 / tb.scattering_length();
    r = tb.effective_range(khi).r0;
  };

  double c = c0, d = d0, s, r;
  meas(c, d, s, r);
  double f1 = s - s_t, f2 = r - target_r0;
  const double tol1 = std::max(1e-8 * std::abs(s_t), 1e-10 / target_r0);
  const double tol2 = 1e-7 * target_r0;

  for (int it = 0; it < 60; ++it) {
    if (std::abs(f1) < tol1 && std::abs(f2) < tol2) {
      GaussianCore V(lambda, c, d, mass_scale);
      TwoBody tb(V, mu2b, npts);
      const int nb = tb.count_bound();
      const int expect = target_a > 0 ? 1 : 0;
      if (nb != expect)
        throw std::runtime_error("tune_gaussian_core: bound-state count " +
                                 std::to_string(nb) + ", expected " +
                                 std::to_string(expect));
      return V;
    }
    const double dc = 1e-6 * std::max(1.0, std::abs(c));
    const double dd = 1e-6 * std::max(1.0, std::abs(d));
    double s1, r1, s2, r2;
    meas(c + dc, d, s1, r1);
    meas(c, d + dd, s2, r2);
    const double j11 = (s1 - s) / dc, j12 = (s2 - s) / dd;
    const double j21 = (r1 - r) / dc, j22 = (r2 - r) / dd;
    const double det = j11 * j22 - j12 * j21;
    if (det == 0 || !std::isfinite(det))
      throw std::runtime_error("tune_gaussian_core: singular Jacobian");
    double step_c = -(j22 * f1 - j12 * f2) / det;
    double step_d = -(-j21 * f1 + j11 * f2) / det;
    // damped update
    double best = std::hypot(f1 / tol1, f2 / tol2);
    double fac = 1.0;
    for (int half = 0; half < 8; ++half) {
      double sn, rn;
      meas(c + fac * step_c, d + fac * step_d, sn, rn);
      const double q = std::hypot((sn - s_t) / tol1, (rn - target_r0) / tol2);
      if (q < best || half == 7) {
        c += fac * step_c; d += fac * step_d;
        s = sn; r = rn; f1 = sn - s_t; f2 = rn - target_r0;
        break;
      }
      fac *= 0.5;
    }
  }
  throw std::runtime_error("tune_gaussian_core: no convergence");
}

double tune_sech_depth(double L, double mu2b, double target_a) {
  if (!(L > 0) || !(mu2b > 0))
    throw std::invalid_argument("tune_sech_depth: L, mu2b > 0");
  // one even level while eta = sqrt(1 + 8 mu D L^2) stays below 5
  auto depth = [&](double eta) { return (eta * eta - 1) / (8 * mu2b * L * L); };
  auto f = [&](double eta) {
    return SechSquaredRef::scattering_length(depth(eta), L, mu2b) - target_a;
  };
  const auto br = scan_brackets(f, 1 + 1e-6, 5 - 1e-6, 500);
  for (const auto& [lo, hi] : br) {
    const double eta = find_root(f, lo, hi);
    if (std::abs(f(eta)) < 1e-6 * std::max(1.0, std::abs(target_a)))
      return depth(eta);
  }
  throw std::runtime_error("tune_sech_depth: target out of reach");
}

} // namespace hyper1d
