#include "hyper1d/angular_roots.hpp"

#include "hyper1d/constants.hpp"
#include "hyper1d/numutil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyper1d {

double tan_like(double lambda, double theta) {
  const double z = lambda * theta * theta;
  if (std::abs(z) < 1e-10)  // kappa^2 theta (1 + z/3 + ...)
    return lambda * theta * (1 + z / 3);
  if (lambda > 0) {
    const double k = std::sqrt(lambda);
    return k * std::tan(k * theta);
  }
  const double q = std::sqrt(-lambda);
  return -q * std::tanh(q * theta);
}

double cot_like(double lambda, double theta) {
  const double z = lambda * theta * theta;
  if (std::abs(z) < 1e-10)
    return 1 / theta - lambda * theta / 3;
  if (lambda > 0) {
    const double k = std::sqrt(lambda);
    return k / std::tan(k * theta);
  }
  const double q = std::sqrt(-lambda);
  return q / std::tanh(q * theta);
}

double cos_like(double lambda, double theta) {
  if (lambda >= 0) return std::cos(std::sqrt(lambda) * theta);
  return std::cosh(std::sqrt(-lambda) * theta);
}

double sinc_like(double lambda, double theta) {
  const double z = lambda * theta * theta;
  if (std::abs(z) < 1e-10) return theta * (1 - z / 6);
  if (lambda > 0) {
    const double k = std::sqrt(lambda);
    return std::sin(k * theta) / k;
  }
  const double q = std::sqrt(-lambda);
  return std::sinh(q * theta) / q;
}

namespace {

// (cos_like, sinc_like) with a common positive rescaling e^{-q theta} in the
// hyperbolic regime, so deep wells cannot overflow.  Matching determinants
// built from these keep their zeros: each column is scaled independently.
void scaled_basis(double lambda, double theta, double& c, double& s) {
  if (lambda > -1e-10) {
    c = cos_like(lambda, theta);
    s = sinc_like(lambda, theta);
    return;
  }
  const double q = std::sqrt(-lambda);
  const double e = std::exp(-2 * q * theta);
  c = 0.5 * (1 + e);
  s = 0.5 * (1 - e) / q;
}

} // namespace

std::vector<double> squarewell_wedge_spectrum(double beta2, double phib,
                                              Statistics st, Parity pa,
                                              int count) {
  const double lo_edge = pi / 2, hi_edge = 2 * pi / 3;
  if (!(phib > lo_edge) || !(phib < hi_edge))
    throw std::invalid_argument("squarewell_wedge_spectrum: phib outside wedge");
  if (count < 1) throw std::invalid_argument("squarewell_wedge_spectrum: count");
  const double win = phib - lo_edge, wout = hi_edge - phib;
  // Pair edge: reflection there is a pure exchange, so statistics decides.
  // Symmetry edge: reflection there composes exchange with inversion, so the
  // sign is statistics * parity.
  const bool n_in = (st == Statistics::boson);
  const bool n_out = (st == Statistics::boson) == (pa == Parity::even);

  // Matching determinant of the two wedge pieces at phib.  Unlike a
  // log-derivative difference this is entire in lambda, so eigenstates with
  // a node at the matching angle show up as ordinary sign changes instead of
  // pole-pole degeneracies.
  auto resid = [&](double lam) {
    double ci, si, co, so;
    scaled_basis(lam + beta2, win, ci, si);
    scaled_basis(lam, wout, co, so);
    const double ui = n_in ? ci : si;
    const double dui = n_in ? -(lam + beta2) * si : ci;
    const double uo = n_out ? co : so;
    const double duo = n_out ? lam * so : -co;
    return ui * duo - dui * uo;
  };

  std::vector<double> roots;
  if (beta2 > 0) {  // attracted branch, lambda in (-beta2, 0)
    const double beta = std::sqrt(beta2);
    auto fq = [&](double q) { return resid(-q * q); };
    const int nq = std::max(2000, static_cast<int>(32 * beta * win / pi));
    for (auto [a, b] : scan_brackets(fq, 1e-9, beta, nq))
      roots.push_back(-std::pow(find_root(fq, a, b, 1e-13), 2));
  }
  auto fk = [&](double k) { return resid(k * k); };
  double kmax = (count + 3) * pi / (win + wout) + 2;
  for (int attempt = 0;; ++attempt) {
    std::vector<double> pos;
    const int nk = std::max(4000, static_cast<int>(32 * kmax * (win + wout) / pi));
    for (auto [a, b] : scan_brackets(fk, 1e-9, kmax, nk))
      pos.push_back(std::pow(find_root(fk, a, b, 1e-13), 2));
    if (static_cast<int>(roots.size() + pos.size()) >= count || attempt == 3) {
      roots.insert(roots.end(), pos.begin(), pos.end());
      break;
    }
    kmax *= 2;
  }
  if (static_cast<int>(roots.size()) < count)
    throw std::runtime_error("squarewell_wedge_spectrum: too few roots found");
  std::sort(roots.begin(), roots.end());
  roots.resize(static_cast<std::size_t>(count));
  return roots;
}

std::vector<double> two_identical_contact_spectrum(const ThreeBodySystem& sys,
                                                   double g, double R,
                                                   Statistics st, Parity pa,
                                                   double kappa_max) {
  const double p23 = sys.phi23;
  const double aS = 1 / sys.d12, aD = 1 / sys.d23;
  const double J = 2 * sys.mu * g * aD * R;   // interior kink strength
  const double gS = sys.mu * g * aS * R;      // edge contact (half jump)

  // Axis BC at phi = 0: reflection about the axis is exchange * inversion,
  // so even bosons and odd fermions take the cosine branch.
  const bool axis_neumann = (st == Statistics::boson) == (pa == Parity::even);
  auto resid = [&](double lam) {
    double u1, du1;
    if (axis_neumann) {
      u1 = cos_like(lam, p23);
      du1 = -lam * sinc_like(lam, p23);
    } else {
      u1 = sinc_like(lam, p23);
      du1 = cos_like(lam, p23);
    }
    const double arg = p23 - pi / 2;
    const double c23 = cos_like(lam, arg), s23 = sinc_like(lam, arg);
    const double rhs2 = du1 + J * u1;
    const double D = u1 * c23 - rhs2 * s23;        // Phi(pi/2)
    const double E = rhs2 * c23 + u1 * lam * s23;  // Phi'(pi/2)
    return (st == Statistics::boson) ? E + gS * D : D;
  };

  if (!(kappa_max > 0))
    throw std::invalid_argument("two_identical_contact_spectrum: kappa_max");
  std::vector<double> roots;
  // negative branch: q in (0, qmax], qmax limited by overflow of cosh(q pi/2)
  {
    const double qmax = std::min(400.0, 4 * std::abs(2 * sys.mu * g * R) + 20);
    auto fq = [&](double q) { return resid(-q * q); };
    for (auto [a, b] : scan_brackets(fq, 1e-8, qmax, 4000))
      roots.push_back(-std::pow(find_root(fq, a, b, 1e-13), 2));
  }
  if (std::abs(resid(0.0)) < 1e-14) roots.push_back(0.0);
  // positive branch: uniform scan in kappa plus refinement near asymptotes
  auto fk = [&](double k) { return resid(k * k); };
  std::vector<std::pair<double, double>> brs =
      scan_brackets(fk, 1e-8, kappa_max, std::max(4000, int(kappa_max * 800)));
  for (auto fam : two_identical_contact_asymptotes(
           sys, st, pa, static_cast<int>(kappa_max) + 2)) {
    if (fam - 0.01 > 0 && fam + 0.01 < kappa_max)
      for (auto br : scan_brackets(fk, fam - 0.01, fam + 0.01, 400))
        brs.push_back(br);
  }
  std::vector<double> pos;
  for (auto [a, b] : brs)
    pos.push_back(std::pow(find_root(fk, a, b, 1e-13), 2));
  std::sort(pos.begin(), pos.end());
  for (double l : pos)
    if (roots.empty() || std::abs(l - roots.back()) > 1e-9 * (1 + std::abs(l)))
      roots.push_back(l);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> two_identical_contact_asymptotes(const ThreeBodySystem& sys,
                                                     Statistics st, Parity pa,
                                                     int count) {
  const double p23 = sys.phi23;
  const double wA = pi / 2 - p23;
  std::vector<double> fam;
  for (int n = 1; n <= count + 1; ++n) fam.push_back(n * pi / wA);
  // The second family quantizes the axis-to-kink segment, clamped at the
  // kink; a Neumann axis (even bosons, odd fermions) gives half-integer
  // zeros, a Dirichlet axis integer ones.
  const bool half = (st == Statistics::boson) == (pa == Parity::even);
  for (int n = 0; n <= count + 1; ++n) {
    const double v = half ? (n + 0.5) * pi / p23 : (n + 1) * pi / p23;
    fam.push_back(v);
  }
  std::sort(fam.begin(), fam.end());
  fam.resize(count);
  return fam;
}

} // namespace hyper1d
