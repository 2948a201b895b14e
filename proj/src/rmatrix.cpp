#include "hyper1d/rmatrix.hpp"

#include "hyper1d/bspline.hpp"
#include "hyper1d/constants.hpp"
#include "hyper1d/numutil.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <lapacke.h>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace hyper1d {

namespace {

std::vector<double> uniform_pts(double a, double b, int spans) {
  std::vector<double> p(spans + 1);
  for (int i = 0; i <= spans; ++i) p[i] = a + (b - a) * i / spans;
  p.front() = a;
  p.back() = b;
  return p;
}

// Matching pair (f, g) and radial derivatives for one channel at radius r.
// Breakup channels (kappa > 0) use Bessel J/Y of order kappa; atom-dimer
// channels use sqrt(2/(pi k r)) {cos, sin}(kr). Both pairs carry the same
// Wronskian r (f g' - f' g) = 2/pi, which keeps K symmetric.
struct MatchPair {
  double f = 0, fp = 0, g = 0, gp = 0;
  bool ok = false;
};

MatchPair match_pair(double kappa, double k, double r) {
  MatchPair m;
  if (kappa < 0.5) {
    const double amp = std::sqrt(2.0 / (pi * k * r));
    const double c = std::cos(k * r), s = std::sin(k * r);
    m.f = amp * c;
    m.fp = amp * (-k * s - c / (2 * r));
    m.g = amp * s;
    m.gp = amp * (k * c - s / (2 * r));
    m.ok = true;
    return m;
  }
  const double x = k * r;
  const double j = boost::math::cyl_bessel_j(kappa, x);
  const double y = boost::math::cyl_neumann(kappa, x);
  if (!std::isfinite(j) || !std::isfinite(y) || std::abs(j) < 1e-250 ||
      std::abs(y) > 1e250)
    return m;
  m.f = j;
  m.fp = k * boost::math::cyl_bessel_j_prime(kappa, x);
  m.g = y;
  m.gp = k * boost::math::cyl_neumann_prime(kappa, x);
  m.ok = true;
  return m;
}

} // namespace

RMatrixPropagator::RMatrixPropagator(std::shared_ptr<const ChannelModel> model,
                                     double rmax, double emax, RMatrixOptions opt)
    : model_(std::move(model)), rmax_(rmax), emax_(emax), opt_(opt) {
  if (!model_) throw std::invalid_argument("rmatrix: null channel model");
  if (!(rmax_ > 0)) throw std::invalid_argument("rmatrix: rmax must be positive");
  n_ = model_->nchan();
  thr_ = model_->thresholds();
  kinf_ = model_->kappa_inf();
  if (!(emax_ > thr_.minCoeff()))
    throw std::invalid_argument("rmatrix: emax below lowest threshold");
  if (opt_.order < 3 || opt_.order > 8)
    throw std::invalid_argument("rmatrix: order out of range");
  if (opt_.spans_per_sector < 3)
    throw std::invalid_argument("rmatrix: need at least 3 spans per sector");

  const double tm = 2 * model_->hypermass();
  const double emin = thr_.minCoeff();
  const double r1 = opt_.r_first > 0 ? opt_.r_first : rmax_ * 1e-7;
  if (!(r1 < rmax_)) throw std::invalid_argument("rmatrix: r_first >= rmax");

  std::vector<double> bounds{0.0, r1};
  Eigen::VectorXd lam;
  Eigen::MatrixXd P, Q;
  while (bounds.back() < rmax_) {
    const double R = bounds.back();
    double w = (opt_.grow - 1) * R;
    model_->eval(R, lam, P, Q);
    for (int i = 0; i < n_; ++i) {
      const double s = lam(i) / (R * R);
      const double k2 = tm * emax_ - s;
      if (k2 > 0) w = std::min(w, opt_.osc_rad / std::sqrt(k2));
      const double q2 = s - tm * emin;
      if (q2 > 0) w = std::min(w, opt_.evan_rad / std::sqrt(q2));
    }
    w = std::max(w, 2e-4 * R);
    bounds.push_back(std::min(R + w, rmax_));
    if (bounds.size() > 200000)
      throw std::runtime_error("rmatrix: sector grid failed to reach rmax");
  }

  sectors_.reserve(bounds.size() - 1);
  for (std::size_t s = 0; s + 1 < bounds.size(); ++s)
    sectors_.push_back(build_sector(bounds[s], bounds[s + 1], s == 0));
}

RMatrixPropagator::Sector RMatrixPropagator::build_sector(double r1, double r2,
                                                          bool first) const {
  Sector sec;
  sec.r1 = r1;
  sec.r2 = r2;
  BSplineBasis basis(opt_.order, uniform_pts(r1, r2, opt_.spans_per_sector),
                     std::vector<int>(opt_.spans_per_sector - 1, 1));
  const int nb = basis.size();
  sec.nspl = nb;
  const int m = nb * n_;
  sec.A0 = Eigen::MatrixXd::Zero(m, m);
  sec.Ssp = Eigen::MatrixXd::Zero(nb, nb);

  GaussLegendre gl(opt_.quad_pts);
  std::vector<double> xs, ws, buf(2 * opt_.order);
  Eigen::VectorXd lam;
  Eigen::MatrixXd P, Q;
  for (int sp = 0; sp < basis.nspans(); ++sp) {
    gl.mapped(basis.span_lo(sp), basis.span_hi(sp), xs, ws);
    for (std::size_t q = 0; q < xs.size(); ++q) {
      const double R = xs[q], w = ws[q];
      int first_nz = 0;
      basis.eval(R, 1, buf.data(), first_nz);
      model_->eval(R, lam, P, Q);
      for (int a = 0; a < opt_.order; ++a) {
        const int ia = first_nz + a;
        const double Ba = buf[a], dBa = buf[opt_.order + a];
        for (int b = 0; b < opt_.order; ++b) {
          const int ib = first_nz + b;
          const double Bb = buf[b], dBb = buf[opt_.order + b];
          sec.Ssp(ia, ib) += w * R * Ba * Bb;
          for (int i = 0; i < n_; ++i) {
            sec.A0(ia * n_ + i, ib * n_ + i) +=
                w * (-R * dBa * dBb - (lam(i) / R) * Ba * Bb);
            for (int j = 0; j < n_; ++j)
              sec.A0(ia * n_ + i, ib * n_ + j) +=
                  w * R *
                  (Q(i, j) * Ba * Bb - P(i, j) * (dBa * Bb - Ba * dBb));
          }
        }
      }
    }
  }

  // Partition the sector basis: clamped end splines carry the surface values.
  // In the innermost sector the R = 0 end has no surface term (the metric
  // kills it); channels that start with a positive free index get Dirichlet
  // there, the rest keep the natural condition.
  std::vector<char> drop(m, 0);
  if (first) {
    const Eigen::VectorXd lam0 = model_->lambda0();
    for (int i = 0; i < n_; ++i)
      if (lam0(i) > 1e-12) drop[i] = 1;
  }
  for (int a = 0; a < nb; ++a)
    for (int i = 0; i < n_; ++i) {
      const int idx = a * n_ + i;
      if (drop[idx]) continue;
      const bool lo_surf = !first && a == 0;
      const bool hi_surf = a == nb - 1;
      if (lo_surf || hi_surf)
        sec.surf.push_back(idx);
      else
        sec.inner.push_back(idx);
    }
  sec.nsurf_lo = first ? 0 : n_;
  return sec;
}

RMatrixPropagator::Scatter RMatrixPropagator::solve(double E) const {
  const double tm = 2 * model_->hypermass();
  if (!(E > thr_.minCoeff()))
    throw std::invalid_argument("rmatrix: energy below lowest threshold");
  if (E > emax_ * (1 + 1e-12) + 1e-300)
    throw std::invalid_argument("rmatrix: energy above emax used for the grid");
  for (int i = 0; i < n_; ++i)
    if (std::abs(E - thr_(i)) < 1e-13 * (1 + std::abs(E)))
      throw std::invalid_argument("rmatrix: energy sits on a threshold");

  Eigen::MatrixXd Rm;  // running R-matrix: F = Rm * [r (F' + P F)]
  for (const Sector& sec : sectors_) {
    Eigen::MatrixXd G = sec.A0;
    for (int a = 0; a < sec.nspl; ++a)
      for (int b = 0; b < sec.nspl; ++b) {
        const double add = tm * E * sec.Ssp(a, b);
        if (add == 0) continue;
        for (int i = 0; i < n_; ++i) G(a * n_ + i, b * n_ + i) += add;
      }

    const int ns = static_cast<int>(sec.surf.size());
    const int ni = static_cast<int>(sec.inner.size());
    Eigen::MatrixXd Gss(ns, ns), Gsi(ns, ni), Gii(ni, ni);
    for (int a = 0; a < ns; ++a) {
      for (int b = 0; b < ns; ++b) Gss(a, b) = G(sec.surf[a], sec.surf[b]);
      for (int b = 0; b < ni; ++b) Gsi(a, b) = G(sec.surf[a], sec.inner[b]);
    }
    for (int a = 0; a < ni; ++a)
      for (int b = 0; b < ni; ++b) Gii(a, b) = G(sec.inner[a], sec.inner[b]);

    Eigen::MatrixXd Gt = Gss;
    if (ni > 0) {
      Eigen::MatrixXd X = Gii.partialPivLu().solve(Gsi.transpose());
      Gt.noalias() -= Gsi * X;
    }

    Eigen::VectorXd lamS(ns);
    for (int a = 0; a < ns; ++a)
      lamS(a) = a < sec.nsurf_lo ? sec.r1 : sec.r2;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(
        Gt, Eigen::MatrixXd(lamS.asDiagonal()));
    if (ges.info() != Eigen::Success)
      throw std::runtime_error("rmatrix: sector eigensolve failed");
    Eigen::VectorXd tau = ges.eigenvalues();
    const Eigen::MatrixXd& V = ges.eigenvectors();  // V^T diag(lamS) V = I

    if (sec.nsurf_lo == 0) {
      for (int k = 0; k < tau.size(); ++k)
        if (std::abs(tau(k)) < 1e-280) tau(k) = std::copysign(1e-280, tau(k));
      Rm = -V * tau.cwiseInverse().asDiagonal() * V.transpose();
      continue;
    }

    // G = F diag(tau) F^T is the symmetric kernel of the sector map; fold the
    // left boundary into the running R-matrix and invert for the right one.
    const Eigen::MatrixXd Gk = V * tau.asDiagonal() * V.transpose();
    const int nn = n_;
    const Eigen::MatrixXd G11 = Gk.topLeftCorner(nn, nn);
    const Eigen::MatrixXd G12 = Gk.topRightCorner(nn, nn);
    const Eigen::MatrixXd G22 = Gk.bottomRightCorner(nn, nn);
    const double r1 = sec.r1, r2 = sec.r2;
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(nn, nn) - r1 * r1 * Rm * G11;
    Eigen::MatrixXd X = H.partialPivLu().solve(r1 * r2 * Rm * G12);
    Eigen::MatrixXd W = r2 * (r2 * G22 + r1 * G12.transpose() * X);
    Rm = -W.partialPivLu().solve(Eigen::MatrixXd::Identity(nn, nn));
  }

  // Matching at rmax. Channels are matched if open with representable Bessel
  // values; weakly closed ones are eliminated through decaying K_kappa tails;
  // strongly closed ones have already died out and are ignored.
  Scatter out;
  out.E = E;
  std::vector<int> act, corr;
  std::vector<MatchPair> mp(n_);
  std::vector<double> kq(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    const double k2 = tm * (E - thr_(i));
    if (k2 > 0) {
      kq[i] = std::sqrt(k2);
      mp[i] = match_pair(kinf_(i), kq[i], rmax_);
      if (mp[i].ok) act.push_back(i);
    } else {
      kq[i] = std::sqrt(-k2);
      if (kq[i] * rmax_ < 280) {
        const double x = kq[i] * rmax_;
        const double kb = boost::math::cyl_bessel_k(kinf_(i), x);
        const double kbp =
            kq[i] * boost::math::cyl_bessel_k_prime(kinf_(i), x);
        if (std::isfinite(kb) && std::abs(kb) < 1e280) {
          mp[i].f = kb;
          mp[i].fp = kbp;
          corr.push_back(i);
        }
      }
    }
  }
  const int no = static_cast<int>(act.size());
  if (no == 0) throw std::runtime_error("rmatrix: no matchable open channel");

  Eigen::MatrixXd Roo(no, no);
  for (int a = 0; a < no; ++a)
    for (int b = 0; b < no; ++b) Roo(a, b) = Rm(act[a], act[b]);
  if (!corr.empty()) {
    const int nc = static_cast<int>(corr.size());
    Eigen::MatrixXd Roc(no, nc), Rcc(nc, nc);
    Eigen::VectorXd kb(nc), kbp(nc);
    for (int a = 0; a < nc; ++a) {
      kb(a) = mp[corr[a]].f;
      kbp(a) = mp[corr[a]].fp;
      for (int b = 0; b < no; ++b) Roc(b, a) = Rm(act[b], corr[a]);
      for (int b = 0; b < nc; ++b) Rcc(a, b) = Rm(corr[a], corr[b]);
    }
    Eigen::MatrixXd D = Eigen::MatrixXd(kb.asDiagonal()) -
                        Rcc * rmax_ * Eigen::MatrixXd(kbp.asDiagonal());
    Eigen::MatrixXd Y = D.partialPivLu().solve(Roc.transpose());
    Roo.noalias() += Roc * rmax_ * Eigen::MatrixXd(kbp.asDiagonal()) * Y;
  }

  Eigen::MatrixXd Fh(no, no), Gh(no, no);
  Fh.setZero();
  Gh.setZero();
  Eigen::VectorXd fv(no), fpv(no), gv(no), gpv(no);
  for (int a = 0; a < no; ++a) {
    fv(a) = mp[act[a]].f;
    fpv(a) = mp[act[a]].fp;
    gv(a) = mp[act[a]].g;
    gpv(a) = mp[act[a]].gp;
  }
  Eigen::MatrixXd Amat =
      Eigen::MatrixXd(fv.asDiagonal()) - Roo * rmax_ * Eigen::MatrixXd(fpv.asDiagonal());
  Eigen::MatrixXd Bmat =
      Eigen::MatrixXd(gv.asDiagonal()) - Roo * rmax_ * Eigen::MatrixXd(gpv.asDiagonal());
  out.K = Bmat.partialPivLu().solve(Amat);
  out.open = act;
  out.k.resize(no);
  for (int a = 0; a < no; ++a) out.k(a) = kq[act[a]];

  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(no, no);
  const Eigen::MatrixXcd iK =
      std::complex<double>(0, 1) * out.K.cast<std::complex<double>>();
  out.S = (I + iK) * (I - iK).inverse();
  return out;
}

std::vector<double> bound_state_energies(const ChannelModel& model, double r_lo,
                                         double r_hi, int breakpoints, int count,
                                         int order) {
  if (!(r_lo > 0) || !(r_hi > r_lo))
    throw std::invalid_argument("bound box: need 0 < r_lo < r_hi");
  if (breakpoints < order + 2)
    throw std::invalid_argument("bound box: too few breakpoints");
  if (count < 1) throw std::invalid_argument("bound box: count must be >= 1");

  const int n = model.nchan();
  const double tm = 2 * model.hypermass();
  std::vector<double> pts(breakpoints);
  const double llo = std::log(r_lo), lhi = std::log(r_hi);
  for (int i = 0; i < breakpoints; ++i)
    pts[i] = std::exp(llo + (lhi - llo) * i / (breakpoints - 1));
  pts.front() = r_lo;
  pts.back() = r_hi;
  BSplineBasis basis(order, pts, std::vector<int>(breakpoints - 2, 1));
  const int nb = basis.size();

  // Kept subset: Dirichlet at the outer wall for everything, Dirichlet at the
  // inner wall unless the channel's free index is 0 (natural condition).
  const Eigen::VectorXd lam0 = model.lambda0();
  std::vector<int> keep;
  keep.reserve(nb * n);
  std::vector<int> newidx(nb * n, -1);
  for (int a = 0; a < nb; ++a)
    for (int i = 0; i < n; ++i) {
      if (a == nb - 1) continue;
      if (a == 0 && lam0(i) > 1e-12) continue;
      newidx[a * n + i] = static_cast<int>(keep.size());
      keep.push_back(a * n + i);
    }
  const int nk = static_cast<int>(keep.size());
  const int kd = n * order - 1;
  const int ldab = kd + 1;
  std::vector<double> ab(static_cast<std::size_t>(ldab) * nk, 0.0);
  std::vector<double> bb(static_cast<std::size_t>(ldab) * nk, 0.0);
  auto at = [&](std::vector<double>& m, int i, int j) -> double& {
    return m[static_cast<std::size_t>(j) * ldab + (i - j)];
  };

  GaussLegendre gl(10);
  std::vector<double> xs, ws, buf(2 * order);
  Eigen::VectorXd lam;
  Eigen::MatrixXd P, Q;
  for (int sp = 0; sp < basis.nspans(); ++sp) {
    gl.mapped(basis.span_lo(sp), basis.span_hi(sp), xs, ws);
    for (std::size_t q = 0; q < xs.size(); ++q) {
      const double R = xs[q], w = ws[q];
      int first_nz = 0;
      basis.eval(R, 1, buf.data(), first_nz);
      model.eval(R, lam, P, Q);
      for (int a = 0; a < order; ++a) {
        const int ia = first_nz + a;
        const double Ba = buf[a], dBa = buf[order + a];
        for (int b = 0; b < order; ++b) {
          const int ib = first_nz + b;
          const double Bb = buf[b], dBb = buf[order + b];
          for (int i = 0; i < n; ++i) {
            const int gi = newidx[ia * n + i];
            if (gi < 0) continue;
            for (int j = 0; j < n; ++j) {
              const int gj = newidx[ib * n + j];
              if (gj < 0 || gi < gj) continue;
              double v = 0;
              if (i == j) v += R * dBa * dBb + (lam(i) / R) * Ba * Bb;
              v += R * (-Q(i, j) * Ba * Bb + P(i, j) * (dBa * Bb - Ba * dBb));
              at(ab, gi, gj) += w * v;
              if (i == j) at(bb, gi, gj) += w * R * Ba * Bb;
            }
          }
        }
      }
    }
  }

  const int iu = std::min(count, nk);
  std::vector<double> wv(nk), z(1);
  std::vector<lapack_int> ifail(nk);
  lapack_int m = 0;
  const double abstol = 2 * LAPACKE_dlamch('S');
  lapack_int info = LAPACKE_dsbgvx(
      LAPACK_COL_MAJOR, 'N', 'I', 'L', nk, kd, kd, ab.data(), ldab, bb.data(),
      ldab, nullptr, 1, 0.0, 0.0, 1, iu, abstol, &m, wv.data(), z.data(), 1,
      ifail.data());
  if (info != 0) throw std::runtime_error("bound box: banded eigensolve failed");
  std::vector<double> out(m);
  for (int i = 0; i < m; ++i) out[i] = wv[i] / tm;
  return out;
}

} // namespace hyper1d
