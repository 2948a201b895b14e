#include "hyper1d/adiabatic.hpp"

#include "hyper1d/constants.hpp"
#include "hyper1d/numutil.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyper1d {

void AngularSolution::eval(const std::vector<double>& phi, Eigen::MatrixXd& out) const {
  const int k = basis->order(), nch = static_cast<int>(coef.cols());
  out.setZero(static_cast<Eigen::Index>(phi.size()), nch);
  std::vector<double> buf(k);
  for (std::size_t r = 0; r < phi.size(); ++r) {
    int first = 0;
    basis->eval(phi[r], 0, buf.data(), first);
    for (int c = 0; c < nch; ++c) {
      double acc = 0;
      for (int t = 0; t < k; ++t) acc += buf[t] * coef(first + t, c);
      out(static_cast<Eigen::Index>(r), c) = acc;
    }
  }
}

AngularSolver::AngularSolver(AngularModelSpec spec, int nchan, int backbone_spans,
                             int order)
    : spec_(std::move(spec)), sys_(ThreeBodySystem::make(spec_.m1, spec_.m2, spec_.m3)),
      nchan_(nchan), backbone_(backbone_spans), order_(order) {
  if (nchan < 1) throw std::invalid_argument("angular solver: nchan < 1");
  if (backbone_spans < 8) throw std::invalid_argument("angular solver: too few spans");
  if (order < 3 || order > 8) throw std::invalid_argument("angular solver: order");
  const bool id12 = spec_.m1 == spec_.m2;
  identical_ = id12 && spec_.m2 == spec_.m3;
  if (!id12)
    throw std::invalid_argument(
        "angular solver: supported mass patterns are (m,m,m) and (m,m,m3)");
  if (!spec_.pot && spec_.g == 0)
    throw std::invalid_argument("angular solver: no interaction given");

  if (identical_) {
    lo_ = pi / 2;           // 1-2 coalescence edge
    hi_ = 2 * pi / 3;       // inversion axis of the symmetry-reduced wedge
    edge_phi_ = lo_;
    kink_phi_ = -1;
  } else {
    lo_ = 0;                // inversion axis
    hi_ = pi / 2;           // 1-2 coalescence edge
    edge_phi_ = hi_;
    kink_phi_ = sys_.coalescence_angle(1);  // 2-3 line inside the wedge
  }
  const bool pair_edge_open = spec_.stats == Statistics::boson;
  robin_c_ = (spec_.g != 0 && pair_edge_open) ? sys_.mu * spec_.g / sys_.d12 : 0;
  kink_j_ = (spec_.g != 0 && !identical_) ? 2 * sys_.mu * spec_.g / sys_.d23 : 0;
}

double AngularSolver::angular_potential(double R, double phi) const {
  if (!spec_.pot) return 0;
  const auto& V = *spec_.pot;
  double sum = 0;
  for (int p = 0; p < 3; ++p) sum += V(sys_.separation(p, R, phi));
  return 2 * sys_.mu * R * R * sum;
}

std::vector<double> AngularSolver::mesh(double R, std::vector<int>& mult) const {
  const double W = hi_ - lo_;
  std::vector<double> pts;
  pts.reserve(backbone_ + 64);
  for (int i = 0; i <= backbone_; ++i)
    pts.push_back(lo_ + W * static_cast<double>(i) / backbone_);

  auto push_in = [&](double x) {
    if (x > lo_ + 1e-13 * W && x < hi_ - 1e-13 * W) pts.push_back(x);
  };
  auto add_focus = [&](double center, double halfwidth) {
    double h = halfwidth / 8, x = 0;
    for (int it = 0; it < 80 && x < 4 * halfwidth; ++it) {
      x += h;
      push_in(center + x);
      push_in(center - x);
      h *= 1.6;
    }
  };

  struct Line {
    double phi, d;
  };
  std::vector<Line> lines = {{edge_phi_, sys_.dscale(0)}};
  if (!identical_) lines.push_back({kink_phi_, sys_.dscale(1)});

  if (spec_.pot) {
    for (const auto& ln : lines) {
      const double s = spec_.pot->range() / (ln.d * R);
      if (s < 0.7) {
        const double w = std::asin(s);
        if (w < W / 4) add_focus(ln.phi, w);
      }
    }
    // exact breakpoints at potential discontinuities (square wells)
    const double disc = spec_.pot->discontinuity();
    if (disc >= 0)
      for (int p = 0; p < 3; ++p) {
        const double s = disc / (sys_.dscale(p) * R);
        if (s <= 1) {
          const double w = std::asin(s), c = sys_.coalescence_angle(p);
          for (double base : {c - pi, c, c + pi})
            for (double sign : {-1.0, 1.0}) push_in(base + sign * w);
        }
      }
  }
  // contact boundary layers shrink like 1/(|coef| R)
  if (robin_c_ != 0 && std::abs(robin_c_) * R * W > 8)
    add_focus(edge_phi_, 1 / (std::abs(robin_c_) * R));
  if (kink_j_ != 0 && std::abs(kink_j_) * R * W > 16)
    add_focus(kink_phi_, 2 / (std::abs(kink_j_) * R));
  const bool kink_bp = kink_j_ != 0;
  if (kink_bp) pts.push_back(kink_phi_);

  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  const double tol = 1e-11 * W;
  for (double x : pts)
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  out.front() = lo_;
  out.back() = hi_;
  int kink_idx = -1;
  if (kink_bp) {
    // snap the nearest interior point onto the kink so the reduced-continuity
    // knot sits exactly on the 2-3 line
    double best = 1e300;
    for (std::size_t i = 1; i + 1 < out.size(); ++i)
      if (std::abs(out[i] - kink_phi_) < best) {
        best = std::abs(out[i] - kink_phi_);
        kink_idx = static_cast<int>(i);
      }
    out[kink_idx] = kink_phi_;
  }
  mult.assign(out.size() > 2 ? out.size() - 2 : 0, 1);
  if (kink_idx > 0) mult[kink_idx - 1] = order_ - 1;
  return out;
}

AngularSolution AngularSolver::solve(double R) const {
  if (!(R > 0)) throw std::invalid_argument("angular solver: R must be positive");
  std::vector<int> mult;
  const auto pts = mesh(R, mult);
  auto basis = std::make_shared<BSplineBasis>(order_, pts, mult);
  const int n = basis->size(), kd = order_ - 1, ldab = kd + 1;

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(ldab, n);
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(ldab, n);
  auto add = [&](Eigen::MatrixXd& M, int i, int j, double v) {
    if (i < j) std::swap(i, j);
    M(i - j, j) += v;
  };

  static const GaussLegendre gl(11);
  std::vector<double> xs, ws, buf(2 * static_cast<std::size_t>(order_));
  for (int sp = 0; sp < basis->nspans(); ++sp) {
    gl.mapped(basis->span_lo(sp), basis->span_hi(sp), xs, ws);
    for (std::size_t q = 0; q < xs.size(); ++q) {
      int first = 0;
      basis->eval(xs[q], 1, buf.data(), first);
      const double W = angular_potential(R, xs[q]);
      for (int a = 0; a < order_; ++a)
        for (int b = a; b < order_; ++b) {
          const double bb = buf[a] * buf[b];
          add(S, first + a, first + b, ws[q] * bb);
          add(A, first + a, first + b,
              ws[q] * (buf[order_ + a] * buf[order_ + b] + W * bb));
        }
    }
  }
  // contact terms: Robin at the pair edge and the interior derivative kink
  auto point_term = [&](double phi, double coefv) {
    int first = 0;
    basis->eval(phi, 0, buf.data(), first);
    for (int a = 0; a < order_; ++a)
      for (int b = a; b < order_; ++b)
        add(A, first + a, first + b, coefv * buf[a] * buf[b]);
  };
  if (robin_c_ != 0) point_term(edge_phi_, robin_c_ * R);
  if (kink_j_ != 0) point_term(kink_phi_, kink_j_ * R);

  // Dirichlet conditions remove the single end function clamped at the edge.
  // Reflection about the pair edge is a pure exchange (statistics sign);
  // reflection about the symmetry axis is exchange composed with inversion,
  // so its sign is statistics * parity.
  const bool axis_dir =
      (spec_.stats == Statistics::boson) != (spec_.parity == Parity::even);
  bool drop_lo, drop_hi;
  if (identical_) {
    drop_lo = spec_.stats == Statistics::fermion;
    drop_hi = axis_dir;
  } else {
    drop_lo = axis_dir;
    drop_hi = spec_.stats == Statistics::fermion;
  }
  const int i0 = drop_lo ? 1 : 0;
  const int nk = n - i0 - (drop_hi ? 1 : 0);
  if (nchan_ > nk) throw std::invalid_argument("angular solver: nchan exceeds basis");

  std::vector<double> ab(static_cast<std::size_t>(ldab) * nk, 0.0);
  std::vector<double> bb(static_cast<std::size_t>(ldab) * nk, 0.0);
  for (int j = 0; j < nk; ++j)
    for (int r = 0; r <= kd && j + r < nk; ++r) {
      ab[static_cast<std::size_t>(j) * ldab + r] = A(r, j + i0);
      bb[static_cast<std::size_t>(j) * ldab + r] = S(r, j + i0);
    }

  std::vector<double> q(static_cast<std::size_t>(nk) * nk), wout(nk),
      z(static_cast<std::size_t>(nk) * nchan_);
  std::vector<lapack_int> ifail(nk);
  lapack_int m = 0;
  const double abstol = 2 * LAPACKE_dlamch('S');
  const lapack_int info = LAPACKE_dsbgvx(
      LAPACK_COL_MAJOR, 'V', 'I', 'L', nk, kd, kd, ab.data(), ldab, bb.data(), ldab,
      q.data(), nk, 0.0, 0.0, 1, nchan_, abstol, &m, wout.data(), z.data(), nk,
      ifail.data());
  if (info != 0 || m < nchan_)
    throw std::runtime_error("angular eigensolve failed (info=" + std::to_string(info) + ")");

  AngularSolution sol;
  sol.R = R;
  sol.basis = basis;
  sol.lambda = Eigen::Map<Eigen::VectorXd>(wout.data(), nchan_);
  sol.coef.setZero(n, nchan_);
  for (int c = 0; c < nchan_; ++c) {
    for (int i = 0; i < nk; ++i)
      sol.coef(i0 + i, c) = z[static_cast<std::size_t>(c) * nk + i];
    // deterministic local gauge: largest coefficient positive
    int imax = 0;
    sol.coef.col(c).cwiseAbs().maxCoeff(&imax);
    if (sol.coef(imax, c) < 0) sol.coef.col(c) = -sol.coef.col(c);
  }
  return sol;
}

void AngularSolver::quadrature(const BSplineBasis& basis, std::vector<double>& xs,
                               std::vector<double>& ws) const {
  static const GaussLegendre gl(11);
  xs.clear();
  ws.clear();
  std::vector<double> x1, w1;
  for (int sp = 0; sp < basis.nspans(); ++sp) {
    gl.mapped(basis.span_lo(sp), basis.span_hi(sp), x1, w1);
    xs.insert(xs.end(), x1.begin(), x1.end());
    ws.insert(ws.end(), w1.begin(), w1.end());
  }
}

AngularSolution AngularSolver::couplings(double R, Eigen::VectorXd& lambda,
                                         Eigen::MatrixXd& P, Eigen::MatrixXd& Psq,
                                         double eps_rel) const {
  const double h = eps_rel * R;
  AngularSolution s0 = solve(R), sp = solve(R + h), sm = solve(R - h);

  std::vector<double> xs, ws;
  quadrature(*s0.basis, xs, ws);
  Eigen::MatrixXd V0, Vp, Vm;
  s0.eval(xs, V0);
  sp.eval(xs, Vp);
  sm.eval(xs, Vm);
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(ws.data(), ws.size());

  for (int c = 0; c < nchan_; ++c) {
    if (V0.col(c).cwiseProduct(w).dot(Vp.col(c)) < 0) Vp.col(c) = -Vp.col(c);
    if (V0.col(c).cwiseProduct(w).dot(Vm.col(c)) < 0) Vm.col(c) = -Vm.col(c);
  }
  const Eigen::MatrixXd dV = (Vp - Vm) / (2 * h);
  const Eigen::MatrixXd Pw = V0.transpose() * w.asDiagonal() * dV;
  const Eigen::MatrixXd G = dV.transpose() * w.asDiagonal() * dV;
  P = 0.5 * (Pw - Pw.transpose());
  Psq = -0.5 * (G + G.transpose());
  lambda = s0.lambda;
  return s0;
}

Eigen::VectorXd free_wedge_lambda0(const AngularModelSpec& spec, int n) {
  const bool identical = spec.m1 == spec.m2 && spec.m2 == spec.m3;
  const double width = identical ? pi / 6 : pi / 2;
  const bool pair_n = spec.stats == Statistics::boson;
  const bool axis_n =
      (spec.stats == Statistics::boson) == (spec.parity == Parity::even);
  Eigen::VectorXd out(n);
  for (int m = 0; m < n; ++m) {
    double k;
    if (pair_n && axis_n) k = m * pi / width;
    else if (!pair_n && !axis_n) k = (m + 1) * pi / width;
    else k = (m + 0.5) * pi / width;
    out[m] = k * k;
  }
  return out;
}

Eigen::VectorXd breakup_kappa_inf(const AngularModelSpec& spec, int n_dimer, int n) {
  const bool identical = spec.m1 == spec.m2 && spec.m2 == spec.m3;
  const bool axis_n =
      (spec.stats == Statistics::boson) == (spec.parity == Parity::even);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  std::vector<double> ks;
  if (identical) {
    // effective Dirichlet at the pair edge; exchange*inversion BC at the axis
    const double width = pi / 6;
    for (int m = 0; m < n; ++m)
      ks.push_back(axis_n ? (m + 0.5) * pi / width : (m + 1) * pi / width);
  } else {
    const auto sys = ThreeBodySystem::make(spec.m1, spec.m2, spec.m3);
    const double wA = pi / 2 - sys.phi23;
    for (int m = 1; m <= n + 1; ++m) ks.push_back(m * pi / wA);
    for (int m = 0; m <= n + 1; ++m)
      ks.push_back(axis_n ? (m + 0.5) * pi / sys.phi23
                          : (m + 1) * pi / sys.phi23);
    std::sort(ks.begin(), ks.end());
  }
  for (int i = n_dimer; i < n; ++i) out[i] = ks[static_cast<std::size_t>(i) - n_dimer];
  return out;
}

ChannelTable build_channel_table(const AngularSolver& solver,
                                 const std::vector<double>& Rgrid,
                                 const Eigen::VectorXd& thresholds,
                                 const Eigen::VectorXd& kappa_inf,
                                 const Eigen::VectorXd& lambda0, double fd_eps) {
  const int n = solver.nchan();
  const int nr = static_cast<int>(Rgrid.size());
  if (nr < 4) throw std::invalid_argument("channel table: R grid too short");
  if (thresholds.size() != n || kappa_inf.size() != n || lambda0.size() != n)
    throw std::invalid_argument("channel table: label sizes");
  for (int k = 1; k < nr; ++k)
    if (!(Rgrid[k] > Rgrid[k - 1]))
      throw std::invalid_argument("channel table: R grid not ascending");

  ChannelTable t;
  t.mu = solver.system().mu;
  t.R = Rgrid;
  t.lambda.resize(nr, n);
  t.P.assign(nr, Eigen::MatrixXd());
  t.Psq.assign(nr, Eigen::MatrixXd());
  t.thresholds = thresholds;
  t.kappa_inf = kappa_inf;
  t.lambda0 = lambda0;

  AngularSolution prev;
  std::vector<double> xs, ws;
  for (int k = 0; k < nr; ++k) {
    Eigen::VectorXd lam;
    Eigen::MatrixXd P, Psq;
    AngularSolution cur = solver.couplings(Rgrid[k], lam, P, Psq, fd_eps);
    if (k > 0) {
      solver.quadrature(*cur.basis, xs, ws);
      Eigen::MatrixXd Vc, Vp;
      cur.eval(xs, Vc);
      prev.eval(xs, Vp);
      const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(ws.data(), ws.size());
      for (int c = 0; c < n; ++c)
        if (Vp.col(c).cwiseProduct(w).dot(Vc.col(c)) < 0) {
          cur.coef.col(c) = -cur.coef.col(c);
          P.row(c) = -P.row(c);
          P.col(c) = -P.col(c);
          Psq.row(c) = -Psq.row(c);
          Psq.col(c) = -Psq.col(c);
        }
    }
    t.lambda.row(k) = lam.transpose();
    t.P[k] = P;
    t.Psq[k] = Psq;
    prev = std::move(cur);
  }
  return t;
}

} // namespace hyper1d
