#include "hyper1d/numutil.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

namespace hyper1d {

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double xtol, int maxit) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if (std::isnan(fa) || std::isnan(fb) || fa * fb > 0)
    throw std::invalid_argument("find_root: endpoints do not bracket a zero");

  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < maxit; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol || fb == 0) return b;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      // inverse quadratic / secant step
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2 * xm * s;
        q = 1 - s;
      } else {
        const double qq = fa / fc, r = fb / fc;
        p = s * (2 * xm * qq * (qq - r) - (b - a) * (r - 1));
        q = (qq - 1) * (r - 1) * (s - 1);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      if (2 * p < std::min(3 * xm * q - std::abs(tol * q), std::abs(e * q))) {
        e = d; d = p / q;
      } else {
        d = xm; e = d;
      }
    } else {
      d = xm; e = d;
    }
    a = b; fa = fb;
    b += (std::abs(d) > tol) ? d : (xm > 0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) { c = a; fc = fa; d = b - a; e = d; }
  }
  throw std::runtime_error("find_root: no convergence");
}

std::vector<std::pair<double, double>> scan_brackets(
    const std::function<double(double)>& f, double lo, double hi, int n) {
  std::vector<std::pair<double, double>> out;
  if (n < 2) throw std::invalid_argument("scan_brackets: need n >= 2");
  double xp = lo, fp = f(lo);
  for (int i = 1; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    const double fx = f(x);
    if (!std::isnan(fp) && !std::isnan(fx) && fp * fx <= 0 && fp != fx)
      out.emplace_back(xp, x);
    xp = x; fp = fx;
  }
  return out;
}

GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw std::invalid_argument("GaussLegendre: n >= 1");
  // Golub-Welsch: eigen-decomposition of the Jacobi matrix.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    J(i, i - 1) = J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  x.resize(n); w.resize(n);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    w[i] = 2.0 * v * v;
  }
}

void GaussLegendre::mapped(double a, double b, std::vector<double>& xs,
                           std::vector<double>& ws) const {
  const int n = static_cast<int>(x.size());
  xs.resize(n); ws.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    xs[i] = mid + half * x[i];
    ws[i] = half * w[i];
  }
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const int n = static_cast<int>(x_.size());
  if (n < 3 || y_.size() != x_.size())
    throw std::invalid_argument("CubicSpline: need >= 3 points");
  for (int i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("CubicSpline: x not increasing");
  // natural BC tridiagonal solve for second derivatives
  std::vector<double> a(n, 0), b(n, 0), c(n, 0), r(n, 0);
  m_.assign(n, 0.0);
  b[0] = 1; b[n - 1] = 1;
  for (int i = 1; i < n - 1; ++i) {
    const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
    a[i] = h0 / 6;
    b[i] = (h0 + h1) / 3;
    c[i] = h1 / 6;
    r[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
  }
  for (int i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    r[i] -= w * r[i - 1];
  }
  m_[n - 1] = r[n - 1] / b[n - 1];
  for (int i = n - 2; i >= 0; --i) m_[i] = (r[i] - c[i] * m_[i + 1]) / b[i];
}

int CubicSpline::locate(double x) const {
  const int n = static_cast<int>(x_.size());
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  int i = static_cast<int>(it - x_.begin()) - 1;
  return std::clamp(i, 0, n - 2);
}

double CubicSpline::operator()(double x) const {
  const int i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
  return A * y_[i] + B * y_[i + 1] +
         ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6;
}

double CubicSpline::deriv(double x) const {
  const int i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h -
         (3 * A * A - 1) / 6 * h * m_[i] + (3 * B * B - 1) / 6 * h * m_[i + 1];
}

std::pair<double, double> fit_line(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("fit_line: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0) throw std::invalid_argument("fit_line: degenerate abscissae");
  const double b = (n * sxy - sx * sy) / det;
  const double a = (sy - b * sx) / n;
  return {a, b};
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

void parallel_for(std::size_t n, int nthreads,
                  const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  int nt = std::min<int>(nthreads < 1 ? hw : nthreads, static_cast<int>(n));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> fut;
  fut.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    fut.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t i = t; i < n; i += nt) fn(i);
    }));
  }
  for (auto& f : fut) f.get();
}

} // namespace hyper1d
