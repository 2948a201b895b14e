#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace hyper1d {

// Brent root finder on a bracketing interval [lo, hi]; f(lo), f(hi) must have
// opposite signs (a zero endpoint is accepted). Throws std::invalid_argument
// on a bad bracket, std::runtime_error if maxit is exhausted.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double xtol = 1e-13, int maxit = 200);

// Scan [lo, hi] on n uniform nodes and return sign-change brackets.
std::vector<std::pair<double, double>> scan_brackets(
    const std::function<double(double)>& f, double lo, double hi, int n);

// Gauss-Legendre rule on [-1, 1]; nodes ascending.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n);
  // Transform to [a, b].
  void mapped(double a, double b, std::vector<double>& xs,
              std::vector<double>& ws) const;
};

// Natural cubic spline through (x_i, y_i), x strictly increasing.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;
  double deriv(double x) const;
  double xmin() const { return x_.front(); }
  double xmax() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, m_;  // m_: second derivatives
  int locate(double x) const;
};

// Least-squares straight line y = a + b x; returns {a, b}.
std::pair<double, double> fit_line(const std::vector<double>& x,
                                   const std::vector<double>& y);

// FNV-1a 64-bit hash, used for cache keys.
std::uint64_t fnv1a(std::string_view s);

// Run fn(i) for i in [0, n) on up to nthreads workers (nthreads <= 1 runs
// inline). fn must be safe to call concurrently for distinct i.
void parallel_for(std::size_t n, int nthreads,
                  const std::function<void(std::size_t)>& fn);

} // namespace hyper1d
