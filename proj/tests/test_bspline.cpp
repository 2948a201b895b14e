#include <doctest.h>

#include "hyper1d/bspline.hpp"
#include "hyper1d/numutil.hpp"

#include <cmath>
#include <vector>

using namespace hyper1d;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

} // namespace

TEST_CASE("B-spline basis size and partition of unity") {
  const auto pts = linspace(0.0, 2.0, 9);
  BSplineBasis b(5, pts, std::vector<int>(7, 1));
  // nbreak - 2 interior knots of multiplicity 1 -> n = order + interior
  CHECK(b.size() == 5 + 7);
  CHECK(b.tmin() == doctest::Approx(0.0));
  CHECK(b.tmax() == doctest::Approx(2.0));

  std::vector<double> buf(2 * 5);
  for (double x : {0.0, 0.31, 0.99, 1.5, 2.0}) {
    int first = 0;
    b.eval(x, 1, buf.data(), first);
    double s = 0, ds = 0;
    for (int j = 0; j < 5; ++j) {
      s += buf[j];
      ds += buf[5 + j];
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(ds == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("B-spline expansion differentiates a quadratic exactly") {
  const auto pts = linspace(0.0, 1.0, 6);
  BSplineBasis b(4, pts, std::vector<int>(4, 1));
  const int n = b.size();
  // interpolate x^2 on n collocation points
  const auto xc = linspace(0.0, 1.0, n);
  Eigen::MatrixXd A(n, n);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    A.row(i) = b.dense_row(xc[i]).transpose();
    rhs(i) = xc[i] * xc[i];
  }
  const Eigen::VectorXd c = A.partialPivLu().solve(rhs);
  for (double x : {0.05, 0.37, 0.81}) {
    CHECK(b.dense_row(x).dot(c) == doctest::Approx(x * x).epsilon(1e-12));
    CHECK(b.dense_row(x, 1).dot(c) == doctest::Approx(2 * x).epsilon(1e-11));
    CHECK(b.dense_row(x, 2).dot(c) == doctest::Approx(2.0).epsilon(1e-10));
  }
}

TEST_CASE("interior multiplicity order-1 produces a C0 kink") {
  const std::vector<double> pts{0.0, 0.5, 1.0};
  const int k = 4;
  BSplineBasis smooth(k, pts, {1});
  BSplineBasis kinked(k, pts, {k - 1});
  CHECK(kinked.size() == smooth.size() + (k - 2));

  // expand f(x) = |x - 1/2| by interpolation in the kinked basis: exact
  const int n = kinked.size();
  Eigen::MatrixXd A(n, n);
  Eigen::VectorXd rhs(n);
  // collocation points placed per-span so the corner is representable
  std::vector<double> xc;
  for (int i = 0; i < n; ++i) xc.push_back(i / (n - 1.0));
  std::sort(xc.begin(), xc.end());
  xc[n / 2] = 0.5;
  for (int i = 0; i < n; ++i) {
    A.row(i) = kinked.dense_row(xc[i]).transpose();
    rhs(i) = std::abs(xc[i] - 0.5);
  }
  const Eigen::VectorXd c = A.partialPivLu().solve(rhs);
  CHECK(kinked.dense_row(0.3).dot(c) == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(kinked.dense_row(0.9).dot(c) == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(kinked.dense_row(0.499999).dot(c) ==
        doctest::Approx(1e-6).epsilon(1e-3));
  // one-sided derivatives differ across the kink
  const double dm = kinked.dense_row(0.5 - 1e-9, 1).dot(c);
  const double dp = kinked.dense_row(0.5 + 1e-9, 1).dot(c);
  CHECK(dm == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(dp == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("spans partition the breakpoint range") {
  const auto pts = linspace(1.0, 3.0, 5);
  BSplineBasis b(3, pts, std::vector<int>(3, 1));
  CHECK(b.nspans() == 4);
  CHECK(b.span_lo(0) == doctest::Approx(1.0));
  CHECK(b.span_hi(3) == doctest::Approx(3.0));
  for (int i = 0; i + 1 < b.nspans(); ++i)
    CHECK(b.span_hi(i) == doctest::Approx(b.span_lo(i + 1)));
}

TEST_CASE("first_nonzero is consistent with eval") {
  const auto pts = linspace(0.0, 1.0, 8);
  BSplineBasis b(5, pts, std::vector<int>(6, 1));
  std::vector<double> buf(5);
  for (double x : {0.01, 0.43, 0.77, 0.99}) {
    int first = 0;
    b.eval(x, 0, buf.data(), first);
    CHECK(first == b.first_nonzero(x));
    const Eigen::VectorXd row = b.dense_row(x);
    for (int j = 0; j < 5; ++j)
      CHECK(row(first + j) == doctest::Approx(buf[j]).epsilon(1e-14));
  }
}
