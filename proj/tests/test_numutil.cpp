#include <doctest.h>

#include "hyper1d/constants.hpp"
#include "hyper1d/numutil.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

using namespace hyper1d;

TEST_CASE("find_root locates a simple zero to tolerance") {
  const double r = find_root([](double x) { return std::cos(x); }, 1.0, 2.0);
  CHECK(r == doctest::Approx(pi / 2).epsilon(1e-12));
}

TEST_CASE("find_root accepts a zero endpoint") {
  const double r = find_root([](double x) { return x * x - 4; }, 2.0, 5.0);
  CHECK(r == doctest::Approx(2.0));
}

TEST_CASE("find_root rejects a non-bracketing interval") {
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1; }, -1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("scan_brackets finds every sign change of sin") {
  const auto br =
      scan_brackets([](double x) { return std::sin(x); }, 0.1, 9.5, 200);
  REQUIRE(br.size() == 3);
  const double roots[] = {pi, 2 * pi, 3 * pi};
  for (int i = 0; i < 3; ++i) {
    CHECK(br[i].first < roots[i]);
    CHECK(br[i].second > roots[i]);
  }
}

TEST_CASE("Gauss-Legendre integrates the highest exact-degree monomial") {
  // n-point rule is exact through degree 2n-1
  GaussLegendre gl(10);
  std::vector<double> xs, ws;
  gl.mapped(0.0, 1.0, xs, ws);
  double s = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += ws[i] * std::pow(xs[i], 19);
  CHECK(s == doctest::Approx(1.0 / 20).epsilon(1e-14));
  double len = 0;
  for (double w : ws) len += w;
  CHECK(len == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("cubic spline reproduces a straight line exactly") {
  std::vector<double> x{0, 0.7, 1.1, 2.0, 3.5}, y;
  for (double v : x) y.push_back(3 - 2 * v);
  CubicSpline s(x, y);
  CHECK(s(1.7) == doctest::Approx(3 - 2 * 1.7).epsilon(1e-14));
  CHECK(s.deriv(0.3) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(s.xmin() == 0);
  CHECK(s.xmax() == 3.5);
}

TEST_CASE("cubic spline interpolates smooth data well mid-interval") {
  std::vector<double> x, y;
  for (int i = 0; i <= 40; ++i) {
    x.push_back(i * 0.1);
    y.push_back(std::sin(x.back()));
  }
  CubicSpline s(x, y);
  CHECK(s(1.234) == doctest::Approx(std::sin(1.234)).epsilon(1e-6));
  CHECK(s.deriv(2.345) == doctest::Approx(std::cos(2.345)).epsilon(1e-4));
}

TEST_CASE("fit_line recovers exact linear coefficients") {
  std::vector<double> x{1, 2, 4, 8}, y;
  for (double v : x) y.push_back(3.25 - 2.5 * v);
  const auto [a, b] = fit_line(x, y);
  CHECK(a == doctest::Approx(3.25).epsilon(1e-12));
  CHECK(b == doctest::Approx(-2.5).epsilon(1e-12));
}

TEST_CASE("fnv1a matches the published reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("parallel_for covers every index exactly once") {
  const std::size_t n = 1000;
  std::vector<std::atomic<int>> hits(n);
  parallel_for(n, 4, [&](std::size_t i) { hits[i].fetch_add(1); });
  for (std::size_t i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
  // inline path
  std::vector<int> seq(5, 0);
  parallel_for(5, 1, [&](std::size_t i) { seq[i] = static_cast<int>(i); });
  CHECK(seq[4] == 4);
}
