#include <doctest.h>

#include "hyper1d/angular_roots.hpp"
#include "hyper1d/constants.hpp"

#include <cmath>
#include <vector>

using namespace hyper1d;

TEST_CASE("continued trig kernels and their lambda -> 0 limits") {
  CHECK(tan_like(4.0, 0.3) == doctest::Approx(2 * std::tan(0.6)).epsilon(1e-14));
  CHECK(cot_like(4.0, 0.3) == doctest::Approx(2 / std::tan(0.6)).epsilon(1e-14));
  CHECK(tan_like(-4.0, 0.3) ==
        doctest::Approx(-2 * std::tanh(0.6)).epsilon(1e-14));
  CHECK(cot_like(-4.0, 0.3) ==
        doctest::Approx(2 / std::tanh(0.6)).epsilon(1e-14));
  CHECK(cos_like(-4.0, 0.3) == doctest::Approx(std::cosh(0.6)).epsilon(1e-14));
  CHECK(sinc_like(4.0, 0.3) ==
        doctest::Approx(std::sin(0.6) / 2).epsilon(1e-14));
  // continuity across the hyperbolic seam
  for (double t : {0.2, 1.0}) {
    CHECK(tan_like(1e-13, t) == doctest::Approx(tan_like(-1e-13, t)).epsilon(1e-10));
    CHECK(cot_like(1e-13, t) == doctest::Approx(cot_like(-1e-13, t)).epsilon(1e-10));
    CHECK(cos_like(1e-13, t) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sinc_like(1e-13, t) == doctest::Approx(t).epsilon(1e-12));
  }
}

TEST_CASE("square-well wedge spectrum against a high-precision oracle") {
  // one pair dimer, beta^2 = 2 mu R^2 V0 at R = 12, well edge from
  // cos(phib) = -(3/4)^{1/4} L / R with L = 1
  const double beta2 = 166.2768775266122;
  const double phib = 1.648424675045113;
  const auto lam =
      squarewell_wedge_spectrum(beta2, phib, Statistics::boson, Parity::even, 5);
  REQUIRE(lam.size() == 5);
  CHECK(lam[0] == doctest::Approx(-75.564374740417).epsilon(1e-9));
  CHECK(lam[1] == doctest::Approx(15.166006350816).epsilon(1e-9));
  CHECK(lam[2] == doctest::Approx(119.80473759011).epsilon(1e-9));
  CHECK(lam[3] == doctest::Approx(303.12712875013).epsilon(1e-9));
  CHECK(lam[4] == doctest::Approx(557.69401813147).epsilon(1e-9));
}

TEST_CASE("square-well wedge free limit reproduces the free wedge") {
  // beta -> 0: even bosons on width pi/6 have kappa = 0, 6, 12, ...
  const auto lam = squarewell_wedge_spectrum(1e-12, pi / 2 + pi / 12,
                                             Statistics::boson, Parity::even, 3);
  CHECK(std::abs(lam[0]) < 1e-6);
  CHECK(lam[1] == doctest::Approx(36.0).epsilon(1e-8));
  CHECK(lam[2] == doctest::Approx(144.0).epsilon(1e-8));
}

TEST_CASE("square-well wedge respects sector boundary conditions") {
  // deep, narrow well; fermions see a Dirichlet pair edge so the odd-fermion
  // list heads to (n+1/2) pi / (pi/6) = {3, 9, ...} and even fermions to 6n
  const double beta2 = 1e8, phib = pi / 2 + 1e-4;
  const auto fo = squarewell_wedge_spectrum(beta2, phib, Statistics::fermion,
                                            Parity::odd, 2);
  CHECK(std::sqrt(fo[0]) == doctest::Approx(3.0).epsilon(2e-3));
  CHECK(std::sqrt(fo[1]) == doctest::Approx(9.0).epsilon(2e-3));
  const auto fe = squarewell_wedge_spectrum(beta2, phib, Statistics::fermion,
                                            Parity::even, 2);
  CHECK(std::sqrt(fe[0]) == doctest::Approx(6.0).epsilon(2e-3));
  CHECK(std::sqrt(fe[1]) == doctest::Approx(12.0).epsilon(2e-3));
}

TEST_CASE("two-identical contact spectrum against a high-precision oracle") {
  const auto sys = ThreeBodySystem::make(1, 1, 0.5);
  const auto lam = two_identical_contact_spectrum(sys, 0.8, 3.0,
                                                  Statistics::boson,
                                                  Parity::even, 9.0);
  REQUIRE(lam.size() >= 5);
  const double kap[] = {1.26333625481762, 2.458097270376155,
                        4.177808492577916, 6.239524729124543,
                        8.223956840654952};
  for (int i = 0; i < 5; ++i)
    CHECK(std::sqrt(lam[i]) == doctest::Approx(kap[i]).epsilon(1e-9));
}

TEST_CASE("attractive coupling grows one dimer branch per inequivalent pair") {
  const auto sys = ThreeBodySystem::make(1, 1, 0.5);
  const double R = 60.0;
  const auto lam = two_identical_contact_spectrum(sys, -1.0, R,
                                                  Statistics::boson,
                                                  Parity::even, 4.0);
  REQUIRE(lam.size() >= 2);
  REQUIRE(lam[0] < 0);
  REQUIRE(lam[1] < 0);
  // lambda -> -2 mu B2 R^2 with B2 the pair binding mu_pair g^2 / 2
  const double mu23 = 1.0 * 0.5 / 1.5;
  CHECK(std::sqrt(-lam[0]) / R ==
        doctest::Approx(std::sqrt(2 * sys.mu * (sys.mu12 / 2))).epsilon(1e-3));
  CHECK(std::sqrt(-lam[1]) / R ==
        doctest::Approx(std::sqrt(2 * sys.mu * (mu23 / 2))).epsilon(1e-3));
}

TEST_CASE("two-identical asymptote families") {
  const auto sys = ThreeBodySystem::make(1, 1, 0.5);
  const auto fam = two_identical_contact_asymptotes(sys, Statistics::boson,
                                                    Parity::even, 5);
  REQUIRE(fam.size() == 5);
  CHECK(fam[0] == doctest::Approx(2.7311974809).epsilon(1e-10));
  CHECK(fam[1] == doctest::Approx(3.73523918263).epsilon(1e-10));
  CHECK(fam[2] == doctest::Approx(5.4623949618).epsilon(1e-10));
  CHECK(fam[3] == doctest::Approx(8.1935924427).epsilon(1e-10));
  CHECK(fam[4] == doctest::Approx(10.9247899236).epsilon(1e-10));
  // odd fermions share the half-integer second family
  const auto fo = two_identical_contact_asymptotes(sys, Statistics::fermion,
                                                   Parity::odd, 2);
  CHECK(fo[0] == doctest::Approx(2.7311974809).epsilon(1e-10));
  CHECK(fo[1] == doctest::Approx(3.73523918263).epsilon(1e-10));
  // odd bosons get the integer family instead
  const auto bo = two_identical_contact_asymptotes(sys, Statistics::boson,
                                                   Parity::odd, 2);
  CHECK(bo[0] == doctest::Approx(2.7311974809).epsilon(1e-10));
  CHECK(bo[1] == doctest::Approx(5.4623949618).epsilon(1e-10));
}
