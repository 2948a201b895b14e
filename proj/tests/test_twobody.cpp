#include <doctest.h>

#include "hyper1d/potentials.hpp"
#include "hyper1d/twobody.hpp"

#include <cmath>
#include <stdexcept>

using namespace hyper1d;

namespace {

// closed-form even-wave phase of a square well, from log-derivative matching
double squarewell_phase(double k, double V0, double L, double mu) {
  const double K = std::sqrt(2 * mu * (k * k / (2 * mu) + V0));
  return std::atan((K / k) * std::tan(K * L)) - k * L;
}

double wrap_pi(double x) { return std::remainder(x, 3.14159265358979323846); }

} // namespace

TEST_CASE("square well scattering length and bound state") {
  SquareWell V(0.35, 1.3);
  TwoBody tb(V, 0.5);
  // reference: a = L + cot(K L)/K, bound state from K' tan(K' L) = kappa
  CHECK(tb.scattering_length() ==
        doctest::Approx(3.04635791809467276).epsilon(1e-7));
  CHECK(tb.count_bound() == 1);
  CHECK(tb.bound_states()[0] ==
        doctest::Approx(-0.119521731074914216).epsilon(1e-7));
}

TEST_CASE("square well phase matches the closed form") {
  SquareWell V(0.35, 1.3);
  TwoBody tb(V, 0.5);
  for (double k : {0.3, 0.7, 1.4})
    CHECK(wrap_pi(tb.phase_shift(k) - squarewell_phase(k, 0.35, 1.3, 0.5)) ==
          doctest::Approx(0.0).epsilon(1e-6));
  // delta(0+) = pi/2 - a k
  const double k0 = 1e-3;
  CHECK(wrap_pi(tb.phase_shift(k0) -
                (3.14159265358979323846 / 2 - tb.scattering_length() * k0)) ==
        doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("contact closed forms") {
  CHECK(contact_scattering_length(-1.0, 0.5) == doctest::Approx(2.0));
  CHECK(contact_binding(-1.0, 0.5) == doctest::Approx(0.25));
  CHECK(contact_scattering_length(0.4, 0.5) == doctest::Approx(-5.0));
}

TEST_CASE("sech-squared reference solution") {
  // eta = 3 is the reflectionless depth: a = L = 2, one even state at -1/4
  CHECK(SechSquaredRef::eta(0.5, 2.0, 0.5) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(SechSquaredRef::scattering_length(0.5, 2.0, 0.5) ==
        doctest::Approx(2.0).epsilon(1e-5));
  const auto E = SechSquaredRef::energies(0.5, 2.0, 0.5);
  REQUIRE(E.size() == 1);
  CHECK(E[0] == doctest::Approx(-0.25).epsilon(1e-14));
  // generic depth, against an independent high-precision evaluation
  CHECK(SechSquaredRef::scattering_length(0.3, 1.7, 0.5) ==
        doctest::Approx(3.3627128919808804).epsilon(1e-12));
  const auto E2 = SechSquaredRef::energies(0.3, 1.7, 0.5);
  REQUIRE(E2.size() == 1);
  CHECK(E2[0] == doctest::Approx(-0.10730719472345054).epsilon(1e-12));
}

TEST_CASE("numerov solver agrees with the sech-squared reference") {
  SechSquared V(0.3, 1.7);
  TwoBody tb(V, 0.5);
  CHECK(tb.scattering_length() ==
        doctest::Approx(3.3627128919808804).epsilon(1e-6));
  CHECK(tb.bound_states()[0] ==
        doctest::Approx(-0.10730719472345054).epsilon(1e-6));
}

TEST_CASE("tune_sech_depth hits the target scattering length") {
  const double D = tune_sech_depth(1.0, 0.5, 2.0);
  CHECK(SechSquaredRef::scattering_length(D, 1.0, 0.5) ==
        doctest::Approx(2.0).epsilon(1e-8));
  // exactly one even dimer must survive the tuning
  CHECK(SechSquaredRef::energies(D, 1.0, 0.5).size() == 1);
  // out-of-reach target
  CHECK_THROWS_AS(tune_sech_depth(1.0, 0.5, 1e9), std::runtime_error);
}

TEST_CASE("effective range expansion is self-consistent") {
  SechSquared V(tune_sech_depth(1.0, 0.5, 2.0), 1.0);
  TwoBody tb(V, 0.5);
  const auto p1 = tb.effective_range(0.05);
  const auto p2 = tb.effective_range(0.03);
  CHECK(p1.a == doctest::Approx(tb.scattering_length()).epsilon(1e-4));
  CHECK(p1.r0 == doctest::Approx(p2.r0).epsilon(0.02));
}

TEST_CASE("tuned gaussian core reproduces helium-like parameters") {
  // shallow dimer regime: target (a, r0) = (208, 14) at mu = 3648.1495
  const double mu2b = 7296.299 / 2;
  const GaussianCore V = tune_gaussian_core(1.0 / 14, 7296.299, mu2b, 208, 14);
  TwoBody tb(V, mu2b);
  const auto p = tb.effective_range(0.05 / V.range());
  CHECK(p.a == doctest::Approx(208.0).epsilon(2e-3));
  CHECK(p.r0 == doctest::Approx(14.0).epsilon(2e-2));
  const auto eb = tb.bound_states();
  REQUIRE(eb.size() == 1);
  // pole of the expansion: kappa = [1 - sqrt(1 - 2 r0/a)]/r0
  const double kap = (1 - std::sqrt(1 - 2 * p.r0 / p.a)) / p.r0;
  CHECK(eb[0] ==
        doctest::Approx(-kap * kap / (2 * mu2b)).epsilon(2e-3));
}

TEST_CASE("confinement map closed-form inverse and round trip") {
  double a3d = 0, aperp = 0;
  ConfinementMap::invert(50.0, 14.0, a3d, aperp);
  CHECK(a3d == doctest::Approx(-73.6638782138017306).epsilon(1e-12));
  CHECK(aperp == doctest::Approx(47.5015175906403471).epsilon(1e-12));
  CHECK(ConfinementMap::a1d(a3d, aperp) == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(ConfinementMap::r0_1d(50.0, aperp) == doctest::Approx(14.0).epsilon(1e-12));

  ConfinementMap::invert(204800.0, 14.0, a3d, aperp);
  CHECK(a3d == doctest::Approx(-377.384836251749335).epsilon(1e-12));
  CHECK(aperp == doctest::Approx(12160.3885032039289).epsilon(1e-12));
}
