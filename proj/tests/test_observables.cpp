#include <doctest.h>

#include "hyper1d/contact_model.hpp"
#include "hyper1d/observables.hpp"

#include <cmath>
#include <complex>
#include <memory>

using namespace hyper1d;

namespace {

RMatrixPropagator::Scatter make_scatter(double E, std::vector<int> open,
                                         const Eigen::MatrixXcd& S) {
  RMatrixPropagator::Scatter s;
  s.E = E;
  s.open = std::move(open);
  s.k = Eigen::VectorXd::Ones(S.rows());
  s.K = Eigen::MatrixXd::Zero(S.rows(), S.cols());
  s.S = S;
  return s;
}

} // namespace

TEST_CASE("recombination probability picks dimer -> lowest open breakup") {
  Eigen::MatrixXcd S(3, 3);
  S << std::complex<double>(0.6, 0.0), std::complex<double>(0.0, 0.3),
      std::complex<double>(0.1, 0.0), std::complex<double>(0.0, 0.3),
      std::complex<double>(0.7, 0.0), std::complex<double>(0.2, 0.0),
      std::complex<double>(0.1, 0.0), std::complex<double>(0.2, 0.0),
      std::complex<double>(0.9, 0.0);

  const auto s = make_scatter(0.2, {0, 1, 2}, S);
  CHECK(recombination_probability(s) == doctest::Approx(0.09).epsilon(1e-13));

  // dimer listed later in the open set
  const auto s2 = make_scatter(0.2, {2, 0, 1}, S);
  CHECK(recombination_probability(s2, 0) ==
        doctest::Approx(std::norm(S(1, 0))).epsilon(1e-13));
  // a different dimer label selects the first channel that is not it
  CHECK(recombination_probability(s2, 2) ==
        doctest::Approx(std::norm(S(0, 1))).epsilon(1e-13));
}

TEST_CASE("recombination probability requires both families open") {
  Eigen::MatrixXcd S1 = Eigen::MatrixXcd::Identity(1, 1);
  const auto only_dimer = make_scatter(-0.1, {0}, S1);
  CHECK_THROWS_AS((void)recombination_probability(only_dimer),
                  std::invalid_argument);
  Eigen::MatrixXcd S2 = Eigen::MatrixXcd::Identity(2, 2);
  const auto no_dimer = make_scatter(0.1, {1, 2}, S2);
  CHECK_THROWS_AS((void)recombination_probability(no_dimer),
                  std::invalid_argument);
}

TEST_CASE("rate chain from probability to K3") {
  const double p = 0.04, E = 0.18, mu = 0.6;
  Eigen::MatrixXcd S(2, 2);
  const double t = std::sqrt(1 - p);
  S << t, std::complex<double>(0, std::sqrt(p)),
      std::complex<double>(0, std::sqrt(p)), t;
  const auto s = make_scatter(E, {0, 1}, S);

  const auto r = rate_k3(s, mu);
  CHECK(r.E == E);
  CHECK(r.k == doctest::Approx(std::sqrt(2 * mu * E)).epsilon(1e-14));
  CHECK(r.prob == doctest::Approx(p).epsilon(1e-13));
  CHECK(r.sigma == doctest::Approx(6 * p / r.k).epsilon(1e-13));
  CHECK(r.K3 == doctest::Approx(6 * p / mu).epsilon(1e-13));

  CHECK(recombination_sigma(2.0, 0.5, 4.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)recombination_sigma(0.0, 0.5), std::invalid_argument);
  const auto below = make_scatter(-0.05, {0, 1}, S);
  CHECK_THROWS_AS((void)rate_k3(below, mu), std::invalid_argument);
}

TEST_CASE("validated bound states reproduce the single-box values") {
  ContactChannelModel m(1.0, -1.0, 2, Parity::even);
  const auto levels = bound_states(m, 1e-3, 30.0, 1, 250);
  REQUIRE(levels.size() == 1);
  // only levels below the lowest threshold qualify
  CHECK(levels[0] < -0.25);
  const auto direct = bound_state_energies(m, 1e-3, 60.0, 300, 1);
  CHECK(levels[0] == doctest::Approx(direct[0]).epsilon(1e-4));
}

TEST_CASE("undersized box is reported, not returned") {
  ContactChannelModel m(1.0, -1.0, 2, Parity::even);
  CHECK_THROWS_AS((void)bound_states(m, 1e-3, 3.0, 1, 120),
                  std::runtime_error);
}

TEST_CASE("atom-dimer scattering length from an exact effective-range line") {
  // k tan(delta) = 1/a + (r/2) k^2 with a = 10, r = 0.5
  std::vector<std::pair<double, double>> pts;
  for (double k : {0.01, 0.02, 0.03, 0.05})
    pts.emplace_back(k, std::atan((0.1 + 0.25 * k * k) / k));
  CHECK(atom_dimer_scattering_length(pts) == doctest::Approx(10.0).epsilon(1e-10));

  // unsorted input is sorted internally
  std::swap(pts[0], pts[3]);
  CHECK(atom_dimer_scattering_length(pts) == doctest::Approx(10.0).epsilon(1e-10));
}

TEST_CASE("atom-dimer fit rejects contaminated samples") {
  std::vector<std::pair<double, double>> pts;
  pts.emplace_back(0.01, std::atan((0.1 + 0.25 * 1e-4) / 0.01));
  pts.emplace_back(0.02, std::atan((0.1 + 0.25 * 4e-4) / 0.02));
  pts.emplace_back(0.05, std::atan(5.0));  // far off the low-k line
  CHECK_THROWS_AS((void)atom_dimer_scattering_length(pts), std::runtime_error);

  pts.pop_back();
  CHECK_THROWS_AS((void)atom_dimer_scattering_length(pts),
                  std::invalid_argument);  // needs three samples
  pts.emplace_back(-0.01, 0.3);
  CHECK_THROWS_AS((void)atom_dimer_scattering_length(pts),
                  std::invalid_argument);  // momenta must be positive
}

TEST_CASE("energy scan is independent of the thread count") {
  auto m = std::make_shared<ContactChannelModel>(1.0, -1.0, 3, Parity::even);
  RMatrixPropagator prop(m, 60.0, 0.6);
  const std::vector<double> energies = {-0.2, -0.05, 0.12, 0.31};

  const auto a = scatter_scan(prop, energies, 1);
  const auto b = scatter_scan(prop, energies, 2);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].E == b[i].E);
    REQUIRE(a[i].open == b[i].open);
    CHECK((a[i].S - b[i].S).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a[i].K - b[i].K).cwiseAbs().maxCoeff() == 0.0);
  }
}
