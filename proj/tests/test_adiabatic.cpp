#include <doctest.h>

#include "hyper1d/adiabatic.hpp"
#include "hyper1d/angular_roots.hpp"
#include "hyper1d/contact_model.hpp"
#include "hyper1d/twobody.hpp"

#include <cmath>
#include <memory>

using namespace hyper1d;

TEST_CASE("free-wedge spectrum per symmetry block") {
  AngularModelSpec s;  // identical, no interaction
  s.stats = Statistics::boson;
  s.parity = Parity::even;
  Eigen::VectorXd l = free_wedge_lambda0(s, 3);
  CHECK(l(0) == doctest::Approx(0.0));
  CHECK(l(1) == doctest::Approx(36.0));
  CHECK(l(2) == doctest::Approx(144.0));

  s.parity = Parity::odd;
  l = free_wedge_lambda0(s, 3);
  CHECK(l(0) == doctest::Approx(9.0));
  CHECK(l(1) == doctest::Approx(81.0));

  // fermion pair edge is Dirichlet; the symmetry axis carries the combined
  // exchange*inversion character, so fermion-even is D-D and fermion-odd D-N.
  s.stats = Statistics::fermion;
  s.parity = Parity::even;
  l = free_wedge_lambda0(s, 2);
  CHECK(l(0) == doctest::Approx(36.0));
  CHECK(l(1) == doctest::Approx(144.0));

  s.parity = Parity::odd;
  l = free_wedge_lambda0(s, 2);
  CHECK(l(0) == doctest::Approx(9.0));
  CHECK(l(1) == doctest::Approx(81.0));
}

TEST_CASE("solver approaches the free wedge as g -> 0") {
  AngularModelSpec s;
  s.g = -1e-10;
  AngularSolver solver(s, 3, 64);
  const auto sol = solver.solve(1.7);
  CHECK(std::abs(sol.lambda(0)) < 1e-8);
  CHECK(sol.lambda(1) == doctest::Approx(36.0).epsilon(1e-8));
  CHECK(sol.lambda(2) == doctest::Approx(144.0).epsilon(1e-7));
}

TEST_CASE("contact solver matches the transcendental model") {
  AngularModelSpec s;
  s.g = -1.0;
  AngularSolver solver(s, 4, 64);
  ContactChannelModel ref(1.0, -1.0, 4, Parity::even);

  for (double R : {0.5, 2.0, 10.0}) {
    const auto sol = solver.solve(R);
    Eigen::VectorXd lam;
    Eigen::MatrixXd P, Psq;
    ref.eval(R, lam, P, Psq);
    for (int i = 0; i < 4; ++i)
      CHECK(sol.lambda(i) == doctest::Approx(lam(i)).epsilon(1e-8));
  }
}

TEST_CASE("differenced couplings match the closed form") {
  AngularModelSpec s;
  s.g = -1.0;
  AngularSolver solver(s, 4, 64);
  ContactChannelModel ref(1.0, -1.0, 4, Parity::even);

  const double R = 2.0;
  Eigen::VectorXd lam, lam_ref;
  Eigen::MatrixXd P, Psq, P_ref, Psq_ref;
  solver.couplings(R, lam, P, Psq);
  ref.eval(R, lam_ref, P_ref, Psq_ref);

  // the sign gauge of each channel function is arbitrary; compare magnitudes
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(P(i, j)) ==
            doctest::Approx(std::abs(P_ref(i, j))).epsilon(1e-5).scale(1.0));
      CHECK(std::abs(Psq(i, j)) ==
            doctest::Approx(std::abs(Psq_ref(i, j))).epsilon(1e-5).scale(1.0));
    }
  CHECK((P + P.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((Psq - Psq.transpose()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("channel functions are orthonormal under the mesh quadrature") {
  AngularModelSpec s;
  s.g = -1.0;
  AngularSolver solver(s, 4, 64);
  const auto sol = solver.solve(2.0);

  std::vector<double> xs, ws;
  solver.quadrature(*sol.basis, xs, ws);
  Eigen::MatrixXd vals;
  sol.eval(xs, vals);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(4, 4);
  for (size_t q = 0; q < xs.size(); ++q)
    gram += ws[q] * vals.row(q).transpose() * vals.row(q);
  CHECK((gram - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("two-identical contact block matches the root finder") {
  AngularModelSpec s;
  s.m1 = 1;
  s.m2 = 1;
  s.m3 = 0.5;
  s.g = 0.8;
  AngularSolver solver(s, 5, 80);
  const double R = 3.0;
  const auto sol = solver.solve(R);

  const ThreeBodySystem sys = ThreeBodySystem::make(1, 1, 0.5);
  const auto lam_ref = two_identical_contact_spectrum(
      sys, 0.8, R, Statistics::boson, Parity::even, 9.0);
  REQUIRE(lam_ref.size() >= 5);
  for (int i = 0; i < 5; ++i)
    CHECK(sol.lambda(i) ==
          doctest::Approx(lam_ref[i]).epsilon(1e-6).scale(1e-6));
}

TEST_CASE("finite-range lowest curve reaches the dimer plateau") {
  // sech^2 pair well with one bound state at E = -B2
  auto pot = std::make_shared<SechSquared>(0.5, 2.0);
  TwoBody tb(*pot, 0.5);
  const auto bound = tb.bound_states();
  REQUIRE(bound.size() == 1);
  const double B2 = -bound[0];

  AngularModelSpec s;
  s.pot = pot;
  AngularSolver solver(s, 3, 64);
  const double R = 60.0;
  const auto sol = solver.solve(R);
  const double mu = solver.system().mu;
  const double U1 = sol.lambda(0) / (2 * mu * R * R);
  CHECK(U1 == doctest::Approx(-B2).epsilon(5e-3));
  // upper channels are free up to 1/R^2 corrections
  CHECK(sol.lambda(1) > 0.0);
}

TEST_CASE("tabulated model round trip for a finite-range interaction") {
  auto pot = std::make_shared<SechSquared>(0.5, 2.0);
  AngularModelSpec s;
  s.pot = pot;
  AngularSolver solver(s, 3, 48);

  std::vector<double> grid;
  for (double R = 0.4; R <= 80.0 * 1.0001; R *= 1.12) grid.push_back(R);

  TwoBody tb(*pot, 0.5);
  const double B2 = -tb.bound_states()[0];
  Eigen::VectorXd thr(3), kinf(3), lam0(3);
  thr << -B2, 0, 0;
  kinf << 0, 6, 12;
  lam0 = free_wedge_lambda0(s, 3);

  const ChannelTable table = build_channel_table(solver, grid, thr, kinf, lam0);
  InterpolatedChannelModel model(table);

  CHECK(model.nchan() == 3);
  CHECK(model.rmin() == doctest::Approx(grid.front()));
  CHECK(model.rmax() == doctest::Approx(grid.back()));

  // on-grid and between-grid agreement with a fresh solve
  for (double R : {grid[10], 0.5 * (grid[12] + grid[13])}) {
    Eigen::VectorXd lam;
    Eigen::MatrixXd P, Psq;
    model.eval(R, lam, P, Psq);
    const auto sol = solver.solve(R);
    for (int i = 0; i < 3; ++i)
      CHECK(lam(i) == doctest::Approx(sol.lambda(i)).epsilon(2e-5).scale(1e-8));
    CHECK((P + P.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }

  // below the table the free-wedge limit takes over quadratically
  Eigen::VectorXd lam;
  Eigen::MatrixXd P, Psq;
  model.eval(0.04, lam, P, Psq);
  for (int i = 0; i < 3; ++i)
    CHECK(lam(i) == doctest::Approx(lam0(i)).epsilon(1e-3).scale(10.0));
}
