#include <doctest.h>

#include "hyper1d/channels.hpp"
#include "hyper1d/contact_model.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>

using namespace hyper1d;

namespace {

// small synthetic table with smooth entries
ChannelTable demo_table(int n = 3, int nR = 40) {
  ChannelTable t;
  t.mu = 0.6;
  t.lambda.resize(nR, n);
  t.thresholds = Eigen::VectorXd::Zero(n);
  t.thresholds(0) = -0.5;
  t.kappa_inf = Eigen::VectorXd::Zero(n);
  t.kappa_inf(1) = 3;
  t.kappa_inf(2) = 9;
  t.lambda0 = Eigen::VectorXd::Zero(n);
  t.lambda0(1) = 36;
  t.lambda0(2) = 144;
  for (int r = 0; r < nR; ++r) {
    const double R = 0.5 * std::pow(1.15, r);
    t.R.push_back(R);
    for (int i = 0; i < n; ++i)
      t.lambda(r, i) = t.lambda0(i) + (i - 1) * R * R / (1 + R);
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        P(i, j) = 0.3 * (i + 1) / ((j + 1) * (1 + R * R));
        P(j, i) = -P(i, j);
        S(i, j) = S(j, i) = 0.01 / ((i + j + 1) * (1 + R * R * R));
      }
    for (int i = 0; i < n; ++i) S(i, i) = -0.05 / (1 + R * R);
    t.P.push_back(P);
    t.Psq.push_back(S);
  }
  return t;
}

struct TempFile {
  std::string path;
  TempFile() {
    path = (std::filesystem::temp_directory_path() /
            ("h1d_tab_" + std::to_string(std::random_device{}()) + ".bin"))
               .string();
  }
  ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("channel table binary round trip") {
  const ChannelTable t = demo_table();
  TempFile f;
  save_channel_table(t, f.path);
  const ChannelTable u = load_channel_table(f.path);

  CHECK(u.mu == t.mu);
  REQUIRE(u.R.size() == t.R.size());
  for (size_t r = 0; r < t.R.size(); ++r) CHECK(u.R[r] == t.R[r]);
  CHECK((u.lambda - t.lambda).cwiseAbs().maxCoeff() == 0.0);
  for (size_t r = 0; r < t.P.size(); ++r) {
    CHECK((u.P[r] - t.P[r]).cwiseAbs().maxCoeff() == 0.0);
    CHECK((u.Psq[r] - t.Psq[r]).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK((u.thresholds - t.thresholds).cwiseAbs().maxCoeff() == 0.0);
  CHECK((u.kappa_inf - t.kappa_inf).cwiseAbs().maxCoeff() == 0.0);
  CHECK((u.lambda0 - t.lambda0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("loading rejects foreign files") {
  TempFile f;
  {
    std::ofstream out(f.path, std::ios::binary);
    out << "definitely not a channel table";
  }
  CHECK_THROWS_AS((void)load_channel_table(f.path), std::runtime_error);
  CHECK_THROWS_AS((void)load_channel_table("/nonexistent/nowhere.bin"),
                  std::runtime_error);
}

TEST_CASE("interpolation reproduces table nodes and stays smooth between") {
  const ChannelTable t = demo_table();
  InterpolatedChannelModel m(t);

  Eigen::VectorXd lam;
  Eigen::MatrixXd P, Psq;
  const int r = 17;
  m.eval(t.R[r], lam, P, Psq);
  for (int i = 0; i < 3; ++i)
    CHECK(lam(i) == doctest::Approx(t.lambda(r, i)).epsilon(1e-12));
  CHECK((P - t.P[r]).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((Psq - t.Psq[r]).cwiseAbs().maxCoeff() < 1e-12);

  // midpoint value bracketed by the nodes for these monotone entries
  const double Rm = std::sqrt(t.R[17] * t.R[18]);
  m.eval(Rm, lam, P, Psq);
  CHECK(lam(2) > std::min(t.lambda(17, 2), t.lambda(18, 2)));
  CHECK(lam(2) < std::max(t.lambda(17, 2), t.lambda(18, 2)));
}

TEST_CASE("beyond the table lambda is held and P decays") {
  const ChannelTable t = demo_table();
  InterpolatedChannelModel m(t);
  const double Rmax = t.R.back();

  Eigen::VectorXd lam_end, lam_far;
  Eigen::MatrixXd P_end, Psq_end, P_far, Psq_far;
  m.eval(Rmax, lam_end, P_end, Psq_end);
  m.eval(4 * Rmax, lam_far, P_far, Psq_far);
  for (int i = 0; i < 3; ++i)
    CHECK(lam_far(i) == doctest::Approx(lam_end(i)).epsilon(1e-12));
  // scaled storage: P = p(x_end)/R, Psq = s(x_end)/R^2
  CHECK(P_far(0, 1) == doctest::Approx(P_end(0, 1) / 4).epsilon(1e-12));
  CHECK(Psq_far(0, 0) == doctest::Approx(Psq_end(0, 0) / 16).epsilon(1e-12));
}

TEST_CASE("below the table the free-wedge law applies") {
  const ChannelTable t = demo_table();
  InterpolatedChannelModel m(t);
  const double Rmin = t.R.front();

  Eigen::VectorXd lam;
  Eigen::MatrixXd P, Psq;
  m.eval(Rmin / 8, lam, P, Psq);
  for (int i = 0; i < 3; ++i) {
    const double expect =
        t.lambda0(i) + (t.lambda(0, i) - t.lambda0(i)) / 64.0;
    CHECK(lam(i) == doctest::Approx(expect).epsilon(1e-10).scale(1e-12));
  }
  Eigen::VectorXd lam2;
  Eigen::MatrixXd P2, Psq2;
  m.eval(Rmin / 4, lam2, P2, Psq2);
  CHECK(P(0, 1) == doctest::Approx(P2(0, 1) / 2).epsilon(1e-10));
  CHECK(Psq(0, 0) == doctest::Approx(Psq2(0, 0) / 4).epsilon(1e-10));
}

TEST_CASE("potentials helper divides out the hyperradial scale") {
  ContactChannelModel m(1.0, -1.0, 3, Parity::even);
  const double R = 7.0;
  Eigen::VectorXd lam;
  Eigen::MatrixXd P, Psq;
  m.eval(R, lam, P, Psq);
  const Eigen::VectorXd U = m.potentials(R);
  for (int i = 0; i < 3; ++i)
    CHECK(U(i) ==
          doctest::Approx(lam(i) / (2 * m.hypermass() * R * R)).epsilon(1e-13));
}

TEST_CASE("three-body force shifts curves diagonally") {
  auto base = std::make_shared<ContactChannelModel>(1.0, -1.0, 3, Parity::even);
  const double V0 = 0.2, L3 = 1.5;
  auto v3 = [=](double R) { return V0 * std::exp(-R * R / (L3 * L3)); };
  AugmentedChannelModel m(base, v3);

  CHECK(m.nchan() == 3);
  CHECK(m.hypermass() == base->hypermass());
  CHECK((m.thresholds() - base->thresholds()).cwiseAbs().maxCoeff() == 0.0);

  for (double R : {0.7, 2.0, 9.0}) {
    Eigen::VectorXd lam0v, lam1v;
    Eigen::MatrixXd P0, S0, P1, S1;
    base->eval(R, lam0v, P0, S0);
    m.eval(R, lam1v, P1, S1);
    const double shift = 2 * m.hypermass() * R * R * v3(R);
    for (int i = 0; i < 3; ++i)
      CHECK(lam1v(i) == doctest::Approx(lam0v(i) + shift).epsilon(1e-12));
    CHECK((P1 - P0).cwiseAbs().maxCoeff() == 0.0);
    CHECK((S1 - S0).cwiseAbs().maxCoeff() == 0.0);
  }
}
