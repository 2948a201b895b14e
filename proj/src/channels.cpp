#include "hyper1d/channels.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace hyper1d {

Eigen::VectorXd ChannelModel::potentials(double R) const {
  Eigen::VectorXd lam;
  Eigen::MatrixXd P, Psq;
  eval(R, lam, P, Psq);
  return lam / (2.0 * hypermass() * R * R);
}

namespace {

constexpr std::uint64_t kTableMagic = 0x6831644348544231ull; // "h1dCHTB1"

void put_u64(std::ofstream& f, std::uint64_t v) {
  f.write(reinterpret_cast<const char*>(&v), sizeof v);
}
std::uint64_t get_u64(std::ifstream& f) {
  std::uint64_t v = 0;
  f.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}
void put_vec(std::ofstream& f, const double* p, std::size_t n) {
  f.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n * sizeof(double)));
}
void get_vec(std::ifstream& f, double* p, std::size_t n) {
  f.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n * sizeof(double)));
}

} // namespace

void save_channel_table(const ChannelTable& t, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  const std::uint64_t nr = t.R.size(), n = static_cast<std::uint64_t>(t.nchan());
  put_u64(f, kTableMagic);
  put_u64(f, nr);
  put_u64(f, n);
  put_vec(f, &t.mu, 1);
  put_vec(f, t.R.data(), nr);
  put_vec(f, t.lambda.data(), nr * n);
  for (const auto& m : t.P) put_vec(f, m.data(), n * n);
  for (const auto& m : t.Psq) put_vec(f, m.data(), n * n);
  put_vec(f, t.thresholds.data(), n);
  put_vec(f, t.kappa_inf.data(), n);
  put_vec(f, t.lambda0.data(), n);
  if (!f) throw std::runtime_error("write failed: " + path);
}

ChannelTable load_channel_table(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  if (get_u64(f) != kTableMagic) throw std::runtime_error("bad channel table file: " + path);
  const auto nr = get_u64(f), n = get_u64(f);
  ChannelTable t;
  get_vec(f, &t.mu, 1);
  t.R.resize(nr);
  get_vec(f, t.R.data(), nr);
  t.lambda.resize(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(n));
  get_vec(f, t.lambda.data(), nr * n);
  t.P.assign(nr, Eigen::MatrixXd(n, n));
  t.Psq.assign(nr, Eigen::MatrixXd(n, n));
  for (auto& m : t.P) get_vec(f, m.data(), n * n);
  for (auto& m : t.Psq) get_vec(f, m.data(), n * n);
  t.thresholds.resize(static_cast<Eigen::Index>(n));
  t.kappa_inf.resize(static_cast<Eigen::Index>(n));
  t.lambda0.resize(static_cast<Eigen::Index>(n));
  get_vec(f, t.thresholds.data(), n);
  get_vec(f, t.kappa_inf.data(), n);
  get_vec(f, t.lambda0.data(), n);
  if (!f) throw std::runtime_error("truncated channel table file: " + path);
  return t;
}

int InterpolatedChannelModel::tri(int i, int j, int n) {
  // packed index for i < j in an n x n upper triangle
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

InterpolatedChannelModel::InterpolatedChannelModel(const ChannelTable& t)
    : n_(t.nchan()), mu_(t.mu), thresholds_(t.thresholds), kappa_inf_(t.kappa_inf),
      lambda0_(t.lambda0) {
  const int nr = static_cast<int>(t.R.size());
  if (nr < 4) throw std::invalid_argument("channel table too short to interpolate");
  rmin_ = t.R.front();
  rmax_ = t.R.back();
  lam_at_rmin_ = t.lambda.row(0).transpose();
  std::vector<double> x(nr);
  for (int k = 0; k < nr; ++k) x[k] = std::log(t.R[k]);

  std::vector<double> y(nr);
  for (int nu = 0; nu < n_; ++nu) {
    for (int k = 0; k < nr; ++k) y[k] = t.lambda(k, nu);
    lam_.emplace_back(x, y);
  }
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      for (int k = 0; k < nr; ++k) y[k] = t.R[k] * t.P[k](i, j);
      p_.emplace_back(x, y);
    }
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) {
      for (int k = 0; k < nr; ++k) y[k] = t.R[k] * t.R[k] * t.Psq[k](i, j);
      s_.emplace_back(x, y);
    }
}

void InterpolatedChannelModel::eval(double R, Eigen::VectorXd& lambda, Eigen::MatrixXd& P,
                                    Eigen::MatrixXd& Psq) const {
  lambda.resize(n_);
  P.setZero(n_, n_);
  Psq.setZero(n_, n_);
  if (!(R > 0)) throw std::invalid_argument("channel eval needs R > 0");

  // Small R: channel functions freeze to the free-wedge limit, so couplings
  // vanish as P ~ R, Psq ~ R^2 and lambda approaches lambda0 quadratically.
  if (R < rmin_) {
    const double w = (R / rmin_) * (R / rmin_);
    for (int nu = 0; nu < n_; ++nu)
      lambda[nu] = lambda0_[nu] + (lam_at_rmin_[nu] - lambda0_[nu]) * w;
    const double x0 = std::log(rmin_);
    int us = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j, ++us) {
        const double v = s_[us](x0) / (rmin_ * rmin_) * w;
        Psq(i, j) = Psq(j, i) = v;
      }
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        const double v = p_[tri(i, j, n_)](x0) / rmin_ * (R / rmin_);
        P(i, j) = v;
        P(j, i) = -v;
      }
    return;
  }

  // Above the table the scaled variables are held at their end values;
  // callers should keep matching radii inside the tabulated range.
  const double x = std::log(std::min(R, rmax_));
  for (int nu = 0; nu < n_; ++nu) lambda[nu] = lam_[nu](x);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      const double v = p_[tri(i, j, n_)](x) / R;
      P(i, j) = v;
      P(j, i) = -v;
    }
  int us = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j, ++us) {
      const double v = s_[us](x) / (R * R);
      Psq(i, j) = Psq(j, i) = v;
    }
}

AugmentedChannelModel::AugmentedChannelModel(std::shared_ptr<const ChannelModel> base,
                                             std::function<double(double)> v3)
    : base_(std::move(base)), v3_(std::move(v3)) {
  if (!base_ || !v3_) throw std::invalid_argument("augmented model needs base and term");
}

void AugmentedChannelModel::eval(double R, Eigen::VectorXd& lambda, Eigen::MatrixXd& P,
                                 Eigen::MatrixXd& Psq) const {
  base_->eval(R, lambda, P, Psq);
  lambda.array() += 2.0 * hypermass() * R * R * v3_(R);
}

} // namespace hyper1d
