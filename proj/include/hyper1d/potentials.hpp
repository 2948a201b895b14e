#pragma once

#include <memory>

namespace hyper1d {

// Even pair potential V(|x|) of finite range: |V| is negligible beyond
// range(). Implementations must be smooth enough for Numerov integration
// except at explicit discontinuities (square well).
class PairPotential {
 public:
  virtual ~PairPotential() = default;
  virtual double operator()(double x) const = 0;
  virtual double range() const = 0;
  // abscissae where V is discontinuous (integration grids align to these)
  virtual double discontinuity() const { return -1.0; }
};

class SquareWell final : public PairPotential {
 public:
  SquareWell(double depth, double width);
  double operator()(double x) const override;
  double range() const override { return width_; }
  double discontinuity() const override { return width_; }
  double depth() const { return depth_; }
  double width() const { return width_; }

 private:
  double depth_, width_;
};

// -D sech^2(x/L)
class SechSquared final : public PairPotential {
 public:
  SechSquared(double depth, double width);
  double operator()(double x) const override;
  double range() const override;
  double depth() const { return depth_; }
  double width() const { return width_; }

 private:
  double depth_, width_;
};

// Soft-core Gaussian two-parameter form
//   V(x) = (L^2/ms) [c - 2d + 4d (L x)^2] exp(-(L x)^2),
// with L an inverse-length scale and ms a mass scale. The (c, d) pair is
// calibrated against target low-energy parameters; see tune().
class GaussianCore final : public PairPotential {
 public:
  GaussianCore(double lambda, double c, double d, double mass_scale);
  double operator()(double x) const override;
  double range() const override;
  double lambda() const { return lambda_; }
  double c() const { return c_; }
  double d() const { return d_; }

 private:
  double lambda_, c_, d_, ms_;
};

} // namespace hyper1d
