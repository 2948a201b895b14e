#include "hyper1d/potentials.hpp"

#include <cmath>
#include <stdexcept>

namespace hyper1d {

SquareWell::SquareWell(double depth, double width)
    : depth_(depth), width_(width) {
  if (!(width > 0)) throw std::invalid_argument("SquareWell: width > 0");
}

double SquareWell::operator()(double x) const {
  const double ax = std::abs(x);
  if (std::abs(ax - width_) <= 1e-12 * width_)
    return -depth_ / 2;  // integration grids land a node here; use the mean
  return ax < width_ ? -depth_ : 0.0;
}

SechSquared::SechSquared(double depth, double width)
    : depth_(depth), width_(width) {
  if (!(width > 0)) throw std::invalid_argument("SechSquared: width > 0");
}

double SechSquared::operator()(double x) const {
  const double c = std::cosh(x / width_);
  return -depth_ / (c * c);
}

double SechSquared::range() const {
  // sech^2 ~ 4 exp(-2x/L); below 1e-14 of the depth past ~17 L
  return 17.0 * width_;
}

GaussianCore::GaussianCore(double lambda, double c, double d, double mass_scale)
    : lambda_(lambda), c_(c), d_(d), ms_(mass_scale) {
  if (!(lambda > 0) || !(mass_scale > 0))
    throw std::invalid_argument("GaussianCore: lambda, mass_scale > 0");
}

double GaussianCore::operator()(double x) const {
  const double u = lambda_ * x, u2 = u * u;
  return (lambda_ * lambda_ / ms_) * (c_ - 2 * d_ + 4 * d_ * u2) * std::exp(-u2);
}

double GaussianCore::range() const {
  // exp(-u^2) < 1e-14 beyond u ~ 5.7; keep margin for the polynomial factor
  return 8.0 / lambda_;
}

} // namespace hyper1d
