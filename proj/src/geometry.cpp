#include "hyper1d/geometry.hpp"

#include "hyper1d/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace hyper1d {

ThreeBodySystem ThreeBodySystem::make(double m1, double m2, double m3) {
  if (!(m1 > 0) || !(m2 > 0) || !(m3 > 0))
    throw std::invalid_argument("ThreeBodySystem: masses must be positive");
  ThreeBodySystem s;
  s.mass = {m1, m2, m3};
  const double m12 = m1 + m2;
  s.mu12 = m1 * m2 / m12;
  s.mu12_3 = m12 * m3 / (m12 + m3);
  s.mu = std::sqrt(s.mu12 * s.mu12_3);

  s.d12 = std::sqrt(s.mu / s.mu12);
  s.phi12 = pi / 2;
  // x2 - x3 = x12_3 - (m1/m12) x12, x3 - x1 = -x12_3 - (m2/m12) x12
  const double c1 = std::sqrt(s.mu / s.mu12_3);
  const double c23 = (m1 / m12) * std::sqrt(s.mu / s.mu12);
  const double c31 = (m2 / m12) * std::sqrt(s.mu / s.mu12);
  s.d23 = std::hypot(c1, c23);
  s.d31 = std::hypot(c1, c31);
  s.phi23 = std::atan2(c23, c1);
  s.phi31 = -std::atan2(c31, c1);
  return s;
}

double ThreeBodySystem::dscale(int pair) const {
  switch (pair) {
    case 0: return d12;
    case 1: return d23;
    case 2: return d31;
  }
  throw std::invalid_argument("ThreeBodySystem: pair index");
}

double ThreeBodySystem::coalescence_angle(int pair) const {
  switch (pair) {
    case 0: return phi12;
    case 1: return phi23;
    case 2: return phi31;
  }
  throw std::invalid_argument("ThreeBodySystem: pair index");
}

double ThreeBodySystem::separation(int pair, double R, double phi) const {
  return dscale(pair) * R * std::abs(std::sin(phi - coalescence_angle(pair)));
}

} // namespace hyper1d
