#pragma once

#include <array>

namespace hyper1d {

enum class Parity { even, odd };
enum class Statistics { boson, fermion };

// Mass-scaled Jacobi/hyperspherical frame for three particles on a line.
//
// Jacobi pair (x12, x12_3) with x12 = x1 - x2 and x12_3 the distance from the
// pair center of mass to particle 3. Hyperspherical map
//   x12 = sqrt(mu/mu12) R cos(phi),  x12_3 = sqrt(mu/mu12_3) R sin(phi),
// so each interparticle separation is |xi - xj| = d_ij R |sin(phi - phi_ij)|.
struct ThreeBodySystem {
  std::array<double, 3> mass;
  double mu12;    // pair reduced mass
  double mu12_3;  // atom-pair reduced mass
  double mu;      // hyperradial mass sqrt(mu12 * mu12_3)
  double d12, d23, d31;
  double phi12, phi23, phi31;

  static ThreeBodySystem make(double m1, double m2, double m3);

  // |x_i - x_j| at hyperradius R, hyperangle phi (pair index 0:12, 1:23, 2:31)
  double separation(int pair, double R, double phi) const;
  double dscale(int pair) const;
  double coalescence_angle(int pair) const;
};

} // namespace hyper1d
