#pragma once

// Atomic units throughout: hbar = 1, energies in hartree, lengths in bohr.

namespace hyper1d {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double euler_gamma = 0.57721566490153286061;

// Riemann zeta values entering the transverse-confinement map.
inline constexpr double zeta_half = -1.46035450880958681;
inline constexpr double zeta_three_half = 2.61237534868548834;

// Dimensionless slope of the long-range hyperradial potential in the
// window r0 << R << |a| for three identical bosons: U(R) = slope/(2 mu a R).
inline constexpr double universal_slope = -2.05227739617165198;

} // namespace hyper1d
