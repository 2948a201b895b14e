#pragma once

#include "hyper1d/geometry.hpp"

#include <vector>

namespace hyper1d {

// kappa*tan(kappa*theta) and kappa*cot(kappa*theta) continued analytically
// through lambda = kappa^2 <= 0 (hyperbolic branch). Odd in theta, entire in
// lambda between their poles.
double tan_like(double lambda, double theta);
double cot_like(double lambda, double theta);

// cos(kappa*theta) and sin(kappa*theta)/kappa continued through lambda <= 0;
// both are entire in lambda.
double cos_like(double lambda, double theta);
double sinc_like(double lambda, double theta);

// Angular eigenvalues lambda = 2 mu R^2 U for three identical particles with
// a pair square well of angular strength beta2 = 2 mu R^2 V0, reduced to the
// wedge [pi/2, 2pi/3]; the well occupies [pi/2, phib]. Lowest `count` values.
std::vector<double> squarewell_wedge_spectrum(double beta2, double phib,
                                              Statistics st, Parity pa,
                                              int count);

// Angular eigenvalues for two identical particles (1,2) plus a distinct
// third, all pair interactions the single contact strength g, on the wedge
// [0, pi/2]: derivative kink at phi23, pair contact at the pi/2 edge.
// Returns all eigenvalues with lambda < kappa_max^2 (including negative
// ones), ascending.
std::vector<double> two_identical_contact_spectrum(const ThreeBodySystem& sys,
                                                   double g, double R,
                                                   Statistics st, Parity pa,
                                                   double kappa_max);

// Large-R limits of the positive branches: merged families
//   n*pi/(pi/2 - phi23)  and  {(n+1/2) or n}*pi/phi23
// depending on symmetry. First `count` values, ascending.
std::vector<double> two_identical_contact_asymptotes(const ThreeBodySystem& sys,
                                                     Statistics st, Parity pa,
                                                     int count);

} // namespace hyper1d
