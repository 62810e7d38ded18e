#pragma once

#include <complex>

namespace nanopan {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kC0 = 299792458.0;         // vacuum speed of light [m/s]
inline constexpr double kEps0 = 8.8541878128e-12;  // vacuum permittivity [F/m]

/// Angular frequency [rad/s] of a vacuum wavelength [m].
inline double omega_from_lambda(double lambda_vac) {
  return 2.0 * kPi * kC0 / lambda_vac;
}

/// Vacuum wavelength [m] of an angular frequency [rad/s].
inline double lambda_from_omega(double omega) {
  return 2.0 * kPi * kC0 / omega;
}

}  // namespace nanopan
