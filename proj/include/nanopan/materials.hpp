#pragma once

#include <string>

#include "nanopan/constants.hpp"

namespace nanopan {

// Everything below uses the e^{-i omega t} time convention: lossy media have
// Im(eps) > 0 and decaying eigenfrequencies have Im(omega) < 0.

/// Free-electron (Drude) dispersion parameters.
struct DrudeParams {
  double eps_inf = 1.0;  // background permittivity, >= 1
  double omega_p = 0.0;  // plasma frequency [rad/s], > 0
  double gamma = 0.0;    // damping collision frequency [rad/s], >= 0

  void validate() const;
};

/// eps(omega) = eps_inf - omega_p^2 / (omega (omega + i gamma)).
cplx drude_permittivity(double omega, const DrudeParams& p);

/// Rescale the room-temperature damping rate by a conductivity ratio
/// sigma_room / sigma_cold (cryogenic ratios are < 1, reducing gamma).
double scale_damping(double gamma_room, double conductivity_ratio);

enum class MaterialKind { Constant, Drude };

/// Dispersive or constant complex permittivity of one cavity region.
class MaterialModel {
 public:
  static MaterialModel constant(cplx eps, std::string label);
  static MaterialModel drude(DrudeParams p, std::string label);

  MaterialKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  cplx eps_constant() const;
  const DrudeParams& drude_params() const;

  /// Permittivity at a real angular frequency [rad/s].
  cplx eps_at_omega(double omega) const;

 private:
  MaterialModel() = default;
  MaterialKind kind_ = MaterialKind::Constant;
  cplx eps_{1.0, 0.0};
  DrudeParams drude_{};
  std::string label_;
};

/// Wavelength front-end: dispatches with omega = 2 pi c / lambda for the
/// Drude kind, returns the stored eps verbatim for the constant kind.
/// Drude queries outside the documented 800-2000 nm fit window print a
/// one-time warning to stderr.
cplx permittivity_at(double lambda_vac, const MaterialModel& m);

/// Dispersive electric-energy coefficient Re(d(omega eps)/d omega); reduces
/// to Re(eps) for constant materials. Used by the mode-volume weighting in
/// metal cells where the literal eps is negative.
double energy_permittivity(double omega, const MaterialModel& m);

// Documented Drude fit window (vacuum wavelength).
inline constexpr double kDrudeValidLambdaMin = 800e-9;
inline constexpr double kDrudeValidLambdaMax = 2000e-9;

}  // namespace nanopan
