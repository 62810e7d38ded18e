#include "nanopan/materials.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace nanopan {

void DrudeParams::validate() const {
  if (!(omega_p > 0.0)) throw std::invalid_argument("DrudeParams: omega_p must be > 0");
  if (!(gamma >= 0.0)) throw std::invalid_argument("DrudeParams: gamma must be >= 0");
  if (!(eps_inf >= 1.0)) throw std::invalid_argument("DrudeParams: eps_inf must be >= 1");
}

cplx drude_permittivity(double omega, const DrudeParams& p) {
  p.validate();
  if (!(omega > 0.0)) throw std::domain_error("drude_permittivity: omega must be > 0");
  // eps_inf - wp^2 / (w^2 + i w g), expanded to keep Im(eps) >= 0 exactly.
  const double w2 = omega * omega;
  const double g2 = p.gamma * p.gamma;
  const double wp2 = p.omega_p * p.omega_p;
  const double denom = w2 + g2;
  return {p.eps_inf - wp2 / denom, wp2 * p.gamma / (omega * denom)};
}

double scale_damping(double gamma_room, double conductivity_ratio) {
  if (!(gamma_room >= 0.0)) throw std::domain_error("scale_damping: gamma_room must be >= 0");
  if (!(conductivity_ratio > 0.0))
    throw std::domain_error("scale_damping: conductivity ratio must be > 0");
  return gamma_room * conductivity_ratio;
}

MaterialModel MaterialModel::constant(cplx eps, std::string label) {
  if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag()))
    throw std::invalid_argument("MaterialModel: constant eps must be finite");
  MaterialModel m;
  m.kind_ = MaterialKind::Constant;
  m.eps_ = eps;
  m.label_ = std::move(label);
  return m;
}

MaterialModel MaterialModel::drude(DrudeParams p, std::string label) {
  p.validate();
  MaterialModel m;
  m.kind_ = MaterialKind::Drude;
  m.drude_ = p;
  m.label_ = std::move(label);
  return m;
}

cplx MaterialModel::eps_constant() const {
  if (kind_ != MaterialKind::Constant)
    throw std::logic_error("MaterialModel: not a constant material");
  return eps_;
}

const DrudeParams& MaterialModel::drude_params() const {
  if (kind_ != MaterialKind::Drude)
    throw std::logic_error("MaterialModel: not a Drude material");
  return drude_;
}

cplx MaterialModel::eps_at_omega(double omega) const {
  if (kind_ == MaterialKind::Constant) return eps_;
  return drude_permittivity(omega, drude_);
}

namespace {
std::atomic<bool> g_drude_window_warned{false};
}

cplx permittivity_at(double lambda_vac, const MaterialModel& m) {
  if (!(lambda_vac > 0.0))
    throw std::domain_error("permittivity_at: wavelength must be > 0");
  if (m.kind() == MaterialKind::Constant) return m.eps_constant();
  if ((lambda_vac < kDrudeValidLambdaMin || lambda_vac > kDrudeValidLambdaMax) &&
      !g_drude_window_warned.exchange(true)) {
    std::fprintf(stderr,
                 "nanopan: warning: Drude material '%s' queried at %.1f nm, "
                 "outside the 800-2000 nm fit window\n",
                 m.label().c_str(), lambda_vac * 1e9);
  }
  return drude_permittivity(omega_from_lambda(lambda_vac), m.drude_params());
}

double energy_permittivity(double omega, const MaterialModel& m) {
  if (!(omega > 0.0)) throw std::domain_error("energy_permittivity: omega must be > 0");
  if (m.kind() == MaterialKind::Constant) return m.eps_constant().real();
  const DrudeParams& p = m.drude_params();
  // d(omega eps)/d omega = eps_inf + wp^2 / (omega + i gamma)^2
  const double w2 = omega * omega;
  const double g2 = p.gamma * p.gamma;
  const double denom = (w2 + g2) * (w2 + g2);
  return p.eps_inf + p.omega_p * p.omega_p * (w2 - g2) / denom;
}

}  // namespace nanopan
