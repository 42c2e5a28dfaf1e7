// Symmetric Quanton-Detecton System: two coupled two-way interferometers,
// each acting as the other's which-way detector, entangled through a
// conditional phase Phi. Closed forms for qualities, distinguishabilities,
// visibilities, the stringency ratio f_Q, entropy and reciprocity relations,
// and a bridge into the generic engine for cross-validation.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "duality/engine.hpp"
#include "duality/qmath.hpp"

namespace duality::sqds {

using duality::engine::Residual;

/// Both subsystems live in the x-z plane of the Bloch sphere: the y
/// components of s_Q0 and s_D0 must vanish.
struct SqdsConfig {
  BlochVector s_Q0;
  BlochVector s_D0;
  double phi_Q = 0.0;  // Quanton phase shift
  double phi_D = 0.0;  // Detecton phase shift
  double Phi = 0.0;    // entangling phase
};

void validate(const SqdsConfig& cfg);

struct SqdsReport {
  double P_Q = 0.0, P_D = 0.0;    // predictabilities |s_x0|
  double V_Q0 = 0.0, V_D0 = 0.0;  // initial visibilities |s_z0|
  double Q_D = 0.0, Q_Q = 0.0;    // qualities as which-way detectors
  double R_Q = 0.0;               // Bloch magnitude of w+ s+ - w- s-
  double D_Q = 0.0, D_D = 0.0;    // distinguishabilities Max{P, R}
  double V_Q = 0.0, V_D = 0.0;    // degraded visibilities
  std::optional<double> f_Q;      // stringency ratio; empty at D_Q -> 1
  cplx C;                         // contrast factor seen by the Quanton
  bool r_exceeds_p = false;       // branch flag: R_Q > P_Q
  std::map<std::string, Residual> residuals;
};

/// Way-dependent Detecton phase shifters U± = exp[(i/2)(phi_D ± Phi) sigma_z].
std::pair<Mat2, Mat2> detecton_phase_unitaries(double phi_D, double Phi);

/// Detecton state after its own beam splitter: Bloch (s_z0, 0, -s_x0).
Mat2 detecton_after_bs(const BlochVector& s_D0);

/// s_D^± = (s_z0 cos f±, s_z0 sin f±, -s_x0) with f± = phi_D ± Phi.
BlochVector detecton_way_bloch(const SqdsConfig& cfg, int way);

/// Q_D = V_D0 |sin Phi|, cross-checked against |s_D^+ - s_D^-| / 2.
double quality_detecton(const SqdsConfig& cfg);
/// Q_Q = V_Q0 |sin Phi| (label swap of quality_detecton).
double quality_quanton(const SqdsConfig& cfg);

/// R_Q, evaluated through both closed forms and cross-checked:
///   sqrt(P_Q^2 P_D^2 + V_D0^2 (sin^2 Phi + P_Q^2 cos^2 Phi))
///   sqrt(P_Q^2 |s_D0|^2 + Q_D^2 (1 - P_Q^2)).
double r_q(const SqdsConfig& cfg);

/// D_Q = Max{P_Q, R_Q}.
double distinguishability_q(const SqdsConfig& cfg);

/// f_Q = (1-P_Q^2)(1-Q_D^2)/(1-D_Q^2), cross-checked on the R_Q > P_Q branch
/// against xi/(g+xi) with xi = (1-P_Q^2)(1-Q_D^2), g = 1 - R_Q^2 - xi.
/// Throws std::domain_error when D_Q >= 1 - 1e-10.
double f_q(const SqdsConfig& cfg);

/// C = cos Phi + i s_Dx0 sin Phi.
cplx contrast(const SqdsConfig& cfg);
/// V_Q = V_Q0 sqrt(cos^2 Phi + P_D^2 sin^2 Phi); equals |C| V_Q0.
double visibility_quanton(const SqdsConfig& cfg);
/// Label swap of visibility_quanton.
double visibility_detecton(const SqdsConfig& cfg);

/// Signed residuals of the linear-entropy relations:
///   entropy_gain            dG_Q vs V_Q0^2 (1-P_D^2) sin^2 Phi / 2
///   entropy_gain_normalized 2 dG_Q / V_Q0^2 vs (1-|s_D0|^2) sin^2 Phi + Q_D^2
///   entropy_gain_pure_detecton  2 dG_Q / V_Q0^2 vs Q_D^2 (pure Detecton)
std::map<std::string, Residual> entropy_relations(const SqdsConfig& cfg);

/// Signed residuals of the reciprocity relations:
///   visibility_exchange_weighted  (1-P_Q^2) dV_Q^2/V_Q0^2 vs Detecton side
///   visibility_exchange_pure      dV_Q^2 vs dV_D^2 (both states pure)
///   visibility_partition          D_Q^2 + (V_D0^2/V_Q0^2) V_Q^2 vs V_D0^2
///                                 (P_Q = P_D = 0)
std::map<std::string, Residual> reciprocity(const SqdsConfig& cfg);

/// Residual of Q_D^2 + |C|^2 against |s_D0|^2 sin^2 Phi + cos^2 Phi.
double pure_state_identity(const SqdsConfig& cfg);
/// Slack of Q_D^2 + |C|^2 <= 1.
double mixed_state_bound(const SqdsConfig& cfg);

/// Hierarchy of distinguishability measures and the chained duality bounds.
std::map<std::string, bool> hierarchy(const SqdsConfig& cfg);

/// Equivalent generic-interferometer configuration: the Detecton beam
/// splitter is folded into the initial detector state, the way-dependent
/// phase shifters become U±, and phi_Q becomes the engine phase.
engine::InterferometerConfig to_engine_config(const SqdsConfig& cfg);

/// Swap the Quanton and Detecton roles.
SqdsConfig label_swap(const SqdsConfig& cfg);

SqdsReport sqds_report(const SqdsConfig& cfg);

}  // namespace duality::sqds
