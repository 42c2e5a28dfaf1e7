// Two-way interferometer with a quantum which-way detector: joint evolution
// through beam splitter, split-beam detector coupling and beam merger, plus
// every duality quantity (P, V0, V, C, D, Q, linear entropy) and the signed
// slack of each duality inequality.
#pragma once

#include <map>
#include <string>
#include <utility>

#include "duality/qmath.hpp"

namespace duality::engine {

struct InterferometerConfig {
  BlochVector s_Q0;   // initial Quanton Bloch vector
  Mat2 rho_D0;        // initial detector state
  Mat2 U_plus;        // detector unitary on the sigma_z = +1 way
  Mat2 U_minus;       // detector unitary on the sigma_z = -1 way
  double phi = 0.0;   // relative phase between the ways (radians)
};

/// Throws std::invalid_argument when the config is unphysical.
void validate(const InterferometerConfig& cfg);

/// Signed residual of one inequality (RHS - LHS; >= -tol when it holds),
/// or a skip marker when a guard applies.
struct Residual {
  Residual() = default;
  Residual(double v) : value(v) {}
  Residual(double v, bool skip, std::string why)
      : value(v), skipped(skip), reason(std::move(why)) {}

  double value = 0.0;
  bool skipped = false;
  std::string reason;
};

struct DualityReport {
  double P = 0.0;       // predictability
  double V0 = 0.0;      // a-priori visibility
  double V = 0.0;       // visibility with the detector on
  double D = 0.0;       // distinguishability
  double Q = 0.0;       // detector quality
  cplx C;               // contrast factor
  double w_plus = 0.0;  // way probabilities
  double w_minus = 0.0;
  double G0 = 0.0;      // initial Quanton linear entropy
  double Gf = 0.0;      // final Quanton linear entropy (reduced state)
  double dG = 0.0;      // closed-form entropy increase
  std::map<std::string, Residual> slacks;

  /// Smallest non-skipped slack value.
  double min_slack() const;
};

/// Beam-splitter conjugation rho -> E rho E^dag with E = exp(-i pi sigma_y / 4).
Mat2 beam_split(const Mat2& rho);
/// Exact inverse of beam_split.
Mat2 beam_merge(const Mat2& rho);

/// Joint unitary of the split-beam section:
///   (1+sigma_z)/2 e^{i phi/2} (x) U+  +  (1-sigma_z)/2 e^{-i phi/2} (x) U-.
/// The detector ways transform as rho_D -> U^dag rho_D U, so this operator
/// acts on states from the right: rho -> S^dag rho S.
Mat4 split_beam_unitary(const InterferometerConfig& cfg);

/// Final joint state via the step-by-step matrix pipeline BM . SBU . BS.
Mat4 evolve_pipeline(const InterferometerConfig& cfg);
/// Final joint state via the closed-form expansion in way projectors.
Mat4 evolve_closed_form(const InterferometerConfig& cfg);
/// Both paths, cross-checked entrywise; throws std::runtime_error on a
/// disagreement above kPipelineTol (a convention violation).
Mat4 evolve_full(const InterferometerConfig& cfg);

/// Contrast factor C = tr{U+^dag rho_D0 U-}; |C| <= 1.
cplx contrast(const Mat2& rho_D0, const Mat2& U_plus, const Mat2& U_minus);

/// Closed-form output probability p_± = (1 ± Re[(s_z - i s_y) C e^{-i phi}])/2.
double fringe_probability(const InterferometerConfig& cfg, int outcome);
/// Same probability measured on the evolved joint state, tr{P_± (x) 1 rho_f}.
double measured_fringe_probability(const InterferometerConfig& cfg, int outcome);

double a_priori_visibility(const BlochVector& s_Q0);
double predictability(const BlochVector& s_Q0);
/// (w+, w-) with w± = (1 ∓ s_Qx0)/2.
std::pair<double, double> way_probabilities(const InterferometerConfig& cfg);

/// V = |C| V0.
double visibility(const InterferometerConfig& cfg);

/// Amplitude of the first discrete Fourier harmonic of the measured
/// p_+(phi) over n_phi uniform phases; equals V up to roundoff.
/// Rejects n_phi < 8.
double measured_visibility_scan(const InterferometerConfig& cfg, int n_phi);

/// (rho_D^+, rho_D^-) with rho_D^± = U±^dag rho_D0 U±.
std::pair<Mat2, Mat2> detector_way_states(const InterferometerConfig& cfg);
/// w+ rho_D^+ + w- rho_D^-.
Mat2 detector_final(const InterferometerConfig& cfg);

/// D = tr|w+ rho_D^+ - w- rho_D^-|.
double distinguishability(const InterferometerConfig& cfg);

/// Q = tr|rho_plus - rho_minus| / 2.
double quality(const Mat2& rho_plus, const Mat2& rho_minus);

/// G = 1 - tr(rho^2).
double linear_entropy(const Mat2& rho);
/// dG = (V0^2 - V^2)/2.
double entropy_increase(const InterferometerConfig& cfg);

/// All duality scalars plus named inequality slacks:
/// englert, bloch_norm, q_contrast, central, central_permuted, general_mixed,
/// entropy_bound (skipped when V0 <= 1e-8), q_vs_d_pure (skipped unless both
/// initial states are pure and 1 - P^2 > 1e-10).
DualityReport duality_report(const InterferometerConfig& cfg);

}  // namespace duality::engine
