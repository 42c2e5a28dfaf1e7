#include "duality/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

namespace duality::engine {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// E = exp(-i pi sigma_y / 4) = [[c,-c],[c,c]], c = 1/sqrt(2).
Mat2 bs_matrix() {
  const double c = std::numbers::sqrt2 / 2.0;
  return Mat2{{cplx(c), cplx(-c), cplx(c), cplx(c)}};
}

bool quanton_pure(const InterferometerConfig& cfg) {
  return cfg.s_Q0.norm2() >= 1.0 - kAlgebraTol;
}

bool detector_pure(const InterferometerConfig& cfg) {
  return linear_entropy(cfg.rho_D0) <= kAlgebraTol;
}

}  // namespace

void validate(const InterferometerConfig& cfg) {
  if (!(cfg.s_Q0.norm2() <= (1.0 + kAlgebraTol) * (1.0 + kAlgebraTol)))
    throw std::invalid_argument("config: |s_Q0| > 1");
  if (!cfg.rho_D0.is_density())
    throw std::invalid_argument("config: rho_D0 is not a density matrix");
  if (!cfg.U_plus.is_unitary())
    throw std::invalid_argument("config: U_plus is not unitary");
  if (!cfg.U_minus.is_unitary())
    throw std::invalid_argument("config: U_minus is not unitary");
  if (!std::isfinite(cfg.phi))
    throw std::invalid_argument("config: phi is not finite");
}

double DualityReport::min_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [name, s] : slacks)
    if (!s.skipped) m = std::min(m, s.value);
  return m;
}

Mat2 beam_split(const Mat2& rho) {
  const Mat2 b = bs_matrix();
  return b * rho * b.adjoint();
}

Mat2 beam_merge(const Mat2& rho) {
  const Mat2 b = bs_matrix();
  return b.adjoint() * rho * b;
}

Mat4 split_beam_unitary(const InterferometerConfig& cfg) {
  validate(cfg);
  const cplx ep = std::polar(1.0, 0.5 * cfg.phi);
  Mat4 s;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      s(k, l) = ep * cfg.U_plus(k, l);
      s(2 + k, 2 + l) = std::conj(ep) * cfg.U_minus(k, l);
    }
  return s;
}

Mat4 evolve_pipeline(const InterferometerConfig& cfg) {
  validate(cfg);
  const Mat4 bs = tensor(bs_matrix(), Mat2::identity());
  const Mat4 sbu = split_beam_unitary(cfg);
  const Mat4 rho0 = tensor(bloch_to_density(cfg.s_Q0), cfg.rho_D0);
  const Mat4 rho1 = bs * rho0 * bs.adjoint();
  const Mat4 rho2 = sbu.adjoint() * rho1 * sbu;
  return bs.adjoint() * rho2 * bs;
}

Mat4 evolve_closed_form(const InterferometerConfig& cfg) {
  validate(cfg);
  const double sx = cfg.s_Q0.x;
  const cplx szy(cfg.s_Q0.z, -cfg.s_Q0.y);  // s_z - i s_y
  const Mat2 rho_p = cfg.U_plus.adjoint() * cfg.rho_D0 * cfg.U_plus;
  const Mat2 rho_m = cfg.U_minus.adjoint() * cfg.rho_D0 * cfg.U_minus;
  const Mat2 cross_pm = cfg.U_plus.adjoint() * cfg.rho_D0 * cfg.U_minus;
  const Mat2 cross_mp = cfg.U_minus.adjoint() * cfg.rho_D0 * cfg.U_plus;
  const Mat2 one = Mat2::identity();
  const Mat2 sig_x = pauli_x();
  const Mat2 zy_plus = pauli_z() + cplx(0, 1) * pauli_y();
  const Mat2 zy_minus = pauli_z() - cplx(0, 1) * pauli_y();
  const cplx em = std::polar(1.0, -cfg.phi);

  Mat4 rho = cplx(0.25 * (1.0 - sx)) * tensor(one - sig_x, rho_p) +
             cplx(0.25 * (1.0 + sx)) * tensor(one + sig_x, rho_m) +
             0.25 * szy * em * tensor(zy_plus, cross_pm) +
             0.25 * std::conj(szy * em) * tensor(zy_minus, cross_mp);
  return rho;
}

Mat4 evolve_full(const InterferometerConfig& cfg) {
  const Mat4 a = evolve_pipeline(cfg);
  const Mat4 b = evolve_closed_form(cfg);
  const double diff = max_abs_diff(a, b);
  if (diff > kPipelineTol)
    throw std::runtime_error(
        "evolve_full: pipeline and closed form disagree by " +
        std::to_string(diff) + " (convention violation)");
  return a;
}

cplx contrast(const Mat2& rho_D0, const Mat2& U_plus, const Mat2& U_minus) {
  return (U_plus.adjoint() * rho_D0 * U_minus).trace();
}

double fringe_probability(const InterferometerConfig& cfg, int outcome) {
  validate(cfg);
  if (outcome != 1 && outcome != -1)
    throw std::invalid_argument("fringe_probability: outcome must be +1 or -1");
  const cplx c = contrast(cfg.rho_D0, cfg.U_plus, cfg.U_minus);
  const cplx szy(cfg.s_Q0.z, -cfg.s_Q0.y);
  const double fringe = (szy * c * std::polar(1.0, -cfg.phi)).real();
  return 0.5 * (1.0 + outcome * fringe);
}

double measured_fringe_probability(const InterferometerConfig& cfg, int outcome) {
  if (outcome != 1 && outcome != -1)
    throw std::invalid_argument("fringe_probability: outcome must be +1 or -1");
  const Mat4 rho_f = evolve_full(cfg);
  // tr{ (1 ± sigma_z)/2 (x) 1 rho_f }
  cplx p = 0;
  for (int k = 0; k < 2; ++k) {
    p += rho_f(k, k) * (outcome == 1 ? 1.0 : 0.0);
    p += rho_f(2 + k, 2 + k) * (outcome == 1 ? 0.0 : 1.0);
  }
  return p.real();
}

double a_priori_visibility(const BlochVector& s_Q0) {
  return std::hypot(s_Q0.y, s_Q0.z);
}

double predictability(const BlochVector& s_Q0) { return std::abs(s_Q0.x); }

std::pair<double, double> way_probabilities(const InterferometerConfig& cfg) {
  return {0.5 * (1.0 - cfg.s_Q0.x), 0.5 * (1.0 + cfg.s_Q0.x)};
}

double visibility(const InterferometerConfig& cfg) {
  return std::abs(contrast(cfg.rho_D0, cfg.U_plus, cfg.U_minus)) *
         a_priori_visibility(cfg.s_Q0);
}

double measured_visibility_scan(const InterferometerConfig& cfg, int n_phi) {
  if (n_phi < 8)
    throw std::invalid_argument("measured_visibility_scan: n_phi must be >= 8");
  // p_+(phi) = 1/2 + (V/2) cos(phi - theta): the first harmonic coefficient
  // has magnitude V/4, so V = 4 |sum| / n.
  InterferometerConfig c = cfg;
  cplx harmonic = 0;
  for (int k = 0; k < n_phi; ++k) {
    const double phi = kTwoPi * k / n_phi;
    c.phi = phi;
    harmonic += measured_fringe_probability(c, +1) * std::polar(1.0, phi);
  }
  return 4.0 * std::abs(harmonic) / n_phi;
}

std::pair<Mat2, Mat2> detector_way_states(const InterferometerConfig& cfg) {
  validate(cfg);
  return {cfg.U_plus.adjoint() * cfg.rho_D0 * cfg.U_plus,
          cfg.U_minus.adjoint() * cfg.rho_D0 * cfg.U_minus};
}

Mat2 detector_final(const InterferometerConfig& cfg) {
  const auto [rho_p, rho_m] = detector_way_states(cfg);
  const auto [wp, wm] = way_probabilities(cfg);
  return cplx(wp) * rho_p + cplx(wm) * rho_m;
}

double distinguishability(const InterferometerConfig& cfg) {
  const auto [rho_p, rho_m] = detector_way_states(cfg);
  const auto [wp, wm] = way_probabilities(cfg);
  const double d = trace_norm(cplx(wp) * rho_p - cplx(wm) * rho_m);
  const double p = predictability(cfg.s_Q0);
  if (d < p - kAlgebraTol || d > 1.0 + kAlgebraTol)
    throw std::runtime_error("distinguishability: value outside [P, 1]");
  return d;
}

double quality(const Mat2& rho_plus, const Mat2& rho_minus) {
  if (!rho_plus.is_density() || !rho_minus.is_density())
    throw std::invalid_argument("quality: inputs must be density matrices");
  return 0.5 * trace_norm(rho_plus - rho_minus);
}

double linear_entropy(const Mat2& rho) {
  if (!rho.is_density())
    throw std::invalid_argument("linear_entropy: input is not a density matrix");
  return 1.0 - (rho * rho).trace().real();
}

double entropy_increase(const InterferometerConfig& cfg) {
  const double v0 = a_priori_visibility(cfg.s_Q0);
  const double v = visibility(cfg);
  return 0.5 * (v0 * v0 - v * v);
}

DualityReport duality_report(const InterferometerConfig& cfg) {
  validate(cfg);
  DualityReport r;
  r.P = predictability(cfg.s_Q0);
  r.V0 = a_priori_visibility(cfg.s_Q0);
  r.C = contrast(cfg.rho_D0, cfg.U_plus, cfg.U_minus);
  r.V = std::abs(r.C) * r.V0;
  std::tie(r.w_plus, r.w_minus) = way_probabilities(cfg);
  const auto [rho_p, rho_m] = detector_way_states(cfg);
  r.Q = quality(rho_p, rho_m);
  r.D = distinguishability(cfg);
  r.G0 = linear_entropy(bloch_to_density(cfg.s_Q0));
  r.Gf = linear_entropy(partial_trace(evolve_full(cfg), Subsystem::detector));
  r.dG = entropy_increase(cfg);

  const double p2 = r.P * r.P;
  const double v2 = r.V * r.V;
  const double v02 = r.V0 * r.V0;
  const double q2 = r.Q * r.Q;
  const double d2 = r.D * r.D;
  const double c2 = std::norm(r.C);
  const double s02 = cfg.s_Q0.norm2();
  const double sf2 = p2 + v2;  // |s_Q^(f)|^2

  r.slacks["englert"] = {1.0 - (d2 + v2)};
  r.slacks["bloch_norm"] = {1.0 - (p2 + v02)};
  r.slacks["q_contrast"] = {1.0 - (q2 + c2)};
  r.slacks["central"] = {1.0 - ((1.0 - p2) * q2 + p2 + v2)};
  r.slacks["central_permuted"] = {(1.0 - p2) * (1.0 - q2) - v2};
  r.slacks["general_mixed"] = {s02 - ((s02 - p2) * q2 + sf2)};

  if (r.V0 > 1e-8) {
    const double ratio = 2.0 * r.dG / v02;
    r.slacks["entropy_bound"] = {std::min(ratio - q2, 1.0 - ratio)};
  } else {
    r.slacks["entropy_bound"] = {0.0, true, "V0 below 1e-8"};
  }

  if (!quanton_pure(cfg) || !detector_pure(cfg)) {
    r.slacks["q_vs_d_pure"] = {0.0, true, "initial states not both pure"};
  } else if (1.0 - p2 <= 1e-10) {
    r.slacks["q_vs_d_pure"] = {0.0, true, "1 - P^2 below 1e-10"};
  } else {
    r.slacks["q_vs_d_pure"] = {(d2 - p2) / (1.0 - p2) - q2};
  }
  return r;
}

}  // namespace duality::engine
