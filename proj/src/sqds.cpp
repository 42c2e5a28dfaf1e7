#include "duality/sqds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace duality::sqds {

namespace {

void ensure(bool ok, const char* msg) {
  if (!ok) throw std::runtime_error(msg);
}

bool is_pure(const BlochVector& s) { return s.norm2() >= 1.0 - kAlgebraTol; }

}  // namespace

void validate(const SqdsConfig& cfg) {
  if (cfg.s_Q0.y != 0.0 || cfg.s_D0.y != 0.0)
    throw std::invalid_argument("sqds: Bloch y-components must be exactly 0");
  if (!(cfg.s_Q0.norm2() <= (1.0 + kAlgebraTol) * (1.0 + kAlgebraTol)))
    throw std::invalid_argument("sqds: |s_Q0| > 1");
  if (!(cfg.s_D0.norm2() <= (1.0 + kAlgebraTol) * (1.0 + kAlgebraTol)))
    throw std::invalid_argument("sqds: |s_D0| > 1");
  if (!std::isfinite(cfg.phi_Q) || !std::isfinite(cfg.phi_D) ||
      !std::isfinite(cfg.Phi))
    throw std::invalid_argument("sqds: phases must be finite");
}

std::pair<Mat2, Mat2> detecton_phase_unitaries(double phi_D, double Phi) {
  auto shifter = [](double angle) {
    Mat2 u;
    u(0, 0) = std::polar(1.0, 0.5 * angle);
    u(1, 1) = std::polar(1.0, -0.5 * angle);
    return u;
  };
  return {shifter(phi_D + Phi), shifter(phi_D - Phi)};
}

Mat2 detecton_after_bs(const BlochVector& s_D0) {
  return bloch_to_density({s_D0.z, 0.0, -s_D0.x});
}

BlochVector detecton_way_bloch(const SqdsConfig& cfg, int way) {
  validate(cfg);
  if (way != 1 && way != -1)
    throw std::invalid_argument("detecton_way_bloch: way must be +1 or -1");
  const double f = cfg.phi_D + way * cfg.Phi;
  return {cfg.s_D0.z * std::cos(f), cfg.s_D0.z * std::sin(f), -cfg.s_D0.x};
}

double quality_detecton(const SqdsConfig& cfg) {
  validate(cfg);
  const double q = std::abs(cfg.s_D0.z) * std::abs(std::sin(cfg.Phi));
  const BlochVector diff =
      detecton_way_bloch(cfg, +1) - detecton_way_bloch(cfg, -1);
  ensure(std::abs(q - 0.5 * diff.norm()) <= 1e-13,
         "quality_detecton: closed form and half-Bloch-difference disagree");
  return q;
}

double quality_quanton(const SqdsConfig& cfg) {
  validate(cfg);
  return std::abs(cfg.s_Q0.z) * std::abs(std::sin(cfg.Phi));
}

double r_q(const SqdsConfig& cfg) {
  validate(cfg);
  const double pq2 = cfg.s_Q0.x * cfg.s_Q0.x;
  const double pd2 = cfg.s_D0.x * cfg.s_D0.x;
  const double vd02 = cfg.s_D0.z * cfg.s_D0.z;
  const double s2 = std::sin(cfg.Phi) * std::sin(cfg.Phi);
  const double c2 = std::cos(cfg.Phi) * std::cos(cfg.Phi);
  const double qd = quality_detecton(cfg);
  const double sd2 = cfg.s_D0.norm2();

  const double r1 = std::sqrt(pq2 * pd2 + vd02 * (s2 + pq2 * c2));
  const double r2 = std::sqrt(pq2 * sd2 + qd * qd * (1.0 - pq2));
  ensure(std::abs(r1 - r2) <= 1e-13, "r_q: the two closed forms disagree");
  ensure(r1 <= cfg.s_D0.norm() + kAlgebraTol, "r_q: exceeds |s_D0|");
  ensure(r1 >= qd - kAlgebraTol, "r_q: below Q_D");
  return r1;
}

double distinguishability_q(const SqdsConfig& cfg) {
  return std::max(std::abs(cfg.s_Q0.x), r_q(cfg));
}

double f_q(const SqdsConfig& cfg) {
  const double pq = std::abs(cfg.s_Q0.x);
  const double qd = quality_detecton(cfg);
  const double rq = r_q(cfg);
  const double dq = std::max(pq, rq);
  if (dq >= 1.0 - 1e-10)
    throw std::domain_error("f_Q undefined at maximal distinguishability");

  const double one_m_p2 = 1.0 - pq * pq;
  const double one_m_q2 = 1.0 - qd * qd;
  const double xi = one_m_p2 * one_m_q2;
  const double f_direct = xi / (1.0 - dq * dq);

  double f;
  if (pq >= rq) {
    // D = P: the shared (1 - P^2) factor cancels exactly
    f = one_m_q2;
    ensure(std::abs(f_direct - f) <= 1e-12,
           "f_q: direct and reduced forms disagree");
  } else {
    // D = R: g + xi is the cancellation-free evaluation of 1 - R^2, so it
    // carries the denominator near D -> 1; the naive 1 - R^2 agrees in
    // absolute terms and in ratio once conditioning is accounted for.
    double g = pq * pq * (1.0 - cfg.s_D0.norm2());  // = 1 - R^2 - xi
    ensure(g >= -kAlgebraTol, "f_q: auxiliary g is negative");
    g = std::max(0.0, g);  // |s_D0|^2 may round just above 1 for pure states
    ensure(std::abs((1.0 - rq * rq) - (g + xi)) <= 1e-13,
           "f_q: direct and auxiliary denominators disagree");
    f = xi / (g + xi);
    ensure(std::abs(f_direct - f) <= std::max(1e-12, 2e-13 / (g + xi)),
           "f_q: direct and auxiliary forms disagree");
  }
  ensure(f >= -kAlgebraTol && f <= 1.0 + kAlgebraTol, "f_q: outside [0, 1]");
  return f;
}

cplx contrast(const SqdsConfig& cfg) {
  validate(cfg);
  return {std::cos(cfg.Phi), cfg.s_D0.x * std::sin(cfg.Phi)};
}

double visibility_quanton(const SqdsConfig& cfg) {
  validate(cfg);
  const double c2 = std::cos(cfg.Phi) * std::cos(cfg.Phi);
  const double s2 = std::sin(cfg.Phi) * std::sin(cfg.Phi);
  const double pd2 = cfg.s_D0.x * cfg.s_D0.x;
  const double v = std::abs(cfg.s_Q0.z) * std::sqrt(c2 + pd2 * s2);
  ensure(std::abs(v - std::abs(contrast(cfg)) * std::abs(cfg.s_Q0.z)) <= 1e-13,
         "visibility_quanton: disagrees with |C| V_Q0");
  return v;
}

double visibility_detecton(const SqdsConfig& cfg) {
  return visibility_quanton(label_swap(cfg));
}

std::map<std::string, Residual> entropy_relations(const SqdsConfig& cfg) {
  validate(cfg);
  const double vq0 = std::abs(cfg.s_Q0.z);
  const double vq = visibility_quanton(cfg);
  const double dg = 0.5 * (vq0 * vq0 - vq * vq);
  const double pd2 = cfg.s_D0.x * cfg.s_D0.x;
  const double s2 = std::sin(cfg.Phi) * std::sin(cfg.Phi);
  const double qd = quality_detecton(cfg);
  const double sd2 = cfg.s_D0.norm2();

  std::map<std::string, Residual> r;
  r["entropy_gain"] = {dg - 0.5 * vq0 * vq0 * (1.0 - pd2) * s2};
  if (vq0 > 1e-8) {
    const double ratio = 2.0 * dg / (vq0 * vq0);
    r["entropy_gain_normalized"] = {ratio - ((1.0 - sd2) * s2 + qd * qd)};
    if (is_pure(cfg.s_D0)) {
      r["entropy_gain_pure_detecton"] = {ratio - qd * qd};
    } else {
      r["entropy_gain_pure_detecton"] = {0.0, true, "Detecton not pure"};
    }
  } else {
    r["entropy_gain_normalized"] = {0.0, true, "V_Q0 below 1e-8"};
    r["entropy_gain_pure_detecton"] = {0.0, true, "V_Q0 below 1e-8"};
  }
  return r;
}

std::map<std::string, Residual> reciprocity(const SqdsConfig& cfg) {
  validate(cfg);
  const double vq0 = std::abs(cfg.s_Q0.z);
  const double vd0 = std::abs(cfg.s_D0.z);
  const double pq2 = cfg.s_Q0.x * cfg.s_Q0.x;
  const double pd2 = cfg.s_D0.x * cfg.s_D0.x;
  const double vq = visibility_quanton(cfg);
  const double vd = visibility_detecton(cfg);
  const double dvq2 = vq * vq - vq0 * vq0;
  const double dvd2 = vd * vd - vd0 * vd0;

  std::map<std::string, Residual> r;
  if (vq0 > 1e-8 && vd0 > 1e-8) {
    r["visibility_exchange_weighted"] = {(1.0 - pq2) * dvq2 / (vq0 * vq0) -
                                         (1.0 - pd2) * dvd2 / (vd0 * vd0)};
  } else {
    r["visibility_exchange_weighted"] = {0.0, true, "V_Q0 or V_D0 below 1e-8"};
  }
  if (is_pure(cfg.s_Q0) && is_pure(cfg.s_D0)) {
    r["visibility_exchange_pure"] = {dvq2 - dvd2};
  } else {
    r["visibility_exchange_pure"] = {0.0, true, "initial states not both pure"};
  }
  if (pq2 <= kAlgebraTol && pd2 <= kAlgebraTol && vq0 > 1e-8) {
    const double dq = distinguishability_q(cfg);
    r["visibility_partition"] = {dq * dq + (vd0 * vd0 / (vq0 * vq0)) * vq * vq -
                                 vd0 * vd0};
  } else {
    r["visibility_partition"] = {0.0, true,
                                 "requires P_Q = P_D = 0 and V_Q0 > 1e-8"};
  }
  return r;
}

double pure_state_identity(const SqdsConfig& cfg) {
  validate(cfg);
  const double qd = quality_detecton(cfg);
  const double sum = qd * qd + std::norm(contrast(cfg));
  const double s2 = std::sin(cfg.Phi) * std::sin(cfg.Phi);
  const double c2 = std::cos(cfg.Phi) * std::cos(cfg.Phi);
  return sum - (cfg.s_D0.norm2() * s2 + c2);
}

double mixed_state_bound(const SqdsConfig& cfg) {
  validate(cfg);
  const double qd = quality_detecton(cfg);
  return 1.0 - (qd * qd + std::norm(contrast(cfg)));
}

std::map<std::string, bool> hierarchy(const SqdsConfig& cfg) {
  const double pq = std::abs(cfg.s_Q0.x);
  const double qd = quality_detecton(cfg);
  const double rq = r_q(cfg);
  const double dq = distinguishability_q(cfg);
  const double vq2 = visibility_quanton(cfg) * visibility_quanton(cfg);

  std::map<std::string, bool> h;
  h["d_ge_r"] = dq >= rq - kAlgebraTol;
  h["r_ge_q"] = rq >= qd - kAlgebraTol;
  h["d_ge_p"] = dq >= pq - kAlgebraTol;
  h["duality_q"] = qd * qd + vq2 <= 1.0 + kAlgebraTol;
  h["duality_r"] = rq * rq + vq2 <= 1.0 + kAlgebraTol;
  h["duality_d"] = dq * dq + vq2 <= 1.0 + kAlgebraTol;
  h["duality_p"] = pq * pq + vq2 <= 1.0 + kAlgebraTol;
  return h;
}

engine::InterferometerConfig to_engine_config(const SqdsConfig& cfg) {
  validate(cfg);
  auto [u_plus, u_minus] = detecton_phase_unitaries(cfg.phi_D, cfg.Phi);
  return {cfg.s_Q0, detecton_after_bs(cfg.s_D0), u_plus, u_minus, cfg.phi_Q};
}

SqdsConfig label_swap(const SqdsConfig& cfg) {
  return {cfg.s_D0, cfg.s_Q0, cfg.phi_D, cfg.phi_Q, cfg.Phi};
}

SqdsReport sqds_report(const SqdsConfig& cfg) {
  validate(cfg);
  SqdsReport r;
  r.P_Q = std::abs(cfg.s_Q0.x);
  r.P_D = std::abs(cfg.s_D0.x);
  r.V_Q0 = std::abs(cfg.s_Q0.z);
  r.V_D0 = std::abs(cfg.s_D0.z);
  r.Q_D = quality_detecton(cfg);
  r.Q_Q = quality_quanton(cfg);
  r.R_Q = r_q(cfg);
  r.D_Q = distinguishability_q(cfg);
  r.D_D = distinguishability_q(label_swap(cfg));
  r.V_Q = visibility_quanton(cfg);
  r.V_D = visibility_detecton(cfg);
  r.C = contrast(cfg);
  r.r_exceeds_p = r.R_Q > r.P_Q;
  if (r.D_Q < 1.0 - 1e-10) r.f_Q = f_q(cfg);

  r.residuals = entropy_relations(cfg);
  for (auto& [name, res] : reciprocity(cfg)) r.residuals[name] = res;
  r.residuals["quality_contrast_identity"] = {pure_state_identity(cfg)};
  r.residuals["quality_contrast_bound"] = {mixed_state_bound(cfg)};
  return r;
}

}  // namespace duality::sqds
