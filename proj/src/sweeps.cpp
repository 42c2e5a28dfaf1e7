#include "duality/sweeps.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace duality::sweeps {

namespace {

double axis_value(int i, int n, double hi) {
  return hi * static_cast<double>(i) / static_cast<double>(n - 1);
}

void append_float(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

engine::InterferometerConfig pure_grid_config(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("pure_grid_config: P and Q must lie in [0, 1]");
  sqds::SqdsConfig s;
  s.s_Q0 = {p, 0.0, std::sqrt(std::max(0.0, 1.0 - p * p))};
  s.s_D0 = {0.0, 0.0, 1.0};
  s.Phi = std::asin(q);
  return sqds::to_engine_config(s);
}

sqds::SqdsConfig fq_grid_config(double p_q, double q_d, double s_norm) {
  if (!(s_norm > 0.0 && s_norm <= 1.0))
    throw std::invalid_argument("fq_grid_config: s_norm must lie in (0, 1]");
  if (!(p_q >= 0.0 && p_q <= 1.0 && q_d >= 0.0 && q_d <= s_norm))
    throw std::invalid_argument("fq_grid_config: requires P_Q in [0,1], Q_D in [0, s_norm]");
  sqds::SqdsConfig s;
  s.s_Q0 = {p_q, 0.0, 0.0};
  s.s_D0 = {0.0, 0.0, s_norm};  // V_D0 = s_norm, P_D = 0
  s.Phi = std::asin(q_d / s_norm);
  return s;
}

std::vector<Fig3Row> sweep_fig3(int n_p, int n_q) {
  if (n_p < 2 || n_q < 2)
    throw std::invalid_argument("sweep_fig3: grid counts must be >= 2");
  std::vector<Fig3Row> rows;
  rows.reserve(static_cast<std::size_t>(n_p) * n_q);
  for (int i = 0; i < n_p; ++i)
    for (int j = 0; j < n_q; ++j) {
      Fig3Row row;
      row.P = axis_value(i, n_p, 1.0);
      row.Q = axis_value(j, n_q, 1.0);
      const auto cfg = pure_grid_config(row.P, row.Q);
      const double d = engine::distinguishability(cfg);
      const double v = engine::visibility(cfg);
      row.D2 = d * d;
      row.V2 = v * v;
      row.slack = 1.0 - row.D2 - row.V2;
      rows.push_back(row);
    }
  return rows;
}

std::vector<FqRow> sweep_fq(int n_p, int n_q, double s_norm, double q_max) {
  if (n_p < 2 || n_q < 2)
    throw std::invalid_argument("sweep_fq: grid counts must be >= 2");
  if (q_max < 0.0) q_max = s_norm;
  std::vector<FqRow> rows;
  rows.reserve(static_cast<std::size_t>(n_p) * n_q);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < n_p; ++i)
    for (int j = 0; j < n_q; ++j) {
      FqRow row;
      row.P_Q = axis_value(i, n_p, 1.0);
      row.Q_D = axis_value(j, n_q, q_max);
      if (row.Q_D > s_norm) {  // unreachable quality for this Detecton norm
        row.f_Q = nan;
        row.branch = -1;
      } else {
        const auto cfg = fq_grid_config(row.P_Q, row.Q_D, s_norm);
        row.branch = sqds::r_q(cfg) > row.P_Q ? 1 : 0;
        if (sqds::distinguishability_q(cfg) < 1.0 - 1e-10)
          row.f_Q = sqds::f_q(cfg);
        else
          row.f_Q = nan;
      }
      rows.push_back(row);
    }
  return rows;
}

std::string to_csv(const std::vector<Fig3Row>& rows) {
  std::string out = kFig3Header;
  out += '\n';
  for (const Fig3Row& r : rows) {
    append_float(out, r.P);
    out += ',';
    append_float(out, r.Q);
    out += ',';
    append_float(out, r.D2);
    out += ',';
    append_float(out, r.V2);
    out += ',';
    append_float(out, r.slack);
    out += '\n';
  }
  return out;
}

std::string to_csv(const std::vector<FqRow>& rows) {
  std::string out = kFqHeader;
  out += '\n';
  for (const FqRow& r : rows) {
    append_float(out, r.P_Q);
    out += ',';
    append_float(out, r.Q_D);
    out += ',';
    append_float(out, r.f_Q);
    out += ',';
    out += std::to_string(r.branch);
    out += '\n';
  }
  return out;
}

}  // namespace duality::sweeps
