// Grid sweeps reproducing the two duality surfaces: the pure-preparation
// D^2/V^2 surface over (P, Q) and the stringency ratio f_Q over (P_Q, Q_D).
#pragma once

#include <string>
#include <vector>

#include "duality/engine.hpp"
#include "duality/sqds.hpp"

namespace duality::sweeps {

struct Fig3Row {
  double P = 0.0;
  double Q = 0.0;
  double D2 = 0.0;     // from the engine trace-norm path
  double V2 = 0.0;     // from |C| V0
  double slack = 0.0;  // 1 - D2 - V2
};

struct FqRow {
  double P_Q = 0.0;
  double Q_D = 0.0;
  double f_Q = 0.0;  // NaN on skipped/undefined rows
  int branch = 0;    // 1: R_Q > P_Q, 0: R_Q <= P_Q, -1: row skipped
};

/// Pure Quanton (P = s_Qx0) against a pure unit-visibility detector whose
/// quality is dialed in through the entangling phase (Phi = asin Q).
engine::InterferometerConfig pure_grid_config(double p, double q);

/// Minimal SQDS configuration with the requested predictability, Detecton
/// quality and Detecton Bloch norm.
sqds::SqdsConfig fq_grid_config(double p_q, double q_d, double s_norm);

/// n_p x n_q rows over (P, Q) in [0,1]^2, row-major in P then Q.
std::vector<Fig3Row> sweep_fig3(int n_p, int n_q);

/// n_p x n_q rows over P_Q in [0,1] and Q_D in [0, q_max]. Rows with
/// Q_D > s_norm are emitted as skip markers; rows at maximal
/// distinguishability carry f_Q = NaN with their branch intact.
std::vector<FqRow> sweep_fq(int n_p, int n_q, double s_norm = 0.882,
                            double q_max = -1.0);

inline constexpr const char* kFig3Header = "P,Q,D2,V2,slack";
inline constexpr const char* kFqHeader = "P_Q,Q_D,f_Q,branch";

/// CSV with 17-significant-digit floats; includes the header row.
std::string to_csv(const std::vector<Fig3Row>& rows);
std::string to_csv(const std::vector<FqRow>& rows);

}  // namespace duality::sweeps
