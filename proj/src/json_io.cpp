#include "duality/json_io.hpp"

#include <tuple>

namespace duality::io {

namespace {

const json& require_field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "." : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key, "missing field");
  return *it;
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

}  // namespace

json to_json(const cplx& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const Mat2& m) {
  json rows = json::array();
  for (int i = 0; i < 2; ++i) {
    json row = json::array();
    for (int j = 0; j < 2; ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const BlochVector& s) { return json::array({s.x, s.y, s.z}); }

json to_json(const engine::InterferometerConfig& cfg) {
  return json{{"s_Q0", to_json(cfg.s_Q0)},
              {"rho_D0", json{{"matrix", to_json(cfg.rho_D0)}}},
              {"U_plus", json{{"matrix", to_json(cfg.U_plus)}}},
              {"U_minus", json{{"matrix", to_json(cfg.U_minus)}}},
              {"phi", cfg.phi}};
}

json to_json(const engine::DualityReport& r) {
  json slacks = json::object();
  for (const auto& [name, s] : r.slacks) {
    if (s.skipped)
      slacks[name] = json{{"skipped", true}, {"reason", s.reason}};
    else
      slacks[name] = json{{"value", s.value}};
  }
  return json{{"P", r.P},           {"V0", r.V0},
              {"V", r.V},           {"D", r.D},
              {"Q", r.Q},           {"C", to_json(r.C)},
              {"w_plus", r.w_plus}, {"w_minus", r.w_minus},
              {"G0", r.G0},         {"Gf", r.Gf},
              {"dG", r.dG},         {"slacks", slacks}};
}

json to_json(const sqds::SqdsConfig& cfg) {
  return json{{"s_Q0", to_json(cfg.s_Q0)},
              {"s_D0", to_json(cfg.s_D0)},
              {"phi_Q", cfg.phi_Q},
              {"phi_D", cfg.phi_D},
              {"Phi", cfg.Phi}};
}

json to_json(const channel::ChannelConfig& cfg) {
  return json{{"w_plus", cfg.w_plus}, {"epsilon", cfg.epsilon}};
}

cplx complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (!j.is_object()) throw SchemaError(path, "expected a number or {re, im}");
  return {number_at(require_field(j, "re", path), path + ".re"),
          number_at(require_field(j, "im", path), path + ".im")};
}

Mat2 mat2_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    throw SchemaError(path, "expected a 2x2 matrix as two rows");
  Mat2 m;
  for (int i = 0; i < 2; ++i) {
    const json& row = j[i];
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != 2)
      throw SchemaError(row_path, "expected a row of two entries");
    for (int k = 0; k < 2; ++k)
      m(i, k) = complex_from_json(row[k], row_path + "[" + std::to_string(k) + "]");
  }
  return m;
}

BlochVector bloch_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3)
    throw SchemaError(path, "expected [sx, sy, sz]");
  return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]"),
          number_at(j[2], path + "[2]")};
}

engine::InterferometerConfig engine_config_from_json(const json& j,
                                                     const std::string& path) {
  engine::InterferometerConfig cfg;
  cfg.s_Q0 = bloch_from_json(require_field(j, "s_Q0", path), path + ".s_Q0");

  const json& rho = require_field(j, "rho_D0", path);
  const std::string rho_path = path + ".rho_D0";
  if (rho.is_object() && rho.contains("bloch")) {
    cfg.rho_D0 = bloch_to_density(bloch_from_json(rho["bloch"], rho_path + ".bloch"));
  } else if (rho.is_object() && rho.contains("matrix")) {
    cfg.rho_D0 = mat2_from_json(rho["matrix"], rho_path + ".matrix");
  } else {
    throw SchemaError(rho_path, "expected {bloch: [..]} or {matrix: [[..],[..]]}");
  }

  if (j.contains("detector_phases")) {
    const json& ph = j["detector_phases"];
    const std::string ph_path = path + ".detector_phases";
    const double phi_d = number_at(require_field(ph, "phi_D", ph_path), ph_path + ".phi_D");
    const double big_phi = number_at(require_field(ph, "Phi", ph_path), ph_path + ".Phi");
    std::tie(cfg.U_plus, cfg.U_minus) = sqds::detecton_phase_unitaries(phi_d, big_phi);
  } else {
    const json& up = require_field(j, "U_plus", path);
    const json& um = require_field(j, "U_minus", path);
    cfg.U_plus = mat2_from_json(require_field(up, "matrix", path + ".U_plus"),
                                path + ".U_plus.matrix");
    cfg.U_minus = mat2_from_json(require_field(um, "matrix", path + ".U_minus"),
                                 path + ".U_minus.matrix");
  }

  cfg.phi = number_at(require_field(j, "phi", path), path + ".phi");
  return cfg;
}

sqds::SqdsConfig sqds_config_from_json(const json& j, const std::string& path) {
  sqds::SqdsConfig cfg;
  cfg.s_Q0 = bloch_from_json(require_field(j, "s_Q0", path), path + ".s_Q0");
  cfg.s_D0 = bloch_from_json(require_field(j, "s_D0", path), path + ".s_D0");
  cfg.phi_Q = number_at(require_field(j, "phi_Q", path), path + ".phi_Q");
  cfg.phi_D = number_at(require_field(j, "phi_D", path), path + ".phi_D");
  cfg.Phi = number_at(require_field(j, "Phi", path), path + ".Phi");
  return cfg;
}

channel::ChannelConfig channel_config_from_json(const json& j,
                                                const std::string& path) {
  channel::ChannelConfig cfg;
  cfg.w_plus = number_at(require_field(j, "w_plus", path), path + ".w_plus");
  cfg.epsilon = number_at(require_field(j, "epsilon", path), path + ".epsilon");
  return cfg;
}

}  // namespace duality::io
