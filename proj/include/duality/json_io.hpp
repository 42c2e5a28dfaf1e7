// JSON (de)serialization of configs and reports. Complex numbers are
// {"re": x, "im": y} objects; 2x2 matrices are row-major nested arrays.
// Schema violations raise SchemaError carrying the offending field path.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "duality/channel.hpp"
#include "duality/engine.hpp"
#include "duality/sqds.hpp"

namespace duality::io {

using json = nlohmann::json;

/// Structurally invalid input (wrong type, missing field, bad shape).
struct SchemaError : std::runtime_error {
  std::string path;
  SchemaError(std::string field_path, const std::string& what)
      : std::runtime_error(field_path + ": " + what), path(std::move(field_path)) {}
};

json to_json(const cplx& z);
json to_json(const Mat2& m);
json to_json(const BlochVector& s);
json to_json(const engine::InterferometerConfig& cfg);
json to_json(const engine::DualityReport& report);
json to_json(const sqds::SqdsConfig& cfg);
json to_json(const channel::ChannelConfig& cfg);

cplx complex_from_json(const json& j, const std::string& path);
Mat2 mat2_from_json(const json& j, const std::string& path);
BlochVector bloch_from_json(const json& j, const std::string& path);

/// Accepts rho_D0 as {"bloch": [x,y,z]} or {"matrix": [[..],[..]]} and the
/// detector unitaries either as explicit matrices (U_plus / U_minus) or as
/// way-dependent phase-shifter parameters {"detector_phases": {phi_D, Phi}}.
engine::InterferometerConfig engine_config_from_json(const json& j,
                                                     const std::string& path = "");
sqds::SqdsConfig sqds_config_from_json(const json& j, const std::string& path = "");
channel::ChannelConfig channel_config_from_json(const json& j,
                                                const std::string& path = "");

}  // namespace duality::io
