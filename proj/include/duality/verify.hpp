// Batch property runner: every module invariant evaluated on seeded random
// configurations, with per-check worst residuals and serialized failing
// configs for replay.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "duality/json_io.hpp"

namespace duality::verify {

struct CheckStat {
  double worst = 0.0;      // largest |residual| (equalities) or bound overshoot
  double tolerance = 0.0;
  long violations = 0;
};

struct Failure {
  std::string check;
  double residual = 0.0;
  io::json config;
};

struct SuiteResult {
  std::string name;
  int samples = 0;
  bool pass = true;
  double worst_residual = 0.0;
  std::map<std::string, CheckStat> checks;
  std::vector<Failure> failures;  // capped at kMaxFailures
};

inline constexpr int kMaxFailures = 16;

/// Random generators shared by the verify suites, the tests and the
/// acceptance runner.
engine::InterferometerConfig random_engine_config(SeedStream& rng, bool pure);
sqds::SqdsConfig random_sqds_config(SeedStream& rng, bool pure);

SuiteResult run_engine_suite(int samples, std::uint64_t seed);
/// Monte-Carlo betting runs on min(samples, 100) configs at 1e6 trials each;
/// that check passes when at least 99% land inside the 3-sigma bound.
SuiteResult run_channel_suite(int samples, std::uint64_t seed);
SuiteResult run_sqds_suite(int samples, std::uint64_t seed);

/// All three suites.
std::vector<SuiteResult> run_all(int samples, std::uint64_t seed);

io::json to_json(const SuiteResult& r);
io::json summary_json(const std::vector<SuiteResult>& suites, int samples,
                      std::uint64_t seed);

/// Re-run the suite checks on configs recorded in a previous summary's
/// "failures" arrays (or passed as {"engine": [...], "sqds": [...],
/// "channel": [...]}) and return the per-config residual report.
io::json replay(const io::json& input);

}  // namespace duality::verify
