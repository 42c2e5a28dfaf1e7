#include "duality/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace duality::verify {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Collects per-check statistics and failing configs for one suite.
class Recorder {
 public:
  explicit Recorder(SuiteResult* result) : r_(result) {}

  void set_config(io::json cfg) { cfg_ = std::move(cfg); }

  /// |residual| must stay within tol.
  void equality(const std::string& check, double residual, double tol) {
    record(check, std::abs(residual), residual, tol);
  }

  /// slack must stay above -tol; the recorded residual is the overshoot.
  void bound(const std::string& check, double slack, double tol) {
    record(check, -slack, slack, tol);
  }

  void condition(const std::string& check, bool ok) {
    record(check, ok ? 0.0 : 1.0, ok ? 0.0 : 1.0, 0.5);
  }

 private:
  void record(const std::string& check, double severity, double raw, double tol) {
    CheckStat& st = r_->checks[check];
    st.tolerance = tol;
    st.worst = std::max(st.worst, severity);
    if (severity > tol) {
      ++st.violations;
      r_->pass = false;
      if (r_->failures.size() < kMaxFailures)
        r_->failures.push_back({check, raw, cfg_});
    }
  }

  SuiteResult* r_;
  io::json cfg_;
};

double worst_over_checks(const SuiteResult& r) {
  double w = 0;
  for (const auto& [name, st] : r.checks) w = std::max(w, st.worst);
  return w;
}

// ---------------------------------------------------------------------------
// engine

void check_engine_config(const engine::InterferometerConfig& cfg, Recorder& rec) {
  using namespace duality::engine;

  const DualityReport rep = duality_report(cfg);
  rec.bound("report_slack_min", rep.min_slack(), 1e-9);
  rec.equality("w_sum", rep.w_plus + rep.w_minus - 1.0, kAlgebraTol);
  rec.equality("p_from_w", rep.P - std::abs(rep.w_plus - rep.w_minus), kAlgebraTol);

  rec.equality("dual_path",
               max_abs_diff(evolve_pipeline(cfg), evolve_closed_form(cfg)), 1e-11);

  const Mat4 rho_f = evolve_full(cfg);
  rec.equality("detector_final_vs_partial_trace",
               max_abs_diff(detector_final(cfg),
                            partial_trace(rho_f, Subsystem::quanton)),
               1e-11);

  const double p_plus = fringe_probability(cfg, +1);
  const double p_minus = fringe_probability(cfg, -1);
  rec.equality("fringe_prob_sum", p_plus + p_minus - 1.0, kAlgebraTol);
  rec.equality("fringe_prob_vs_measurement",
               p_plus - measured_fringe_probability(cfg, +1), 1e-11);

  const Mat2 rho_qf = partial_trace(rho_f, Subsystem::detector);
  const double sf2 = density_to_bloch(rho_qf).norm2();
  const double p2v2 = rep.P * rep.P + rep.V * rep.V;
  const double purity_form = 1.0 + 2.0 * ((rho_qf * rho_qf).trace().real() - 1.0);
  rec.equality("final_bloch_norm_vs_p2v2", sf2 - p2v2, 1e-10);
  rec.equality("final_bloch_norm_vs_purity", sf2 - purity_form, 1e-10);

  rec.equality("entropy_gain_vs_reduced_state", rep.dG - (rep.Gf - rep.G0), 1e-11);

  const bool both_pure = cfg.s_Q0.norm2() >= 1.0 - kAlgebraTol &&
                         linear_entropy(cfg.rho_D0) <= kAlgebraTol;
  if (both_pure) {
    rec.equality("pure_englert_equality", 1.0 - (rep.D * rep.D + rep.V * rep.V),
                 1e-10);
    rec.equality("pure_quality_contrast",
                 1.0 - (rep.Q * rep.Q + std::norm(rep.C)), 1e-10);
  }
}

// Bloch vector orthogonal to s, in the plane spanned with a helper axis.
BlochVector orthogonal_axis(const BlochVector& s) {
  BlochVector helper = std::abs(s.x) < 0.9 ? BlochVector{1, 0, 0}
                                           : BlochVector{0, 1, 0};
  BlochVector u{s.y * helper.z - s.z * helper.y,
                s.z * helper.x - s.x * helper.z,
                s.x * helper.y - s.y * helper.x};
  const double n = u.norm();
  return {u.x / n, u.y / n, u.z / n};
}

Mat2 pauli_dot(const BlochVector& u) {
  return cplx(u.x) * pauli_x() + cplx(u.y) * pauli_y() + cplx(u.z) * pauli_z();
}

// Extreme configurations exercising the materialized duality implications.
void check_engine_extremes(SeedStream& rng, Recorder& rec) {
  using namespace duality::engine;

  // V = 1: transverse pure Quanton, detector effectively off.
  {
    const double theta = rng.uniform(0.0, kTwoPi);
    const Mat2 u = random_unitary(rng);
    InterferometerConfig cfg{{0.0, std::sin(theta), std::cos(theta)},
                             bloch_to_density(random_bloch(rng, false)),
                             u,
                             u,
                             rng.uniform(0.0, kTwoPi)};
    const DualityReport r = duality_report(cfg);
    if (r.V > 1.0 - 1e-9)
      rec.condition("extreme_full_visibility",
                    r.D < 1e-4 && r.P < 1e-4 && r.Q < 1e-4);
  }
  // Q = 1: pure detector driven into orthogonal way states.
  {
    const BlochVector n = random_bloch(rng, true);
    InterferometerConfig cfg{random_bloch(rng, false), bloch_to_density(n),
                             Mat2::identity(), pauli_dot(orthogonal_axis(n)),
                             rng.uniform(0.0, kTwoPi)};
    const DualityReport r = duality_report(cfg);
    if (r.Q > 1.0 - 1e-9) rec.condition("extreme_full_quality", r.V < 1e-4);
  }
  // P = 1: single-way preparation.
  {
    InterferometerConfig cfg{{rng.uniform() < 0.5 ? 1.0 : -1.0, 0.0, 0.0},
                             bloch_to_density(random_bloch(rng, false)),
                             random_unitary(rng), random_unitary(rng),
                             rng.uniform(0.0, kTwoPi)};
    const DualityReport r = duality_report(cfg);
    if (r.P > 1.0 - 1e-9) rec.condition("extreme_full_predictability", r.V < 1e-4);
  }
  // D = 1: symmetric ways, orthogonal pure way states.
  {
    const double theta = rng.uniform(0.0, kTwoPi);
    const BlochVector n = random_bloch(rng, true);
    InterferometerConfig cfg{{0.0, std::sin(theta), std::cos(theta)},
                             bloch_to_density(n), Mat2::identity(),
                             pauli_dot(orthogonal_axis(n)),
                             rng.uniform(0.0, kTwoPi)};
    const DualityReport r = duality_report(cfg);
    if (r.D > 1.0 - 1e-9) rec.condition("extreme_full_distinguishability",
                                        r.V < 1e-4);
  }
}

// ---------------------------------------------------------------------------
// channel

void check_channel_config(const channel::ChannelConfig& cfg, Recorder& rec) {
  using namespace duality::channel;

  const double l_post = posterior_likelihood(cfg);
  const double d = total_distinguishability(cfg);
  rec.equality("likelihood_identity",
               likelihood_from_distinguishability(d) - l_post, 1e-14);
  rec.bound("information_never_hurts", l_post - prior_likelihood(cfg), 1e-15);
  rec.equality("joint_sums_to_one", joint_distribution(cfg).sum() - 1.0, 1e-14);

  const ChannelConfig swapped{cfg.w_minus(), cfg.epsilon};
  const ChannelConfig relabeled{cfg.w_plus, 1.0 - cfg.epsilon};
  rec.equality("swap_sender_symmetry",
               posterior_likelihood(swapped) - l_post, 1e-15);
  rec.equality("relabel_receiver_symmetry",
               posterior_likelihood(relabeled) - l_post, 1e-15);
  rec.equality("quality_relabel_invariance",
               channel_quality(relabeled) - channel_quality(cfg), 1e-15);
}

// ---------------------------------------------------------------------------
// sqds

void check_sqds_config(const sqds::SqdsConfig& cfg, Recorder& rec) {
  using namespace duality::sqds;

  const SqdsReport rep = sqds_report(cfg);

  const double xi = (1.0 - rep.P_Q * rep.P_Q) * (1.0 - rep.Q_D * rep.Q_D);
  const double g = 1.0 - rep.R_Q * rep.R_Q - xi;
  rec.bound("xi_nonneg", xi, kAlgebraTol);
  rec.bound("g_nonneg", g, kAlgebraTol);
  rec.bound("stringency", (1.0 - rep.D_Q * rep.D_Q) - xi, kAlgebraTol);
  if (rep.f_Q) {
    rec.bound("f_q_lower", *rep.f_Q, kAlgebraTol);
    rec.bound("f_q_upper", 1.0 - *rep.f_Q, kAlgebraTol);
  }

  rec.equality("quality_two_forms",
               rep.Q_D - 0.5 * (detecton_way_bloch(cfg, +1) -
                                detecton_way_bloch(cfg, -1)).norm(),
               1e-13);

  const SqdsReport swapped = sqds_report(label_swap(cfg));
  const double swap_diff =
      std::max({std::abs(swapped.Q_Q - rep.Q_D), std::abs(swapped.Q_D - rep.Q_Q),
                std::abs(swapped.V_Q - rep.V_D), std::abs(swapped.V_D - rep.V_Q),
                std::abs(swapped.D_Q - rep.D_D), std::abs(swapped.D_D - rep.D_Q)});
  rec.equality("label_swap_exact", swap_diff, 0.0);

  const auto bridged = to_engine_config(cfg);
  const auto [rho_p, rho_m] = engine::detector_way_states(bridged);
  rec.equality("bridge_quality", engine::quality(rho_p, rho_m) - rep.Q_D, 1e-11);
  rec.equality("bridge_distinguishability",
               engine::distinguishability(bridged) - rep.D_Q, 1e-11);
  rec.equality("bridge_contrast",
               std::abs(engine::contrast(bridged.rho_D0, bridged.U_plus,
                                         bridged.U_minus) -
                        rep.C),
               1e-11);
  rec.equality("bridge_visibility", engine::visibility(bridged) - rep.V_Q, 1e-11);
  rec.equality("bridge_predictability",
               engine::predictability(bridged.s_Q0) - rep.P_Q, 1e-12);

  for (const auto& [name, ok] : hierarchy(cfg)) rec.condition("hierarchy_" + name, ok);

  for (const auto& [name, res] : rep.residuals) {
    if (res.skipped) continue;
    if (name == "quality_contrast_bound")
      rec.bound(name, res.value, kAlgebraTol);
    else
      rec.equality(name, res.value, kAlgebraTol);
  }

  if (rep.P_Q == 0.0)
    rec.equality("symmetric_d_equals_q", rep.D_Q - rep.Q_D, kAlgebraTol);
}

}  // namespace

engine::InterferometerConfig random_engine_config(SeedStream& rng, bool pure) {
  return {random_bloch(rng, pure), bloch_to_density(random_bloch(rng, pure)),
          random_unitary(rng), random_unitary(rng), rng.uniform(0.0, kTwoPi)};
}

sqds::SqdsConfig random_sqds_config(SeedStream& rng, bool pure) {
  auto plane_vector = [&rng](bool on_circle) -> BlochVector {
    const double t = rng.uniform(0.0, kTwoPi);
    const double r = on_circle ? 1.0 : std::sqrt(rng.uniform());
    return {r * std::cos(t), 0.0, r * std::sin(t)};
  };
  return {plane_vector(pure), plane_vector(pure), rng.uniform(0.0, kTwoPi),
          rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi)};
}

SuiteResult run_engine_suite(int samples, std::uint64_t seed) {
  SuiteResult result;
  result.name = "engine";
  result.samples = samples;
  Recorder rec(&result);
  SeedStream rng(seed, 1);
  for (int i = 0; i < samples; ++i) {
    const auto mixed = random_engine_config(rng, false);
    rec.set_config(io::to_json(mixed));
    check_engine_config(mixed, rec);

    const auto pure = random_engine_config(rng, true);
    rec.set_config(io::to_json(pure));
    check_engine_config(pure, rec);

    check_engine_extremes(rng, rec);
  }
  result.worst_residual = worst_over_checks(result);
  return result;
}

SuiteResult run_channel_suite(int samples, std::uint64_t seed) {
  SuiteResult result;
  result.name = "channel";
  result.samples = samples;
  Recorder rec(&result);
  SeedStream rng(seed, 2);

  for (int i = 0; i < samples; ++i) {
    const channel::ChannelConfig cfg{rng.uniform(), rng.uniform()};
    rec.set_config(io::to_json(cfg));
    check_channel_config(cfg, rec);
  }

  // Monte-Carlo betting: statistical check, pass when >= 99% of the runs
  // land within the 3-sigma binomial bound.
  const int mc_count = std::min(samples, 100);
  constexpr std::uint64_t mc_trials = 1'000'000;
  long outside = 0;
  double worst_ratio = 0;
  for (int i = 0; i < mc_count; ++i) {
    const channel::ChannelConfig cfg{rng.uniform(), rng.uniform()};
    const double l = channel::posterior_likelihood(cfg);
    const double emp = channel::monte_carlo_bet(cfg, mc_trials, rng.next_u64());
    const double sigma = std::sqrt(std::max(l * (1.0 - l), 1e-12) / mc_trials);
    const double ratio = std::abs(emp - l) / (3.0 * sigma);
    worst_ratio = std::max(worst_ratio, ratio);
    if (ratio > 1.0) ++outside;
  }
  CheckStat& mc = result.checks["mc_within_3sigma"];
  mc.tolerance = 1.0;
  mc.worst = worst_ratio;
  mc.violations = outside;
  if (outside * 100 > mc_count) result.pass = false;

  result.worst_residual = worst_over_checks(result);
  return result;
}

SuiteResult run_sqds_suite(int samples, std::uint64_t seed) {
  SuiteResult result;
  result.name = "sqds";
  result.samples = samples;
  Recorder rec(&result);
  SeedStream rng(seed, 3);
  for (int i = 0; i < samples; ++i) {
    const auto mixed = random_sqds_config(rng, false);
    rec.set_config(io::to_json(mixed));
    check_sqds_config(mixed, rec);

    const auto pure = random_sqds_config(rng, true);
    rec.set_config(io::to_json(pure));
    check_sqds_config(pure, rec);

    auto symmetric = random_sqds_config(rng, false);
    symmetric.s_Q0.x = 0.0;
    symmetric.s_D0.x = 0.0;
    rec.set_config(io::to_json(symmetric));
    check_sqds_config(symmetric, rec);
  }
  result.worst_residual = worst_over_checks(result);
  return result;
}

std::vector<SuiteResult> run_all(int samples, std::uint64_t seed) {
  return {run_engine_suite(samples, seed), run_channel_suite(samples, seed),
          run_sqds_suite(samples, seed)};
}

io::json to_json(const SuiteResult& r) {
  io::json checks = io::json::object();
  for (const auto& [name, st] : r.checks)
    checks[name] = io::json{{"worst", st.worst},
                            {"tolerance", st.tolerance},
                            {"violations", st.violations}};
  io::json failures = io::json::array();
  for (const Failure& f : r.failures)
    failures.push_back(io::json{
        {"check", f.check}, {"residual", f.residual}, {"config", f.config}});
  return io::json{{"samples", r.samples},
                  {"pass", r.pass},
                  {"worst_residual", r.worst_residual},
                  {"checks", checks},
                  {"failures", failures}};
}

io::json summary_json(const std::vector<SuiteResult>& suites, int samples,
                      std::uint64_t seed) {
  io::json out;
  out["samples"] = samples;
  out["seed"] = seed;
  bool pass = true;
  io::json js = io::json::object();
  for (const SuiteResult& s : suites) {
    js[s.name] = to_json(s);
    pass = pass && s.pass;
  }
  out["suites"] = js;
  out["pass"] = pass;
  return out;
}

namespace {

io::json replay_one(const std::string& suite, const io::json& cfg_json) {
  SuiteResult result;
  result.name = suite;
  result.samples = 1;
  Recorder rec(&result);
  rec.set_config(cfg_json);
  if (suite == "engine") {
    check_engine_config(io::engine_config_from_json(cfg_json, "config"), rec);
  } else if (suite == "channel") {
    check_channel_config(io::channel_config_from_json(cfg_json, "config"), rec);
  } else if (suite == "sqds") {
    check_sqds_config(io::sqds_config_from_json(cfg_json, "config"), rec);
  } else {
    throw io::SchemaError("suite", "unknown suite '" + suite + "'");
  }
  result.worst_residual = worst_over_checks(result);
  io::json out = to_json(result);
  out["suite"] = suite;
  out["config"] = cfg_json;
  out.erase("failures");
  out.erase("samples");
  return out;
}

}  // namespace

io::json replay(const io::json& input) {
  io::json runs = io::json::array();
  if (input.contains("suites")) {  // a previous summary: replay its failures
    for (const auto& [suite, body] : input["suites"].items()) {
      if (!body.contains("failures")) continue;
      for (const auto& f : body["failures"])
        runs.push_back(replay_one(suite, f.at("config")));
    }
  } else {
    for (const char* suite : {"engine", "channel", "sqds"}) {
      if (!input.contains(suite)) continue;
      for (const auto& cfg : input[suite]) runs.push_back(replay_one(suite, cfg));
    }
  }
  bool pass = true;
  for (const auto& r : runs) pass = pass && r.at("pass").get<bool>();
  return io::json{{"replays", runs}, {"pass", pass}};
}

}  // namespace duality::verify
