// Command-line surface: single-config duality reports, figure-reproduction
// sweeps, classical-channel demos and the seeded verification batch runner.
// JSON in, JSON/CSV out.
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "duality/channel.hpp"
#include "duality/engine.hpp"
#include "duality/json_io.hpp"
#include "duality/sweeps.hpp"
#include "duality/verify.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 42;
constexpr const char* kSeedEnvVar = "DUALITY_SEED";

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnphysical = 3;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedEnvVar)) {
    return std::strtoull(env, nullptr, 10);
  }
  return kDefaultSeed;
}

duality::io::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw duality::io::SchemaError(path, "cannot open input file");
  duality::io::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw duality::io::SchemaError(path, std::string("invalid JSON: ") + e.what());
  }
  return j;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

std::pair<int, int> parse_grid(const std::string& arg) {
  const auto x = arg.find('x');
  if (x == std::string::npos)
    throw duality::io::SchemaError("--grid", "expected NxM, e.g. 101x101");
  int n = 0, m = 0;
  try {
    n = std::stoi(arg.substr(0, x));
    m = std::stoi(arg.substr(x + 1));
  } catch (const std::exception&) {
    throw duality::io::SchemaError("--grid", "expected NxM, e.g. 101x101");
  }
  if (n < 2 || m < 2)
    throw duality::io::SchemaError("--grid", "grid counts must be >= 2");
  return {n, m};
}

int cmd_report(const std::string& in_path, const std::string& out_path) {
  const auto cfg = duality::io::engine_config_from_json(load_json(in_path));
  const auto report = duality::engine::duality_report(cfg);
  write_output(out_path, duality::io::to_json(report).dump(2) + "\n");
  return report.min_slack() >= -1e-9 ? 0 : kExitViolation;
}

int cmd_sweep_fig3(const std::string& grid, const std::string& out_path) {
  const auto [n_p, n_q] = parse_grid(grid);
  write_output(out_path, duality::sweeps::to_csv(duality::sweeps::sweep_fig3(n_p, n_q)));
  return 0;
}

int cmd_sweep_fq(const std::string& grid, const std::string& in_path,
                 const std::string& out_path) {
  const auto [n_p, n_q] = parse_grid(grid);
  double s_norm = 0.882;
  double q_max = -1.0;
  if (!in_path.empty()) {
    const auto j = load_json(in_path);
    if (j.contains("s_norm")) s_norm = j["s_norm"].get<double>();
    if (j.contains("q_max")) q_max = j["q_max"].get<double>();
  }
  write_output(out_path, duality::sweeps::to_csv(
                             duality::sweeps::sweep_fq(n_p, n_q, s_norm, q_max)));
  return 0;
}

int cmd_channel(const std::string& in_path, std::uint64_t n_trials,
                std::uint64_t seed, const std::string& out_path) {
  namespace ch = duality::channel;
  const auto cfg = duality::io::channel_config_from_json(load_json(in_path));
  ch::validate(cfg);

  const double p = ch::predictability(cfg);
  const double q = ch::channel_quality(cfg);
  const double d = ch::total_distinguishability(cfg);
  const double l_prior = ch::prior_likelihood(cfg);
  const double l_post = ch::posterior_likelihood(cfg);
  const double l_emp = ch::monte_carlo_bet(cfg, n_trials, seed);
  const double bound =
      3.0 * std::sqrt(std::max(l_post * (1.0 - l_post), 0.0) /
                      static_cast<double>(n_trials));

  duality::io::json out{{"w_plus", cfg.w_plus},
                        {"epsilon", cfg.epsilon},
                        {"n_trials", n_trials},
                        {"seed", seed},
                        {"P", p},
                        {"Q", q},
                        {"D", d},
                        {"L_prior", l_prior},
                        {"L_posterior", l_post},
                        {"L_empirical", l_emp},
                        {"bound_3sigma", bound},
                        {"pass", std::abs(l_emp - l_post) <= bound}};
  write_output(out_path, out.dump(2) + "\n");
  return 0;
}

int cmd_verify(int samples, std::uint64_t seed, const std::string& in_path,
               const std::string& out_path) {
  if (samples < 1) {
    std::cerr << "verify: --samples must be >= 1\n";
    return kExitUsage;
  }
  duality::io::json out;
  if (!in_path.empty()) {
    out = duality::verify::replay(load_json(in_path));
  } else {
    out = duality::verify::summary_json(duality::verify::run_all(samples, seed),
                                        samples, seed);
  }
  write_output(out_path, out.dump(2) + "\n");
  return out.at("pass").get<bool>() ? 0 : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for wave-particle duality in two-way "
               "interferometers with which-way detectors"};
  app.require_subcommand(1);

  std::string in_path, out_path;
  std::string grid = "101x101";
  std::optional<std::uint64_t> seed_flag;
  std::uint64_t channel_trials = 1'000'000;
  int verify_samples = 1000;

  auto* report = app.add_subcommand("report", "Duality report for one configuration");
  report->add_option("--in", in_path, "configuration JSON")->required();
  report->add_option("--out", out_path, "output path (default: stdout)");

  auto* fig3 = app.add_subcommand(
      "sweep-fig3", "Pure-preparation D^2/V^2 surface over (P, Q), CSV");
  fig3->add_option("--grid", grid, "grid size NxM (default 101x101)");
  fig3->add_option("--out", out_path, "output path (default: stdout)");

  auto* fq = app.add_subcommand(
      "sweep-fq", "Stringency ratio f_Q surface over (P_Q, Q_D), CSV");
  fq->add_option("--grid", grid, "grid size NxM (default 101x101)");
  fq->add_option("--in", in_path, "optional JSON with s_norm and q_max");
  fq->add_option("--out", out_path, "output path (default: stdout)");

  auto* chan = app.add_subcommand(
      "channel", "Classical binary channel quantities and Monte-Carlo bet");
  chan->add_option("--in", in_path, "JSON with w_plus and epsilon")->required();
  chan->add_option("--samples", channel_trials, "number of betting trials");
  chan->add_option("--seed", seed_flag, "RNG seed (default: env DUALITY_SEED or 42)");
  chan->add_option("--out", out_path, "output path (default: stdout)");

  auto* verify = app.add_subcommand(
      "verify", "Run every module invariant on seeded random configurations");
  verify->add_option("--samples", verify_samples, "random configs per suite");
  verify->add_option("--seed", seed_flag, "RNG seed (default: env DUALITY_SEED or 42)");
  verify->add_option("--in", in_path, "replay file (previous summary or config lists)");
  verify->add_option("--out", out_path, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (report->parsed()) return cmd_report(in_path, out_path);
    if (fig3->parsed()) return cmd_sweep_fig3(grid, out_path);
    if (fq->parsed()) return cmd_sweep_fq(grid, in_path, out_path);
    if (chan->parsed())
      return cmd_channel(in_path, channel_trials, resolve_seed(seed_flag), out_path);
    if (verify->parsed())
      return cmd_verify(verify_samples, resolve_seed(seed_flag), in_path, out_path);
  } catch (const duality::io::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitUnphysical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return 0;
}
