// Classical binary communication channel between a two-way sender and a
// binary which-way detector: joint/conditional/marginal probabilities,
// betting likelihoods, channel quality and the Max{P,Q} distinguishability,
// plus a seeded Monte-Carlo betting simulator.
#pragma once

#include <cstdint>
#include <utility>

namespace duality::channel {

struct ChannelConfig {
  double w_plus = 0.5;  // probability of sender symbol q+
  double epsilon = 0.0; // channel error probability

  double w_minus() const { return 1.0 - w_plus; }
};

void validate(const ChannelConfig& cfg);

/// The four joint probabilities p(q, d).
struct JointDistribution {
  double qp_dp = 0.0;
  double qp_dm = 0.0;
  double qm_dp = 0.0;
  double qm_dm = 0.0;

  double sum() const { return qp_dp + qp_dm + qm_dp + qm_dm; }
};

JointDistribution joint_distribution(const ChannelConfig& cfg);

/// P = |2 w+ - 1|, cross-checked against sqrt(2<P> - 1).
double predictability(const ChannelConfig& cfg);

/// Best bet on the sender alone: L = Max{w+, w-} = (1 + P)/2.
double prior_likelihood(const ChannelConfig& cfg);

/// L = (1 + D)/2; rejects D outside [0, 1].
double likelihood_from_distinguishability(double d);

/// Q = |1 - 2 epsilon| (relabel-invariant conditional-probability distance).
double channel_quality(const ChannelConfig& cfg);

/// (P_D(d+), P_D(d-)).
std::pair<double, double> receiver_marginals(const ChannelConfig& cfg);

/// <f> = f(d+) P_D(d+) + f(d-) P_D(d-).
double receiver_expectation(const ChannelConfig& cfg, double f_plus, double f_minus);

/// Likelihood of the maximum-a-posteriori bet after reading the receiver:
/// L = Max{w+(1-e), w- e} + Max{w+ e, w-(1-e)}.
double posterior_likelihood(const ChannelConfig& cfg);

/// D = Max{P, Q}; satisfies posterior_likelihood = (1 + D)/2.
double total_distinguishability(const ChannelConfig& cfg);

/// Win fraction of n_trials simulated bets (sender symbol ~ w±, channel flip
/// ~ epsilon, bettor plays the MAP rule; ties break toward the d-consistent
/// guess). Deterministic given the seed.
double monte_carlo_bet(const ChannelConfig& cfg, std::uint64_t n_trials,
                       std::uint64_t seed);

}  // namespace duality::channel
