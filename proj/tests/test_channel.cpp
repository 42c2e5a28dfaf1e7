#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "duality/channel.hpp"
#include "duality/qmath.hpp"

using namespace duality;
using namespace duality::channel;

TEST_CASE("joint distribution") {
  const JointDistribution noiseless = joint_distribution({0.5, 0.0});
  CHECK(noiseless.qp_dp == doctest::Approx(0.5));
  CHECK(noiseless.qp_dm == 0.0);
  CHECK(noiseless.qm_dp == 0.0);
  CHECK(noiseless.qm_dm == doctest::Approx(0.5));

  const JointDistribution sure_sender = joint_distribution({1.0, 0.25});
  CHECK(sure_sender.qp_dp == doctest::Approx(0.75));
  CHECK(sure_sender.qp_dm == doctest::Approx(0.25));
  CHECK(sure_sender.qm_dp == 0.0);
  CHECK(sure_sender.qm_dm == 0.0);

  SeedStream rng(139);
  for (int i = 0; i < 200; ++i) {
    const ChannelConfig cfg{rng.uniform(), rng.uniform()};
    const JointDistribution j = joint_distribution(cfg);
    CHECK(j.qp_dp + j.qp_dm == doctest::Approx(cfg.w_plus).epsilon(1e-15));
    CHECK(j.qm_dp + j.qm_dm == doctest::Approx(cfg.w_minus()).epsilon(1e-15));
    CHECK(j.sum() == doctest::Approx(1.0).epsilon(1e-15));
  }

  CHECK_THROWS_AS(joint_distribution({1.2, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(joint_distribution({0.5, -0.1}), std::invalid_argument);
}

TEST_CASE("sender predictability") {
  CHECK(predictability({0.5, 0.0}) == 0.0);
  CHECK(predictability({1.0, 0.3}) == 1.0);
  CHECK(predictability({0.7, 0.9}) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("likelihoods") {
  CHECK(prior_likelihood({0.5, 0.1}) == 0.5);
  CHECK(prior_likelihood({0.7, 0.1}) == doctest::Approx(0.7));
  CHECK(likelihood_from_distinguishability(1.0) == 1.0);
  CHECK(likelihood_from_distinguishability(0.0) == 0.5);
  CHECK_THROWS_AS(likelihood_from_distinguishability(1.5), std::invalid_argument);

  CHECK(posterior_likelihood({0.3, 0.0}) == doctest::Approx(1.0));
  CHECK(posterior_likelihood({0.7, 0.5}) == doctest::Approx(0.7).epsilon(1e-14));
  // a half-noise channel reduces to the prior bet
  SeedStream rng(149);
  for (int i = 0; i < 100; ++i) {
    const double w = rng.uniform();
    CHECK(posterior_likelihood({w, 0.5}) ==
          doctest::Approx(prior_likelihood({w, 0.5})).epsilon(1e-14));
  }
}

TEST_CASE("channel quality") {
  CHECK(channel_quality({0.3, 0.0}) == 1.0);
  CHECK(channel_quality({0.3, 0.5}) == 0.0);
  CHECK(channel_quality({0.3, 0.1}) == doctest::Approx(0.8).epsilon(1e-14));
  // relabeled channels score identically
  CHECK(channel_quality({0.3, 0.9}) == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("receiver marginals and expectations") {
  const auto [dp, dm] = receiver_marginals({0.7, 0.1});
  CHECK(dp == doctest::Approx(0.66).epsilon(1e-14));
  CHECK(dm == doctest::Approx(0.34).epsilon(1e-14));

  SeedStream rng(151);
  for (int i = 0; i < 100; ++i) {
    const ChannelConfig cfg{rng.uniform(), rng.uniform()};
    CHECK(receiver_expectation(cfg, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    // a fully scrambled channel has flat marginals
    const auto [p, m] = receiver_marginals({cfg.w_plus, 0.5});
    CHECK(p == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m == doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("total distinguishability is Max{P, Q}") {
  CHECK(total_distinguishability({0.5, 0.0}) == 1.0);
  CHECK(total_distinguishability({1.0, 0.37}) == 1.0);
  CHECK(total_distinguishability({0.7, 0.2}) == doctest::Approx(0.6).epsilon(1e-14));

  SeedStream rng(157);
  for (int i = 0; i < 500; ++i) {
    const ChannelConfig cfg{rng.uniform(), rng.uniform()};
    const double d = total_distinguishability(cfg);
    CHECK(d == std::max(predictability(cfg), channel_quality(cfg)));
    CHECK(std::abs(0.5 * (1.0 + d) - posterior_likelihood(cfg)) <= 1e-14);
  }
}

TEST_CASE("identity grid: likelihood vs distinguishability") {
  double worst = 0;
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      const ChannelConfig cfg{i / 100.0, j / 100.0};
      worst = std::max(worst,
                       std::abs(0.5 * (1.0 + total_distinguishability(cfg)) -
                                posterior_likelihood(cfg)));
    }
  CHECK(worst < 1e-14);
}

TEST_CASE("information never hurts the bettor") {
  SeedStream rng(163);
  for (int i = 0; i < 1000; ++i) {
    const ChannelConfig cfg{rng.uniform(), rng.uniform()};
    CHECK(posterior_likelihood(cfg) >= prior_likelihood(cfg) - 1e-15);
  }
}

TEST_CASE("relabeling symmetries") {
  // dyadic grid: w <-> 1-w and e <-> 1-e are exact floating-point involutions
  for (int i = 0; i <= 64; ++i)
    for (int j = 0; j <= 64; ++j) {
      const ChannelConfig cfg{i / 64.0, j / 64.0};
      const ChannelConfig swapped{1.0 - cfg.w_plus, cfg.epsilon};
      const ChannelConfig relabeled{cfg.w_plus, 1.0 - cfg.epsilon};
      CHECK(posterior_likelihood(swapped) == posterior_likelihood(cfg));
      CHECK(posterior_likelihood(relabeled) == posterior_likelihood(cfg));
      CHECK(channel_quality(relabeled) == channel_quality(cfg));
      CHECK(predictability(swapped) == predictability(cfg));
    }
}

TEST_CASE("monte carlo betting") {
  // noiseless channel: the bettor always wins
  CHECK(monte_carlo_bet({0.3, 0.0}, 10000, 2024) == 1.0);
  CHECK(monte_carlo_bet({0.0, 0.0}, 10000, 2024) == 1.0);

  // fully random: win rate 1/2 within the 3-sigma binomial band
  const double coin = monte_carlo_bet({0.5, 0.5}, 1'000'000, 7);
  CHECK(std::abs(coin - 0.5) < 0.0015);

  // determinism
  CHECK(monte_carlo_bet({0.42, 0.17}, 5000, 99) ==
        monte_carlo_bet({0.42, 0.17}, 5000, 99));
  CHECK(monte_carlo_bet({0.42, 0.17}, 5000, 99) !=
        monte_carlo_bet({0.42, 0.17}, 5000, 100));

  CHECK_THROWS_AS(monte_carlo_bet({0.5, 0.5}, 0, 1), std::invalid_argument);

  // seeded configs stay within the binomial bound
  SeedStream rng(167);
  int outside = 0;
  for (int i = 0; i < 20; ++i) {
    const ChannelConfig cfg{rng.uniform(), rng.uniform()};
    const double l = posterior_likelihood(cfg);
    const double emp = monte_carlo_bet(cfg, 100'000, rng.next_u64());
    const double sigma = std::sqrt(std::max(l * (1.0 - l), 1e-12) / 100'000);
    if (std::abs(emp - l) > 3.0 * sigma) ++outside;
  }
  CHECK(outside <= 1);
}
