#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "duality/sqds.hpp"
#include "duality/verify.hpp"

using namespace duality;
using namespace duality::sqds;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("detecton phase shifters") {
  const auto [u_same_p, u_same_m] = detecton_phase_unitaries(0.9, 0.0);
  CHECK(max_abs_diff(u_same_p, u_same_m) == 0.0);

  const auto [up, um] = detecton_phase_unitaries(0.0, kPi);
  CHECK(max_abs_diff(up, um.adjoint()) < 1e-15);

  SeedStream rng(173);
  for (int i = 0; i < 100; ++i) {
    const auto [a, b] =
        detecton_phase_unitaries(rng.uniform(0.0, 6.28), rng.uniform(0.0, 6.28));
    CHECK(a.is_unitary(1e-14));
    CHECK(b.is_unitary(1e-14));
    CHECK(std::abs(std::abs(a(0, 0)) - 1.0) < 1e-14);
    CHECK(std::abs(a(0, 1)) == 0.0);
  }
}

TEST_CASE("detecton beam splitter") {
  CHECK(max_abs_diff(detecton_after_bs({0, 0, 1}), bloch_to_density({1, 0, 0})) <
        1e-15);
  CHECK(max_abs_diff(detecton_after_bs({1, 0, 0}), bloch_to_density({0, 0, -1})) <
        1e-15);

  SeedStream rng(179);
  for (int i = 0; i < 100; ++i) {
    const auto cfg = verify::random_sqds_config(rng, false);
    CHECK(max_abs_diff(detecton_after_bs(cfg.s_D0),
                       engine::beam_split(bloch_to_density(cfg.s_D0))) < 1e-13);
  }
}

TEST_CASE("detecton way states") {
  SeedStream rng(181);
  auto cfg = verify::random_sqds_config(rng, false);
  cfg.Phi = 0.0;
  const BlochVector same_p = detecton_way_bloch(cfg, +1);
  const BlochVector same_m = detecton_way_bloch(cfg, -1);
  CHECK((same_p - same_m).norm() == 0.0);

  SqdsConfig quarter{{0, 0, 0.3}, {0, 0, 1}, 0.0, 0.0, kPi / 2};
  const BlochVector sp = detecton_way_bloch(quarter, +1);
  CHECK(std::abs(sp.x) < 1e-15);
  CHECK(sp.y == doctest::Approx(1.0));
  const BlochVector sm = detecton_way_bloch(quarter, -1);
  CHECK(sm.y == doctest::Approx(-1.0));

  // engine oracle: U±^dag rho_D^BS U± reproduces the closed-form Bloch vectors
  for (int i = 0; i < 200; ++i) {
    const auto c = verify::random_sqds_config(rng, i % 2 == 0);
    const auto bridged = to_engine_config(c);
    const auto [rp, rm] = engine::detector_way_states(bridged);
    const BlochVector bp = density_to_bloch(rp) - detecton_way_bloch(c, +1);
    const BlochVector bm = density_to_bloch(rm) - detecton_way_bloch(c, -1);
    CHECK(bp.norm() < 1e-12);
    CHECK(bm.norm() < 1e-12);
  }
}

TEST_CASE("qualities") {
  SqdsConfig best{{0.2, 0, 0.5}, {0, 0, 1}, 0.0, 1.3, kPi / 2};
  CHECK(quality_detecton(best) == doctest::Approx(1.0));

  SeedStream rng(191);
  auto decoupled = verify::random_sqds_config(rng, false);
  decoupled.Phi = 0.0;
  CHECK(quality_detecton(decoupled) == 0.0);
  CHECK(quality_quanton(decoupled) == 0.0);

  SqdsConfig mixed{{0, 0, 0.4}, {0.0, 0, 0.8}, 0.0, 0.0, kPi / 6};
  CHECK(quality_detecton(mixed) == doctest::Approx(0.4).epsilon(1e-14));

  // quality never depends on the Quanton state
  for (int i = 0; i < 50; ++i) {
    auto a = verify::random_sqds_config(rng, false);
    auto b = a;
    b.s_Q0 = verify::random_sqds_config(rng, false).s_Q0;
    CHECK(quality_detecton(a) == quality_detecton(b));
  }
}

TEST_CASE("R_Q closed forms and limits") {
  SeedStream rng(193);
  for (int i = 0; i < 200; ++i) {
    auto cfg = verify::random_sqds_config(rng, false);

    auto decoupled = cfg;
    decoupled.Phi = 0.0;
    CHECK(r_q(decoupled) == doctest::Approx(std::abs(decoupled.s_Q0.x) *
                                            decoupled.s_D0.norm())
                                .epsilon(1e-13));

    auto maximal = cfg;
    maximal.Phi = kPi / 2;
    const double pq = std::abs(maximal.s_Q0.x);
    const double pd = std::abs(maximal.s_D0.x);
    const double vd0 = std::abs(maximal.s_D0.z);
    CHECK(r_q(maximal) ==
          doctest::Approx(std::sqrt(pq * pq * pd * pd + vd0 * vd0)).epsilon(1e-13));
  }

  // pure Detecton: R_Q >= P_Q, so R_Q carries the distinguishability
  for (int i = 0; i < 100; ++i) {
    const auto pure = verify::random_sqds_config(rng, true);
    CHECK(r_q(pure) >= std::abs(pure.s_Q0.x) - 1e-12);
    CHECK(distinguishability_q(pure) == doctest::Approx(r_q(pure)));
  }
}

TEST_CASE("distinguishability D_Q") {
  SeedStream rng(197);
  // no a-priori knowledge: D_Q reduces to the quality
  for (int i = 0; i < 100; ++i) {
    auto cfg = verify::random_sqds_config(rng, false);
    cfg.s_Q0.x = 0.0;
    CHECK(distinguishability_q(cfg) ==
          doctest::Approx(quality_detecton(cfg)).epsilon(1e-13));
  }
  // decoupled: D_Q is the predictability alone
  for (int i = 0; i < 100; ++i) {
    auto cfg = verify::random_sqds_config(rng, false);
    cfg.Phi = 0.0;
    CHECK(distinguishability_q(cfg) == doctest::Approx(std::abs(cfg.s_Q0.x)));
  }
  // engine trace-norm oracle
  double worst = 0;
  for (int i = 0; i < 300; ++i) {
    const auto cfg = verify::random_sqds_config(rng, i % 2 == 0);
    worst = std::max(worst,
                     std::abs(engine::distinguishability(to_engine_config(cfg)) -
                              distinguishability_q(cfg)));
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("stringency ratio f_Q") {
  SeedStream rng(199);
  for (int i = 0; i < 100; ++i) {
    auto cfg = verify::random_sqds_config(rng, false);
    cfg.s_Q0.x = 0.0;
    if (distinguishability_q(cfg) < 1.0 - 1e-10)
      CHECK(f_q(cfg) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // axis-aligned pure Detectons carry |s_D0|^2 = 1 exactly
  for (double sx : {0.0, 1.0, -1.0}) {
    const double sz = sx == 0.0 ? 1.0 : 0.0;
    SqdsConfig cfg{{0.4, 0, 0.2}, {sx, 0, sz}, 0.0, 0.7, 0.9};
    if (distinguishability_q(cfg) < 1.0 - 1e-10)
      CHECK(f_q(cfg) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // random circle draws represent |s_D0|^2 = 1 +- ulp, which f_Q amplifies
  // by P_Q^2 / xi; allow for exactly that
  for (int i = 0; i < 100; ++i) {
    auto cfg = verify::random_sqds_config(rng, true);
    if (distinguishability_q(cfg) >= 1.0 - 1e-10) continue;
    const double pq = std::abs(cfg.s_Q0.x);
    const double qd = quality_detecton(cfg);
    const double xi = (1.0 - pq * pq) * (1.0 - qd * qd);
    if (xi > 1e-6) CHECK(f_q(cfg) == doctest::Approx(1.0).epsilon(1e-9));
  }
  // P_Q >= R_Q branch: f_Q = 1 - Q_D^2
  int branch_hits = 0;
  for (int i = 0; i < 500; ++i) {
    const auto cfg = verify::random_sqds_config(rng, false);
    if (std::abs(cfg.s_Q0.x) >= r_q(cfg) &&
        distinguishability_q(cfg) < 1.0 - 1e-10) {
      ++branch_hits;
      const double qd = quality_detecton(cfg);
      CHECK(f_q(cfg) == doctest::Approx(1.0 - qd * qd).epsilon(1e-12));
    }
  }
  CHECK(branch_hits > 10);

  SqdsConfig max_d{{1, 0, 0}, {0, 0, 1}, 0.0, 0.0, kPi / 2};
  CHECK_THROWS_AS(f_q(max_d), std::domain_error);
}

TEST_CASE("contrast and visibilities") {
  SeedStream rng(211);
  auto cfg = verify::random_sqds_config(rng, false);
  cfg.Phi = 0.0;
  CHECK(contrast(cfg) == cplx(1.0, 0.0));
  CHECK(visibility_quanton(cfg) == doctest::Approx(std::abs(cfg.s_Q0.z)));

  SqdsConfig blind{{0, 0, 1}, {0, 0, 0.7}, 0.0, 0.4, kPi / 2};  // P_D = 0
  CHECK(visibility_quanton(blind) < 1e-15);

  double worst = 0;
  for (int i = 0; i < 300; ++i) {
    const auto c = verify::random_sqds_config(rng, i % 2 == 0);
    const auto bridged = to_engine_config(c);
    worst = std::max({worst,
                      std::abs(engine::contrast(bridged.rho_D0, bridged.U_plus,
                                                bridged.U_minus) -
                               contrast(c)),
                      std::abs(engine::visibility(bridged) -
                               visibility_quanton(c))});
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("entropy relations") {
  SeedStream rng(223);
  // pure Detecton at full coupling: maximal WWI wipes out the fringes
  SqdsConfig extract{{0, 0, 0.6}, {0, 0, 1}, 0.0, 0.0, kPi / 2};
  CHECK(quality_detecton(extract) == doctest::Approx(1.0));
  CHECK(visibility_quanton(extract) < 1e-15);
  const auto rel = entropy_relations(extract);
  CHECK(std::abs(rel.at("entropy_gain").value) < 1e-14);
  CHECK(std::abs(rel.at("entropy_gain_pure_detecton").value) < 1e-13);

  // mixed decoupled Detecton still degrades nothing at Phi = 0
  for (int i = 0; i < 200; ++i) {
    const auto cfg = verify::random_sqds_config(rng, false);
    for (const auto& [name, res] : entropy_relations(cfg)) {
      if (!res.skipped) CHECK(std::abs(res.value) < 1e-12);
    }
  }

  // V_Q0 guard
  SqdsConfig longitudinal{{0.4, 0, 0}, {0, 0, 0.5}, 0.0, 0.0, 1.0};
  CHECK(entropy_relations(longitudinal).at("entropy_gain_normalized").skipped);
}

TEST_CASE("reciprocity") {
  SeedStream rng(227);
  for (int i = 0; i < 200; ++i) {
    const auto pure = verify::random_sqds_config(rng, true);
    const auto rec = reciprocity(pure);
    CHECK_FALSE(rec.at("visibility_exchange_pure").skipped);
    CHECK(std::abs(rec.at("visibility_exchange_pure").value) < 1e-12);
  }
  for (int i = 0; i < 200; ++i) {
    auto cfg = verify::random_sqds_config(rng, false);
    cfg.s_Q0.x = 0.0;
    cfg.s_D0.x = 0.0;
    const auto rec = reciprocity(cfg);
    if (!rec.at("visibility_partition").skipped)
      CHECK(std::abs(rec.at("visibility_partition").value) < 1e-12);
    for (const auto& [name, res] : rec)
      if (!res.skipped) CHECK(std::abs(res.value) < 1e-12);
  }

  // unpolarized Quanton, pure Detecton, full coupling: all WWI extracted
  SqdsConfig full{{0, 0, 0}, {0, 0, 1}, 0.0, 0.0, kPi / 2};
  CHECK(quality_detecton(full) == doctest::Approx(1.0));
  CHECK(visibility_detecton(full) < 1e-15);
}

TEST_CASE("quality-contrast identity and bound") {
  SeedStream rng(229);
  for (int i = 0; i < 200; ++i) {
    const auto pure = verify::random_sqds_config(rng, true);
    const double qd = quality_detecton(pure);
    CHECK(std::abs(qd * qd + std::norm(contrast(pure)) - 1.0) < 1e-13);
  }

  SqdsConfig half{{0, 0, 0.3}, {0, 0, 0.5}, 0.0, 0.0, kPi / 2};
  const double sum = quality_detecton(half) * quality_detecton(half) +
                     std::norm(contrast(half));
  CHECK(sum == doctest::Approx(0.25).epsilon(1e-14));

  for (int i = 0; i < 300; ++i) {
    const auto cfg = verify::random_sqds_config(rng, false);
    CHECK(std::abs(pure_state_identity(cfg)) < 1e-13);
    CHECK(mixed_state_bound(cfg) >= -1e-12);
  }
}

TEST_CASE("hierarchy of distinguishability measures") {
  SeedStream rng(233);
  for (int i = 0; i < 300; ++i) {
    const auto cfg = verify::random_sqds_config(rng, i % 2 == 0);
    for (const auto& [name, ok] : hierarchy(cfg)) {
      CAPTURE(name);
      CHECK(ok);
    }
  }
}

TEST_CASE("label swap symmetry") {
  SeedStream rng(239);
  for (int i = 0; i < 200; ++i) {
    const auto cfg = verify::random_sqds_config(rng, false);
    const auto rep = sqds_report(cfg);
    const auto swapped = sqds_report(label_swap(cfg));
    CHECK(swapped.Q_Q == rep.Q_D);
    CHECK(swapped.Q_D == rep.Q_Q);
    CHECK(swapped.V_Q == rep.V_D);
    CHECK(swapped.V_D == rep.V_Q);
    CHECK(swapped.D_Q == rep.D_D);
    CHECK(swapped.D_D == rep.D_Q);
    CHECK(swapped.P_Q == rep.P_D);
    CHECK(swapped.V_Q0 == rep.V_D0);
  }
}

TEST_CASE("bridge: every scalar reproducible through the engine") {
  SeedStream rng(241);
  double worst = 0;
  for (int i = 0; i < 300; ++i) {
    const auto cfg = verify::random_sqds_config(rng, i % 2 == 0);
    const auto rep = sqds_report(cfg);
    const auto bridged = to_engine_config(cfg);
    const auto eng = engine::duality_report(bridged);
    worst = std::max({worst, std::abs(eng.P - rep.P_Q), std::abs(eng.Q - rep.Q_D),
                      std::abs(eng.D - rep.D_Q), std::abs(eng.V - rep.V_Q),
                      std::abs(eng.C - rep.C)});

    // R_Q is the eigenvalue gap of w+ rho_D^+ - w- rho_D^-
    const auto [rp, rm] = engine::detector_way_states(bridged);
    const auto ev = hermitian_eigenvalues(cplx(eng.w_plus) * rp -
                                          cplx(eng.w_minus) * rm);
    worst = std::max(worst, std::abs((ev[0] - ev[1]) - rep.R_Q));

    // the Detecton-side scalars go through the label-swapped bridge
    const auto swapped = engine::duality_report(to_engine_config(label_swap(cfg)));
    worst = std::max({worst, std::abs(swapped.Q - rep.Q_Q),
                      std::abs(swapped.D - rep.D_D),
                      std::abs(swapped.V - rep.V_D),
                      std::abs(swapped.P - rep.P_D)});
  }
  CHECK(worst < 1e-11);

  // full coupling with a unit-visibility Detecton kills the Quanton fringes
  SqdsConfig full{{0.3, 0, 0.4}, {0, 0, 1}, 0.0, 0.9, kPi / 2};
  CHECK(distinguishability_q(full) == doctest::Approx(1.0));
  CHECK(engine::visibility(to_engine_config(full)) < 1e-14);
}

TEST_CASE("sqds report carries the branch flag and residuals") {
  SqdsConfig left{{0.9, 0, 0.1}, {0, 0, 0.5}, 0.0, 0.0, 0.3};  // P_Q dominates
  const auto rl = sqds_report(left);
  CHECK_FALSE(rl.r_exceeds_p);
  CHECK(rl.D_Q == rl.P_Q);

  SqdsConfig right{{0.1, 0, 0.3}, {0, 0, 0.9}, 0.0, 0.0, 1.2};
  const auto rr = sqds_report(right);
  CHECK(rr.r_exceeds_p);
  CHECK(rr.D_Q == rr.R_Q);
  CHECK(rr.f_Q.has_value());

  SqdsConfig undef{{1, 0, 0}, {0, 0, 1}, 0.0, 0.0, kPi / 2};
  CHECK_FALSE(sqds_report(undef).f_Q.has_value());
}

TEST_CASE("sqds validation") {
  SqdsConfig bad_y{{0.1, 0.2, 0.3}, {0, 0, 0.5}, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(validate(bad_y), std::invalid_argument);
  SqdsConfig bad_norm{{1.2, 0, 0.3}, {0, 0, 0.5}, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(validate(bad_norm), std::invalid_argument);
  CHECK_THROWS_AS(detecton_way_bloch({{0, 0, 1}, {0, 0, 1}, 0, 0, 0}, 2),
                  std::invalid_argument);
}
