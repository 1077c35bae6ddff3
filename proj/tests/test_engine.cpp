#include <gtest/gtest.h>

#include <cmath>

#include "swarmcheck/engine.hpp"
#include "swarmcheck/scenario.hpp"
#include "test_support.hpp"

using namespace swarmcheck;
namespace t = swarmcheck::testing;

namespace {

RunConfig static_square_config() {
  RunConfig c;
  c.scenario.kind = ScenarioKind::Grid;
  c.scenario.spacing = 1.0;
  c.controller = ControllerSpec::make(ControllerKind::Static, 2);
  c.n = 4;
  c.d = 2;
  c.steps = 100;
  c.metrics_every = 10;
  c.mc_samples = 2048;
  c.seed = 5;
  return c;
}

}  // namespace

// --- scenarios --------------------------------------------------------------

TEST(Scenario, GridOfFourIsUnitSquare) {
  Scenario s;
  const auto state = make_scenario(s, 4, 2, 0);
  EXPECT_EQ(state.positions(), t::unit_square());
}

TEST(Scenario, Line) {
  Scenario s;
  s.kind = ScenarioKind::Line;
  s.spacing = 0.5;
  const auto p = make_scenario(s, 3, 2, 0).positions();
  EXPECT_EQ(p, (std::vector<Vec>{Vec{0, 0}, Vec{0.5, 0}, Vec{1.0, 0}}));
}

TEST(Scenario, LineInverseNSpacing) {
  Scenario s;
  s.kind = ScenarioKind::Line;
  s.spacing_scale = SpacingScale::InverseN;
  const auto p = make_scenario(s, 8, 2, 0).positions();
  EXPECT_EQ(p[1][0], 1.0 / 8.0);
}

TEST(Scenario, TwoClustersCentroidsGapApart) {
  Scenario s;
  s.kind = ScenarioKind::TwoClusters;
  s.cluster_gap = 10.0;
  const auto p = make_scenario(s, 4, 2, 0).positions();
  ASSERT_EQ(p.size(), 4u);
  const std::vector<Vec> a(p.begin(), p.begin() + 2), b(p.begin() + 2, p.end());
  const Vec diff = centroid(b) - centroid(a);
  EXPECT_DOUBLE_EQ(diff[0], 10.0);
  EXPECT_DOUBLE_EQ(diff[1], 0.0);
  EXPECT_EQ(min_separation(a), 1.0);
}

TEST(Scenario, TwoClustersGapGrowsWithN) {
  Scenario s;
  s.kind = ScenarioKind::TwoClusters;
  s.cluster_gap = 2.0;
  s.gap_growth = GapGrowth::LinearInN;
  const auto p = make_scenario(s, 8, 2, 0).positions();
  const std::vector<Vec> a(p.begin(), p.begin() + 4), b(p.begin() + 4, p.end());
  EXPECT_DOUBLE_EQ((centroid(b) - centroid(a))[0], 16.0);
}

TEST(Scenario, UniformBoxAndJitterAreSeeded) {
  Scenario s;
  s.kind = ScenarioKind::UniformBox;
  s.extent = 3.0;
  s.velocity_jitter = 0.1;
  const auto a = make_scenario(s, 50, 3, 9);
  const auto b = make_scenario(s, 50, 3, 9);
  const auto c = make_scenario(s, 50, 3, 10);
  EXPECT_EQ(a.positions(), b.positions());
  EXPECT_EQ(a.velocities(), b.velocities());
  EXPECT_NE(a.positions(), c.positions());
  for (const auto& x : a.positions())
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_GE(x[k], 0.0);
      EXPECT_LE(x[k], 3.0);
    }
}

TEST(Scenario, GridTruncatesLattice) {
  Scenario s;
  const auto p = make_scenario(s, 5, 2, 0).positions();
  // 3x3 lattice, first five points in row-major order.
  EXPECT_EQ(p.back(), (Vec{1, 1}));
}

// --- stepping ---------------------------------------------------------------

TEST(Step, PureDrift) {
  auto s = t::make_state({Vec{0, 0}, Vec{50, 0}}, {Vec{1, 0}, Vec{1, 0}});
  const auto spec = ControllerSpec::make(ControllerKind::Static, 2);
  Rng rng(0);
  const auto next = step(s, spec, 0.1, 1e9, rng);
  EXPECT_DOUBLE_EQ(next.time, 0.1);
  EXPECT_EQ(next.agents[0].position, (Vec{0.1, 0}));
  EXPECT_EQ(next.agents[0].velocity, (Vec{1, 0}));
}

TEST(Step, KnownAccelerationFromCuckerSmale) {
  // Two agents, lambda 2, beta 0: a_0 = (2/2)(v1 - v0) = (0, 1) when v1 - v0 = (0, 1).
  auto s = t::make_state({Vec{0, 0}, Vec{3, 0}}, {Vec{1, 0}, Vec{1, 1}});
  const auto spec = ControllerSpec::make(ControllerKind::CuckerSmale, 2, {{"lambda", 2.0}, {"beta", 0.0}});
  Rng rng(0);
  const auto next = step(s, spec, 0.1, 1e9, rng);
  EXPECT_DOUBLE_EQ(next.agents[0].velocity[0], 1.0);
  EXPECT_DOUBLE_EQ(next.agents[0].velocity[1], 0.1);
  EXPECT_DOUBLE_EQ(next.agents[0].position[0], 0.1);
  EXPECT_DOUBLE_EQ(next.agents[0].position[1], 0.01);
}

TEST(Step, SpeedClampPreservesDirection) {
  auto s = t::make_state({Vec{0, 0}, Vec{9, 9}}, {Vec{3, 4}, Vec{0, 0}});
  const auto spec = ControllerSpec::make(ControllerKind::Static, 2);
  Rng rng(0);
  const auto next = step(s, spec, 0.01, 2.5, rng);
  EXPECT_NEAR(norm(next.agents[0].velocity), 2.5, 1e-15);
  EXPECT_NEAR(next.agents[0].velocity[0] / next.agents[0].velocity[1], 0.75, 1e-15);
}

TEST(Step, BlowupIsReported) {
  auto s = t::make_state({Vec{0, 0}, Vec{0.1, 0}});
  const auto spec = ControllerSpec::make(ControllerKind::PotentialFlock, 2, {{"k_pot", 1e308}});
  Rng rng(0);
  try {
    step(s, spec, 0.01, 5.0, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NumericBlowup);
  }
}

// --- run ---------------------------------------------------------------------

TEST(Run, StaticSquareIsConstant) {
  const auto rec = run(static_square_config());
  ASSERT_EQ(rec.samples.size(), 11u);
  for (const auto& row : rec.samples) {
    ASSERT_TRUE(row.energy);
    EXPECT_NEAR(*row.energy, 5.0 / 6.0, 1e-15);
    MetricsSample a = row, b = rec.samples.front();
    a.time = b.time = 0;
    EXPECT_EQ(a, b);
  }
  EXPECT_TRUE(rec.violations.empty());
  EXPECT_EQ(rec.prng_name, "mt19937_64");
}

TEST(Run, StepsZeroGivesOneInitialSample) {
  auto c = static_square_config();
  c.steps = 0;
  const auto rec = run(c);
  ASSERT_EQ(rec.samples.size(), 1u);
  EXPECT_EQ(rec.samples[0].time, 0.0);
}

TEST(Run, DeterministicForFixedConfig) {
  RunConfig c;
  c.scenario.kind = ScenarioKind::UniformBox;
  c.scenario.extent = 6.0;
  c.controller = ControllerSpec::make(ControllerKind::RandomWalk, 2, {{"sigma", 0.5}});
  c.n = 20;
  c.steps = 50;
  c.metrics_every = 5;
  c.mc_samples = 1000;
  c.seed = 1234;
  const auto a = run(c);
  const auto b = run(c);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.violations, b.violations);
}

TEST(Run, RandomWalkBreachesCoherence) {
  RunConfig c;
  c.scenario.spacing = 2.0;
  c.controller = ControllerSpec::make(ControllerKind::RandomWalk, 2, {{"sigma", 5.0}});
  c.n = 16;
  c.steps = 1000;
  c.mc_samples = 256;
  c.seed = 1;
  EXPECT_GE(run(c).count(ViolationKind::CoherenceBreach), 1u);
}

TEST(Run, SeparationBreachAndDegenerateEnergyAreLogged) {
  auto c = static_square_config();
  c.delta = 1.5;
  c.steps = 10;
  auto rec = run(c);
  EXPECT_EQ(rec.count(ViolationKind::SeparationBreach), 2u);

  c = static_square_config();
  c.scenario.spacing = 1e-14;
  c.steps = 0;
  rec = run(c);
  EXPECT_EQ(rec.count(ViolationKind::DegenerateEnergy), 1u);
  EXPECT_FALSE(rec.samples[0].energy);
}

TEST(Run, BlowupCarriesStepIndex) {
  RunConfig c;
  c.scenario.spacing = 0.1;
  c.controller = ControllerSpec::make(ControllerKind::PotentialFlock, 2, {{"k_pot", 1e308}});
  c.n = 4;
  c.steps = 10;
  try {
    run(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NumericBlowup);
    EXPECT_NE(std::string(e.what()).find("step 1"), std::string::npos);
  }
}

TEST(Run, InvalidConfigRejected) {
  auto c = static_square_config();
  c.dt = 0;
  EXPECT_THROW(run(c), Error);
  c = static_square_config();
  c.metrics_every = 0;
  EXPECT_THROW(run(c), Error);
  c = static_square_config();
  c.n = 1;
  EXPECT_THROW(run(c), Error);
}

TEST(Run, ObserverSeesEveryStep) {
  auto c = static_square_config();
  c.steps = 7;
  std::size_t calls = 0;
  run(c, [&](std::size_t s, const SwarmState&) { EXPECT_EQ(s, calls++); });
  EXPECT_EQ(calls, 8u);
}
