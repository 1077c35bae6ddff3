#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "swarmcheck/controllers.hpp"
#include "swarmcheck/spatial_grid.hpp"
#include "test_support.hpp"

using namespace swarmcheck;
namespace t = swarmcheck::testing;

namespace {

Vec sum(const Accelerations& acc) {
  Vec s(acc.front().dim());
  for (const auto& a : acc) s += a;
  return s;
}

SwarmState random_state(std::mt19937_64& rng, std::size_t n, std::size_t d, double extent) {
  auto x = t::random_points(rng, n, d, extent);
  auto v = t::random_points(rng, n, d, 2.0);
  for (auto& vi : v) vi -= Vec(d, 1.0);
  return t::make_state(x, v);
}

}  // namespace

// --- neighbor index ---------------------------------------------------------

TEST(NeighborsWithin, Examples) {
  const std::vector<Vec> close{Vec{0, 0}, Vec{0.5, 0}};
  EXPECT_EQ(neighbors_within(close, 1.0), (std::vector<IndexPair>{{0, 1}}));
  const std::vector<Vec> far{Vec{0, 0}, Vec{5, 0}};
  EXPECT_TRUE(neighbors_within(far, 1.0).empty());
}

TEST(NeighborsWithin, MatchesBruteForce) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 1 + trial % 3;
    auto p = t::random_points(rng, 200, d, 1.0 + trial % 5);
    const double r = 0.3;
    const auto pairs = neighbors_within(p, r);
    EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end()));
    EXPECT_EQ(std::set<IndexPair>(pairs.begin(), pairs.end()), t::brute_pairs(p, r));
    EXPECT_EQ(pairs.size(), t::brute_pairs(p, r).size());
  }
}

TEST(NeighborsWithin, NegativeCoordinatesAndHighDimension) {
  std::mt19937_64 rng(43);
  auto p = t::random_points(rng, 150, 2, 4.0);
  for (auto& x : p) x -= Vec{2.0, 2.0};
  const auto near = neighbors_within(p, 0.45);
  EXPECT_EQ(std::set<IndexPair>(near.begin(), near.end()), t::brute_pairs(p, 0.45));
  // 3^8 neighbor cells exceed n, so this takes the scan path.
  auto q = t::random_points(rng, 60, 8, 1.0);
  const auto pairs = neighbors_within(q, 0.9);
  EXPECT_EQ(std::set<IndexPair>(pairs.begin(), pairs.end()), t::brute_pairs(q, 0.9));
}

// --- Cucker-Smale ------------------------------------------------------------

TEST(CuckerSmale, IdenticalVelocitiesGiveZero) {
  std::mt19937_64 rng(1);
  auto s = t::make_state(t::random_points(rng, 10, 2, 5.0), std::vector<Vec>(10, Vec{0.3, -1.0}));
  for (const auto& a : cucker_smale_accel(s, 1.0, 0.5)) EXPECT_EQ(a, (Vec{0, 0}));
}

TEST(CuckerSmale, TwoAgentExample) {
  const auto s = t::make_state({Vec{0, 0}, Vec{1, 0}}, {Vec{1, 0}, Vec{-1, 0}});
  const auto a = cucker_smale_accel(s, 1.0, 0.0);
  EXPECT_EQ(a[0], (Vec{-1, 0}));
  EXPECT_EQ(a[1], (Vec{1, 0}));
}

TEST(CuckerSmale, AccelerationsSumToZero) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_state(rng, 2 + trial, 2, 6.0);
    const Vec total = sum(cucker_smale_accel(s, 1.3, 0.7));
    EXPECT_NEAR(total[0], 0.0, 1e-13);
    EXPECT_NEAR(total[1], 0.0, 1e-13);
  }
}

// --- boids -------------------------------------------------------------------

TEST(Boids, SingleAgentAtMigrationVelocity) {
  const auto s = t::make_state({Vec{4, 4}}, {Vec{1, 0}});
  EXPECT_EQ(boids_accel(s, {}, Vec{1, 0})[0], (Vec{0, 0}));
}

TEST(Boids, MirroredPairSepCohAntisymmetric) {
  const BoidsParams p{1.5, 0.0, 0.8, 1.0, 3.0, 0.0};
  const auto s = t::make_state({Vec{-0.4, 0.1}, Vec{0.4, -0.1}}, {Vec{0.2, 0.3}, Vec{-0.2, -0.3}});
  const auto a = boids_accel(s, p, Vec{1, 0});
  EXPECT_NEAR(a[0][0], -a[1][0], 1e-15);
  EXPECT_NEAR(a[0][1], -a[1][1], 1e-15);
}

TEST(Boids, FarApartWithoutMigrationIsZero) {
  const BoidsParams p{1.5, 1.0, 0.8, 1.0, 3.0, 0.0};
  const auto s = t::make_state({Vec{0, 0}, Vec{10, 0}}, {Vec{1, 0}, Vec{0, 1}});
  for (const auto& a : boids_accel(s, p, Vec{1, 0})) EXPECT_EQ(a, (Vec{0, 0}));
}

TEST(Boids, CoincidentNeighborsThrow) {
  const auto s = t::make_state({Vec{1, 1}, Vec{1, 1}});
  try {
    boids_accel(s, {}, Vec{1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateDistance);
  }
}

// --- potential flock --------------------------------------------------------

TEST(PotentialFlock, EquilibriumSpacingIsStill) {
  const PotentialParams p{1.0, 1.0, 0.5, 2.5, 0.5};
  const auto s = t::make_state({Vec{0, 0}, Vec{1, 0}}, {Vec{1, 0}, Vec{1, 0}});
  for (const auto& a : potential_flock_accel(s, p, Vec{1, 0})) EXPECT_EQ(a, (Vec{0, 0}));
}

TEST(PotentialFlock, RepulsionAndAttraction) {
  const PotentialParams p{1.0, 1.0, 0.0, 2.5, 0.0};
  auto close = potential_flock_accel(t::make_state({Vec{0, 0}, Vec{0.5, 0}}), p, Vec{1, 0});
  EXPECT_LT(close[0][0], 0.0);
  EXPECT_GT(close[1][0], 0.0);
  auto far = potential_flock_accel(t::make_state({Vec{0, 0}, Vec{2.0, 0}}), p, Vec{1, 0});
  EXPECT_GT(far[0][0], 0.0);
  EXPECT_LT(far[1][0], 0.0);
  auto beyond = potential_flock_accel(t::make_state({Vec{0, 0}, Vec{3.0, 0}}), p, Vec{1, 0});
  EXPECT_EQ(beyond[0], (Vec{0, 0}));
}

TEST(PotentialFlock, NewtonsThirdLaw) {
  std::mt19937_64 rng(3);
  const PotentialParams p{1.0, 1.0, 0.0, 2.5, 0.0};
  for (int trial = 0; trial < 30; ++trial) {
    auto s = random_state(rng, 5 + trial, 2, 5.0);
    const Vec total = sum(potential_flock_accel(s, p, Vec{1, 0}));
    EXPECT_NEAR(total[0], 0.0, 1e-10);
    EXPECT_NEAR(total[1], 0.0, 1e-10);
  }
}

// --- random walk and static -------------------------------------------------

TEST(RandomWalk, ZeroSigmaIsZero) {
  Rng rng(1);
  const auto s = t::make_state(t::unit_square());
  for (const auto& a : random_walk_accel(s, 0.0, rng)) EXPECT_EQ(a, (Vec{0, 0}));
}

TEST(RandomWalk, DeterministicForSameStream) {
  const auto s = t::make_state(t::unit_square());
  Rng a(77), b(77);
  EXPECT_EQ(random_walk_accel(s, 2.0, a), random_walk_accel(s, 2.0, b));
}

TEST(RandomWalk, EmpiricalStdWithinTwoPercent) {
  const double sigma = 1.7;
  const auto s = t::make_state(std::vector<Vec>(1000, Vec{0, 0}));
  Rng rng(2024);
  double sum2[2] = {0, 0}, sum1[2] = {0, 0};
  const int rounds = 50;  // 50 x 1000 agents x 2 components = 1e5 draws
  for (int r = 0; r < rounds; ++r) {
    for (const auto& a : random_walk_accel(s, sigma, rng)) {
      for (int k = 0; k < 2; ++k) {
        sum1[k] += a[k];
        sum2[k] += a[k] * a[k];
      }
    }
  }
  const double m = rounds * 1000.0;
  for (int k = 0; k < 2; ++k) {
    const double sd = std::sqrt(sum2[k] / m - (sum1[k] / m) * (sum1[k] / m));
    EXPECT_NEAR(sd, sigma, 0.02 * sigma);
  }
}

TEST(Static, AlwaysZero) {
  std::mt19937_64 rng(4);
  auto s = random_state(rng, 7, 3, 2.0);
  for (const auto& a : static_accel(s)) EXPECT_EQ(a, Vec(3));
}

// --- shared symmetry properties ---------------------------------------------

TEST(Controllers, RotationEquivariantAndTranslationInvariant) {
  std::mt19937_64 rng(5);
  for (auto kind : {ControllerKind::CuckerSmale, ControllerKind::Boids, ControllerKind::PotentialFlock,
                    ControllerKind::Static}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto s = random_state(rng, 12, 2, 4.0);
      auto spec = ControllerSpec::make(kind, 2);
      spec.migration_velocity = Vec{0.7, -0.2};
      Rng unused(0);
      const auto base = accelerations(s, spec, unused);

      const auto rot = t::random_orthogonal(rng, 2);
      SwarmState rs = s, ts = s;
      for (auto& a : rs.agents) {
        a.position = rot(a.position);
        a.velocity = rot(a.velocity);
      }
      for (auto& a : ts.agents) a.position += Vec{13.0, -7.5};
      auto rspec = spec;
      rspec.migration_velocity = rot(spec.migration_velocity);

      const auto rotated = accelerations(rs, rspec, unused);
      const auto moved = accelerations(ts, spec, unused);
      for (std::size_t i = 0; i < s.size(); ++i) {
        const Vec expect = rot(base[i]);
        const double scale = 1.0 + norm(base[i]);
        for (std::size_t k = 0; k < 2; ++k) {
          EXPECT_NEAR(rotated[i][k], expect[k], 1e-9 * scale) << to_string(kind);
          EXPECT_NEAR(moved[i][k], base[i][k], 1e-9 * scale) << to_string(kind);
        }
      }
    }
  }
}

TEST(ControllerSpec, ValidationCatchesBadParams) {
  auto spec = ControllerSpec::make(ControllerKind::PotentialFlock, 2, {{"r_cut", 0.5}});
  EXPECT_THROW(validate(spec, 2), Error);
  spec = ControllerSpec::make(ControllerKind::Boids, 2, {{"bogus", 1.0}});
  EXPECT_THROW(validate(spec, 2), Error);
  spec = ControllerSpec::make(ControllerKind::CuckerSmale, 2);
  spec.params.erase("beta");
  EXPECT_THROW(validate(spec, 2), Error);
  spec = ControllerSpec::make(ControllerKind::CuckerSmale, 3);
  EXPECT_THROW(validate(spec, 2), Error);
  EXPECT_NO_THROW(validate(ControllerSpec::make(ControllerKind::Boids, 2), 2));
  EXPECT_THROW(controller_kind_from_string("flocky"), Error);
}
