#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "salfd/salfd.hpp"
#include "support.hpp"

namespace {

using namespace salfd;

const CatalogPtr kCat = BrickCatalog::standard();

TEST(PositionLikelihood, IntegralMeanClosedForm) {
  const double expected = std::pow(2.0 * std::numbers::pi, -1.5) * 1000.0;
  EXPECT_NEAR(expected, 63.4936, 1e-4);
  const double got = position_likelihood({7, 3, 2}, {7.0, 3.0, 2.0});
  EXPECT_NEAR(got / expected - 1.0, 0.0, 1e-12);
}

TEST(PositionLikelihood, MatchesMatrixFormOracle) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(1.0, 20.0), off(-1.5, 1.5);
  for (int k = 0; k < 1000; ++k) {
    const Vec3 mu{u(rng), u(rng), u(rng)};
    const Vec3 p{mu[0] + off(rng), mu[1] + off(rng), mu[2] + off(rng)};
    const Vec3 r = to_vec(round_to_cell(mu));
    const double s = std::max(0.1, std::hypot(mu[0] - r[0], mu[1] - r[1], mu[2] - r[2]));
    const long double ref = oracle::reference_density(p, mu, s);
    const double got = position_density(p, mu);
    EXPECT_NEAR(got / static_cast<double>(ref) - 1.0, 0.0, 1e-9);
  }
}

TEST(PositionLikelihood, StrictDecayAlongRays) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(2.0, 30.0);
  for (int ray = 0; ray < 50; ++ray) {
    const Vec3 mu{u(rng), u(rng), u(rng)};
    Vec3 dir{g(rng), g(rng), g(rng)};
    const double n = std::hypot(dir[0], dir[1], dir[2]);
    for (double& d : dir) d /= n;
    double prev = position_density(mu, mu);
    for (int i = 1; i <= 100; ++i) {
      const double t = 0.01 * i;
      const double f = position_density({mu[0] + t * dir[0], mu[1] + t * dir[1], mu[2] + t * dir[2]}, mu);
      EXPECT_LT(f, prev);
      prev = f;
    }
  }
}

TEST(PositionLikelihood, EquidistantCellsTie) {
  const Vec3 mu{5.5, 5.0, 5.0};
  EXPECT_DOUBLE_EQ(position_likelihood({5, 5, 5}, mu), position_likelihood({6, 5, 5}, mu));
  EXPECT_DOUBLE_EQ(position_likelihood({5, 6, 5}, mu), position_likelihood({6, 4, 5}, mu));
  const Vec3 m2{4.0, 4.0, 4.0};
  EXPECT_DOUBLE_EQ(position_likelihood({5, 4, 4}, m2), position_likelihood({4, 4, 3}, m2));
}

double window_sum(const Vec3& mu) {
  const Cell c = round_to_cell(mu);
  double sum = 0.0;
  for (int dz = -3; dz <= 3; ++dz)
    for (int dy = -3; dy <= 3; ++dy)
      for (int dx = -3; dx <= 3; ++dx) sum += position_likelihood({c.x + dx, c.y + dy, c.z + dz}, mu);
  return sum;
}

TEST(PositionLikelihood, LatticeSumBoundedForWideSigma) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> off(-0.5, 0.5);
  int checked = 0;
  for (int k = 0; k < 5000 && checked < 200; ++k) {
    const Vec3 d{off(rng), off(rng), off(rng)};
    if (std::hypot(d[0], d[1], d[2]) < 0.6) continue;
    ++checked;
    EXPECT_LE(window_sum({10 + d[0], 10 + d[1], 10 + d[2]}), 1.0 + 1e-2);
  }
  EXPECT_GE(checked, 50);
}

TEST(PositionLikelihood, LatticeSumOfSharpDensityIsNotNormalized) {
  // The density is not renormalized over the lattice; with the sigma floor
  // active almost all mass sits on one point.
  EXPECT_NEAR(window_sum({10, 10, 10}), 63.4936, 1e-3);
}

struct Step {
  Assembly before;
  BrickPlacement b;
};

std::vector<Step> random_steps(std::uint64_t seed, int n, const Bounds& bounds) {
  std::mt19937_64 rng(seed);
  std::vector<Step> out;
  while (static_cast<int>(out.size()) < n) {
    const auto seq = oracle::random_sequence(rng, bounds, 15);
    if (seq.empty()) continue;
    out.push_back({build(kCat, bounds, {seq.begin(), seq.end() - 1}), seq.back()});
  }
  return out;
}

TEST(EstimateDelta, ZeroNoiseOracle) {
  const Bounds bounds{20, 20, 8};
  for (const auto& [before, b] : random_steps(41, 300, bounds)) {
    const auto d = estimate_delta(render_clean(before), render_clean(before.apply(b)), 0.5, *kCat, bounds);
    EXPECT_EQ(round_to_cell(d.mu), b.position);
    EXPECT_DOUBLE_EQ(d.mu[0], b.position.x);
    EXPECT_DOUBLE_EQ(d.mu[1], b.position.y);
    EXPECT_DOUBLE_EQ(d.mu[2], b.position.z);
    auto best = std::max_element(d.id_scores.begin(), d.id_scores.end(),
                                 [](auto& x, auto& y) { return x.second < y.second; });
    EXPECT_EQ(best->first, b.id);
    if (kCat->at(b.id).square()) {
      EXPECT_DOUBLE_EQ(d.omega_scores[0], 0.5);
    } else {
      EXPECT_GT(d.omega_scores[to_int(b.omega)], 0.5);
    }
    EXPECT_EQ(d.color, b.color);
    EXPECT_DOUBLE_EQ(d.color_confidence, 1.0);
    EXPECT_EQ(d.changed_cells.size(), footprint(*kCat, b).size());
  }
}

TEST(EstimateDelta, ScoresAreNormalized) {
  for (const auto& [before, b] : random_steps(42, 50, {20, 20, 8})) {
    PipelineConfig cfg;
    const auto noisy_prev = corrupt(render_clean(before, 1), standard_noise(5), {});
    const auto noisy_next = corrupt(render_clean(before.apply(b), 2), standard_noise(5), {});
    try {
      const auto d = estimate_delta(noisy_prev, noisy_next, 0.5, *kCat, {20, 20, 8});
      double s = 0.0;
      for (auto& [id, v] : d.id_scores) s += v;
      EXPECT_NEAR(s, 1.0, 1e-12);
      EXPECT_NEAR(d.omega_scores[0] + d.omega_scores[1], 1.0, 1e-12);
      for (double m : d.mu) {
        EXPECT_GE(m, 0.0);
        EXPECT_LE(m, 21.0);
      }
    } catch (const NoOperationDetected&) {
    }
  }
}

TEST(EstimateDelta, NoChangeThrows) {
  const auto f = render_clean(build(kCat, {}, fixture("ai").events));
  EXPECT_THROW(estimate_delta(f, f, 0.5, *kCat, {}), NoOperationDetected);
  EXPECT_THROW(estimate_delta(f, f, 1.5, *kCat, {}), Error);
  EXPECT_THROW(estimate_delta(f, ObservationFrame(3, 3), 0.5, *kCat, {}), Error);
}

TEST(EstimateDelta, SquareRegionIsAmbiguous) {
  const Assembly a;
  const auto d = estimate_delta(render_clean(a), render_clean(a.apply({{3, 3, 1}, 5, Orientation::along_x, Color::red})),
                                0.5, *kCat, {});
  EXPECT_DOUBLE_EQ(d.omega_scores[0], 0.5);
  EXPECT_DOUBLE_EQ(d.omega_scores[1], 0.5);
}

TEST(EstimateDelta, DarkBrickFallsBackToBlack) {
  const Assembly a;
  auto next = render_clean(a.apply({{3, 3, 1}, 6, Orientation::along_x, Color::blue}));
  for (auto& c : next.color) c = Color::background;
  const auto d = estimate_delta(render_clean(a), next, 0.5, *kCat, {});
  EXPECT_EQ(d.color, Color::black);
  EXPECT_EQ(d.color_confidence, 0.0);
}

TEST(RankCandidates, ZeroNoiseRankOneIsTruth) {
  const Bounds bounds{20, 20, 8};
  for (const auto& [before, b] : random_steps(43, 300, bounds)) {
    const auto d = estimate_delta(render_clean(before), render_clean(before.apply(b)), 0.5, *kCat, bounds);
    const auto c = rank_candidates(d, 20, *kCat, bounds);
    ASSERT_FALSE(c.empty());
    EXPECT_EQ(c.front().placement, b);
  }
}

TEST(RankCandidates, SortedProductsAndCap) {
  const Bounds bounds{20, 20, 8};
  for (const auto& [before, b] : random_steps(44, 100, bounds)) {
    const auto d = estimate_delta(render_clean(before), render_clean(before.apply(b)), 0.5, *kCat, bounds);
    const auto all = rank_candidates(d, 1000, *kCat, bounds);
    for (std::size_t i = 0; i < all.size(); ++i) {
      EXPECT_GT(all[i].f, 0.0);
      EXPECT_DOUBLE_EQ(all[i].f, all[i].f_p * all[i].f_id * all[i].f_omega);
      if (i > 0) {
        EXPECT_GE(all[i - 1].f, all[i].f);
      }
      for (const Cell& cell : footprint(*kCat, all[i].placement)) EXPECT_TRUE(bounds.contains(cell));
    }
    const auto five = rank_candidates(d, 5, *kCat, bounds);
    ASSERT_LE(five.size(), 5u);
    for (std::size_t i = 0; i < five.size(); ++i) EXPECT_EQ(five[i].placement, all[i].placement);
  }
}

TEST(RankCandidates, InvariantUnderIdScoreScaling) {
  const Bounds bounds{20, 20, 8};
  for (const auto& [before, b] : random_steps(45, 100, bounds)) {
    auto d = estimate_delta(render_clean(before), render_clean(before.apply(b)), 0.5, *kCat, bounds);
    const auto base = rank_candidates(d, 50, *kCat, bounds);
    for (double c : {0.25, 8.0}) {
      DeltaEstimate scaled = d;
      for (auto& [id, v] : scaled.id_scores) v *= c;
      const auto got = rank_candidates(scaled, 50, *kCat, bounds);
      ASSERT_EQ(got.size(), base.size());
      for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i].placement, base[i].placement);
    }
  }
}

TEST(RankCandidates, ZeroNoiseCompletenessOnFixtures) {
  const PipelineConfig cfg;
  for (const auto& fx : fixtures()) {
    Assembly state;
    for (const auto& e : fx.events) {
      const Assembly next = state.apply(e);
      const auto d = estimate_delta(render_clean(state), render_clean(next), cfg.tau_c, *kCat, cfg.bounds);
      const auto c = rank_candidates(d, cfg.k_max, *kCat, cfg.bounds);
      EXPECT_TRUE(std::any_of(c.begin(), c.end(), [&](const CandidateTask& t) { return t.placement == e; }))
          << fx.name << " " << to_string(e.position);
      state = next;
    }
  }
}

TEST(RankCandidates, EmptyWindowThrows) {
  DeltaEstimate d;
  d.mu = {100.0, 100.0, 100.0};
  d.id_scores = {{1, 1.0}};
  EXPECT_THROW(rank_candidates(d, 20, *kCat, {}), NoValidCandidate);
}

}  // namespace
