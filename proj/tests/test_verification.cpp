#include <random>

#include <gtest/gtest.h>

#include "salfd/salfd.hpp"
#include "support.hpp"

namespace {

using namespace salfd;

const CatalogPtr kCat = BrickCatalog::standard();

std::vector<Cell2> whole(const ObservationFrame& f) {
  std::vector<Cell2> roi;
  for (std::size_t i = 0; i < f.cells(); ++i) roi.push_back(f.cell(i));
  return roi;
}

TEST(Similarity, Extremes) {
  const auto a = render_clean(build(kCat, {10, 10, 4}, {{{1, 1, 1}, 5, Orientation::along_x, Color::red}}));
  EXPECT_DOUBLE_EQ(similarity(a, a, whole(a), 0.5), 1.0);

  ObservationFrame b = a;
  for (std::size_t i = 0; i < b.cells(); ++i) {
    b.color[i] = a.color[i] == Color::green ? Color::red : Color::green;
    b.depth[i] = a.depth[i] + 2.0;
  }
  EXPECT_DOUBLE_EQ(similarity(a, b, whole(a), 0.5), 0.0);

  ObservationFrame c = a;
  for (auto& d : c.depth) d += 0.75;
  EXPECT_DOUBLE_EQ(similarity(a, c, whole(a), 0.5), 0.5);
  EXPECT_THROW(similarity(a, c, {}, 0.5), Error);
}

TEST(SimilarityProperty, SymmetricAndBlindOutsideRoi) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  std::uniform_int_distribution<int> col(0, 8);
  for (int trial = 0; trial < 200; ++trial) {
    ObservationFrame a(8, 8), b(8, 8);
    for (std::size_t i = 0; i < a.cells(); ++i) {
      a.depth[i] = u(rng);
      b.depth[i] = u(rng);
      a.color[i] = static_cast<Color>(col(rng));
      b.color[i] = static_cast<Color>(col(rng));
    }
    const std::vector<Cell2> roi = {{2, 2}, {3, 2}, {2, 3}, {7, 7}};
    const double s = similarity(a, b, roi, 0.5);
    EXPECT_DOUBLE_EQ(s, similarity(b, a, roi, 0.5));
    ObservationFrame b2 = b;
    std::shuffle(b2.depth.begin() + 30, b2.depth.begin() + 40, rng);
    std::shuffle(b2.color.begin() + 30, b2.color.begin() + 40, rng);
    EXPECT_DOUBLE_EQ(similarity(a, b2, roi, 0.5), s);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(DilatedFootprint, ClipsToPlate) {
  const BrickPlacement b{{1, 1, 1}, 6, Orientation::along_x, Color::red};
  EXPECT_EQ(dilated_footprint(*kCat, b, 2, {}).size(), 6u * 4u);
  const BrickPlacement c{{10, 10, 1}, 6, Orientation::along_x, Color::red};
  EXPECT_EQ(dilated_footprint(*kCat, c, 2, {}).size(), 8u * 6u);
}

CandidateTask cand(const BrickPlacement& b) { return {b, 1, 1, 1, 1}; }

TEST(Verify, ZeroNoiseTruthAtTrialOne) {
  ShadowState st{build(kCat, {}, {fixture("spiral").events[0]}), 1};
  const auto truth = fixture("spiral").events[1];
  const auto real = render_clean(st.assembly.apply(truth));
  const auto out = verify_candidates(st, {cand(truth)}, real);
  EXPECT_EQ(out.accepted, truth);
  EXPECT_DOUBLE_EQ(out.s, 1.0);
  EXPECT_EQ(out.via, AcceptedVia::threshold);
  EXPECT_EQ(out.trials.size(), 1u);
  EXPECT_EQ(st.assembly.size(), 2u);
  EXPECT_EQ(st.step, 2);
}

TEST(Verify, FallbackTakesArgmax) {
  ShadowState st{Assembly(), 0};
  const BrickPlacement truth{{10, 10, 1}, 6, Orientation::along_x, Color::red};
  const auto real = render_clean(Assembly().apply(truth));
  std::vector<CandidateTask> cs = {cand({{11, 10, 1}, 6, Orientation::along_x, Color::red}),
                                   cand({{10, 10, 1}, 2, Orientation::along_x, Color::red}),
                                   cand({{30, 30, 1}, 6, Orientation::along_x, Color::red})};
  const auto out = verify_candidates(st, cs, real);
  EXPECT_EQ(out.via, AcceptedVia::argmax_fallback);
  ASSERT_EQ(out.trials.size(), 3u);
  double best = 0.0;
  for (const auto& t : out.trials) {
    EXPECT_LE(t.s, 0.97);
    best = std::max(best, t.s);
  }
  EXPECT_DOUBLE_EQ(out.s, best);
  EXPECT_TRUE(std::any_of(out.trials.begin(), out.trials.end(),
                          [&](const Trial& t) { return t.candidate == out.accepted && t.s == best; }));
  EXPECT_EQ(st.assembly.placements().back(), out.accepted);
}

TEST(Verify, InfeasibleCandidatesAreSkipped) {
  const BrickPlacement base{{10, 10, 1}, 6, Orientation::along_x, Color::red};
  ShadowState st{Assembly().apply(base), 1};
  const BrickPlacement truth{{10, 10, 2}, 6, Orientation::along_x, Color::green};
  const auto real = render_clean(st.assembly.apply(truth));
  const auto out = verify_candidates(
      st, {cand({{10, 10, 1}, 6, Orientation::along_x, Color::green}), cand({{30, 30, 5}, 1, Orientation::along_x, Color::green}), cand(truth)},
      real);
  EXPECT_EQ(out.accepted, truth);
  ASSERT_EQ(out.skipped.size(), 2u);
  EXPECT_EQ(out.skipped[0].verdict.kind, VerdictKind::collision);
  EXPECT_EQ(out.skipped[1].verdict.kind, VerdictKind::unsupported);
  EXPECT_EQ(out.trials.size(), 1u);

  ShadowState st2{Assembly().apply(base), 1};
  EXPECT_THROW(verify_candidates(st2, {cand(base)}, real), AllCandidatesInfeasible);
  EXPECT_EQ(st2.assembly.size(), 1u);
  EXPECT_THROW(verify_candidates(st2, {}, real), Error);
}

TEST(Verify, PerturbedRankOneUnderMildNoise) {
  // Rank-1 is the true brick shifted by a stud; the loop must move past it.
  int accepted_truth = 0;
  const Bounds bounds{20, 20, 8};
  std::mt19937_64 rng(61);
  const NoiseConfig mild{0.05, 0.0, 0.0, 0.0, 0};
  int trials = 0;
  while (trials < 100) {
    const auto seq = oracle::random_sequence(rng, bounds, 10);
    if (seq.empty()) continue;
    const Assembly before = build(kCat, bounds, {seq.begin(), seq.end() - 1});
    const BrickPlacement truth = seq.back();
    BrickPlacement wrong = truth;
    wrong.position.x += truth.position.x > 1 ? -1 : 1;
    if (!before.check(wrong).ok()) continue;
    ++trials;
    NoiseConfig n = mild;
    n.seed = static_cast<std::uint64_t>(trials);
    const auto real = corrupt(render_clean(before.apply(truth), 1), n, {});
    ShadowState st{before, 0};
    const auto out = verify_candidates(st, {cand(wrong), cand(truth)}, real);
    ASSERT_EQ(out.trials.size(), 2u);
    EXPECT_LT(out.trials[0].s, out.trials[1].s);
    accepted_truth += out.accepted == truth;
  }
  EXPECT_EQ(accepted_truth, 100);
}

TEST(VerifyProperty, ZeroNoiseTruthIsUniqueMaximum) {
  // Truth scores 1. Any candidate whose clean render differs from the true
  // render scores < 1. Candidates whose extra studs hide under an overhang
  // render identically and cannot be told apart from above; they are counted
  // separately.
  const Bounds bounds{20, 20, 8};
  std::mt19937_64 rng(71);
  int distinct = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto seq = oracle::random_sequence(rng, bounds, 12);
    if (seq.empty()) continue;
    const Assembly before = build(kCat, bounds, {seq.begin(), seq.end() - 1});
    const BrickPlacement truth = seq.back();
    const auto real = render_clean(before.apply(truth));
    const auto d = estimate_delta(render_clean(before), real, 0.5, *kCat, bounds);
    auto cs = rank_candidates(d, 1000, *kCat, bounds);
    for (std::size_t i = 0, n = cs.size(); i < n; ++i) {
      auto c = cs[i];
      c.placement.color = c.placement.color == Color::red ? Color::white : Color::red;
      cs.push_back(c);
    }
    for (const auto& c : cs) {
      if (!before.check(c.placement).ok()) continue;
      const auto sim = render_clean(before.apply(c.placement));
      const double s = similarity(real, sim, dilated_footprint(*kCat, c.placement, 2, bounds), 0.5);
      if (c.placement == truth) {
        EXPECT_DOUBLE_EQ(s, 1.0);
      } else if (!(sim == real)) {
        ++distinct;
        EXPECT_LT(s, 1.0);
      }
    }
    // Truth ranks first at zero noise, so the loop lands on it.
    ShadowState st{before, 0};
    const auto out = verify_candidates(st, rank_candidates(d, 20, *kCat, bounds), real);
    EXPECT_EQ(out.accepted, truth);
    EXPECT_EQ(out.trials.size(), 1u);
  }
  EXPECT_GT(distinct, 1000);
}

}  // namespace
