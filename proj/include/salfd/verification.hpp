#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "salfd/extraction.hpp"

namespace salfd {

// Per-column agreement over `roi`: half credit for matching color, half for
// depth within `tau_d`. Returns the mean, in [0, 1].
inline double similarity(const ObservationFrame& real, const ObservationFrame& sim,
                         const std::vector<Cell2>& roi, double tau_d) {
  if (!real.same_dims(sim)) throw Error("similarity: frame dims differ");
  if (roi.empty()) throw Error("similarity: empty region of interest");
  double sum = 0.0;
  for (const Cell2& c : roi) {
    if (c.x < 1 || c.y < 1 || c.x > real.width || c.y > real.height) {
      throw Error("similarity: roi cell outside frame");
    }
    const std::size_t i = real.index(c);
    sum += 0.5 * (real.color[i] == sim.color[i]) +
           0.5 * (std::abs(real.depth[i] - sim.depth[i]) <= tau_d);
  }
  return sum / static_cast<double>(roi.size());
}

// Columns of the brick's footprint grown by `margin`, clipped to the plate.
inline std::vector<Cell2> dilated_footprint(const BrickCatalog& catalog, const BrickPlacement& b,
                                            int margin, const Bounds& bounds) {
  const auto cells = footprint(catalog, b);
  int x0 = cells.front().x, x1 = x0, y0 = cells.front().y, y1 = y0;
  for (const Cell& c : cells) {
    x0 = std::min(x0, c.x);
    x1 = std::max(x1, c.x);
    y0 = std::min(y0, c.y);
    y1 = std::max(y1, c.y);
  }
  std::vector<Cell2> roi;
  for (int y = std::max(1, y0 - margin); y <= std::min(bounds.y, y1 + margin); ++y) {
    for (int x = std::max(1, x0 - margin); x <= std::min(bounds.x, x1 + margin); ++x) {
      roi.push_back({x, y});
    }
  }
  return roi;
}

struct VerificationParams {
  double delta_s = 0.97;  // acceptance threshold on s
  double tau_d = 0.5;     // depth tolerance, brick heights
  int margin = 2;         // roi growth around the candidate footprint
};

enum class AcceptedVia { threshold, argmax_fallback };

inline constexpr std::string_view to_string(AcceptedVia v) {
  return v == AcceptedVia::threshold ? "threshold" : "argmax-fallback";
}

struct Trial {
  BrickPlacement candidate;
  double s = 0.0;
};

struct Skip {
  BrickPlacement candidate;
  Verdict verdict;
};

struct VerificationOutcome {
  BrickPlacement accepted;
  double s = 0.0;
  AcceptedVia via = AcceptedVia::threshold;
  std::vector<Trial> trials;  // in tried order
  std::vector<Skip> skipped;  // infeasible candidates, never simulated
};

// Clean internal copy of the structure learned so far.
struct ShadowState {
  Assembly assembly;
  int step = 0;  // operations verified so far
};

class AllCandidatesInfeasible : public Error {
public:
  explicit AllCandidatesInfeasible(std::vector<Skip> skipped)
      : Error("every candidate is infeasible in the current state"), skipped_(std::move(skipped)) {}
  const std::vector<Skip>& skipped() const { return skipped_; }

private:
  std::vector<Skip> skipped_;
};

// Tries candidates in rank order: each feasible one is executed on a copy
// of the shadow state, rendered clean, and compared with the observed
// keyframe. The first with s > delta_s is accepted; if none passes, the
// best-scoring trial is. On return the shadow state includes the accepted brick.
inline VerificationOutcome verify_candidates(ShadowState& state,
                                             const std::vector<CandidateTask>& candidates,
                                             const ObservationFrame& real_kf,
                                             const VerificationParams& params = {}) {
  if (candidates.empty()) throw Error("verify_candidates: empty candidate list");
  VerificationOutcome out;
  std::optional<std::size_t> best;
  std::optional<Assembly> best_state;
  for (const CandidateTask& cand : candidates) {
    Verdict v = state.assembly.check(cand.placement);
    if (!v.ok()) {
      out.skipped.push_back({cand.placement, std::move(v)});
      continue;
    }
    Assembly trial_state = state.assembly.apply(cand.placement);
    const ObservationFrame sim = render_clean(trial_state, real_kf.timestamp);
    const auto roi = dilated_footprint(state.assembly.catalog(), cand.placement, params.margin,
                                       state.assembly.bounds());
    const double s = similarity(real_kf, sim, roi, params.tau_d);
    out.trials.push_back({cand.placement, s});
    if (s > params.delta_s) {
      out.accepted = cand.placement;
      out.s = s;
      out.via = AcceptedVia::threshold;
      state.assembly = std::move(trial_state);
      ++state.step;
      return out;
    }
    if (!best || s > out.trials[*best].s) {
      best = out.trials.size() - 1;
      best_state = std::move(trial_state);
    }
  }
  if (!best) throw AllCandidatesInfeasible(std::move(out.skipped));
  out.accepted = out.trials[*best].candidate;
  out.s = out.trials[*best].s;
  out.via = AcceptedVia::argmax_fallback;
  state.assembly = std::move(*best_state);
  ++state.step;
  return out;
}

}  // namespace salfd
