#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "salfd/fixtures.hpp"
#include "salfd/keyframe.hpp"
#include "salfd/plan_json.hpp"
#include "salfd/verification.hpp"

namespace salfd {

struct PipelineConfig {
  CatalogPtr catalog = BrickCatalog::standard();
  Bounds bounds;
  NoiseConfig noise;                   // sensor used for fixture and live traces
  double occlusion_threshold = 0.005;  // keyframe iff occluded fraction is below this
  double tau_c = 0.5;                  // depth rise that counts as change
  std::size_t k_max = 20;              // candidates kept per step
  VerificationParams verification;
  bool verification_enabled = true;    // false: take the rank-1 candidate unchecked
  int frames_per_state = 3;
  int occlusion_frames_per_event = 2;

  void validate() const {
    if (!catalog) throw Error("config: missing catalog");
    noise.validate();
    if (!(occlusion_threshold > 0.0 && occlusion_threshold < 1.0)) {
      throw Error("config: occlusion_threshold must lie in (0, 1)");
    }
    if (!(tau_c > 0.0 && tau_c < 1.0)) throw Error("config: tau_c must lie in (0, 1)");
    if (k_max < 1) throw Error("config: k_max must be >= 1");
    if (!(verification.delta_s >= 0.0 && verification.delta_s <= 1.0)) {
      throw Error("config: delta_s must lie in [0, 1]");
    }
    if (!(verification.tau_d >= 0.0)) throw Error("config: tau_d must be >= 0");
    if (verification.margin < 0) throw Error("config: margin must be >= 0");
    if (frames_per_state < 1 || occlusion_frames_per_event < 0) {
      throw Error("config: frame counts out of range");
    }
  }

  DemonstrationTrace trace_for(const std::vector<BrickPlacement>& events) const {
    return {catalog, bounds, events, noise, frames_per_state, occlusion_frames_per_event};
  }
};

// Outcome of one extracted operation. `outcome` is set only when the
// candidate went through verification.
struct StepReport {
  int step = 0;
  std::size_t candidates = 0;
  std::optional<BrickPlacement> accepted;
  std::optional<VerificationOutcome> outcome;
  std::string error;

  bool ok() const { return error.empty(); }
};

struct LearnReport {
  ConstructionPlan plan;
  std::vector<StepReport> per_step;
  bool success = false;  // learned structure identical to the demonstration
  int cost = 0;          // structure_cost total vs. the demonstration
  double elapsed_ms = 0.0;

  std::size_t failed_steps() const {
    std::size_t n = 0;
    for (const auto& s : per_step) n += !s.ok();
    return n;
  }
};

class KeyframeCountMismatch : public Error {
public:
  KeyframeCountMismatch(std::size_t keyframes, std::size_t events)
      : Error("found " + std::to_string(keyframes) + " keyframes for " + std::to_string(events) +
              " demonstrated operations (expected " + std::to_string(events + 1) + ")") {}
};

// Learns one operation per consecutive keyframe pair and keeps the shadow
// state and the plan built so far.
class Learner {
public:
  explicit Learner(PipelineConfig cfg)
      : cfg_(std::move(cfg)), shadow_{Assembly(cfg_.catalog, cfg_.bounds), 0} {
    cfg_.validate();
    plan_.bounds = cfg_.bounds;
  }

  StepReport step(const ObservationFrame& prev_kf, const ObservationFrame& next_kf) {
    StepReport r;
    r.step = ++steps_;
    try {
      const DeltaEstimate delta =
          estimate_delta(prev_kf, next_kf, cfg_.tau_c, *cfg_.catalog, cfg_.bounds);
      const auto candidates = rank_candidates(delta, cfg_.k_max, *cfg_.catalog, cfg_.bounds);
      r.candidates = candidates.size();
      if (cfg_.verification_enabled) {
        r.outcome = verify_candidates(shadow_, candidates, next_kf, cfg_.verification);
        r.accepted = r.outcome->accepted;
      } else {
        const BrickPlacement& top = candidates.front().placement;
        Verdict v = shadow_.assembly.check(top);
        if (!v.ok()) throw FeasibilityError(std::move(v), "rank-1 candidate");
        shadow_.assembly.push(top);
        ++shadow_.step;
        r.accepted = top;
      }
      plan_.tasks.push_back({static_cast<int>(plan_.tasks.size()) + 1, Action::assemble, *r.accepted});
    } catch (const Error& e) {
      r.error = e.what();
    }
    return r;
  }

  const PipelineConfig& config() const { return cfg_; }
  const Assembly& learned() const { return shadow_.assembly; }
  const ConstructionPlan& plan() const { return plan_; }

private:
  PipelineConfig cfg_;
  ShadowState shadow_;
  ConstructionPlan plan_;
  int steps_ = 0;
};

// Runs extraction (and verification) over an already selected keyframe
// sequence and scores the result against `target`.
inline LearnReport learn_from_keyframes(const std::vector<ObservationFrame>& keyframes,
                                        const Assembly& target, const PipelineConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (keyframes.size() != target.size() + 1) {
    throw KeyframeCountMismatch(keyframes.size(), target.size());
  }
  Learner learner(cfg);
  LearnReport report;
  for (std::size_t i = 0; i + 1 < keyframes.size(); ++i) {
    report.per_step.push_back(learner.step(keyframes[i], keyframes[i + 1]));
  }
  report.plan = learner.plan();
  report.cost = structure_cost(target, learner.learned()).total;
  report.success = report.failed_steps() == 0 && report.cost == 0;
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

inline std::vector<ObservationFrame> keyframes_of(const DemonstrationTrace& trace,
                                                  const PipelineConfig& cfg) {
  return extract_keyframes(expand_demo(trace), occlusion_classifier(cfg.occlusion_threshold));
}

// Full pipeline: expand the demonstration into frames, select keyframes,
// learn each operation. The trace's own sensor settings drive the frames.
inline LearnReport learn(const DemonstrationTrace& trace, PipelineConfig cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.catalog = trace.catalog;
  cfg.bounds = trace.bounds;
  cfg.validate();
  const Assembly target = trace.target();
  LearnReport report = learn_from_keyframes(keyframes_of(trace, cfg), target, cfg);
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

// --- JSON -------------------------------------------------------------------

inline ordered_json to_json(const BrickCatalog& catalog, const VerificationOutcome& o) {
  ordered_json j;
  j["accepted"] = to_json(catalog, o.accepted);
  j["s"] = o.s;
  j["via"] = std::string(to_string(o.via));
  j["trials"] = ordered_json::array();
  for (const Trial& t : o.trials) {
    ordered_json tj;
    tj["candidate"] = to_json(catalog, t.candidate);
    tj["s"] = t.s;
    j["trials"].push_back(std::move(tj));
  }
  j["skipped"] = ordered_json::array();
  for (const Skip& sk : o.skipped) {
    ordered_json sj;
    sj["candidate"] = to_json(catalog, sk.candidate);
    sj["verdict"] = sk.verdict.describe();
    j["skipped"].push_back(std::move(sj));
  }
  return j;
}

inline ordered_json to_json(const BrickCatalog& catalog, const StepReport& r) {
  ordered_json j;
  j["step"] = r.step;
  j["candidates"] = r.candidates;
  j["accepted"] = r.accepted ? to_json(catalog, *r.accepted) : ordered_json();
  if (r.outcome) {
    j["s"] = r.outcome->s;
    j["via"] = std::string(to_string(r.outcome->via));
    j["trials"] = to_json(catalog, *r.outcome)["trials"];
  } else {
    j["via"] = "unverified";
  }
  if (!r.ok()) j["error"] = r.error;
  return j;
}

inline ordered_json to_json(const BrickCatalog& catalog, const LearnReport& r) {
  ordered_json j;
  j["success"] = r.success;
  j["cost"] = r.cost;
  j["elapsed_ms"] = r.elapsed_ms;
  j["steps"] = ordered_json::array();
  for (const auto& s : r.per_step) j["steps"].push_back(to_json(catalog, s));
  return j;
}

// Config document: every key is optional and overrides `cfg`.
inline PipelineConfig config_from_json(const ordered_json& j, PipelineConfig cfg = {}) {
  using detail::require_int;
  using detail::require_number;
  if (!j.is_object()) throw FormatError("config must be a JSON object");
  if (auto it = j.find("bounds"); it != j.end()) {
    const Cell b = detail::parse_triple(*it, "bounds");
    cfg.bounds = {b.x, b.y, b.z};
  }
  if (auto it = j.find("noise"); it != j.end()) cfg.noise = noise_from_json(*it, "noise");
  if (auto it = j.find("occlusion_threshold"); it != j.end()) {
    cfg.occlusion_threshold = require_number(*it, "occlusion_threshold");
  }
  if (auto it = j.find("tau_c"); it != j.end()) cfg.tau_c = require_number(*it, "tau_c");
  if (auto it = j.find("k_max"); it != j.end()) {
    const auto k = require_int(*it, "k_max");
    if (k < 1) throw FormatError("must be >= 1", "k_max");
    cfg.k_max = static_cast<std::size_t>(k);
  }
  if (auto it = j.find("delta_s"); it != j.end()) cfg.verification.delta_s = require_number(*it, "delta_s");
  if (auto it = j.find("tau_d"); it != j.end()) cfg.verification.tau_d = require_number(*it, "tau_d");
  if (auto it = j.find("margin"); it != j.end()) {
    cfg.verification.margin = static_cast<int>(require_int(*it, "margin"));
  }
  if (auto it = j.find("verification_enabled"); it != j.end()) {
    if (!it->is_boolean()) throw FormatError("expected a boolean", "verification_enabled");
    cfg.verification_enabled = it->get<bool>();
  }
  if (auto it = j.find("frames_per_state"); it != j.end()) {
    cfg.frames_per_state = static_cast<int>(require_int(*it, "frames_per_state"));
  }
  if (auto it = j.find("occlusion_frames_per_event"); it != j.end()) {
    cfg.occlusion_frames_per_event = static_cast<int>(require_int(*it, "occlusion_frames_per_event"));
  }
  try {
    cfg.validate();
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
  return cfg;
}

}  // namespace salfd
