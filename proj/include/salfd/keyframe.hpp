#pragma once

#include <functional>
#include <vector>

#include "salfd/sensor.hpp"

namespace salfd {

struct FrameLabel {
  bool is_keyframe = false;
  double confidence = 0.0;  // in [0, 1]

  friend bool operator==(const FrameLabel&, const FrameLabel&) = default;
};

// Human-presence detector: a frame is a keyframe when less than
// `occlusion_threshold` of the workspace is covered.
inline FrameLabel classify_frame(const ObservationFrame& frame, double occlusion_threshold) {
  if (!(occlusion_threshold > 0.0 && occlusion_threshold < 1.0)) {
    throw Error("occlusion threshold must lie in (0, 1)");
  }
  if (frame.cells() == 0) return {true, 1.0};
  const double occ = static_cast<double>(frame.occluded_count()) / static_cast<double>(frame.cells());
  return {occ < occlusion_threshold, 1.0 - occ};
}

// Any frame classifier can stand in for the occlusion rule.
using FrameClassifier = std::function<FrameLabel(const ObservationFrame&)>;

inline FrameClassifier occlusion_classifier(double occlusion_threshold) {
  return [occlusion_threshold](const ObservationFrame& f) {
    return classify_frame(f, occlusion_threshold);
  };
}

// Indices of the selected keyframes: for each maximal run of consecutive
// keyframe-labelled frames, the one with the highest confidence (earliest
// on ties).
inline std::vector<std::size_t> sliding_filter_indices(const std::vector<FrameLabel>& labels) {
  std::vector<std::size_t> picked;
  bool in_run = false;
  std::size_t best = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].is_keyframe) {
      if (!in_run || labels[i].confidence > labels[best].confidence) best = i;
      in_run = true;
    } else if (in_run) {
      picked.push_back(best);
      in_run = false;
    }
  }
  if (in_run) picked.push_back(best);
  if (labels.empty()) throw Error("sliding_filter: empty frame stream");
  if (picked.empty()) throw Error("sliding_filter: no keyframe-labelled frames");
  return picked;
}

inline std::vector<ObservationFrame> sliding_filter(const std::vector<FrameLabel>& labels,
                                                    const std::vector<ObservationFrame>& frames) {
  if (labels.size() != frames.size()) throw Error("sliding_filter: label/frame count mismatch");
  std::vector<ObservationFrame> out;
  for (std::size_t i : sliding_filter_indices(labels)) out.push_back(frames[i]);
  return out;
}

inline std::vector<ObservationFrame> extract_keyframes(const std::vector<ObservationFrame>& frames,
                                                       const FrameClassifier& classify) {
  std::vector<FrameLabel> labels;
  labels.reserve(frames.size());
  for (const auto& f : frames) labels.push_back(classify(f));
  return sliding_filter(labels, frames);
}

}  // namespace salfd
