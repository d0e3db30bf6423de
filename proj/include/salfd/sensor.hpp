#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "salfd/assembly.hpp"
#include "salfd/plan_json.hpp"

namespace salfd {

// Top-down RGB-D stand-in: per column the visible color, the height of the
// visible surface in brick heights (baseplate = 0) and whether a hand covers it.
struct ObservationFrame {
  int width = 0;   // X
  int height = 0;  // Y
  std::vector<Color> color;
  std::vector<double> depth;
  std::vector<std::uint8_t> occlusion;
  long long timestamp = 0;

  ObservationFrame() = default;
  ObservationFrame(int x, int y, long long t = 0)
      : width(x),
        height(y),
        color(static_cast<std::size_t>(x) * y, Color::background),
        depth(static_cast<std::size_t>(x) * y, 0.0),
        occlusion(static_cast<std::size_t>(x) * y, 0),
        timestamp(t) {}

  std::size_t cells() const { return color.size(); }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y - 1) * width + static_cast<std::size_t>(x - 1);
  }
  std::size_t index(const Cell2& c) const { return index(c.x, c.y); }
  Cell2 cell(std::size_t i) const {
    return {static_cast<int>(i % width) + 1, static_cast<int>(i / width) + 1};
  }
  bool same_dims(const ObservationFrame& o) const { return width == o.width && height == o.height; }
  std::size_t occluded_count() const {
    std::size_t n = 0;
    for (auto v : occlusion) n += v != 0;
    return n;
  }

  friend bool operator==(const ObservationFrame&, const ObservationFrame&) = default;
};

struct NoiseConfig {
  double sigma_depth = 0.0;  // per-cell depth noise std, brick heights
  double sigma_bias = 0.0;   // per-brick depth offset std, brick heights
  double p_dark = 0.0;       // dark brick cell reads as background
  double p_flip = 0.0;       // cell color reads as a neighbouring palette color
  std::uint64_t seed = 0;

  friend bool operator==(const NoiseConfig&, const NoiseConfig&) = default;

  void validate() const {
    if (!(sigma_depth >= 0.0) || !(sigma_bias >= 0.0)) throw Error("noise sigmas must be >= 0");
    if (!(p_dark >= 0.0 && p_dark <= 1.0) || !(p_flip >= 0.0 && p_flip <= 1.0)) {
      throw Error("noise probabilities must be in [0, 1]");
    }
  }
  bool is_zero() const {
    return sigma_depth == 0.0 && sigma_bias == 0.0 && p_dark == 0.0 && p_flip == 0.0;
  }
};

namespace detail {

inline constexpr std::uint64_t kBiasStream = 0xb1a5;
inline constexpr std::uint64_t kFrameStream = 0xf7a3e;

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace detail

// Depth offset of the `brick`-th placed brick. Fixed for a given seed, so
// every frame of one trace sees the same offset for the same brick.
inline double brick_bias(const NoiseConfig& cfg, std::size_t brick) {
  if (cfg.sigma_bias == 0.0) return 0.0;
  auto rng = detail::make_rng(cfg.seed, detail::kBiasStream, brick);
  return std::normal_distribution<double>(0.0, cfg.sigma_bias)(rng);
}

inline ObservationFrame render_clean(const Assembly& assembly, long long timestamp = 0) {
  const Bounds& b = assembly.bounds();
  ObservationFrame f(b.x, b.y, timestamp);
  for (int y = 1; y <= b.y; ++y) {
    for (int x = 1; x <= b.x; ++x) {
      const int z = assembly.top(x, y);
      if (z == 0) continue;
      const auto i = f.index(x, y);
      f.depth[i] = z;
      f.color[i] = assembly.placements()[static_cast<std::size_t>(assembly.at({x, y, z}))].color;
    }
  }
  return f;
}

// Per-column depth offset of whichever brick is visible there (0 on bare plate).
inline std::vector<double> bias_map(const Assembly& assembly, const std::vector<double>& biases) {
  const Bounds& b = assembly.bounds();
  std::vector<double> out(b.columns(), 0.0);
  for (int y = 1; y <= b.y; ++y) {
    for (int x = 1; x <= b.x; ++x) {
      const int z = assembly.top(x, y);
      if (z == 0) continue;
      const auto idx = static_cast<std::size_t>(assembly.at({x, y, z}));
      if (idx < biases.size()) out[static_cast<std::size_t>(y - 1) * b.x + (x - 1)] = biases[idx];
    }
  }
  return out;
}

// Applies depth offsets, per-cell depth noise, dark-color dropout and palette
// flips. The random stream is keyed by (cfg.seed, frame.timestamp), so the
// result is reproducible. The occlusion mask is never touched.
inline ObservationFrame corrupt(ObservationFrame frame, const NoiseConfig& cfg,
                                const std::vector<double>& brick_bias_map) {
  cfg.validate();
  if (!brick_bias_map.empty() && brick_bias_map.size() != frame.cells()) {
    throw Error("bias map size does not match frame");
  }
  auto rng = detail::make_rng(cfg.seed, detail::kFrameStream,
                              static_cast<std::uint64_t>(frame.timestamp));
  std::normal_distribution<double> depth_noise(0.0, cfg.sigma_depth > 0.0 ? cfg.sigma_depth : 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < frame.cells(); ++i) {
    if (!brick_bias_map.empty()) frame.depth[i] += brick_bias_map[i];
    if (cfg.sigma_depth > 0.0) frame.depth[i] += depth_noise(rng);

    Color& c = frame.color[i];
    if (cfg.p_dark > 0.0 && is_dark(c) && unit(rng) < cfg.p_dark) {
      c = Color::background;
      continue;
    }
    if (cfg.p_flip > 0.0 && c != Color::background && unit(rng) < cfg.p_flip) {
      const int n = static_cast<int>(kPalette.size());
      const int step = unit(rng) < 0.5 ? n - 1 : 1;
      c = kPalette[static_cast<std::size_t>((palette_index(c) + step) % n)];
    }
  }
  return frame;
}

struct DemonstrationTrace {
  CatalogPtr catalog = BrickCatalog::standard();
  Bounds bounds;
  std::vector<BrickPlacement> events;
  NoiseConfig sensor;
  int frames_per_state = 3;
  int occlusion_frames_per_event = 2;

  Assembly target() const { return build(catalog, bounds, events); }
};

// Hand blob = event footprint grown by this many columns in x and y.
inline constexpr int kOcclusionMargin = 3;

// Incremental frame generator for a demonstration. Produces exactly the
// frames expand_demo would, one event at a time.
class DemoStream {
public:
  DemoStream(CatalogPtr catalog, Bounds bounds, NoiseConfig sensor, int frames_per_state,
             int occlusion_frames_per_event)
      : state_(std::move(catalog), bounds),
        sensor_(sensor),
        frames_per_state_(frames_per_state),
        occlusion_frames_(occlusion_frames_per_event) {
    sensor_.validate();
    if (frames_per_state_ < 1) throw Error("frames_per_state must be >= 1");
    if (occlusion_frames_ < 0) throw Error("occlusion_frames_per_event must be >= 0");
  }

  // Settled frames of the empty workspace.
  std::vector<ObservationFrame> start() {
    std::vector<ObservationFrame> out;
    emit_settled(out);
    return out;
  }

  // Occlusion frames for the hand placing `event`, then settled frames of the
  // new state. Throws FeasibilityError and leaves the stream unchanged if the
  // event cannot be placed.
  std::vector<ObservationFrame> place(const BrickPlacement& event) {
    Verdict v = state_.check(event);
    if (!v.ok()) throw FeasibilityError(std::move(v), "event " + std::to_string(state_.size() + 1));

    std::vector<ObservationFrame> out;
    const auto before_bias = bias_map(state_, biases_);
    const Bounds& b = state_.bounds();
    std::vector<std::uint8_t> mask(b.columns(), 0);
    for (const Cell& c : footprint(state_.catalog(), event)) {
      for (int y = c.y - kOcclusionMargin; y <= c.y + kOcclusionMargin; ++y) {
        for (int x = c.x - kOcclusionMargin; x <= c.x + kOcclusionMargin; ++x) {
          if (b.contains(Cell2{x, y})) mask[static_cast<std::size_t>(y - 1) * b.x + (x - 1)] = 1;
        }
      }
    }
    for (int k = 0; k < occlusion_frames_; ++k) {
      ObservationFrame f = render_clean(state_, timestamp_++);
      f.occlusion = mask;
      out.push_back(corrupt(std::move(f), sensor_, before_bias));
    }

    state_.push(event);
    biases_.push_back(brick_bias(sensor_, biases_.size()));
    emit_settled(out);
    return out;
  }

  const Assembly& state() const { return state_; }
  long long frames_emitted() const { return timestamp_; }

private:
  void emit_settled(std::vector<ObservationFrame>& out) {
    const auto bias = bias_map(state_, biases_);
    for (int k = 0; k < frames_per_state_; ++k) {
      out.push_back(corrupt(render_clean(state_, timestamp_++), sensor_, bias));
    }
  }

  Assembly state_;
  NoiseConfig sensor_;
  int frames_per_state_;
  int occlusion_frames_;
  std::vector<double> biases_;
  long long timestamp_ = 0;
};

inline std::vector<ObservationFrame> expand_demo(const DemonstrationTrace& trace) {
  DemoStream stream(trace.catalog, trace.bounds, trace.sensor, trace.frames_per_state,
                    trace.occlusion_frames_per_event);
  auto frames = stream.start();
  for (const BrickPlacement& e : trace.events) {
    auto more = stream.place(e);
    frames.insert(frames.end(), std::make_move_iterator(more.begin()),
                  std::make_move_iterator(more.end()));
  }
  return frames;
}

// --- JSON -------------------------------------------------------------------

inline ordered_json to_json(const NoiseConfig& n) {
  ordered_json j;
  j["sigma_depth"] = n.sigma_depth;
  j["sigma_bias"] = n.sigma_bias;
  j["p_dark"] = n.p_dark;
  j["p_flip"] = n.p_flip;
  j["seed"] = n.seed;
  return j;
}

// Missing keys keep their defaults.
inline NoiseConfig noise_from_json(const ordered_json& j, const std::string& path = "sensor") {
  if (!j.is_object()) throw FormatError("expected an object", path);
  NoiseConfig n;
  auto num = [&](const char* key, double& out) {
    if (auto it = j.find(key); it != j.end()) out = detail::require_number(*it, path + "." + key);
  };
  num("sigma_depth", n.sigma_depth);
  num("sigma_bias", n.sigma_bias);
  num("p_dark", n.p_dark);
  num("p_flip", n.p_flip);
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0)) {
      throw FormatError("expected a non-negative integer", path + ".seed");
    }
    n.seed = it->get<std::uint64_t>();
  }
  try {
    n.validate();
  } catch (const Error& e) {
    throw FormatError(e.what(), path);
  }
  return n;
}

inline ordered_json to_json(const DemonstrationTrace& t) {
  ordered_json j;
  j["bounds"] = {t.bounds.x, t.bounds.y, t.bounds.z};
  j["events"] = ordered_json::array();
  for (const auto& e : t.events) j["events"].push_back(to_json(*t.catalog, e));
  j["sensor"] = to_json(t.sensor);
  j["frames_per_state"] = t.frames_per_state;
  j["occlusion_frames_per_event"] = t.occlusion_frames_per_event;
  return j;
}

inline DemonstrationTrace parse_trace(std::string_view text,
                                      const CatalogPtr& catalog = BrickCatalog::standard()) {
  using namespace detail;
  const ordered_json doc = parse_document(text);
  if (!doc.is_object()) throw FormatError("trace must be a JSON object");
  DemonstrationTrace t;
  t.catalog = catalog;
  if (auto it = doc.find("bounds"); it != doc.end()) {
    const Cell b = parse_triple(*it, "bounds");
    if (b.x < 1 || b.y < 1 || b.z < 1) throw FormatError("bounds must be positive", "bounds");
    t.bounds = {b.x, b.y, b.z};
  }
  const auto& events = require(doc, "events", "");
  if (!events.is_array()) throw FormatError("expected an array", "events");
  for (std::size_t i = 0; i < events.size(); ++i) {
    t.events.push_back(placement_from_json(*catalog, events[i], "events[" + std::to_string(i) + "]"));
  }
  if (auto it = doc.find("sensor"); it != doc.end()) t.sensor = noise_from_json(*it);
  if (auto it = doc.find("frames_per_state"); it != doc.end()) {
    t.frames_per_state = static_cast<int>(require_int(*it, "frames_per_state"));
    if (t.frames_per_state < 1) throw FormatError("must be >= 1", "frames_per_state");
  }
  if (auto it = doc.find("occlusion_frames_per_event"); it != doc.end()) {
    t.occlusion_frames_per_event = static_cast<int>(require_int(*it, "occlusion_frames_per_event"));
    if (t.occlusion_frames_per_event < 0) throw FormatError("must be >= 0", "occlusion_frames_per_event");
  }
  // Event sequence must build.
  Assembly a(catalog, t.bounds);
  for (std::size_t i = 0; i < t.events.size(); ++i) {
    Verdict v = a.check(t.events[i]);
    if (!v.ok()) throw FeasibilityError(std::move(v), "events[" + std::to_string(i) + "]");
    a.push(t.events[i]);
  }
  return t;
}

inline ordered_json to_json(const ObservationFrame& f) {
  ordered_json j;
  j["timestamp"] = f.timestamp;
  j["width"] = f.width;
  j["height"] = f.height;
  auto& depth = j["depth"] = ordered_json::array();
  auto& color = j["color"] = ordered_json::array();
  auto& occ = j["occlusion"] = ordered_json::array();
  for (std::size_t i = 0; i < f.cells(); ++i) {
    depth.push_back(f.depth[i]);
    color.push_back(std::string(to_string(f.color[i])));
    occ.push_back(f.occlusion[i] != 0);
  }
  return j;
}

}  // namespace salfd
