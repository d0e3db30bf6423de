#pragma once

#include <string>
#include <vector>

#include "salfd/pipeline.hpp"

namespace salfd {

enum class Mode { lfd, salfd };

inline constexpr std::string_view to_string(Mode m) { return m == Mode::lfd ? "LfD" : "SaLfD"; }

// One noise level of the sweep. Level 0 is noise-free; the parameters grow
// linearly with the level.
inline NoiseConfig noise_level(int level, std::uint64_t seed = 0) {
  const double k = level;
  return {0.03 * k, 0.02 * k, 0.03 * k, 0.002 * k, seed};
}

inline std::vector<NoiseConfig> default_noise_grid(int levels = 11) {
  std::vector<NoiseConfig> grid;
  for (int k = 0; k < levels; ++k) grid.push_back(noise_level(k));
  return grid;
}

// Calibrated sweep point: the lowest level of default_noise_grid() where
// the mean LfD success over all fixtures (50 seeds) falls in [40%, 90%].
inline constexpr int kStandardNoiseLevel = 4;

inline NoiseConfig standard_noise(std::uint64_t seed = 0) {
  return noise_level(kStandardNoiseLevel, seed);
}

struct MetricsRow {
  std::string fixture;
  std::size_t noise_index = 0;
  NoiseConfig noise;
  Mode mode = Mode::salfd;
  int trials = 0;
  int successes = 0;
  double mean_cost = 0.0;
  double mean_trials_per_step = 0.0;  // verification trials; 0 for LfD

  double success_rate() const { return trials == 0 ? 0.0 : double(successes) / trials; }
};

struct MetricsTable {
  int seeds = 0;
  std::vector<MetricsRow> rows;

  const MetricsRow& find(std::string_view fixture, std::size_t noise_index, Mode mode) const {
    for (const auto& r : rows) {
      if (r.fixture == fixture && r.noise_index == noise_index && r.mode == mode) return r;
    }
    throw Error("metrics: no row for " + std::string(fixture));
  }

  // Mean success rate over fixtures for one (noise point, mode).
  double mean_success(std::size_t noise_index, Mode mode) const {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : rows) {
      if (r.noise_index == noise_index && r.mode == mode) {
        sum += r.success_rate();
        ++n;
      }
    }
    return n == 0 ? 0.0 : sum / n;
  }

  friend bool operator==(const MetricsTable& a, const MetricsTable& b) {
    if (a.seeds != b.seeds || a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      const auto& x = a.rows[i];
      const auto& y = b.rows[i];
      if (x.fixture != y.fixture || x.noise_index != y.noise_index || !(x.noise == y.noise) ||
          x.mode != y.mode || x.trials != y.trials || x.successes != y.successes ||
          x.mean_cost != y.mean_cost || x.mean_trials_per_step != y.mean_trials_per_step) {
        return false;
      }
    }
    return true;
  }
};

// For every (fixture, noise point) runs `seeds` trials; trial t draws its
// sensor noise from seed noise.seed + t. Both modes see the same frames.
inline MetricsTable run_metrics(const std::vector<Fixture>& fixture_list,
                                const std::vector<NoiseConfig>& noise_grid, int seeds,
                                const PipelineConfig& base = {}) {
  if (fixture_list.empty()) throw Error("run_metrics: no fixtures");
  if (noise_grid.empty()) throw Error("run_metrics: empty noise grid");
  if (seeds < 1) throw Error("run_metrics: seeds must be >= 1");

  MetricsTable table;
  table.seeds = seeds;
  for (const Fixture& fx : fixture_list) {
    const Assembly target = build(base.catalog, base.bounds, fx.events);
    for (std::size_t ni = 0; ni < noise_grid.size(); ++ni) {
      MetricsRow rows[2];
      long long total_cost[2] = {0, 0};
      long long verify_trials = 0;
      long long verified_steps = 0;
      for (Mode m : {Mode::lfd, Mode::salfd}) {
        auto& r = rows[static_cast<int>(m)];
        r.fixture = fx.name;
        r.noise_index = ni;
        r.noise = noise_grid[ni];
        r.mode = m;
      }
      for (int t = 0; t < seeds; ++t) {
        PipelineConfig cfg = base;
        cfg.noise = noise_grid[ni];
        cfg.noise.seed = noise_grid[ni].seed + static_cast<std::uint64_t>(t);
        const auto keyframes = keyframes_of(cfg.trace_for(fx.events), cfg);
        for (Mode m : {Mode::lfd, Mode::salfd}) {
          auto& r = rows[static_cast<int>(m)];
          cfg.verification_enabled = m == Mode::salfd;
          ++r.trials;
          try {
            const LearnReport rep = learn_from_keyframes(keyframes, target, cfg);
            r.successes += rep.success;
            total_cost[static_cast<int>(m)] += rep.cost;
            if (m == Mode::salfd) {
              for (const auto& s : rep.per_step) {
                if (s.outcome) {
                  verify_trials += static_cast<long long>(s.outcome->trials.size());
                  ++verified_steps;
                }
              }
            }
          } catch (const KeyframeCountMismatch&) {
            total_cost[static_cast<int>(m)] += static_cast<long long>(target.size());
          }
        }
      }
      for (int m = 0; m < 2; ++m) {
        rows[m].mean_cost = double(total_cost[m]) / seeds;
      }
      rows[1].mean_trials_per_step =
          verified_steps == 0 ? 0.0 : double(verify_trials) / double(verified_steps);
      table.rows.push_back(rows[0]);
      table.rows.push_back(rows[1]);
    }
  }
  return table;
}

inline ordered_json to_json(const MetricsTable& t) {
  ordered_json j;
  j["seeds"] = t.seeds;
  j["rows"] = ordered_json::array();
  for (const auto& r : t.rows) {
    ordered_json row;
    row["fixture"] = r.fixture;
    row["noise_index"] = r.noise_index;
    row["noise"] = to_json(r.noise);
    row["mode"] = std::string(to_string(r.mode));
    row["trials"] = r.trials;
    row["successes"] = r.successes;
    row["success_rate"] = r.success_rate();
    row["mean_cost"] = r.mean_cost;
    row["mean_trials_per_step"] = r.mean_trials_per_step;
    j["rows"].push_back(std::move(row));
  }
  return j;
}

}  // namespace salfd
