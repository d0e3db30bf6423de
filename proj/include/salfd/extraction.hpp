#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "salfd/sensor.hpp"

namespace salfd {

using Vec3 = std::array<double, 3>;

inline Vec3 to_vec(const Cell& c) { return {double(c.x), double(c.y), double(c.z)}; }

// Nearest lattice point (halves round away from zero).
inline Cell round_to_cell(const Vec3& v) {
  return {static_cast<int>(std::lround(v[0])), static_cast<int>(std::lround(v[1])),
          static_cast<int>(std::lround(v[2]))};
}

class NoOperationDetected : public Error {
public:
  NoOperationDetected() : Error("no brick operation detected between keyframes") {}
};

class NoValidCandidate : public Error {
public:
  NoValidCandidate() : Error("no valid candidate in the search window") {}
};

struct DeltaEstimate {
  Vec3 mu{};                                    // anchor estimate (x, y, z)
  std::vector<std::pair<BrickId, double>> id_scores;  // ordered by id
  std::array<double, 2> omega_scores{0.5, 0.5};  // indexed by Orientation
  Color color = Color::background;
  double color_confidence = 0.0;
  std::vector<Cell2> changed_cells;
};

struct CandidateTask {
  BrickPlacement placement;
  double f_p = 0.0;
  double f_id = 0.0;
  double f_omega = 0.0;
  double f = 0.0;  // f_p * f_id * f_omega
};

inline constexpr double kSigmaFloor = 0.1;

// Isotropic Gaussian density at a real point. The standard deviation is
// the distance from `mean` to its nearest lattice point, floored at `eps`.
inline double position_density(const Vec3& point, const Vec3& mean, double eps = kSigmaFloor) {
  const Vec3 r = to_vec(round_to_cell(mean));
  double off = 0.0;
  double d2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    off += (mean[k] - r[k]) * (mean[k] - r[k]);
    d2 += (point[k] - mean[k]) * (point[k] - mean[k]);
  }
  const double s = std::max(eps, std::sqrt(off));
  const double var = s * s;
  // (2*pi)^(-3/2) * |var*I|^(-1/2) * exp(-d2 / (2 var))
  return std::pow(2.0 * std::numbers::pi, -1.5) / (var * s) * std::exp(-0.5 * d2 / var);
}

inline double position_likelihood(const Cell& p, const Vec3& mu, double eps = kSigmaFloor) {
  return position_density(to_vec(p), mu, eps);
}

namespace detail {

// Cells this close (Chebyshev) belong to the same blob: 8-connectivity.
inline constexpr int kLinkRadius = 1;

// Largest linked component of `mask`; ties go to the higher mean score,
// then to the first found in scan order.
inline std::vector<std::size_t> best_component(const ObservationFrame& frame,
                                               const std::vector<std::uint8_t>& mask,
                                               const std::vector<double>& score) {
  std::vector<int> label(mask.size(), -1);
  std::vector<std::size_t> best;
  double best_mean = 0.0;
  std::vector<std::size_t> stack;
  int next = 0;
  for (std::size_t seed = 0; seed < mask.size(); ++seed) {
    if (!mask[seed] || label[seed] != -1) continue;
    std::vector<std::size_t> comp;
    stack.push_back(seed);
    label[seed] = next;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      comp.push_back(i);
      const Cell2 c = frame.cell(i);
      for (int ny = c.y - kLinkRadius; ny <= c.y + kLinkRadius; ++ny) {
        for (int nx = c.x - kLinkRadius; nx <= c.x + kLinkRadius; ++nx) {
          if (nx < 1 || ny < 1 || nx > frame.width || ny > frame.height) continue;
          const std::size_t j = frame.index(nx, ny);
          if (mask[j] && label[j] == -1) {
            label[j] = next;
            stack.push_back(j);
          }
        }
      }
    }
    ++next;
    double mean = 0.0;
    for (std::size_t i : comp) mean += score[i];
    mean /= static_cast<double>(comp.size());
    if (comp.size() > best.size() || (comp.size() == best.size() && mean > best_mean)) {
      best = std::move(comp);
      best_mean = mean;
    }
  }
  std::sort(best.begin(), best.end());
  return best;
}

}  // namespace detail

// Change-region estimator. Columns whose depth rose by more than `tau_c`
// form the change mask; the largest 8-connected blob is taken as the new
// brick. Type scores come from matching the blob's bounding box against the
// catalog, orientation from its aspect, and the anchor from the blob
// centroid under the best (type, orientation) hypothesis.
inline DeltaEstimate estimate_delta(const ObservationFrame& prev, const ObservationFrame& next,
                                    double tau_c, const BrickCatalog& catalog, const Bounds& bounds) {
  if (!prev.same_dims(next)) throw Error("estimate_delta: frame dims differ");
  if (!(tau_c > 0.0 && tau_c < 1.0)) throw Error("estimate_delta: tau_c must lie in (0, 1)");

  const std::size_t n = next.cells();
  std::vector<std::uint8_t> mask(n, 0);
  std::vector<double> rise(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    rise[i] = next.depth[i] - prev.depth[i];
    mask[i] = rise[i] > tau_c && !prev.occlusion[i] && !next.occlusion[i];
  }
  const auto region = detail::best_component(next, mask, rise);
  if (region.empty()) throw NoOperationDetected();

  DeltaEstimate d;
  int min_x = next.width, max_x = 1, min_y = next.height, max_y = 1;
  double cx = 0.0, cy = 0.0;
  std::vector<double> heights;
  std::array<int, kPalette.size()> votes{};
  for (std::size_t i : region) {
    const Cell2 c = next.cell(i);
    d.changed_cells.push_back(c);
    min_x = std::min(min_x, c.x);
    max_x = std::max(max_x, c.x);
    min_y = std::min(min_y, c.y);
    max_y = std::max(max_y, c.y);
    cx += c.x;
    cy += c.y;
    heights.push_back(next.depth[i]);
    if (next.color[i] != Color::background) ++votes[static_cast<std::size_t>(palette_index(next.color[i]))];
  }
  const double count = static_cast<double>(region.size());
  cx /= count;
  cy /= count;
  const int ext_x = max_x - min_x + 1;
  const int ext_y = max_y - min_y + 1;
  const int ext_long = std::max(ext_x, ext_y);
  const int ext_short = std::min(ext_x, ext_y);

  double total = 0.0;
  for (const BrickType& t : catalog.types()) {
    const double s = std::exp(-double(std::abs(ext_long - t.length) + std::abs(ext_short - t.width)));
    d.id_scores.emplace_back(t.id, s);
    total += s;
  }
  for (auto& [id, s] : d.id_scores) s /= total;

  const double along_x = ext_x >= ext_y ? 1.0 : std::exp(-double(ext_y - ext_x));
  const double along_y = ext_y >= ext_x ? 1.0 : std::exp(-double(ext_x - ext_y));
  d.omega_scores = {along_x / (along_x + along_y), along_y / (along_x + along_y)};

  auto best_id = std::max_element(d.id_scores.begin(), d.id_scores.end(),
                                  [](const auto& a, const auto& b) { return a.second < b.second; });
  const BrickType& type = catalog.at(best_id->first);
  const bool x_long = d.omega_scores[0] >= d.omega_scores[1];
  const int hx = x_long ? type.length : type.width;
  const int hy = x_long ? type.width : type.length;

  std::nth_element(heights.begin(), heights.begin() + heights.size() / 2, heights.end());
  double mz = heights[heights.size() / 2];
  if (heights.size() % 2 == 0) {
    mz = 0.5 * (mz + *std::max_element(heights.begin(), heights.begin() + heights.size() / 2));
  }
  d.mu = {std::clamp(cx - 0.5 * (hx - 1), 0.0, bounds.x + 1.0),
          std::clamp(cy - 0.5 * (hy - 1), 0.0, bounds.y + 1.0), std::clamp(mz, 0.0, bounds.z + 1.0)};

  auto mode = std::max_element(votes.begin(), votes.end());
  if (*mode > 0) {
    d.color = kPalette[static_cast<std::size_t>(mode - votes.begin())];
    d.color_confidence = *mode / count;
  } else {
    // Nothing but plate color where depth rose: a dark brick.
    d.color = Color::black;
    d.color_confidence = 0.0;
  }
  return d;
}

// Candidate placements around the rounded anchor estimate (its 26
// neighbours included), top three types, both orientations; scored by
// f = f_p * f_id * f_omega and sorted best first.
inline std::vector<CandidateTask> rank_candidates(const DeltaEstimate& delta, std::size_t k_max,
                                                  const BrickCatalog& catalog, const Bounds& bounds) {
  if (delta.changed_cells.empty() && delta.id_scores.empty()) throw NoValidCandidate();
  auto ids = delta.id_scores;
  std::stable_sort(ids.begin(), ids.end(), [](const auto& a, const auto& b) {
    return a.second > b.second || (a.second == b.second && a.first < b.first);
  });
  if (ids.size() > 3) ids.resize(3);

  const Cell center = round_to_cell(delta.mu);
  std::vector<CandidateTask> out;
  for (int dz = -1; dz <= 1; ++dz) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const Cell p{center.x + dx, center.y + dy, center.z + dz};
        if (!bounds.contains(p)) continue;
        const double f_p = position_likelihood(p, delta.mu);
        for (const auto& [id, f_id] : ids) {
          if (!catalog.contains(id)) continue;
          for (Orientation w : {Orientation::along_x, Orientation::along_y}) {
            if (w == Orientation::along_y && catalog.at(id).square()) continue;
            BrickPlacement b{p, id, w, delta.color};
            const auto cells = footprint(catalog, b);
            if (!std::all_of(cells.begin(), cells.end(),
                             [&](const Cell& c) { return bounds.contains(c); })) {
              continue;
            }
            const double f_w = delta.omega_scores[static_cast<std::size_t>(to_int(w))];
            const double f = f_p * f_id * f_w;
            if (f > 0.0) out.push_back({b, f_p, f_id, f_w, f});
          }
        }
      }
    }
  }
  if (out.empty()) throw NoValidCandidate();
  std::sort(out.begin(), out.end(), [](const CandidateTask& a, const CandidateTask& b) {
    if (a.f != b.f) return a.f > b.f;
    return a.placement < b.placement;
  });
  if (out.size() > k_max) out.resize(k_max);
  return out;
}

}  // namespace salfd
