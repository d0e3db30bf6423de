#pragma once

// Shared helpers for the test suites: random feasible structures and a few
// independent reference computations.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <tuple>
#include <vector>

#include "salfd/salfd.hpp"

namespace salfd::oracle {

// Random step-wise feasible placement sequence. Each brick is dropped onto
// the highest column under its footprint, so it always rests on something.
inline std::vector<BrickPlacement> random_sequence(std::mt19937_64& rng, const Bounds& bounds,
                                                   int max_bricks,
                                                   const BrickCatalog& catalog = *BrickCatalog::standard()) {
  std::vector<int> top(bounds.columns(), 0);
  std::vector<BrickPlacement> seq;
  std::uniform_int_distribution<int> count_dist(0, max_bricks);
  std::uniform_int_distribution<int> id_dist(1, static_cast<int>(catalog.size()));
  std::uniform_int_distribution<int> color_dist(0, static_cast<int>(kPalette.size()) - 1);
  std::bernoulli_distribution coin(0.5);
  const int wanted = count_dist(rng);
  for (int attempt = 0; attempt < 20 * (wanted + 1) && static_cast<int>(seq.size()) < wanted; ++attempt) {
    const BrickType& t = catalog.at(id_dist(rng));
    const Orientation w = t.square() || coin(rng) ? Orientation::along_x : Orientation::along_y;
    const int ex = w == Orientation::along_x ? t.length : t.width;
    const int ey = w == Orientation::along_x ? t.width : t.length;
    if (ex > bounds.x || ey > bounds.y) continue;
    const int x = std::uniform_int_distribution<int>(1, bounds.x - ex + 1)(rng);
    const int y = std::uniform_int_distribution<int>(1, bounds.y - ey + 1)(rng);
    int z = 0;
    for (int dy = 0; dy < ey; ++dy) {
      for (int dx = 0; dx < ex; ++dx) {
        z = std::max(z, top[static_cast<std::size_t>(y - 1 + dy) * bounds.x + (x - 1 + dx)]);
      }
    }
    if (++z > bounds.z) continue;
    for (int dy = 0; dy < ey; ++dy) {
      for (int dx = 0; dx < ex; ++dx) top[static_cast<std::size_t>(y - 1 + dy) * bounds.x + (x - 1 + dx)] = z;
    }
    seq.push_back({{x, y, z}, t.id, w, kPalette[static_cast<std::size_t>(color_dist(rng))]});
  }
  return seq;
}

inline ConstructionPlan plan_of(const Bounds& bounds, const std::vector<BrickPlacement>& seq) {
  ConstructionPlan plan{bounds, {}};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    plan.tasks.push_back({static_cast<int>(i) + 1, Action::assemble, seq[i]});
  }
  return plan;
}

// Top-down view computed straight from the placement list.
struct TopView {
  std::map<std::pair<int, int>, std::pair<int, Color>> columns;  // (x, y) -> (z, color)
};

inline TopView reference_top_view(const std::vector<BrickPlacement>& seq,
                                  const BrickCatalog& catalog = *BrickCatalog::standard()) {
  TopView v;
  for (const BrickPlacement& b : seq) {
    const BrickType& t = catalog.at(b.id);
    const bool along_x = b.omega == Orientation::along_x;
    for (int i = 0; i < t.length; ++i) {
      for (int j = 0; j < t.width; ++j) {
        const int x = b.position.x + (along_x ? i : j);
        const int y = b.position.y + (along_x ? j : i);
        auto& cell = v.columns[{x, y}];
        if (b.position.z > cell.first) cell = {b.position.z, b.color};
      }
    }
  }
  return v;
}

// |A \ B| + |B \ A| over placement multisets.
inline int reference_symmetric_difference(const std::vector<BrickPlacement>& a,
                                          const std::vector<BrickPlacement>& b) {
  std::map<std::tuple<int, int, int, int, int, int>, int> count;
  auto key = [](const BrickPlacement& p) {
    return std::make_tuple(p.position.x, p.position.y, p.position.z, p.id, to_int(p.omega),
                           static_cast<int>(p.color));
  };
  for (const auto& p : a) ++count[key(p)];
  for (const auto& p : b) --count[key(p)];
  int total = 0;
  for (const auto& [k, c] : count) total += std::abs(c);
  return total;
}

// Isotropic trivariate normal density written out from the matrix form:
// (2 pi)^(-3/2) det(S)^(-1/2) exp(-1/2 d^T S^-1 d) with S = s^2 I.
inline long double reference_density(const Vec3& p, const Vec3& mu, double sigma) {
  const long double s2 = static_cast<long double>(sigma) * sigma;
  const long double det = s2 * s2 * s2;
  long double quad = 0.0L;
  for (int k = 0; k < 3; ++k) {
    const long double d = static_cast<long double>(p[k]) - mu[k];
    quad += d * (1.0L / s2) * d;
  }
  const long double two_pi = 2.0L * 3.14159265358979323846264338327950288L;
  return std::pow(two_pi, -1.5L) / std::sqrt(det) * std::exp(-0.5L * quad);
}

// P(|N(0, sigma)| > t).
inline double reference_two_sided_tail(double t, double sigma) {
  return std::erfc(t / (sigma * std::sqrt(2.0)));
}

}  // namespace salfd::oracle
