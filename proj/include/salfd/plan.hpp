#pragma once

#include <algorithm>
#include <cstdlib>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "salfd/assembly.hpp"

namespace salfd {

enum class Action { assemble, disassemble };

inline constexpr std::string_view to_string(Action a) {
  return a == Action::assemble ? "assemble" : "disassemble";
}

struct Task {
  int step = 1;
  Action action = Action::assemble;
  BrickPlacement placement;

  friend bool operator==(const Task&, const Task&) = default;
};

struct ConstructionPlan {
  Bounds bounds;
  std::vector<Task> tasks;

  friend bool operator==(const ConstructionPlan&, const ConstructionPlan&) = default;

  bool is_assembly() const {
    return std::all_of(tasks.begin(), tasks.end(),
                       [](const Task& t) { return t.action == Action::assemble; });
  }
  bool is_disassembly() const {
    return std::all_of(tasks.begin(), tasks.end(),
                       [](const Task& t) { return t.action == Action::disassemble; });
  }

  static ConstructionPlan assembly_of(const Assembly& a) {
    ConstructionPlan plan{a.bounds(), {}};
    int step = 1;
    for (const BrickPlacement& b : a.placements()) plan.tasks.push_back({step++, Action::assemble, b});
    return plan;
  }
};

// Disassembly plan: the same placements, removed in reverse order.
inline ConstructionPlan reverse_plan(const ConstructionPlan& plan) {
  if (!plan.is_assembly()) throw Error("reverse_plan: plan already contains disassemble actions");
  ConstructionPlan out{plan.bounds, {}};
  out.tasks.reserve(plan.tasks.size());
  int step = 1;
  for (auto it = plan.tasks.rbegin(); it != plan.tasks.rend(); ++it) {
    out.tasks.push_back({step++, Action::disassemble, it->placement});
  }
  return out;
}

// Executes the plan against `start`. Assemble steps must be feasible;
// disassemble steps must remove the most recently placed copy of that brick
// and may only take the topmost brick (the last one applied).
inline Assembly replay(const ConstructionPlan& plan, Assembly start) {
  if (start.bounds() != plan.bounds) throw Error("replay: plan bounds differ from workspace");
  for (const Task& t : plan.tasks) {
    if (t.action == Action::assemble) {
      Verdict v = start.check(t.placement);
      if (!v.ok()) throw FeasibilityError(std::move(v), "step " + std::to_string(t.step));
      start.push(t.placement);
    } else {
      if (start.empty() || start.placements().back() != t.placement) {
        throw Error("replay: step " + std::to_string(t.step) +
                    " removes a brick that is not the last one placed");
      }
      start = start.remove_last();
    }
  }
  return start;
}

// Per-brick mismatch between one target brick and its matched built brick.
// A side is empty when the brick has no partner.
struct CostComponent {
  std::optional<BrickPlacement> target;
  std::optional<BrickPlacement> built;
  int position = 0;     // L_p
  int id = 0;           // L_i
  int orientation = 0;  // L_w
  bool color_mismatch = false;
};

struct StructureCost {
  int total = 0;
  std::vector<CostComponent> components;
};

// Difference between two structures: `total` counts placements present in
// exactly one of them, and the unmatched placements are paired up by
// position to break the difference into position/type/orientation terms.
inline StructureCost structure_cost(const Assembly& target, const Assembly& built) {
  if (target.bounds() != built.bounds()) throw Error("structure_cost: bounds mismatch");
  auto a = target.placements();
  auto b = built.placements();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  std::vector<BrickPlacement> only_a;
  std::vector<BrickPlacement> only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));

  StructureCost cost;
  cost.total = static_cast<int>(only_a.size() + only_b.size());

  std::vector<bool> used(only_b.size(), false);
  std::vector<bool> matched(only_a.size(), false);
  auto emit = [&](const BrickPlacement& t, const BrickPlacement& u) {
    cost.components.push_back({t, u, t.position == u.position ? 0 : 1, t.id == u.id ? 0 : 1,
                               t.omega == u.omega ? 0 : 1, t.color != u.color});
  };
  // Same anchor first.
  for (std::size_t i = 0; i < only_a.size(); ++i) {
    for (std::size_t j = 0; j < only_b.size(); ++j) {
      if (!used[j] && only_b[j].position == only_a[i].position) {
        used[j] = matched[i] = true;
        emit(only_a[i], only_b[j]);
        break;
      }
    }
  }
  // Then nearest remaining anchor (L1), ties resolved by canonical order.
  for (std::size_t i = 0; i < only_a.size(); ++i) {
    if (matched[i]) continue;
    std::optional<std::size_t> best;
    int best_d = 0;
    for (std::size_t j = 0; j < only_b.size(); ++j) {
      if (used[j]) continue;
      const Cell& p = only_a[i].position;
      const Cell& q = only_b[j].position;
      const int d = std::abs(p.x - q.x) + std::abs(p.y - q.y) + std::abs(p.z - q.z);
      if (!best || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    if (best) {
      used[*best] = matched[i] = true;
      emit(only_a[i], only_b[*best]);
    } else {
      cost.components.push_back({only_a[i], std::nullopt, 1, 1, 1, true});
    }
  }
  for (std::size_t j = 0; j < only_b.size(); ++j) {
    if (!used[j]) cost.components.push_back({std::nullopt, only_b[j], 1, 1, 1, true});
  }
  return cost;
}

}  // namespace salfd
