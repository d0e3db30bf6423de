#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "salfd/catalog.hpp"
#include "salfd/types.hpp"

namespace salfd {

// Cells covered by brick `id` anchored at `p` with orientation `omega`.
// The anchor is the minimum-coordinate cell; the length axis runs along x
// for along_x and along y for along_y.
inline std::vector<Cell> footprint(const BrickCatalog& catalog, BrickId id, Orientation omega,
                                   const Cell& p) {
  const BrickType& type = catalog.at(id);
  const int ex = omega == Orientation::along_x ? type.length : type.width;
  const int ey = omega == Orientation::along_x ? type.width : type.length;
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(ex * ey));
  for (int dy = 0; dy < ey; ++dy) {
    for (int dx = 0; dx < ex; ++dx) cells.push_back({p.x + dx, p.y + dy, p.z});
  }
  return cells;
}

inline std::vector<Cell> footprint(const BrickCatalog& catalog, const BrickPlacement& b) {
  return footprint(catalog, b.id, b.omega, b.position);
}

enum class VerdictKind { ok, out_of_bounds, collision, unsupported, unknown_brick };

inline constexpr std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::ok: return "Ok";
    case VerdictKind::out_of_bounds: return "OutOfBounds";
    case VerdictKind::collision: return "Collision";
    case VerdictKind::unsupported: return "Unsupported";
    case VerdictKind::unknown_brick: return "UnknownBrick";
  }
  return "Ok";
}

struct Verdict {
  VerdictKind kind = VerdictKind::ok;
  std::vector<Cell> cells;  // offending cells, empty when ok

  bool ok() const { return kind == VerdictKind::ok; }

  std::string describe() const {
    std::string out(to_string(kind));
    if (!cells.empty()) {
      out += " at";
      for (const Cell& c : cells) out += " " + to_string(c);
    }
    return out;
  }
};

class FeasibilityError : public Error {
public:
  explicit FeasibilityError(Verdict v, const std::string& context = {})
      : Error((context.empty() ? std::string{} : context + ": ") + v.describe()),
        verdict_(std::move(v)) {}
  const Verdict& verdict() const { return verdict_; }

private:
  Verdict verdict_;
};

// Ordered set of placements plus the occupancy grid they induce.
// Copies are independent values.
class Assembly {
public:
  static constexpr std::int32_t kEmpty = -1;

  explicit Assembly(CatalogPtr catalog = BrickCatalog::standard(), Bounds bounds = {})
      : catalog_(std::move(catalog)), bounds_(bounds), grid_(bounds.volume(), kEmpty) {
    if (!catalog_) throw Error("assembly needs a catalog");
    if (bounds.x < 1 || bounds.y < 1 || bounds.z < 1) throw Error("bounds must be positive");
  }

  const BrickCatalog& catalog() const { return *catalog_; }
  const CatalogPtr& catalog_ptr() const { return catalog_; }
  const Bounds& bounds() const { return bounds_; }
  const std::vector<BrickPlacement>& placements() const { return placements_; }
  std::size_t size() const { return placements_.size(); }
  bool empty() const { return placements_.empty(); }

  // Index of the placement covering `c`, or kEmpty. Out-of-bounds reads as empty.
  std::int32_t at(const Cell& c) const {
    if (!bounds_.contains(c)) return kEmpty;
    return grid_[index(c)];
  }
  bool occupied(const Cell& c) const { return at(c) != kEmpty; }

  // Highest occupied z in column (x, y); 0 when the column is empty.
  int top(int x, int y) const {
    for (int z = bounds_.z; z >= 1; --z) {
      if (grid_[index({x, y, z})] != kEmpty) return z;
    }
    return 0;
  }

  Verdict check(const BrickPlacement& b) const {
    if (!catalog_->contains(b.id)) return {VerdictKind::unknown_brick, {b.position}};
    const auto cells = footprint(*catalog_, b);
    Verdict v;
    for (const Cell& c : cells) {
      if (!bounds_.contains(c)) v.cells.push_back(c);
    }
    if (!v.cells.empty()) {
      v.kind = VerdictKind::out_of_bounds;
      return v;
    }
    for (const Cell& c : cells) {
      if (occupied(c)) v.cells.push_back(c);
    }
    if (!v.cells.empty()) {
      v.kind = VerdictKind::collision;
      return v;
    }
    if (b.position.z == 1) return v;
    for (const Cell& c : cells) {
      if (occupied({c.x, c.y, c.z - 1}) || occupied({c.x, c.y, c.z + 1})) return v;
    }
    v.kind = VerdictKind::unsupported;
    v.cells = cells;
    return v;
  }

  // Returns a new assembly with `b` appended; *this is left unchanged.
  Assembly apply(const BrickPlacement& b) const {
    Assembly next = *this;
    next.push(b);
    return next;
  }

  // In-place variant of apply.
  void push(const BrickPlacement& b) {
    Verdict v = check(b);
    if (!v.ok()) throw FeasibilityError(std::move(v));
    const auto idx = static_cast<std::int32_t>(placements_.size());
    for (const Cell& c : footprint(*catalog_, b)) grid_[index(c)] = idx;
    placements_.push_back(b);
  }

  // Removes the most recently applied brick.
  Assembly remove_last() const {
    if (placements_.empty()) throw Error("remove_last on empty assembly");
    Assembly next = *this;
    for (const Cell& c : footprint(*catalog_, next.placements_.back())) {
      next.grid_[index(c)] = kEmpty;
    }
    next.placements_.pop_back();
    return next;
  }

  // Grid equality only (ignores placement order).
  bool same_occupancy(const Assembly& other) const {
    if (bounds_ != other.bounds_) return false;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      if ((grid_[i] == kEmpty) != (other.grid_[i] == kEmpty)) return false;
    }
    return true;
  }

private:
  std::size_t index(const Cell& c) const {
    return (static_cast<std::size_t>(c.z - 1) * bounds_.y + static_cast<std::size_t>(c.y - 1)) *
               bounds_.x +
           static_cast<std::size_t>(c.x - 1);
  }

  CatalogPtr catalog_;
  Bounds bounds_;
  std::vector<BrickPlacement> placements_;
  std::vector<std::int32_t> grid_;
};

inline Verdict is_feasible(const Assembly& assembly, const BrickPlacement& b) {
  return assembly.check(b);
}

inline Assembly apply(const Assembly& assembly, const BrickPlacement& b) {
  return assembly.apply(b);
}

// Builds an assembly from a placement sequence, failing on the first
// infeasible step.
inline Assembly build(CatalogPtr catalog, Bounds bounds, const std::vector<BrickPlacement>& seq) {
  Assembly a(std::move(catalog), bounds);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    Verdict v = a.check(seq[i]);
    if (!v.ok()) throw FeasibilityError(std::move(v), "step " + std::to_string(i + 1));
    a.push(seq[i]);
  }
  return a;
}

}  // namespace salfd
