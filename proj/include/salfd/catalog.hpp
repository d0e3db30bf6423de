#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "salfd/types.hpp"

namespace salfd {

struct BrickType {
  BrickId id = 1;
  int length = 2;  // studs along the length axis
  int width = 1;   // studs across

  std::string name() const { return std::to_string(width) + "x" + std::to_string(length); }
  bool square() const { return length == width; }
  int studs() const { return length * width; }
};

class BrickCatalog {
public:
  // Types are given as (length, width); ids are assigned 1..N in order.
  explicit BrickCatalog(const std::vector<std::pair<int, int>>& dims) {
    if (dims.size() < 7) throw Error("brick catalog needs at least 7 types");
    BrickId next = 1;
    for (auto [length, width] : dims) {
      if (length < 1 || width < 1 || width > length) {
        throw Error("brick dims must satisfy 1 <= width <= length");
      }
      types_.push_back({next++, length, width});
    }
    for (std::size_t i = 0; i < types_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (types_[i].name() == types_[j].name()) {
          throw Error("duplicate brick type " + types_[i].name());
        }
      }
    }
  }

  // 1x2, 1x4, 1x6, 1x8, 2x2, 2x4, 2x6
  static std::shared_ptr<const BrickCatalog> standard() {
    static const auto catalog = std::make_shared<const BrickCatalog>(
        std::vector<std::pair<int, int>>{{2, 1}, {4, 1}, {6, 1}, {8, 1}, {2, 2}, {4, 2}, {6, 2}});
    return catalog;
  }

  std::size_t size() const { return types_.size(); }
  const std::vector<BrickType>& types() const { return types_; }

  bool contains(BrickId id) const { return id >= 1 && id <= static_cast<BrickId>(types_.size()); }

  const BrickType& at(BrickId id) const {
    if (!contains(id)) throw Error("unknown brick id " + std::to_string(id));
    return types_[static_cast<std::size_t>(id - 1)];
  }

  std::optional<BrickId> find(std::string_view name) const {
    auto it = std::find_if(types_.begin(), types_.end(),
                           [&](const BrickType& t) { return t.name() == name; });
    if (it == types_.end()) return std::nullopt;
    return it->id;
  }

private:
  std::vector<BrickType> types_;
};

using CatalogPtr = std::shared_ptr<const BrickCatalog>;

// Square bricks look the same either way round; keep them at along_x so that
// equal footprints compare equal.
inline BrickPlacement normalized(const BrickCatalog& catalog, BrickPlacement b) {
  if (catalog.at(b.id).square()) b.omega = Orientation::along_x;
  return b;
}

}  // namespace salfd
