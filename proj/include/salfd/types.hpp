#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace salfd {

// Base for every error the library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Palette entries. `background` is what the sensor reports for an empty
// baseplate cell; it is not a brick color.
enum class Color : std::uint8_t {
  background = 0,
  red,
  yellow,
  blue,
  green,
  black,
  white,
  pink,
  orange,
};

inline constexpr std::array<Color, 8> kPalette = {
    Color::red,   Color::yellow, Color::blue, Color::green,
    Color::black, Color::white,  Color::pink, Color::orange};

inline constexpr std::string_view to_string(Color c) {
  switch (c) {
    case Color::background: return "background";
    case Color::red: return "red";
    case Color::yellow: return "yellow";
    case Color::blue: return "blue";
    case Color::green: return "green";
    case Color::black: return "black";
    case Color::white: return "white";
    case Color::pink: return "pink";
    case Color::orange: return "orange";
  }
  return "background";
}

inline std::optional<Color> color_from_string(std::string_view name) {
  if (name == "background") return Color::background;
  for (Color c : kPalette) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

// Colors that the RGB channel tends to lose against the dark plate.
inline constexpr bool is_dark(Color c) { return c == Color::black || c == Color::blue; }

// Position in the palette, 0-based; background has none.
inline constexpr int palette_index(Color c) { return static_cast<int>(c) - 1; }

enum class Orientation : std::uint8_t {
  along_x = 0,  // length axis along x
  along_y = 1,  // length axis along y
};

inline constexpr int to_int(Orientation o) { return static_cast<int>(o); }

inline std::optional<Orientation> orientation_from_int(long long v) {
  if (v == 0) return Orientation::along_x;
  if (v == 1) return Orientation::along_y;
  return std::nullopt;
}

// Lattice cell, 1-based: x, y in studs, z in brick heights.
struct Cell {
  int x = 0;
  int y = 0;
  int z = 0;

  friend constexpr bool operator==(const Cell&, const Cell&) = default;
  // Canonical order is (z, y, x).
  friend constexpr auto operator<=>(const Cell& a, const Cell& b) {
    return std::tie(a.z, a.y, a.x) <=> std::tie(b.z, b.y, b.x);
  }
};

inline std::string to_string(const Cell& c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + "," + std::to_string(c.z) + ")";
}

// Column on the baseplate (top-down view).
struct Cell2 {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(const Cell2&, const Cell2&) = default;
  friend constexpr auto operator<=>(const Cell2& a, const Cell2& b) {
    return std::tie(a.y, a.x) <=> std::tie(b.y, b.x);
  }
};

struct Bounds {
  int x = 48;
  int y = 48;
  int z = 24;

  friend constexpr bool operator==(const Bounds&, const Bounds&) = default;

  constexpr bool contains(const Cell& c) const {
    return c.x >= 1 && c.x <= x && c.y >= 1 && c.y <= y && c.z >= 1 && c.z <= z;
  }
  constexpr bool contains(const Cell2& c) const {
    return c.x >= 1 && c.x <= x && c.y >= 1 && c.y <= y;
  }
  constexpr std::size_t columns() const { return static_cast<std::size_t>(x) * y; }
  constexpr std::size_t volume() const { return columns() * static_cast<std::size_t>(z); }
};

using BrickId = int;

// One brick operation: anchor position (minimum-coordinate stud of the
// footprint), catalog type, orientation and color.
struct BrickPlacement {
  Cell position;
  BrickId id = 1;
  Orientation omega = Orientation::along_x;
  Color color = Color::red;

  friend constexpr bool operator==(const BrickPlacement&, const BrickPlacement&) = default;
  // Canonical order (z, y, x, id, omega, color).
  friend constexpr auto operator<=>(const BrickPlacement& a, const BrickPlacement& b) {
    return std::tie(a.position, a.id, a.omega, a.color) <=>
           std::tie(b.position, b.id, b.omega, b.color);
  }
};

}  // namespace salfd
