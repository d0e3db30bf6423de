#pragma once

#include <string>
#include <vector>

#include "salfd/sensor.hpp"

namespace salfd {

struct Fixture {
  std::string name;
  std::vector<BrickPlacement> events;  // demonstration order
};

namespace detail {

// Standard catalog ids.
inline constexpr BrickId k1x2 = 1, k1x4 = 2, k1x6 = 3, k1x8 = 4, k2x2 = 5, k2x4 = 6, k2x6 = 7;
inline constexpr Orientation X = Orientation::along_x;
inline constexpr Orientation Y = Orientation::along_y;

inline BrickPlacement brick(BrickId id, Orientation w, int x, int y, int z, Color c) {
  return {{x, y, z}, id, w, c};
}

}  // namespace detail

// The eight demonstration prototypes on the default 48x48x24 workspace.
// Brick counts: ai 10, ri 12, human 17, chair 21, spiral 5, bridge 19,
// pyramid 15, temple 23.
inline const std::vector<Fixture>& fixtures() {
  using namespace detail;
  using C = Color;
  static const std::vector<Fixture> all = [] {
    std::vector<Fixture> f;

    f.push_back({"ai",
                 {brick(k1x6, Y, 4, 4, 1, C::red), brick(k1x6, Y, 8, 4, 1, C::red),
                  brick(k1x6, X, 4, 10, 1, C::red), brick(k1x2, X, 5, 6, 1, C::red),
                  brick(k1x2, Y, 7, 6, 1, C::red), brick(k1x6, Y, 12, 4, 1, C::blue),
                  brick(k1x4, X, 11, 10, 1, C::blue), brick(k1x4, X, 11, 3, 1, C::blue),
                  brick(k1x2, X, 12, 4, 2, C::blue), brick(k1x2, X, 12, 9, 2, C::blue)}});

    f.push_back({"ri",
                 {brick(k1x8, Y, 20, 4, 1, C::green), brick(k1x4, X, 21, 11, 1, C::green),
                  brick(k1x2, Y, 24, 9, 1, C::green), brick(k1x4, X, 21, 8, 1, C::green),
                  brick(k1x2, Y, 22, 6, 1, C::green), brick(k1x2, Y, 23, 4, 1, C::green),
                  brick(k1x8, Y, 28, 4, 1, C::orange), brick(k1x4, X, 27, 12, 1, C::orange),
                  brick(k1x4, X, 27, 3, 1, C::orange), brick(k2x2, X, 28, 7, 2, C::yellow),
                  brick(k1x2, Y, 28, 4, 2, C::orange), brick(k1x2, Y, 28, 10, 2, C::orange)}});

    f.push_back({"human",
                 {brick(k2x2, X, 30, 20, 1, C::blue), brick(k2x2, X, 33, 20, 1, C::blue),
                  brick(k2x2, X, 30, 20, 2, C::blue), brick(k2x2, X, 33, 20, 2, C::blue),
                  brick(k1x2, Y, 30, 22, 1, C::black), brick(k1x2, Y, 34, 22, 1, C::black),
                  brick(k2x6, X, 30, 20, 3, C::black), brick(k2x4, X, 31, 20, 4, C::red),
                  brick(k2x4, X, 31, 20, 5, C::red), brick(k1x8, X, 29, 20, 6, C::red),
                  brick(k1x8, X, 29, 21, 6, C::red), brick(k1x2, Y, 29, 20, 7, C::yellow),
                  brick(k1x2, Y, 36, 20, 7, C::yellow), brick(k2x2, X, 32, 20, 7, C::yellow),
                  brick(k2x2, X, 32, 20, 8, C::yellow), brick(k1x4, X, 31, 20, 9, C::black),
                  brick(k1x2, X, 32, 20, 10, C::black)}});

    {
      std::vector<BrickPlacement> chair;
      for (int z = 1; z <= 3; ++z) {
        for (auto [x, y] : {std::pair{10, 30}, {14, 30}, {10, 34}, {14, 34}}) {
          chair.push_back(brick(k2x2, X, x, y, z, C::white));
        }
      }
      chair.push_back(brick(k2x6, Y, 10, 30, 4, C::pink));
      chair.push_back(brick(k2x6, Y, 14, 30, 4, C::pink));
      chair.push_back(brick(k2x6, X, 10, 30, 5, C::pink));
      chair.push_back(brick(k2x6, X, 10, 32, 5, C::pink));
      chair.push_back(brick(k2x6, X, 10, 34, 5, C::pink));
      chair.push_back(brick(k2x2, X, 10, 34, 6, C::white));
      chair.push_back(brick(k2x2, X, 14, 34, 6, C::white));
      chair.push_back(brick(k2x6, X, 10, 34, 7, C::pink));
      chair.push_back(brick(k1x4, X, 11, 34, 8, C::pink));
      f.push_back({"chair", std::move(chair)});
    }

    f.push_back({"spiral",
                 {brick(k2x4, X, 10, 10, 1, C::red), brick(k2x4, Y, 12, 10, 2, C::yellow),
                  brick(k2x4, X, 10, 12, 3, C::blue), brick(k2x4, Y, 10, 10, 4, C::green),
                  brick(k2x4, X, 10, 10, 5, C::white)}});

    {
      std::vector<BrickPlacement> bridge;
      for (int z = 1; z <= 4; ++z) {
        bridge.push_back(brick(k2x2, X, 5, 40, z, C::black));
        bridge.push_back(brick(k2x2, X, 13, 40, z, C::black));
      }
      bridge.push_back(brick(k2x6, X, 5, 40, 5, C::yellow));
      bridge.push_back(brick(k2x6, X, 11, 40, 5, C::yellow));
      for (int y : {40, 41}) {
        for (int x : {5, 9, 13}) bridge.push_back(brick(k1x4, X, x, y, 6, C::red));
      }
      bridge.push_back(brick(k1x2, X, 3, 40, 1, C::green));
      bridge.push_back(brick(k1x2, X, 17, 40, 1, C::green));
      bridge.push_back(brick(k2x4, X, 8, 43, 1, C::blue));
      f.push_back({"bridge", std::move(bridge)});
    }

    {
      std::vector<BrickPlacement> pyramid;
      for (int i = 0; i < 6; ++i) pyramid.push_back(brick(k1x6, X, 20, 20 + i, 1, C::yellow));
      for (int i = 0; i < 4; ++i) pyramid.push_back(brick(k1x4, X, 21, 21 + i, 2, C::orange));
      pyramid.push_back(brick(k1x2, X, 22, 22, 3, C::red));
      pyramid.push_back(brick(k1x2, X, 22, 23, 3, C::red));
      pyramid.push_back(brick(k2x2, X, 22, 22, 4, C::pink));
      pyramid.push_back(brick(k1x2, Y, 22, 22, 5, C::white));
      pyramid.push_back(brick(k1x2, Y, 23, 22, 5, C::white));
      f.push_back({"pyramid", std::move(pyramid)});
    }

    {
      std::vector<BrickPlacement> temple;
      for (int y : {5, 7, 9}) temple.push_back(brick(k2x6, X, 30, y, 1, C::white));
      for (int z = 2; z <= 4; ++z) {
        for (auto [x, y] : {std::pair{30, 5}, {34, 5}, {30, 9}, {34, 9}}) {
          temple.push_back(brick(k2x2, X, x, y, z, C::white));
        }
      }
      temple.push_back(brick(k2x6, Y, 30, 5, 5, C::red));
      temple.push_back(brick(k2x6, Y, 34, 5, 5, C::red));
      for (int y : {5, 7, 9}) temple.push_back(brick(k2x6, X, 30, y, 6, C::red));
      temple.push_back(brick(k2x4, X, 31, 6, 7, C::yellow));
      temple.push_back(brick(k2x2, X, 32, 6, 8, C::yellow));
      temple.push_back(brick(k1x2, X, 32, 6, 9, C::black));
      f.push_back({"temple", std::move(temple)});
    }
    return f;
  }();
  return all;
}

inline const Fixture& fixture(std::string_view name) {
  for (const Fixture& f : fixtures()) {
    if (f.name == name) return f;
  }
  throw Error("unknown fixture '" + std::string(name) + "'");
}

}  // namespace salfd
