#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "pgc/fields.hpp"

namespace pgc {

// Explicit coordinate box; every chart in this library is one of these.
struct Box {
  std::vector<std::array<double, 2>> b;

  Box() = default;
  Box(std::initializer_list<std::array<double, 2>> bounds) : b(bounds) {}

  int dim() const { return static_cast<int>(b.size()); }
  double lo(int i) const { return b[static_cast<std::size_t>(i)][0]; }
  double hi(int i) const { return b[static_cast<std::size_t>(i)][1]; }

  bool contains(const Point& p, double margin = 0.0) const {
    if (p.dim() != dim()) return false;
    for (int i = 0; i < dim(); ++i)
      if (p[i] < lo(i) - margin || p[i] > hi(i) + margin) return false;
    return true;
  }

  Box product(const Box& other) const {
    Box r = *this;
    r.b.insert(r.b.end(), other.b.begin(), other.b.end());
    return r;
  }
};

// Coordinate-aligned exclusion: rejects |x_coord - center| < radius.
struct ExclusionTube {
  int coord = 0;
  double center = 0.0;
  double radius = 1e-3;
};

// Deterministic probe clouds: a coarse fixed grid plus seeded uniform draws,
// with singular-locus tubes removed. The raw 64-bit stream of mt19937_64 is
// mapped to [0,1) by hand so reports are bit-identical across platforms.
class ProbeSet {
 public:
  static ProbeSet make(const Box& box, std::uint64_t seed, int random_count,
                       std::vector<ExclusionTube> exclusions = {}, int grid_per_axis = 3);

  const std::vector<Point>& points() const { return pts_; }
  std::span<const Point> span() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  const Point& operator[](std::size_t i) const { return pts_[i]; }
  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }

 private:
  std::vector<Point> pts_;
};

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace pgc
