#include "pgc/probes.hpp"

#include <cmath>

namespace pgc {

namespace {

bool excluded(const Point& p, const std::vector<ExclusionTube>& tubes) {
  for (const auto& t : tubes)
    if (std::abs(p[t.coord] - t.center) < t.radius) return true;
  return false;
}

void grid_recurse(const Box& box, int axis, Point& cur, int per_axis,
                  const std::vector<ExclusionTube>& tubes, std::vector<Point>& out) {
  if (axis == box.dim()) {
    if (!excluded(cur, tubes)) out.push_back(cur);
    return;
  }
  for (int g = 0; g < per_axis; ++g) {
    double t = per_axis == 1 ? 0.5 : static_cast<double>(g) / (per_axis - 1);
    // keep nodes slightly interior so flows started at probes stay in-chart
    t = 0.05 + 0.9 * t;
    cur[axis] = box.lo(axis) + t * (box.hi(axis) - box.lo(axis));
    grid_recurse(box, axis + 1, cur, per_axis, tubes, out);
  }
}

}  // namespace

ProbeSet ProbeSet::make(const Box& box, std::uint64_t seed, int random_count,
                        std::vector<ExclusionTube> exclusions, int grid_per_axis) {
  ProbeSet ps;
  Point cur;
  cur.x.assign(static_cast<std::size_t>(box.dim()), 0.0);
  if (grid_per_axis > 0) grid_recurse(box, 0, cur, grid_per_axis, exclusions, ps.pts_);

  std::mt19937_64 rng(seed);
  int produced = 0;
  int attempts = 0;
  const int max_attempts = 1000 * std::max(random_count, 1);
  while (produced < random_count && attempts < max_attempts) {
    ++attempts;
    Point p;
    p.x.resize(static_cast<std::size_t>(box.dim()));
    for (int i = 0; i < box.dim(); ++i)
      p[i] = box.lo(i) + uniform01(rng) * (box.hi(i) - box.lo(i));
    if (excluded(p, exclusions)) continue;
    ps.pts_.push_back(std::move(p));
    ++produced;
  }
  return ps;
}

}  // namespace pgc
