#pragma once

// Random two-period instances: n_total points with integer coordinates, node
// 0 is the depot. The depot is itself one of the m both-period customers, so
// (48, 8) yields 40 single-period and 8 both-period customers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "vrp2/two_period.hpp"

namespace vrp2 {

inline Cost euclidean_distance(const Point2& a, const Point2& b) {
  return static_cast<Cost>(std::llround(std::hypot(a.x - b.x, a.y - b.y)));
}

inline CostMatrix euclidean_matrix(const std::vector<Point2>& pts) {
  const int n = static_cast<int>(pts.size());
  CostMatrix d(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) d.at(i, j) = euclidean_distance(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
  return d;
}

inline TwoPeriodInstance generate_instance(int n_total = 48, int m = 8, std::uint64_t seed = 1,
                                           int coord_range = 10000) {
  if (n_total < 2) throw Error("need at least two points");
  if (m < 0 || m >= n_total) throw Error("m must satisfy 0 <= m < n_total");
  if (coord_range < 0) throw Error("coordinate range must be non-negative");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(0, coord_range);
  std::vector<Point2> pts(static_cast<std::size_t>(n_total));
  for (auto& p : pts) {
    p.x = coord(rng);
    p.y = coord(rng);
  }

  std::vector<int> others(static_cast<std::size_t>(n_total - 1));
  std::iota(others.begin(), others.end(), 1);
  std::shuffle(others.begin(), others.end(), rng);

  TwoPeriodInstance tp;
  tp.name = "g" + std::to_string(n_total) + "_m" + std::to_string(m) + "_s" + std::to_string(seed);
  tp.depot = 0;
  // With m == 0 the depot is not a customer at all.
  if (m > 0) {
    tp.both_periods.push_back(0);
    tp.both_periods.insert(tp.both_periods.end(), others.begin(), others.begin() + (m - 1));
  }
  tp.single_period.assign(others.begin() + std::max(0, m - 1), others.end());
  std::sort(tp.both_periods.begin(), tp.both_periods.end());
  std::sort(tp.single_period.begin(), tp.single_period.end());
  tp.distances = euclidean_matrix(pts);
  tp.coordinates = std::move(pts);
  return tp;
}

}  // namespace vrp2
