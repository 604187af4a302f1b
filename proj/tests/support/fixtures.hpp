#pragma once

#include <cstdlib>
#include <memory>
#include <vector>

#include "vrp2/model.hpp"

namespace vrp2::testing {

// Depot at x=0 (node 0), point customers at x=1,2,3 (nodes 1..3), |x_i - x_j|
// for both vehicles, demand 1 each.
inline Instance line_instance(Demand w1 = 2, Demand w2 = 2) {
  auto costs = std::make_shared<CostModel>();
  costs->c1 = CostMatrix(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) costs->c1.at(i, j) = std::abs(i - j);
  costs->c2 = costs->c1;
  std::vector<SegmentCustomer> cs;
  for (int k = 1; k <= 3; ++k) cs.push_back(make_point_customer(k, NodeId{k}, 1));
  return make_instance(make_single_depot_fleet(NodeId{0}, w1, w2), std::move(costs), std::move(cs), "line");
}

inline std::vector<Visit> visits_of(std::initializer_list<int> ids) {
  std::vector<Visit> v;
  for (int id : ids) v.push_back({id, Orientation::FromLeft});
  return v;
}

inline Instance zero_instance(int n, int dim) {
  auto costs = std::make_shared<CostModel>();
  costs->c1 = CostMatrix(dim);
  costs->c2 = CostMatrix(dim);
  std::vector<SegmentCustomer> cs;
  for (int k = 1; k <= n; ++k) cs.push_back(make_point_customer(k, NodeId{k % dim}, 1));
  return make_instance(make_single_depot_fleet(NodeId{0}, n, n), std::move(costs), std::move(cs), "zero");
}

}  // namespace vrp2::testing
