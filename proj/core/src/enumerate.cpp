#include "garp/enumerate.hpp"

#include <algorithm>
#include <stdexcept>

namespace garp {

void for_each_set_partition(int n, const std::function<void(const std::vector<int>&)>& fn) {
  if (n < 1) throw std::invalid_argument("for_each_set_partition: n must be >= 1");
  std::vector<int> labels(n, 1);
  std::function<void(int, int)> rec = [&](int i, int k_max) {
    if (i == n) {
      fn(labels);
      return;
    }
    for (int k = 1; k <= k_max + 1; ++k) {
      labels[i] = k;
      rec(i + 1, std::max(k_max, k));
    }
  };
  rec(0, 0);
}

void for_each_garp_state(int n, const std::function<void(const GraphAlignedState&)>& fn) {
  if (n < 1 || n > 10) throw std::invalid_argument("for_each_garp_state: n out of range [1,10]");

  std::vector<UnitAssignment> assignment(n);
  std::vector<int> edge_units;
  edge_units.reserve(n);

  // Edge units take any pair k < k' <= k_v; with k_v < 2 the completeness
  // convention pins them all to (1,2).
  std::function<void(std::size_t, int)> assign_edges = [&](std::size_t j, int k_v) {
    if (j == edge_units.size()) {
      fn(GraphAlignedState::from_assignments(assignment));
      return;
    }
    if (k_v < 2) {
      assignment[edge_units[j]] = UnitAssignment{1, 2};
      assign_edges(j + 1, k_v);
      return;
    }
    for (int k = 1; k < k_v; ++k)
      for (int kp = k + 1; kp <= k_v; ++kp) {
        assignment[edge_units[j]] = UnitAssignment{k, kp};
        assign_edges(j + 1, k_v);
      }
  };

  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> vertex_units;
    edge_units.clear();
    for (int i = 0; i < n; ++i)
      ((mask >> i) & 1u ? vertex_units : edge_units).push_back(i);

    if (vertex_units.empty()) {
      // All units on edges: no vertices exist, K_v = 0.
      for (int i : edge_units) assignment[i] = UnitAssignment{1, 2};
      fn(GraphAlignedState::from_assignments(assignment));
      continue;
    }
    const int n_v = static_cast<int>(vertex_units.size());
    for_each_set_partition(n_v, [&](const std::vector<int>& labels) {
      int k_v = 0;
      for (int j = 0; j < n_v; ++j) {
        assignment[vertex_units[j]] = UnitAssignment{labels[j], 0};
        k_v = std::max(k_v, labels[j]);
      }
      assign_edges(0, k_v);
    });
  }
}

}  // namespace garp
