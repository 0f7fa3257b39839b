#pragma once

#include <functional>
#include <vector>

#include "garp/partition_state.hpp"

namespace garp {

// Calls fn once per set partition of {0..n-1}, encoded as a restricted
// growth string (labels by order of appearance, starting at 1).
void for_each_set_partition(int n, const std::function<void(const std::vector<int>&)>& fn);

// Calls fn once per graph-aligned configuration class of n units:
// every V in {0,1}^n, every partition of the vertex units, every mapping of
// edge units onto pairs k < k' <= K_v. Configurations whose edge units have
// no admissible pair (K_v < 2) are visited with the completeness label (1,2),
// so the relaxed model's full support is covered; filter with
// truncation_event_holds for the truncated model. n <= 10.
void for_each_garp_state(int n, const std::function<void(const GraphAlignedState&)>& fn);

}  // namespace garp
