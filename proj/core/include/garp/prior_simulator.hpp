#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "garp/gaussian.hpp"
#include "garp/gibbs_prior.hpp"
#include "garp/partition_state.hpp"
#include "garp/rng.hpp"

namespace garp {

enum class Scenario { kWellSpecified, kMisspecified, kNonConnected };

struct ScenarioSpec {
  Scenario kind = Scenario::kWellSpecified;
  std::uint64_t seed = 1;
};

struct LabeledDataset {
  Eigen::MatrixXd points;                       // N x d
  std::vector<UnitAssignment> true_assignments;
  std::vector<VertexParams> true_vertex_params;
  std::vector<EdgePair> true_edges;             // pairs carrying edge mass
};

// One draw of (V, Z) from the relaxed model: V_i iid Bern(p_v), vertex units
// through the gCRP, edge units through the DM urn given the final K_v. When
// K_v < 2 leaves edge units without an admissible pair they take the
// completeness label (1,2); such draws fail truncation_event_holds.
GraphAlignedState sample_relaxed(Rng& rng, const GibbsPriorSpec& spec,
                                 const ModelHyper& hyper, int n);

struct GarpPriorDraw {
  GraphAlignedState state;
  int attempts = 0;
};

// Rejection sampling from the relaxed model onto E_N.
GarpPriorDraw sample_garp_prior(Rng& rng, const GibbsPriorSpec& spec,
                                const ModelHyper& hyper, int n, int max_attempts = 10000);

LabeledDataset generate_scenario(const ScenarioSpec& spec);

}  // namespace garp
