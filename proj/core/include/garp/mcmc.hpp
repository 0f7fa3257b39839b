#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "garp/gaussian.hpp"
#include "garp/gibbs_prior.hpp"
#include "garp/partition_state.hpp"
#include "garp/rng.hpp"

namespace garp {

enum class WeightMode {
  kExact,          // joint-pmf-ratio full conditionals
  kPaperFaithful,  // simplified reference weights: no DM renormalization
                   // on vertex birth, edge denominator beta/M_e + N_v^-i
};

struct ChainConfig {
  int n_iter = 10000;
  int burnin = 5000;
  int thin = 2;
  std::uint64_t seed = 1;
  WeightMode mode = WeightMode::kExact;
  bool extra_label_pass = false;  // optional move: resample Z_i with V_i fixed
};
void validate(const ChainConfig& cfg);

struct ChainSample {
  int iteration = 0;
  std::vector<UnitAssignment> assignments;
  std::vector<VertexParams> vertex_params;
};

struct CandidateWeight {
  UnitAssignment label;  // in the reduced (unit-detached) labeling
  double log_weight;
};

// Full conditional weights for unit i. The unit is detached internally; an
// empty list means the move is blocked (I_i = 1). Candidate labels refer to
// the reduced state: existing vertices, the new vertex K_v^-i + 1, and every
// pair k < k' <= K_v^-i. vertex_params must match the state's labels.
std::vector<CandidateWeight> assignment_weights(
    const GraphAlignedState& state, int i, const Eigen::VectorXd& y,
    const GibbsPriorSpec& spec, const ModelHyper& hyper,
    const std::vector<VertexParams>& vertex_params, const NIWParams& niw,
    const EdgeGeometry& geom, WeightMode mode, bool unit_likelihood = false);

// Brute-force full conditional: attach unit i everywhere admissible,
// evaluate the complete joint (partition pmf with label multiplicity, all
// likelihood factors, Student-T marginal for the new vertex), normalize.
// Independent of the assignment_weights code path. N <= 10.
std::vector<CandidateWeight> exact_full_conditional_oracle(
    const GraphAlignedState& state, int i, const Eigen::MatrixXd& data,
    const GibbsPriorSpec& spec, const ModelHyper& hyper,
    const std::vector<VertexParams>& vertex_params, const NIWParams& niw,
    const EdgeGeometry& geom, bool unit_likelihood = false);

// Marginal Gibbs / Metropolis-within-Gibbs sampler over (V, Z, vertex
// parameters). One Sampler owns one rng stream; run several instances for
// parallel chains.
class Sampler {
 public:
  Sampler(Eigen::MatrixXd data, GibbsPriorSpec spec, ModelHyper hyper, NIWParams niw,
          EdgeGeometry geom, ChainConfig cfg);

  // Test hook: constant sampling density, so the chain targets the prior
  // restricted to E_N. Parameter updates are skipped.
  void disable_likelihood() { unit_likelihood_ = true; }

  // Sequential greedy allocation: assign units 1..N to the best existing
  // vertex or a new one under posterior-mean parameters, then draw all
  // vertex parameters. Deterministic given the data.
  void init_greedy();
  // All units in one vertex.
  void init_single_vertex();
  // Warm start from an explicit state.
  void set_state(GraphAlignedState state, std::vector<VertexParams> params);

  void sweep();

  const GraphAlignedState& state() const { return state_; }
  const std::vector<VertexParams>& vertex_params() const { return vertex_params_; }
  ChainSample snapshot(int iteration) const;
  int param_accepts() const { return param_accepts_; }
  int param_proposals() const { return param_proposals_; }

  void update_assignment(int i);
  void update_assignment_fixed_v(int i);
  void update_vertex_params(int k);

 private:
  Eigen::MatrixXd data_;
  GibbsPriorSpec spec_;
  ModelHyper hyper_;
  NIWParams niw_;
  EdgeGeometry geom_;
  ChainConfig cfg_;
  Rng rng_;
  GraphAlignedState state_;
  std::vector<VertexParams> vertex_params_;
  bool unit_likelihood_ = false;
  int param_accepts_ = 0;
  int param_proposals_ = 0;

  mutable std::vector<CachedGaussian> vertex_cache_;
  mutable std::vector<bool> vertex_cache_ok_;
  mutable std::map<EdgePair, CachedGaussian> edge_cache_;

  const CachedGaussian& vertex_gaussian(int k) const;
  const CachedGaussian& edge_gaussian(int k, int kp) const;
  void invalidate_caches();
  void invalidate_vertex(int k);
  void erase_vertex_entry(int removed_label);
  Eigen::MatrixXd rows_of_vertex(int k) const;
  void canonicalize();
};

struct RunResult {
  std::vector<ChainSample> samples;
  double seconds = 0.0;
  double param_accept_rate = 1.0;
};

RunResult run_chain(const ChainConfig& cfg, const Eigen::MatrixXd& data,
                    const GibbsPriorSpec& spec, const ModelHyper& hyper,
                    const NIWParams& niw, const EdgeGeometry& geom,
                    const std::function<void(int)>& progress = {});

}  // namespace garp
