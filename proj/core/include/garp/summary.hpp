#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "garp/gaussian.hpp"
#include "garp/gibbs_prior.hpp"
#include "garp/mcmc.hpp"

namespace garp {

struct VHatResult {
  std::vector<double> v_bar;
  std::vector<bool> v_hat;          // V_bar > 0.5 (ties go to edge)
  std::vector<double> uncertainty;  // (1-Vhat)Vbar + Vhat(1-Vbar)
};
VHatResult vhat(std::span<const ChainSample> samples);

// Entry (i,j): fraction of samples in which units[i] and units[j] share a
// vertex-cluster. Diagonal fixed at 1.
Eigen::MatrixXd coclustering(std::span<const ChainSample> samples,
                             std::span<const int> units);

// Variation of information between two labelings of the same ground set,
// natural logs.
double vi_loss(std::span<const int> labels_a, std::span<const int> labels_b);

// Posterior-expected VI of a candidate labeling, using the co-clustering
// lower-bound surrogate.
double expected_vi_surrogate(std::span<const int> labels, const Eigen::MatrixXd& cocluster);

// Minimizer of the surrogate over all sampled partitions plus greedy sweep
// refinements from seeded random starts. Labels are canonical by first
// appearance. Deterministic given seed.
std::vector<int> point_estimate_partition(std::span<const ChainSample> samples,
                                          std::span<const int> units, std::uint64_t seed);

enum class EdgeSummaryMode {
  kPosteriorMeanParams,  // one conjugate pass on the fixed vertex partition
  kPerSampleParams,      // average full conditionals over aligned samples
};

struct EdgeEstimate {
  std::map<EdgePair, double> edge_prob_table;      // summed unit probabilities
  std::vector<UnitAssignment> edge_assignments;    // argmax per edge unit (data order)
  std::vector<int> edge_units;                     // indices with v_hat = 0
  std::vector<std::map<EdgePair, double>> unit_probs;  // per edge unit
  std::vector<VertexParams> vertex_means;          // conditioning parameters
};

// Rao-Blackwellized edge assignment given the vertex point estimate.
// vertex_labels holds, for every unit, the point-estimate cluster of units
// with v_hat = 1 (entries of edge units are ignored).
EdgeEstimate edge_point_estimate(std::span<const ChainSample> samples,
                                 const std::vector<bool>& v_hat,
                                 const std::vector<int>& vertex_labels,
                                 const Eigen::MatrixXd& data, const ModelHyper& hyper,
                                 const NIWParams& niw, const EdgeGeometry& geom,
                                 EdgeSummaryMode mode = EdgeSummaryMode::kPosteriorMeanParams);

std::map<int, double> kv_posterior(std::span<const ChainSample> samples);

struct PosteriorSummary {
  std::vector<double> v_bar;
  std::vector<bool> v_hat;
  std::vector<double> v_uncertainty;
  std::vector<int> vertex_partition;         // 0 for edge units
  std::vector<UnitAssignment> point_estimate;  // full per-unit labels
  std::map<EdgePair, double> edge_prob_table;
  std::map<int, double> kv_posterior;
  Eigen::MatrixXd cocluster;                 // over all units
  std::vector<VertexParams> vertex_means;
};

PosteriorSummary summarize(std::span<const ChainSample> samples, const Eigen::MatrixXd& data,
                           const ModelHyper& hyper, const NIWParams& niw,
                           const EdgeGeometry& geom, std::uint64_t seed,
                           EdgeSummaryMode mode = EdgeSummaryMode::kPosteriorMeanParams);

}  // namespace garp
