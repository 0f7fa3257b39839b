#include "garp/prior_simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace garp {

GraphAlignedState sample_relaxed(Rng& rng, const GibbsPriorSpec& spec,
                                 const ModelHyper& hyper, int n) {
  if (n < 1) throw std::invalid_argument("sample_relaxed: N must be >= 1");
  std::vector<int> is_vertex(n);
  for (int i = 0; i < n; ++i) is_vertex[i] = rng.bernoulli(hyper.p_v) ? 1 : 0;

  std::vector<UnitAssignment> assignment(n);
  std::vector<int> counts;
  int n_v = 0;
  std::vector<double> weights;
  for (int i = 0; i < n; ++i) {
    if (!is_vertex[i]) continue;
    auto urn = gcrp_weights(spec, counts, n_v);
    weights.clear();
    for (const auto& [label, w] : urn) weights.push_back(w);
    const int pick = urn[rng.categorical(weights)].first;
    if (pick == static_cast<int>(counts.size()) + 1)
      counts.push_back(1);
    else
      ++counts[pick - 1];
    ++n_v;
    assignment[i] = UnitAssignment{pick, 0};
  }

  const int k_v = static_cast<int>(counts.size());
  std::map<EdgePair, int> edge_counts;
  for (int i = 0; i < n; ++i) {
    if (is_vertex[i]) continue;
    if (k_v < 2) {
      // Completeness convention: no admissible pair exists, label (1,2).
      assignment[i] = UnitAssignment{1, 2};
      continue;
    }
    auto urn = dm_urn_weights(edge_counts, hyper.beta, k_v);
    weights.clear();
    for (const auto& [pair, w] : urn) weights.push_back(w);
    const EdgePair pick = urn[rng.categorical(weights)].first;
    ++edge_counts[pick];
    assignment[i] = UnitAssignment{pick.first, pick.second};
  }
  return GraphAlignedState::from_assignments(std::move(assignment));
}

GarpPriorDraw sample_garp_prior(Rng& rng, const GibbsPriorSpec& spec,
                                const ModelHyper& hyper, int n, int max_attempts) {
  if (max_attempts < 1) throw std::invalid_argument("sample_garp_prior: max_attempts must be >= 1");
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    GraphAlignedState state = sample_relaxed(rng, spec, hyper, n);
    if (truncation_event_holds(state)) return GarpPriorDraw{std::move(state), attempt};
  }
  throw std::runtime_error(
      "sample_garp_prior: attempts exhausted; acceptance probability " +
      std::to_string(truncation_probability(spec, hyper.p_v, n)) +
      " suggests a pathological configuration");
}

namespace {

std::vector<Eigen::Vector2d> scenario_means() {
  return {{-5.0, -4.0}, {-4.0, 2.0}, {0.0, 7.0}, {5.0, 3.0}, {6.0, -3.0}};
}

// Consecutive vertices in the listed order, closing the ring.
std::vector<EdgePair> scenario_edges() {
  return {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}};
}

Eigen::Vector2d draw_gaussian(Rng& rng, const Eigen::Vector2d& mu, const Eigen::Matrix2d& sigma) {
  const Eigen::LLT<Eigen::Matrix2d> llt(sigma);
  Eigen::Vector2d z(rng.normal(), rng.normal());
  return mu + llt.matrixL() * z;
}

}  // namespace

LabeledDataset generate_scenario(const ScenarioSpec& spec) {
  Rng rng(spec.seed);
  const auto means = scenario_means();
  const auto edges = scenario_edges();
  const EdgeGeometry geom = default_edge_geometry(0.01);
  const bool misspecified = spec.kind == Scenario::kMisspecified;
  const bool with_edges = spec.kind != Scenario::kNonConnected;
  const double vertex_var = misspecified ? 0.5 : 0.25;
  const int per_vertex = 200;
  const int per_edge = with_edges ? 100 : 0;
  const int n = 5 * per_vertex + static_cast<int>(edges.size()) * per_edge;

  LabeledDataset out;
  out.points.resize(n, 2);
  out.true_assignments.reserve(n);
  const Eigen::Matrix2d vertex_sigma = vertex_var * Eigen::Matrix2d::Identity();
  for (int k = 0; k < 5; ++k)
    out.true_vertex_params.push_back(VertexParams{means[k], vertex_sigma});
  if (with_edges) out.true_edges = edges;

  int row = 0;
  for (int k = 0; k < 5; ++k) {
    for (int j = 0; j < per_vertex; ++j, ++row) {
      out.points.row(row) = draw_gaussian(rng, means[k], vertex_sigma).transpose();
      out.true_assignments.push_back(UnitAssignment::vertex(k + 1));
    }
  }
  if (!with_edges) return out;
  for (const auto& [k, kp] : edges) {
    const Eigen::Vector2d mu_k = means[k - 1];
    const Eigen::Vector2d mu_kp = means[kp - 1];
    const VertexParams ep = edge_params(mu_k, mu_kp, geom);
    const Eigen::Vector2d delta = mu_k - mu_kp;
    const double dist = delta.norm();
    const Eigen::Vector2d e = delta / dist;
    const Eigen::Vector2d perp(-e.y(), e.x());
    for (int j = 0; j < per_edge; ++j, ++row) {
      Eigen::Vector2d y;
      if (!misspecified) {
        y = draw_gaussian(rng, ep.mu, ep.sigma);
      } else {
        // Shifted center, uniform rectangle aligned with the connecting line:
        // side |delta|/2 along it, side 2 across it.
        const Eigen::Vector2d center = ep.mu + 0.25 * e + 0.25 * perp;
        const double along = (rng.uniform() - 0.5) * (dist / 2.0);
        const double across = (rng.uniform() - 0.5) * 2.0;
        y = center + along * e + across * perp;
      }
      out.points.row(row) = y.transpose();
      out.true_assignments.push_back(UnitAssignment::edge(k, kp));
    }
  }
  return out;
}

}  // namespace garp
