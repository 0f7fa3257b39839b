#include "garp/summary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "garp/rng.hpp"

namespace garp {

VHatResult vhat(std::span<const ChainSample> samples) {
  if (samples.empty()) throw std::invalid_argument("vhat: empty sample list");
  const std::size_t n = samples.front().assignments.size();
  VHatResult out;
  out.v_bar.assign(n, 0.0);
  for (const ChainSample& s : samples)
    for (std::size_t i = 0; i < n; ++i)
      if (s.assignments[i].is_vertex()) out.v_bar[i] += 1.0;
  out.v_hat.resize(n);
  out.uncertainty.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.v_bar[i] /= static_cast<double>(samples.size());
    out.v_hat[i] = out.v_bar[i] > 0.5;
    out.uncertainty[i] = out.v_hat[i] ? 1.0 - out.v_bar[i] : out.v_bar[i];
  }
  return out;
}

Eigen::MatrixXd coclustering(std::span<const ChainSample> samples,
                             std::span<const int> units) {
  if (units.empty()) throw std::invalid_argument("coclustering: empty unit subset");
  const int m = static_cast<int>(units.size());
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(m, m);
  std::unordered_map<int, std::vector<int>> buckets;
  for (const ChainSample& s : samples) {
    buckets.clear();
    for (int a = 0; a < m; ++a) {
      const UnitAssignment& ua = s.assignments[units[a]];
      if (ua.is_vertex()) buckets[ua.k].push_back(a);
    }
    for (const auto& [label, members] : buckets)
      for (std::size_t x = 0; x < members.size(); ++x)
        for (std::size_t y = x + 1; y < members.size(); ++y)
          counts(members[x], members[y]) += 1.0;
  }
  Eigen::MatrixXd out = (counts + counts.transpose()) / static_cast<double>(samples.size());
  out.diagonal().setOnes();
  return out;
}

namespace {

// Per-unit decomposition VI = (1/N) sum_i [log n_{a(i)} + log n_{b(i)}
// - 2 log n_{a(i),b(i)}].
std::unordered_map<long long, int> pair_counts(std::span<const int> a, std::span<const int> b) {
  std::unordered_map<long long, int> joint;
  for (std::size_t i = 0; i < a.size(); ++i)
    ++joint[static_cast<long long>(a[i]) * 1000003LL + b[i]];
  return joint;
}

std::unordered_map<int, int> label_counts(std::span<const int> v) {
  std::unordered_map<int, int> c;
  for (int x : v) ++c[x];
  return c;
}

std::vector<int> canonical_labels(std::span<const int> labels) {
  std::unordered_map<int, int> map;
  std::vector<int> out(labels.size());
  int next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = map.try_emplace(labels[i], next + 1);
    if (inserted) ++next;
    out[i] = it->second;
  }
  return out;
}

}  // namespace

double vi_loss(std::span<const int> labels_a, std::span<const int> labels_b) {
  if (labels_a.size() != labels_b.size() || labels_a.empty())
    throw std::invalid_argument("vi_loss: ground sets differ");
  const double n = static_cast<double>(labels_a.size());
  const auto ca = label_counts(labels_a);
  const auto cb = label_counts(labels_b);
  const auto joint = pair_counts(labels_a, labels_b);
  double vi = 0.0;
  for (std::size_t i = 0; i < labels_a.size(); ++i) {
    const int na = ca.at(labels_a[i]);
    const int nb = cb.at(labels_b[i]);
    const int nab = joint.at(static_cast<long long>(labels_a[i]) * 1000003LL + labels_b[i]);
    vi += std::log(static_cast<double>(na)) + std::log(static_cast<double>(nb)) -
          2.0 * std::log(static_cast<double>(nab));
  }
  return std::max(0.0, vi / n);
}

double expected_vi_surrogate(std::span<const int> labels, const Eigen::MatrixXd& cocluster) {
  const int n = static_cast<int>(labels.size());
  if (cocluster.rows() != n) throw std::invalid_argument("surrogate: size mismatch");
  std::unordered_map<int, int> sizes;
  for (int x : labels) ++sizes[x];
  double value = 0.0;
  for (int i = 0; i < n; ++i) {
    double own = 0.0;
    double all = 0.0;
    for (int j = 0; j < n; ++j) {
      all += cocluster(i, j);
      if (labels[i] == labels[j]) own += cocluster(i, j);
    }
    value += std::log(static_cast<double>(sizes.at(labels[i]))) + std::log(all) -
             2.0 * std::log(own);
  }
  return value / n;
}

namespace {

// Greedy sweep refinement of the surrogate with maintained per-unit block
// sums T(j,b) = sum over units l in block b of pi(j,l). A proposed move of
// unit i only touches the donor and receiver blocks, so one full sweep costs
// O(n^2) instead of a surrogate re-evaluation per candidate.
class GreedyRefiner {
 public:
  GreedyRefiner(std::vector<int> labels, const Eigen::MatrixXd& pi)
      : pi_(pi), labels_(std::move(labels)), n_(static_cast<int>(labels_.size())) {
    int k_max = 0;
    for (int x : labels_) k_max = std::max(k_max, x);
    sums_ = Eigen::MatrixXd::Zero(n_, k_max + 1);
    sizes_.assign(k_max + 1, 0);
    members_.assign(k_max + 1, {});
    for (int j = 0; j < n_; ++j) {
      const int b = labels_[j] - 1;
      sums_.col(b) += pi_.col(j);
      ++sizes_[b];
      members_[b].push_back(j);
    }
  }

  bool sweep() {
    bool moved = false;
    for (int i = 0; i < n_; ++i) {
      const int from = labels_[i] - 1;
      const int empty = sizes_[from] > 1 ? first_empty() : -1;  // allow one new block
      int best = from;
      double best_delta = -1e-10;
      for (int b = 0; b < static_cast<int>(sizes_.size()); ++b) {
        if (b == from || (sizes_[b] == 0 && b != empty)) continue;
        const double delta = move_delta(i, from, b);
        if (delta < best_delta) {
          best_delta = delta;
          best = b;
        }
      }
      if (best != from) {
        apply_move(i, from, best);
        moved = true;
      }
    }
    return moved;
  }

  std::vector<int> labels() const { return labels_; }

 private:
  int first_empty() {
    for (int b = 0; b < static_cast<int>(sizes_.size()); ++b)
      if (sizes_[b] == 0) return b;
    sums_.conservativeResize(Eigen::NoChange, sums_.cols() + 1);
    sums_.col(sums_.cols() - 1).setZero();
    sizes_.push_back(0);
    members_.push_back({});
    return static_cast<int>(sizes_.size()) - 1;
  }

  double move_delta(int i, int from, int to) const {
    const int sa = sizes_[from];
    const int sb = sizes_[to];
    double delta = 0.0;
    // donor block loses i
    for (int j : members_[from]) {
      if (j == i) continue;
      delta += std::log(sa - 1.0) - std::log(static_cast<double>(sa)) -
               2.0 * (std::log(sums_(j, from) - pi_(j, i)) - std::log(sums_(j, from)));
    }
    // receiver block gains i
    for (int j : members_[to])
      delta += std::log(sb + 1.0) - std::log(static_cast<double>(sb)) -
               2.0 * (std::log(sums_(j, to) + pi_(j, i)) - std::log(sums_(j, to)));
    // i's own term
    delta += std::log(sb + 1.0) - 2.0 * std::log(sums_(i, to) + pi_(i, i));
    delta -= std::log(static_cast<double>(sa)) - 2.0 * std::log(sums_(i, from));
    return delta;
  }

  void apply_move(int i, int from, int to) {
    sums_.col(from) -= pi_.col(i);
    sums_.col(to) += pi_.col(i);
    --sizes_[from];
    ++sizes_[to];
    members_[from].erase(std::find(members_[from].begin(), members_[from].end(), i));
    members_[to].push_back(i);
    labels_[i] = to + 1;
  }

  const Eigen::MatrixXd& pi_;
  std::vector<int> labels_;
  int n_;
  Eigen::MatrixXd sums_;
  std::vector<int> sizes_;
  std::vector<std::vector<int>> members_;
};

}  // namespace

std::vector<int> point_estimate_partition(std::span<const ChainSample> samples,
                                          std::span<const int> units, std::uint64_t seed) {
  if (samples.empty()) throw std::invalid_argument("point_estimate_partition: empty samples");
  const int m = static_cast<int>(units.size());
  const Eigen::MatrixXd pi = coclustering(samples, units);

  // Candidate pool: every distinct sampled partition restricted to `units`
  // (edge-assigned units become singletons via fresh negative labels).
  std::vector<std::vector<int>> candidates;
  std::unordered_set<std::string> seen;
  std::vector<int> restricted(m);
  for (const ChainSample& s : samples) {
    int fresh = -1;
    for (int a = 0; a < m; ++a) {
      const UnitAssignment& ua = s.assignments[units[a]];
      restricted[a] = ua.is_vertex() ? ua.k : fresh--;
    }
    std::vector<int> canon = canonical_labels(restricted);
    std::string key(reinterpret_cast<const char*>(canon.data()), canon.size() * sizeof(int));
    if (seen.insert(std::move(key)).second) candidates.push_back(std::move(canon));
  }

  double best_value = std::numeric_limits<double>::infinity();
  std::vector<int> best;
  for (const auto& cand : candidates) {
    const double v = expected_vi_surrogate(cand, pi);
    if (v < best_value) {
      best_value = v;
      best = cand;
    }
  }

  // Greedy refinement from the best candidate and from seeded random starts.
  Rng rng(seed);
  std::vector<std::vector<int>> starts{best};
  for (int s = 0; s < 4; ++s) {
    std::vector<int> random_start(m);
    const int k = 2 + static_cast<int>(rng.uniform() * 6);
    for (int i = 0; i < m; ++i) random_start[i] = 1 + static_cast<int>(rng.uniform() * k);
    starts.push_back(canonical_labels(random_start));
  }
  for (const auto& start : starts) {
    GreedyRefiner refiner(start, pi);
    for (int pass = 0; pass < 50 && refiner.sweep(); ++pass) {
    }
    const std::vector<int> labels = canonical_labels(refiner.labels());
    const double v = expected_vi_surrogate(labels, pi);
    if (v < best_value) {
      best_value = v;
      best = labels;
    }
  }
  return canonical_labels(best);
}

EdgeEstimate edge_point_estimate(std::span<const ChainSample> samples,
                                 const std::vector<bool>& v_hat,
                                 const std::vector<int>& vertex_labels,
                                 const Eigen::MatrixXd& data, const ModelHyper& hyper,
                                 const NIWParams& niw, const EdgeGeometry& geom,
                                 EdgeSummaryMode mode) {
  const int n = static_cast<int>(data.rows());
  EdgeEstimate out;
  for (int i = 0; i < n; ++i)
    if (!v_hat[i]) out.edge_units.push_back(i);

  int k_v = 0;
  for (int i = 0; i < n; ++i)
    if (v_hat[i]) k_v = std::max(k_v, vertex_labels[i]);
  if (!out.edge_units.empty() && k_v < 2)
    throw std::invalid_argument("edge_point_estimate: edge units present but fewer than 2 vertices");

  // Conditioning parameters: one conjugate pass over the fixed partition.
  for (int k = 1; k <= k_v; ++k) {
    std::vector<int> rows;
    for (int i = 0; i < n; ++i)
      if (v_hat[i] && vertex_labels[i] == k) rows.push_back(i);
    Eigen::MatrixXd cluster_data(rows.size(), data.cols());
    for (std::size_t j = 0; j < rows.size(); ++j) cluster_data.row(j) = data.row(rows[j]);
    const NIWParams post = niw_posterior(niw, cluster_data);
    VertexParams vp;
    vp.mu = post.mu0;
    vp.sigma = post.sigma0 / std::max(post.nu0 - data.cols() - 1, 1.0);
    out.vertex_means.push_back(std::move(vp));
  }
  if (out.edge_units.empty()) return out;

  const long m_e = static_cast<long>(k_v) * (k_v - 1) / 2;
  const double conc = hyper.beta / static_cast<double>(m_e);
  std::vector<EdgePair> pairs;
  std::vector<CachedGaussian> pair_gauss;
  for (int k = 1; k < k_v; ++k)
    for (int kp = k + 1; kp <= k_v; ++kp) {
      pairs.push_back({k, kp});
      const VertexParams ep =
          edge_params(out.vertex_means[k - 1].mu, out.vertex_means[kp - 1].mu, geom);
      pair_gauss.emplace_back(ep.mu, ep.sigma);
    }
  const int n_pairs = static_cast<int>(pairs.size());
  const int n_edge = static_cast<int>(out.edge_units.size());

  // Log likelihood of every edge unit under every pair.
  Eigen::MatrixXd loglik(n_edge, n_pairs);
  for (int u = 0; u < n_edge; ++u) {
    const Eigen::VectorXd y = data.row(out.edge_units[u]).transpose();
    for (int p = 0; p < n_pairs; ++p) loglik(u, p) = pair_gauss[p].log_density(y);
  }

  Eigen::MatrixXd probs(n_edge, n_pairs);
  if (mode == EdgeSummaryMode::kPerSampleParams) {
    // Average the DM-weighted full conditionals over samples, reading the
    // edge counts of each retained draw (its own labeling is projected onto
    // the fixed vertex partition by majority overlap).
    probs.setZero();
    int used = 0;
    for (const ChainSample& s : samples) {
      // overlap[sample label] -> best fixed label
      std::unordered_map<int, std::unordered_map<int, int>> overlap;
      for (int i = 0; i < n; ++i)
        if (v_hat[i] && s.assignments[i].is_vertex())
          ++overlap[s.assignments[i].k][vertex_labels[i]];
      std::unordered_map<int, int> to_fixed;
      for (const auto& [sk, table] : overlap) {
        int best_label = 0;
        int best_count = 0;
        for (const auto& [fk, c] : table)
          if (c > best_count) {
            best_count = c;
            best_label = fk;
          }
        to_fixed[sk] = best_label;
      }
      std::map<EdgePair, int> counts;
      for (int i = 0; i < n; ++i) {
        const UnitAssignment& a = s.assignments[i];
        if (!a.is_edge()) continue;
        auto it1 = to_fixed.find(a.k);
        auto it2 = to_fixed.find(a.k_prime);
        if (it1 == to_fixed.end() || it2 == to_fixed.end()) continue;
        int x = it1->second;
        int y2 = it2->second;
        if (x == y2 || x == 0 || y2 == 0) continue;
        if (x > y2) std::swap(x, y2);
        ++counts[{x, y2}];
      }
      ++used;
      for (int u = 0; u < n_edge; ++u) {
        double max_lw = -std::numeric_limits<double>::infinity();
        std::vector<double> lw(n_pairs);
        for (int p = 0; p < n_pairs; ++p) {
          auto it = counts.find(pairs[p]);
          const int c = it == counts.end() ? 0 : it->second;
          lw[p] = std::log(c + conc) + loglik(u, p);
          max_lw = std::max(max_lw, lw[p]);
        }
        double total = 0.0;
        for (double x : lw) total += std::exp(x - max_lw);
        for (int p = 0; p < n_pairs; ++p) probs(u, p) += std::exp(lw[p] - max_lw) / total;
      }
    }
    probs /= static_cast<double>(used);
  } else {
    // Self-consistent Rao-Blackwell pass: soft counts from the other units'
    // current probabilities, iterated to a fixed point. Deterministic.
    for (int u = 0; u < n_edge; ++u) {
      const double row_max = loglik.row(u).maxCoeff();
      probs.row(u) = (loglik.row(u).array() - row_max).exp();
      probs.row(u) /= probs.row(u).sum();
    }
    for (int pass = 0; pass < 500; ++pass) {
      const Eigen::RowVectorXd totals = probs.colwise().sum();
      double max_change = 0.0;
      for (int u = 0; u < n_edge; ++u) {
        std::vector<double> lw(n_pairs);
        double max_lw = -std::numeric_limits<double>::infinity();
        for (int p = 0; p < n_pairs; ++p) {
          const double others = std::max(0.0, totals(p) - probs(u, p));
          lw[p] = std::log(others + conc) + loglik(u, p);
          max_lw = std::max(max_lw, lw[p]);
        }
        double total = 0.0;
        for (double x : lw) total += std::exp(x - max_lw);
        for (int p = 0; p < n_pairs; ++p) {
          const double next = std::exp(lw[p] - max_lw) / total;
          max_change = std::max(max_change, std::abs(next - probs(u, p)));
          probs(u, p) = next;
        }
      }
      if (max_change < 1e-12) break;
    }
  }

  for (int p = 0; p < n_pairs; ++p) out.edge_prob_table[pairs[p]] = probs.col(p).sum();
  for (int u = 0; u < n_edge; ++u) {
    int best = 0;  // ties resolve to the lexicographically smallest pair
    for (int p = 1; p < n_pairs; ++p)
      if (probs(u, p) > probs(u, best)) best = p;
    out.edge_assignments.push_back(UnitAssignment::edge(pairs[best].first, pairs[best].second));
    std::map<EdgePair, double> up;
    for (int p = 0; p < n_pairs; ++p) up[pairs[p]] = probs(u, p);
    out.unit_probs.push_back(std::move(up));
  }
  return out;
}

std::map<int, double> kv_posterior(std::span<const ChainSample> samples) {
  if (samples.empty()) throw std::invalid_argument("kv_posterior: empty samples");
  std::map<int, double> freq;
  for (const ChainSample& s : samples) {
    int k_v = 0;
    for (const UnitAssignment& a : s.assignments)
      if (a.is_vertex()) k_v = std::max(k_v, a.k);
    freq[k_v] += 1.0;
  }
  for (auto& [k, f] : freq) f /= static_cast<double>(samples.size());
  return freq;
}

PosteriorSummary summarize(std::span<const ChainSample> samples, const Eigen::MatrixXd& data,
                           const ModelHyper& hyper, const NIWParams& niw,
                           const EdgeGeometry& geom, std::uint64_t seed,
                           EdgeSummaryMode mode) {
  const int n = static_cast<int>(data.rows());
  PosteriorSummary out;
  VHatResult v = vhat(samples);
  out.v_bar = std::move(v.v_bar);
  out.v_hat = std::move(v.v_hat);
  out.v_uncertainty = std::move(v.uncertainty);

  std::vector<int> vertex_units;
  for (int i = 0; i < n; ++i)
    if (out.v_hat[i]) vertex_units.push_back(i);
  out.vertex_partition.assign(n, 0);
  if (!vertex_units.empty()) {
    const std::vector<int> labels = point_estimate_partition(samples, vertex_units, seed);
    for (std::size_t a = 0; a < vertex_units.size(); ++a)
      out.vertex_partition[vertex_units[a]] = labels[a];
  }

  const EdgeEstimate edges = edge_point_estimate(samples, out.v_hat, out.vertex_partition,
                                                 data, hyper, niw, geom, mode);
  out.edge_prob_table = edges.edge_prob_table;
  out.vertex_means = edges.vertex_means;
  out.point_estimate.resize(n);
  for (int i = 0; i < n; ++i)
    if (out.v_hat[i]) out.point_estimate[i] = UnitAssignment::vertex(out.vertex_partition[i]);
  for (std::size_t u = 0; u < edges.edge_units.size(); ++u)
    out.point_estimate[edges.edge_units[u]] = edges.edge_assignments[u];

  out.kv_posterior = kv_posterior(samples);
  std::vector<int> all_units(n);
  std::iota(all_units.begin(), all_units.end(), 0);
  out.cocluster = coclustering(samples, all_units);
  return out;
}

}  // namespace garp
