#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "garp/enumerate.hpp"
#include "garp/gibbs_prior.hpp"
#include "garp/partition_state.hpp"
#include "garp/rng.hpp"

namespace garp::test {

// Enumerated truncated distribution over canonical classes, keyed by the
// canonical relabeling.
inline std::map<std::string, double> enumerate_garp_distribution(
    const GibbsPriorSpec& spec, const ModelHyper& hyper, int n) {
  std::map<std::string, double> probs;
  double total = 0.0;
  for_each_garp_state(n, [&](const GraphAlignedState& state) {
    if (!truncation_event_holds(state)) return;
    const double w = std::exp(relaxed_log_class_weight(spec, hyper, state));
    probs[state.canonical_relabel().state.key()] += w;
    total += w;
  });
  for (auto& [key, p] : probs) p /= total;
  return probs;
}

// Total relaxed-model mass on E_N (the truncation probability) and on the
// full support (should be one).
struct RelaxedTotals {
  double on_support = 0.0;
  double everywhere = 0.0;
};
inline RelaxedTotals enumerate_relaxed_totals(const GibbsPriorSpec& spec,
                                              const ModelHyper& hyper, int n) {
  RelaxedTotals t;
  for_each_garp_state(n, [&](const GraphAlignedState& state) {
    const double w = std::exp(relaxed_log_class_weight(spec, hyper, state));
    t.everywhere += w;
    if (truncation_event_holds(state)) t.on_support += w;
  });
  return t;
}

// Adjusted Rand index between two labelings of the same ground set.
inline double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  const int n = static_cast<int>(a.size());
  std::map<std::pair<int, int>, int> joint;
  std::map<int, int> ca;
  std::map<int, int> cb;
  for (int i = 0; i < n; ++i) {
    ++joint[{a[i], b[i]}];
    ++ca[a[i]];
    ++cb[b[i]];
  }
  auto choose2 = [](long x) { return 0.5 * x * (x - 1); };
  double sum_joint = 0.0;
  for (const auto& [key, c] : joint) sum_joint += choose2(c);
  double sum_a = 0.0;
  for (const auto& [key, c] : ca) sum_a += choose2(c);
  double sum_b = 0.0;
  for (const auto& [key, c] : cb) sum_b += choose2(c);
  const double expected = sum_a * sum_b / choose2(n);
  const double max_index = 0.5 * (sum_a + sum_b);
  return (sum_joint - expected) / (max_index - expected);
}

// Uniformly random draw from the truncated model by rejection (test states).
inline GraphAlignedState random_support_state(Rng& rng, int n) {
  for (;;) {
    std::vector<UnitAssignment> a(n);
    std::vector<int> counts;
    for (int i = 0; i < n; ++i) {
      if (rng.uniform() < 0.6 || counts.empty()) {
        const int k = counts.empty() || rng.uniform() < 0.4
                          ? static_cast<int>(counts.size()) + 1
                          : 1 + static_cast<int>(rng.uniform() * counts.size());
        if (k == static_cast<int>(counts.size()) + 1)
          counts.push_back(1);
        else
          ++counts[k - 1];
        a[i] = UnitAssignment::vertex(k);
      } else {
        a[i] = UnitAssignment{0, 0};  // placeholder, edge decided below
      }
    }
    const int k_v = static_cast<int>(counts.size());
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      if (!a[i].is_detached()) continue;
      if (k_v < 2) {
        ok = false;
        break;
      }
      const int k = 1 + static_cast<int>(rng.uniform() * k_v);
      int kp = 1 + static_cast<int>(rng.uniform() * k_v);
      while (kp == k) kp = 1 + static_cast<int>(rng.uniform() * k_v);
      a[i] = UnitAssignment::edge(std::min(k, kp), std::max(k, kp));
    }
    if (!ok) continue;
    GraphAlignedState state = GraphAlignedState::from_assignments(a);
    return state.canonical_relabel().state;
  }
}

inline double total_variation(const std::map<std::string, double>& p,
                              const std::map<std::string, double>& q) {
  double tv = 0.0;
  for (const auto& [key, prob] : p) {
    auto it = q.find(key);
    tv += std::abs(prob - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [key, prob] : q)
    if (!p.count(key)) tv += prob;
  return 0.5 * tv;
}

}  // namespace garp::test
