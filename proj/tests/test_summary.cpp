#include <doctest.h>

#include <cmath>
#include <numeric>

#include "garp/summary.hpp"
#include "support.hpp"

using namespace garp;

namespace {

ChainSample make_sample(const std::vector<UnitAssignment>& a, int iter = 0) {
  ChainSample s;
  s.iteration = iter;
  s.assignments = a;
  int k_v = 0;
  for (const auto& u : a)
    if (u.is_vertex()) k_v = std::max(k_v, u.k);
  for (int k = 0; k < k_v; ++k) {
    VertexParams p;
    p.mu = Eigen::Vector2d(k, 0.0);
    p.sigma = Eigen::Matrix2d::Identity();
    s.vertex_params.push_back(p);
  }
  return s;
}

}  // namespace

TEST_CASE("vhat: mode, tie rule, uncertainty") {
  const std::vector<UnitAssignment> all_vertex = {UnitAssignment::vertex(1),
                                                  UnitAssignment::vertex(1)};
  const std::vector<UnitAssignment> first_edge = {UnitAssignment::edge(1, 2),
                                                  UnitAssignment::vertex(1)};
  // unit 0: vertex in 5 of 10 samples (tie -> edge); unit 1 always vertex
  std::vector<ChainSample> samples;
  for (int t = 0; t < 5; ++t) samples.push_back(make_sample(all_vertex));
  for (int t = 0; t < 5; ++t) samples.push_back(make_sample(first_edge));
  const VHatResult r = vhat(samples);
  CHECK(r.v_bar[0] == doctest::Approx(0.5));
  CHECK_FALSE(r.v_hat[0]);  // strict > 0.5
  CHECK(r.uncertainty[0] == doctest::Approx(0.5));
  CHECK(r.v_hat[1]);
  CHECK(r.uncertainty[1] == doctest::Approx(0.0));

  // V_bar = 0.8 gives uncertainty 0.2
  std::vector<ChainSample> s8;
  for (int t = 0; t < 8; ++t) s8.push_back(make_sample(all_vertex));
  for (int t = 0; t < 2; ++t) s8.push_back(make_sample(first_edge));
  const VHatResult r8 = vhat(s8);
  CHECK(r8.v_hat[0]);
  CHECK(r8.uncertainty[0] == doctest::Approx(0.2));

  CHECK_THROWS_AS(vhat(std::vector<ChainSample>{}), std::invalid_argument);
}

TEST_CASE("coclustering") {
  const std::vector<int> units = {0, 1, 2};
  // degenerate chain: 0/1 entries
  std::vector<ChainSample> degenerate(4, make_sample({UnitAssignment::vertex(1),
                                                      UnitAssignment::vertex(1),
                                                      UnitAssignment::vertex(2)}));
  const Eigen::MatrixXd m = coclustering(degenerate, units);
  CHECK(m(0, 1) == 1.0);
  CHECK(m(0, 2) == 0.0);
  for (int i = 0; i < 3; ++i) CHECK(m(i, i) == 1.0);
  CHECK((m - m.transpose()).norm() == 0.0);

  // two-sample stream with units together in exactly one sample
  std::vector<ChainSample> two = {
      make_sample({UnitAssignment::vertex(1), UnitAssignment::vertex(1),
                   UnitAssignment::vertex(2)}),
      make_sample({UnitAssignment::vertex(1), UnitAssignment::vertex(2),
                   UnitAssignment::vertex(2)})};
  CHECK(coclustering(two, units)(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("vi_loss values and metric properties") {
  const std::vector<int> one_block = {1, 1};
  const std::vector<int> singletons = {1, 2};
  CHECK(vi_loss(one_block, one_block) == doctest::Approx(0.0));
  CHECK(vi_loss(one_block, singletons) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(vi_loss(singletons, one_block) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  Rng rng(61);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 3 + static_cast<int>(rng.uniform() * 10);
    auto random_labels = [&]() {
      std::vector<int> l(n);
      const int k = 1 + static_cast<int>(rng.uniform() * 4);
      for (int& x : l) x = 1 + static_cast<int>(rng.uniform() * k);
      return l;
    };
    const auto a = random_labels();
    const auto b = random_labels();
    const auto c = random_labels();
    CHECK(vi_loss(a, b) >= 0.0);
    CHECK(vi_loss(a, b) == doctest::Approx(vi_loss(b, a)).epsilon(1e-12));
    CHECK(vi_loss(a, c) <= vi_loss(a, b) + vi_loss(b, c) + 1e-12);
  }
  CHECK_THROWS_AS(vi_loss(std::vector<int>{1}, std::vector<int>{1, 2}),
                  std::invalid_argument);
}

TEST_CASE("point estimate: degenerate chain, dominant mode, label invariance") {
  const std::vector<int> units = {0, 1, 2, 3};
  // degenerate chain returns exactly that partition
  std::vector<ChainSample> degenerate(
      6, make_sample({UnitAssignment::vertex(1), UnitAssignment::vertex(1),
                      UnitAssignment::vertex(2), UnitAssignment::vertex(2)}));
  CHECK(point_estimate_partition(degenerate, units, 1) == std::vector<int>{1, 1, 2, 2});

  // 90/10 mixture of two separated partitions: the 90% one wins
  std::vector<ChainSample> mixed;
  for (int t = 0; t < 90; ++t)
    mixed.push_back(make_sample({UnitAssignment::vertex(1), UnitAssignment::vertex(1),
                                 UnitAssignment::vertex(2), UnitAssignment::vertex(2)}));
  for (int t = 0; t < 10; ++t)
    mixed.push_back(make_sample({UnitAssignment::vertex(1), UnitAssignment::vertex(2),
                                 UnitAssignment::vertex(2), UnitAssignment::vertex(2)}));
  CHECK(point_estimate_partition(mixed, units, 1) == std::vector<int>{1, 1, 2, 2});

  // relabeling the samples' clusters leaves every summary unchanged
  std::vector<ChainSample> relabeled;
  for (int t = 0; t < 90; ++t)
    relabeled.push_back(make_sample({UnitAssignment::vertex(2), UnitAssignment::vertex(2),
                                     UnitAssignment::vertex(1), UnitAssignment::vertex(1)}));
  for (int t = 0; t < 10; ++t)
    relabeled.push_back(make_sample({UnitAssignment::vertex(3), UnitAssignment::vertex(1),
                                     UnitAssignment::vertex(1), UnitAssignment::vertex(1)}));
  CHECK(point_estimate_partition(relabeled, units, 1) ==
        point_estimate_partition(mixed, units, 1));
}

TEST_CASE("point estimate beats every sampled partition in expected loss") {
  Rng rng(67);
  const int n = 12;
  std::vector<int> units(n);
  std::iota(units.begin(), units.end(), 0);
  std::vector<ChainSample> samples;
  for (int t = 0; t < 60; ++t) {
    std::vector<UnitAssignment> a;
    const int k = 2 + static_cast<int>(rng.uniform() * 3);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = 1 + (i * k / n + (rng.uniform() < 0.2)) % k;
    int seen = 0;
    std::map<int, int> remap;
    for (int i = 0; i < n; ++i) {
      if (!remap.count(labels[i])) remap[labels[i]] = ++seen;
      a.push_back(UnitAssignment::vertex(remap[labels[i]]));
    }
    samples.push_back(make_sample(a));
  }
  const Eigen::MatrixXd pi = coclustering(samples, units);
  const std::vector<int> estimate = point_estimate_partition(samples, units, 7);
  const double estimate_loss = expected_vi_surrogate(estimate, pi);
  for (const ChainSample& s : samples) {
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = s.assignments[i].k;
    CHECK(estimate_loss <= expected_vi_surrogate(labels, pi) + 1e-10);
  }
}

TEST_CASE("edge point estimate") {
  // Two vertex clusters, two edge units exactly between them; the single
  // candidate edge takes everything.
  Eigen::MatrixXd data(6, 2);
  data << -2.0, 0.0, -2.1, 0.1, 2.0, 0.0, 2.1, -0.1, 0.0, 0.05, 0.1, -0.02;
  NIWParams niw;
  niw.mu0 = Eigen::VectorXd::Zero(2);
  niw.kappa0 = 0.01;
  niw.nu0 = 6.0;
  niw.sigma0 = Eigen::MatrixXd::Identity(2, 2);
  const EdgeGeometry geom{0.4, 0.25};

  std::vector<ChainSample> samples(
      5, make_sample({UnitAssignment::vertex(1), UnitAssignment::vertex(1),
                      UnitAssignment::vertex(2), UnitAssignment::vertex(2),
                      UnitAssignment::edge(1, 2), UnitAssignment::edge(1, 2)}));
  const std::vector<bool> v_hat = {true, true, true, true, false, false};
  const std::vector<int> labels = {1, 1, 2, 2, 0, 0};
  const EdgeEstimate est = edge_point_estimate(samples, v_hat, labels, data,
                                               ModelHyper{0.6, 0.5}, niw, geom);
  REQUIRE(est.edge_assignments.size() == 2);
  CHECK(est.edge_assignments[0] == UnitAssignment::edge(1, 2));
  CHECK(est.edge_assignments[1] == UnitAssignment::edge(1, 2));
  CHECK(est.edge_prob_table.at({1, 2}) == doctest::Approx(2.0).epsilon(1e-9));
  for (const auto& probs : est.unit_probs) {
    double total = 0.0;
    for (const auto& [pair, p] : probs) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }

  // symmetric three-vertex layout: a unit equidistant in density from two
  // symmetric candidate edges with equal counts splits 50/50
  Eigen::MatrixXd sym(4, 2);
  sym << 0.0, 2.0, -2.0, -1.0, 2.0, -1.0, 0.0, 0.0;
  std::vector<ChainSample> sym_samples(
      3, make_sample({UnitAssignment::vertex(1), UnitAssignment::vertex(2),
                      UnitAssignment::vertex(3), UnitAssignment::edge(1, 2)}));
  const std::vector<bool> sym_vhat = {true, true, true, false};
  const std::vector<int> sym_labels = {1, 2, 3, 0};
  const EdgeEstimate sym_est = edge_point_estimate(sym_samples, sym_vhat, sym_labels, sym,
                                                   ModelHyper{0.6, 0.5}, niw, geom);
  const auto& probs = sym_est.unit_probs.at(0);
  CHECK(probs.at({1, 2}) == doctest::Approx(probs.at({1, 3})).epsilon(1e-9));

  // fewer than two vertices with edge units present is an error
  CHECK_THROWS_AS(
      edge_point_estimate(samples, {true, true, true, true, false, false},
                          {1, 1, 1, 1, 0, 0}, data, ModelHyper{0.6, 0.5}, niw, geom),
      std::invalid_argument);
}

TEST_CASE("kv posterior") {
  std::vector<ChainSample> samples;
  for (int t = 0; t < 3; ++t)
    samples.push_back(make_sample({UnitAssignment::vertex(1), UnitAssignment::vertex(2),
                                   UnitAssignment::vertex(3), UnitAssignment::vertex(4)}));
  auto table = kv_posterior(samples);
  CHECK(table.size() == 1);
  CHECK(table.at(4) == doctest::Approx(1.0));

  samples.push_back(make_sample({UnitAssignment::vertex(1), UnitAssignment::vertex(1),
                                 UnitAssignment::vertex(2), UnitAssignment::vertex(2)}));
  table = kv_posterior(samples);
  double total = 0.0;
  for (const auto& [k, f] : table) total += f;
  CHECK(total == doctest::Approx(1.0));
  CHECK(table.at(2) == doctest::Approx(0.25));
}
