#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "garp/gibbs_prior.hpp"
#include "garp/mcmc.hpp"
#include "garp/prior_simulator.hpp"
#include "garp/rng.hpp"

namespace {

using namespace garp;

void BM_LogEppf(benchmark::State& state) {
  const GibbsPriorSpec spec = Gnedin{0.5};
  std::vector<int> counts(state.range(0), 25);
  for (auto _ : state) benchmark::DoNotOptimize(log_eppf(spec, counts));
}
BENCHMARK(BM_LogEppf)->Arg(5)->Arg(20);

void BM_DmUrn(benchmark::State& state) {
  std::map<EdgePair, int> counts{{{1, 2}, 30}, {{2, 3}, 5}};
  for (auto _ : state) benchmark::DoNotOptimize(dm_urn_weights(counts, 0.5, state.range(0)));
}
BENCHMARK(BM_DmUrn)->Arg(5)->Arg(12);

void BM_EdgeParams(benchmark::State& state) {
  const EdgeGeometry geom = default_edge_geometry(0.01);
  Eigen::Vector2d a(-2.0, -2.0);
  Eigen::Vector2d b(3.0, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(edge_params(a, b, geom));
}
BENCHMARK(BM_EdgeParams);

struct SweepFixture {
  Eigen::MatrixXd data;
  NIWParams niw;
  EdgeGeometry geom = default_edge_geometry(0.01);
  ChainConfig cfg;

  SweepFixture() {
    const LabeledDataset ds = generate_scenario({Scenario::kWellSpecified, 5});
    data = ds.points;
    niw.mu0 = data.colwise().mean().transpose();
    niw.kappa0 = 0.001;
    niw.nu0 = 100.0;
    niw.sigma0 = 150.0 * Eigen::MatrixXd::Identity(2, 2);
    cfg.seed = 9;
  }
};

void BM_AssignmentUpdateSweep(benchmark::State& state) {
  SweepFixture fx;
  Sampler sampler(fx.data, Gnedin{0.5}, ModelHyper{0.5, 0.5}, fx.niw, fx.geom, fx.cfg);
  sampler.init_greedy();
  for (int t = 0; t < 20; ++t) sampler.sweep();  // settle K_v
  for (auto _ : state) sampler.sweep();
  state.SetItemsProcessed(state.iterations() * fx.data.rows());
}
BENCHMARK(BM_AssignmentUpdateSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
