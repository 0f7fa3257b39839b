// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier settings than the unit tests; expected to finish within
// the ctest timeout on a desktop.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <vector>

#include "garp/enumerate.hpp"
#include "garp/io.hpp"
#include "garp/mcmc.hpp"
#include "garp/prior_simulator.hpp"
#include "garp/summary.hpp"
#include "support.hpp"

using namespace garp;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<GibbsPriorSpec> kPriors = {DirichletProcess{1.0}, PitmanYor{1.0, 0.3},
                                             Gnedin{0.5}, SymDirichlet{3, 1.0}};

std::vector<std::vector<int>> integer_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int rest, int max_part) {
    if (rest == 0) {
      out.push_back(current);
      return;
    }
    for (int p = std::min(rest, max_part); p >= 1; --p) {
      current.push_back(p);
      rec(rest - p, p);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

// ---------------------------------------------------------------- 1
void criterion_1_eppf_normalization() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& spec : kPriors) {
    for (int n = 1; n <= 7; ++n) {
      double total = 0.0;
      for_each_set_partition(n, [&](const std::vector<int>& labels) {
        std::vector<int> counts;
        for (int lbl : labels) {
          if (lbl > static_cast<int>(counts.size())) counts.push_back(0);
          ++counts[lbl - 1];
        }
        total += std::exp(log_eppf(spec, counts));
      });
      worst = std::max(worst, std::abs(total - 1.0));
    }
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << "max |sum-1| = " << worst << ", " << elapsed << " s";
  report(1, "EPPF normalization, n = 1..7, all four priors", worst < 1e-10 && elapsed < 10.0,
         detail.str());
}

// ---------------------------------------------------------------- 2
void criterion_2_urn_consistency() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& spec : kPriors) {
    for (int n = 1; n <= 6; ++n) {
      for_each_set_partition(n, [&](const std::vector<int>& labels) {
        std::vector<int> counts;
        double log_product = 0.0;
        int n_v = 0;
        int k_v = 0;
        for (int lbl : labels) {
          auto urn = gcrp_weights(spec, counts, n_v);
          double total = 0.0;
          for (const auto& [label, w] : urn) total += w;
          log_product += std::log(urn[lbl - 1].second / total);
          if (lbl > k_v) {
            counts.push_back(1);
            ++k_v;
          } else {
            ++counts[lbl - 1];
          }
          ++n_v;
        }
        // The urn walks canonical sequences, one per labeled class of size
        // K_v!; the labeled pmf is EPPF/K_v!, so the product must equal
        // K_v! * (EPPF / K_v!) = EPPF.
        const double log_e = log_eppf(spec, counts);
        if (std::isinf(log_product) && std::isinf(log_e)) return;
        const double lhs = std::exp(log_product) / std::tgamma(k_v + 1.0);
        const double rhs = std::exp(log_e) / std::tgamma(k_v + 1.0);
        worst = std::max(worst, std::abs(lhs - rhs));
      });
    }
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << "max |urn product/K! - eppf/K!| = " << worst << ", " << elapsed << " s";
  report(2, "gCRP sequential product vs EPPF, sequences of length <= 6",
         worst < 1e-12 && elapsed < 30.0, detail.str());
}

// ---------------------------------------------------------------- 3
void criterion_3_feppf() {
  Rng rng(303);
  double worst = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    GibbsPriorSpec spec;
    switch (draw % 4) {
      case 0: spec = DirichletProcess{0.3 + 2.0 * rng.uniform()}; break;
      case 1: spec = PitmanYor{0.3 + 1.5 * rng.uniform(), 0.6 * rng.uniform()}; break;
      case 2: spec = Gnedin{0.15 + 0.7 * rng.uniform()}; break;
      default: spec = SymDirichlet{2 + static_cast<int>(rng.uniform() * 4),
                                   0.3 + 1.5 * rng.uniform()};
    }
    const ModelHyper hyper{0.25 + 0.7 * rng.uniform(), 0.2 + 1.3 * rng.uniform()};
    const int n = 3 + static_cast<int>(rng.uniform() * 4);  // N <= 6
    for (const auto& sizes : integer_partitions(n)) {
      const double direct = feppf_direct(spec, hyper, sizes, n);
      const double brute = feppf_bruteforce(spec, hyper, sizes, n);
      worst = std::max(worst, std::abs(direct - brute));
    }
  }
  std::ostringstream detail;
  detail << "max |direct - enumeration| = " << worst;
  report(3, "fEPPF direct sum vs exhaustive enumeration, N <= 6, 20 random draws",
         worst < 1e-10, detail.str());
}

// ---------------------------------------------------------------- 4
void criterion_4_truncation() {
  bool pass = true;
  std::ostringstream detail;

  struct Case {
    GibbsPriorSpec spec;
    const char* name;
  };
  for (const auto& c : {Case{DirichletProcess{1.0}, "dp"}, Case{Gnedin{0.5}, "gnedin"}}) {
    const ModelHyper hyper{0.7, 0.5};
    const int n = 10;
    const int draws = 100000;
    Rng rng(404);
    int accepted = 0;
    for (int t = 0; t < draws; ++t)
      if (truncation_event_holds(sample_relaxed(rng, c.spec, hyper, n))) ++accepted;
    const double closed = truncation_probability(c.spec, 0.7, n);
    const double mc = static_cast<double>(accepted) / draws;
    const double se = std::sqrt(closed * (1.0 - closed) / draws);
    const bool ok = std::abs(mc - closed) <= 3.0 * se;
    pass = pass && ok;
    detail << c.name << ": |mc-closed|/se = " << std::abs(mc - closed) / se << "; ";
  }

  // Gnedin limit: the complement at N = 500 tracks g_500 and approaches
  // gamma = 0.5 from above.
  const double complement_500 = 1.0 - truncation_probability(Gnedin{0.5}, 0.7, 500);
  const double g500 = prob_single_cluster(Gnedin{0.5}, 500);
  const bool limit_ok = std::abs(complement_500 - g500) < 0.02 &&
                        std::abs(complement_500 - 0.5) < 0.02;
  const double complement_50 = 1.0 - truncation_probability(Gnedin{0.5}, 0.7, 50);
  const bool trend_ok = std::abs(complement_500 - 0.5) <= std::abs(complement_50 - 0.5) + 1e-12;
  pass = pass && limit_ok && trend_ok;
  detail << "gnedin complement(500) = " << complement_500 << "; ";

  // single-cluster tail rates at n_v = 1e4 within 5%.
  const long big = 10000;
  const double dp_ratio = prob_single_cluster(DirichletProcess{1.0}, big) /
                          (std::exp(std::lgamma(2.0)) * std::pow(big, -1.0));
  const double pyp_ratio =
      prob_single_cluster(PitmanYor{1.0, 0.3}, big) /
      (std::exp(std::lgamma(2.0) - std::lgamma(0.7)) * std::pow(big, -1.3));
  const double sd_ratio = prob_single_cluster(SymDirichlet{3, 1.0}, big) /
                          (std::exp(std::lgamma(3.0)) * 3.0 * std::pow(big, -2.0));
  const double gn_ratio = prob_single_cluster(Gnedin{0.5}, big) / 0.5;
  for (double r : {dp_ratio, pyp_ratio, sd_ratio, gn_ratio}) pass = pass && std::abs(r - 1.0) < 0.05;
  detail << "rate ratios dp/pyp/symdir/gnedin = " << dp_ratio << "/" << pyp_ratio << "/"
         << sd_ratio << "/" << gn_ratio;
  report(4, "truncation probability: Monte Carlo, Gnedin limit, tail rates", pass,
         detail.str());
}

// ---------------------------------------------------------------- 5
void criterion_5_sampler_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  NIWParams niw;
  niw.mu0 = Eigen::VectorXd::Zero(2);
  niw.kappa0 = 0.5;
  niw.nu0 = 5.0;
  niw.sigma0 = Eigen::MatrixXd::Identity(2, 2) * 2.0;
  const EdgeGeometry geom{0.45, 0.25};

  // (a) exact-mode weights vs the brute-force oracle on 100 random states
  Rng rng(505);
  double worst = 0.0;
  int compared = 0;
  while (compared < 100) {
    const int n = 3 + static_cast<int>(rng.uniform() * 6);  // N <= 8
    const GraphAlignedState state = test::random_support_state(rng, n);
    Eigen::MatrixXd data(n, 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 2; ++j) data(i, j) = 3.0 * rng.normal();
    std::vector<VertexParams> params;
    for (int k = 0; k < state.k_v(); ++k) params.push_back(sample_niw(rng, niw));
    const GibbsPriorSpec& spec = kPriors[compared % kPriors.size()];
    const ModelHyper hyper{0.3 + 0.5 * rng.uniform(), 0.3 + rng.uniform()};
    const int i = static_cast<int>(rng.uniform() * n);
    const auto fast = assignment_weights(state, i, data.row(i).transpose(), spec, hyper,
                                         params, niw, geom, WeightMode::kExact);
    const auto oracle =
        exact_full_conditional_oracle(state, i, data, spec, hyper, params, niw, geom);
    if (fast.empty()) continue;
    ++compared;
    double max_lw = -1e300;
    for (const auto& cw : fast) max_lw = std::max(max_lw, cw.log_weight);
    double total = 0.0;
    for (const auto& cw : fast) total += std::exp(cw.log_weight - max_lw);
    for (std::size_t j = 0; j < fast.size(); ++j) {
      const double p_fast = std::exp(fast[j].log_weight - max_lw) / total;
      const double p_oracle = std::exp(oracle[j].log_weight);
      worst = std::max(worst, std::abs(p_fast - p_oracle) / std::max(p_oracle, 1e-300));
    }
  }
  const bool weights_ok = worst < 1e-10;

  // (b) prior-restricted chain vs enumerated distribution, N = 5, TV <= 0.02
  double worst_tv = 0.0;
  for (const auto& spec : kPriors) {
    const ModelHyper hyper{0.55, 0.7};
    const auto target = test::enumerate_garp_distribution(spec, hyper, 5);
    ChainConfig cfg;
    cfg.seed = 606;
    Sampler sampler(Eigen::MatrixXd::Zero(5, 2), spec, hyper, niw, geom, cfg);
    sampler.disable_likelihood();
    sampler.init_greedy();
    for (int t = 0; t < 2000; ++t) sampler.sweep();
    const int sweeps = 1000000;
    std::map<std::string, double> freq;
    for (int t = 0; t < sweeps; ++t) {
      sampler.sweep();
      freq[sampler.state().key()] += 1.0 / sweeps;
    }
    worst_tv = std::max(worst_tv, test::total_variation(freq, target));
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << "max rel weight err = " << worst << ", max TV = " << worst_tv << ", " << elapsed
         << " s";
  report(5, "sampler exactness: oracle weights and prior-restricted chain",
         weights_ok && worst_tv <= 0.02 && elapsed < 600.0, detail.str());
}

// ---------------------------------------------------------------- 6
void criterion_6_conjugacy_predictive() {
  NIWParams prior;
  prior.mu0 = Eigen::VectorXd::Zero(2);
  prior.mu0(0) = 0.5;
  prior.kappa0 = 2.0;
  prior.nu0 = 5.0;
  prior.sigma0 = Eigen::MatrixXd::Identity(2, 2) * 1.5;
  prior.sigma0(0, 1) = prior.sigma0(1, 0) = 0.3;

  Rng rng(707);
  Eigen::MatrixXd data(20, 2);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 2; ++j) data(i, j) = rng.normal();
  const NIWParams post = niw_posterior(prior, data);
  std::vector<double> ratios;
  for (int t = 0; t < 10; ++t) {
    const VertexParams theta = sample_niw(rng, prior);
    double loglik = 0.0;
    for (int i = 0; i < data.rows(); ++i)
      loglik += log_mvn(data.row(i).transpose(), theta.mu, theta.sigma);
    ratios.push_back(log_niw_pdf(theta, prior) + loglik - log_niw_pdf(theta, post));
  }
  double mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / ratios.size();
  double var = 0.0;
  for (double r : ratios) var += (r - mean) * (r - mean);
  var /= ratios.size();
  const double rel_err = std::sqrt(var) / std::abs(mean);
  const bool conj_ok = rel_err <= 1e-8;

  // predictive vs Monte Carlo at 5 points (2%)
  const std::vector<Eigen::Vector2d> points = {
      {0.5, 0.0}, {1.2, 0.4}, {-0.3, -0.8}, {0.0, 1.0}, {2.0, -1.0}};
  std::vector<double> mc(points.size(), 0.0);
  const int draws = 1000000;
  for (int t = 0; t < draws; ++t) {
    const VertexParams theta = sample_niw(rng, prior);
    const CachedGaussian g(theta.mu, theta.sigma);
    for (std::size_t j = 0; j < points.size(); ++j) mc[j] += std::exp(g.log_density(points[j]));
  }
  bool mc_ok = true;
  double worst_mc = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    const double exact = std::exp(log_predictive_new_vertex(points[j], prior));
    const double err = std::abs(mc[j] / draws - exact) / exact;
    worst_mc = std::max(worst_mc, err);
    mc_ok = mc_ok && err < 0.02;
  }

  // d = 1 quadrature within 1e-4
  NIWParams prior1;
  prior1.mu0 = Eigen::VectorXd::Constant(1, 0.3);
  prior1.kappa0 = 1.5;
  prior1.nu0 = 4.0;
  prior1.sigma0 = Eigen::MatrixXd::Constant(1, 1, 2.0);
  const double sd = std::sqrt(prior1.sigma0(0, 0) * (prior1.kappa0 + 1) /
                              (prior1.kappa0 * prior1.nu0));
  const double lo = prior1.mu0(0) - 20 * sd;
  const double hi = prior1.mu0(0) + 20 * sd;
  const int steps = 400000;
  double integral = 0.0;
  for (int s = 0; s <= steps; ++s) {
    const double x = lo + (hi - lo) * s / steps;
    const double f = std::exp(log_predictive_new_vertex(Eigen::VectorXd::Constant(1, x), prior1));
    integral += (s == 0 || s == steps) ? 0.5 * f : f;
  }
  integral *= (hi - lo) / steps;
  const bool quad_ok = std::abs(integral - 1.0) <= 1e-4;

  std::ostringstream detail;
  detail << "ratio rel err = " << rel_err << ", max MC err = " << worst_mc
         << ", quadrature |int-1| = " << std::abs(integral - 1.0);
  report(6, "NIW conjugacy and Student-T predictive", conj_ok && mc_ok && quad_ok, detail.str());
}

// ---------------------------------------------------------------- 7
void criterion_7_edge_geometry() {
  bool pass = true;
  std::ostringstream detail;
  const EdgeGeometry geom = default_edge_geometry(0.01);
  pass = pass && std::abs(geom.r0 * geom.r0 - 0.434294) < 1e-6;
  pass = pass && std::abs(geom.r1 * geom.r1 - 0.0542868) < 1e-7;
  detail << "r0^2 = " << geom.r0 * geom.r0 << ", r1^2 = " << geom.r1 * geom.r1;

  Rng rng(808);
  double worst_spec = 0.0;
  double worst_rot = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int d = 2 + static_cast<int>(rng.uniform() * 3);
    Eigen::VectorXd a(d);
    Eigen::VectorXd b(d);
    for (int i = 0; i < d; ++i) {
      a(i) = 2.0 * rng.normal();
      b(i) = 2.0 * rng.normal();
    }
    const VertexParams ep = edge_params(a, b, geom);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ep.sigma);
    const double dist2 = (a - b).squaredNorm();
    worst_spec = std::max(worst_spec,
                          std::abs(eig.eigenvalues()(d - 1) - geom.r0 * geom.r0 * dist2));
    for (int i = 0; i + 1 < d; ++i)
      worst_spec = std::max(worst_spec, std::abs(eig.eigenvalues()(i) - geom.r1 * geom.r1));

    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = rng.normal();
    Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
    if (q.determinant() < 0) q.col(0) = -q.col(0);
    const VertexParams rotated = edge_params(q * a, q * b, geom);
    worst_rot = std::max(worst_rot, (rotated.mu - q * ep.mu).norm());
    worst_rot = std::max(worst_rot, (rotated.sigma - q * ep.sigma * q.transpose()).norm());
  }
  pass = pass && worst_spec < 1e-10 && worst_rot < 1e-10;
  detail << ", max spectrum err = " << worst_spec << ", max rotation err = " << worst_rot;
  report(7, "edge geometry: defaults, spectrum, rotation equivariance", pass, detail.str());
}

// ------------------------------------------------------------- 8 & 9 & 10 & 11
struct EndToEnd {
  bool recovery_pass = false;
  bool nonconnected_pass = false;
  bool determinism_pass = false;
  bool concentration_pass = false;
  std::string detail8;
  std::string detail9;
  std::string detail10;
  std::string detail11;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

EndToEnd run_end_to_end() {
  EndToEnd out;
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path dir = fs::temp_directory_path() / "garp_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // §S.3 defaults; well-separated scenario, so xi2 = 150.
  {
    std::ofstream cfg(dir / "config.txt");
    cfg << "prior.kind = gnedin\nprior.gamma = 0.5\nhyper.beta = 0.5\nhyper.p_v = 0.9\n"
        << "niw.kappa0 = 0.001\nniw.nu0 = 100\nniw.xi2 = 150\ngeom.alpha_level = 0.01\n"
        << "chain.n_iter = 10000\nchain.burnin = 5000\nchain.thin = 2\nchain.seed = 20240809\n";
  }

  // ---- criterion 8: WellSpecified recovery
  const ScenarioSpec well{Scenario::kWellSpecified, 11};
  const LabeledDataset truth = generate_scenario(well);
  write_csv(dir / "well.csv", truth.points);
  const FitOutputs fit = cmd_fit(dir / "config.txt", dir / "well.csv", dir / "well_out");
  const PosteriorSummary& summary = fit.summary;

  int k_v_hat = 0;
  for (int lbl : summary.vertex_partition) k_v_hat = std::max(k_v_hat, lbl);

  // map estimated vertex clusters onto true ones by majority overlap on
  // units that are vertices in both truth and estimate
  std::map<int, std::map<int, int>> overlap;
  std::vector<int> est_labels;
  std::vector<int> true_labels;
  for (int i = 0; i < truth.points.rows(); ++i) {
    if (!summary.v_hat[i] || !truth.true_assignments[i].is_vertex()) continue;
    est_labels.push_back(summary.vertex_partition[i]);
    true_labels.push_back(truth.true_assignments[i].k);
    ++overlap[summary.vertex_partition[i]][truth.true_assignments[i].k];
  }
  const double ari = test::adjusted_rand_index(est_labels, true_labels);

  std::map<int, int> est_to_true;
  for (const auto& [est, table] : overlap) {
    int best = 0;
    int best_count = 0;
    for (const auto& [tru, c] : table)
      if (c > best_count) {
        best_count = c;
        best = tru;
      }
    est_to_true[est] = best;
  }
  std::set<EdgePair> recovered;
  for (int i = 0; i < truth.points.rows(); ++i) {
    const UnitAssignment& a = summary.point_estimate[i];
    if (!a.is_edge()) continue;
    auto it1 = est_to_true.find(a.k);
    auto it2 = est_to_true.find(a.k_prime);
    if (it1 == est_to_true.end() || it2 == est_to_true.end()) continue;
    int x = it1->second;
    int y = it2->second;
    if (x == y) continue;
    if (x > y) std::swap(x, y);
    recovered.insert({x, y});
  }
  std::set<EdgePair> expected(truth.true_edges.begin(), truth.true_edges.end());
  const double elapsed8 = seconds_since(t0);
  out.recovery_pass =
      k_v_hat == 5 && ari >= 0.85 && recovered == expected && elapsed8 <= 1800.0;
  {
    std::ostringstream d;
    d << "K_v = " << k_v_hat << ", ARI = " << ari << ", edges "
      << (recovered == expected ? "recovered" : "NOT recovered") << ", " << elapsed8 << " s";
    out.detail8 = d.str();
  }

  // ---- criterion 11 (qualitative substitute): K_v posterior concentration
  double mass_at_5 = 0.0;
  auto it5 = summary.kv_posterior.find(5);
  if (it5 != summary.kv_posterior.end()) mass_at_5 = it5->second;
  out.concentration_pass = mass_at_5 >= 0.6;
  {
    std::ostringstream d;
    d << "P(K_v = 5 | well-specified data) = " << mass_at_5
      << " (application-data posteriors need the excluded preprocessing pipeline)";
    out.detail11 = d.str();
  }

  // ---- criterion 9: NonConnected
  const LabeledDataset none = generate_scenario({Scenario::kNonConnected, 12});
  write_csv(dir / "none.csv", none.points);
  const FitOutputs fit9 = cmd_fit(dir / "config.txt", dir / "none.csv", dir / "none_out");
  int k_v_9 = 0;
  for (int lbl : fit9.summary.vertex_partition) k_v_9 = std::max(k_v_9, lbl);
  int edge_units = 0;
  for (bool v : fit9.summary.v_hat)
    if (!v) ++edge_units;
  const double edge_fraction = static_cast<double>(edge_units) / none.points.rows();
  out.nonconnected_pass = edge_fraction <= 0.02 && k_v_9 == 5;
  {
    std::ostringstream d;
    d << "edge fraction = " << edge_fraction << ", K_v = " << k_v_9;
    out.detail9 = d.str();
  }

  // ---- criterion 10: byte-identical refit
  const FitOutputs refit = cmd_fit(dir / "config.txt", dir / "well.csv", dir / "well_out2");
  out.determinism_pass = slurp(dir / "well_out/summary.json") ==
                         slurp(dir / "well_out2/summary.json");
  out.detail10 = out.determinism_pass ? "summary JSON byte-identical" : "summary JSON differs";
  (void)refit;
  return out;
}

}  // namespace

int main() {
  criterion_1_eppf_normalization();
  criterion_2_urn_consistency();
  criterion_3_feppf();
  criterion_4_truncation();
  criterion_5_sampler_exactness();
  criterion_6_conjugacy_predictive();
  criterion_7_edge_geometry();
  const EndToEnd e2e = run_end_to_end();
  report(8, "end-to-end recovery on the well-specified scenario", e2e.recovery_pass, e2e.detail8);
  report(9, "end-to-end on the non-connected scenario", e2e.nonconnected_pass, e2e.detail9);
  report(10, "bitwise deterministic refit", e2e.determinism_pass, e2e.detail10);
  report(11, "K_v posterior concentration (desk-scale substitute)", e2e.concentration_pass,
         e2e.detail11);
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
