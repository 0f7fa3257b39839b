#include "garp/mcmc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace garp {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log DM(counts | beta/M_e') - log DM(counts | beta/M_e): the concentration
// shift every occupied pair picks up when K_v (hence M_e) changes.
double log_dm_concentration_shift(const std::map<EdgePair, int>& edge_counts, double beta,
                                  long m_e_old, long m_e_new, int n_e) {
  if (n_e == 0 || m_e_old == m_e_new) return 0.0;
  return log_dm_marginal(edge_counts, beta, m_e_new, n_e) -
         log_dm_marginal(edge_counts, beta, m_e_old, n_e);
}
}  // namespace

void validate(const ChainConfig& cfg) {
  if (cfg.n_iter < 1) throw std::invalid_argument("chain: n_iter must be >= 1");
  if (cfg.burnin < 0 || cfg.burnin >= cfg.n_iter)
    throw std::invalid_argument("chain: burnin must satisfy 0 <= burnin < n_iter");
  if (cfg.thin < 1) throw std::invalid_argument("chain: thin must be >= 1");
}

std::vector<CandidateWeight> assignment_weights(
    const GraphAlignedState& state, int i, const Eigen::VectorXd& y,
    const GibbsPriorSpec& spec, const ModelHyper& hyper,
    const std::vector<VertexParams>& vertex_params, const NIWParams& niw,
    const EdgeGeometry& geom, WeightMode mode, bool unit_likelihood) {
  GraphAlignedState reduced = state;
  const DetachResult detach = reduced.detach(i);
  if (detach.blocked) return {};
  std::vector<VertexParams> params = vertex_params;
  if (detach.removed_vertex > 0)
    params.erase(params.begin() + (detach.removed_vertex - 1));

  const int k_v = reduced.k_v();
  const int n_v = reduced.n_v();
  const int n_e = reduced.n_e();
  const long m_e = reduced.m_e();
  const double log_pv = std::log(hyper.p_v);
  const double log_pe = hyper.p_v < 1.0 ? std::log1p(-hyper.p_v) : kNegInf;

  std::vector<CandidateWeight> out;
  out.reserve(k_v + 1 + m_e);
  for (int k = 1; k <= k_v; ++k) {
    double lw = log_pv + log_eppf_ratio_existing(spec, reduced.vertex_count(k), n_v, k_v);
    if (!unit_likelihood) lw += log_mvn(y, params[k - 1].mu, params[k - 1].sigma);
    out.push_back({UnitAssignment::vertex(k), lw});
  }
  {
    double lw = log_pv + log_eppf_ratio_new(spec, n_v, k_v);
    if (mode == WeightMode::kExact)
      lw += log_dm_concentration_shift(reduced.edge_counts(), hyper.beta, m_e,
                                       static_cast<long>(k_v + 1) * k_v / 2, n_e);
    if (!unit_likelihood) lw += log_predictive_new_vertex(y, niw);
    out.push_back({UnitAssignment::vertex(k_v + 1), lw});
  }
  if (k_v >= 2 && hyper.p_v < 1.0) {
    const double conc = hyper.beta / static_cast<double>(m_e);
    const double log_denom = mode == WeightMode::kExact
                                 ? std::log(hyper.beta + n_e)
                                 : std::log(conc + n_v);
    for (int k = 1; k < k_v; ++k)
      for (int kp = k + 1; kp <= k_v; ++kp) {
        double lw = log_pe + std::log(reduced.edge_count(k, kp) + conc) - log_denom;
        if (!unit_likelihood) {
          const VertexParams ep = edge_params(params[k - 1].mu, params[kp - 1].mu, geom);
          lw += log_mvn(y, ep.mu, ep.sigma);
        }
        out.push_back({UnitAssignment::edge(k, kp), lw});
      }
  }
  return out;
}

std::vector<CandidateWeight> exact_full_conditional_oracle(
    const GraphAlignedState& state, int i, const Eigen::MatrixXd& data,
    const GibbsPriorSpec& spec, const ModelHyper& hyper,
    const std::vector<VertexParams>& vertex_params, const NIWParams& niw,
    const EdgeGeometry& geom, bool unit_likelihood) {
  if (state.n_units() > 10)
    throw std::invalid_argument("exact_full_conditional_oracle: N exceeds the guard");
  GraphAlignedState reduced = state;
  const DetachResult detach = reduced.detach(i);
  if (detach.blocked) return {};
  std::vector<VertexParams> params = vertex_params;
  if (detach.removed_vertex > 0)
    params.erase(params.begin() + (detach.removed_vertex - 1));

  const int k_v = reduced.k_v();
  std::vector<UnitAssignment> candidates;
  for (int k = 1; k <= k_v + 1; ++k) candidates.push_back(UnitAssignment::vertex(k));
  if (k_v >= 2 && hyper.p_v < 1.0)
    for (int k = 1; k < k_v; ++k)
      for (int kp = k + 1; kp <= k_v; ++kp) candidates.push_back(UnitAssignment::edge(k, kp));

  auto log_likelihood_all = [&](const GraphAlignedState& s,
                                const UnitAssignment& label_of_i) -> double {
    if (unit_likelihood) return 0.0;
    double ll = 0.0;
    for (int j = 0; j < s.n_units(); ++j) {
      const UnitAssignment& a = s.assignment(j);
      const Eigen::VectorXd y = data.row(j).transpose();
      if (j == i && label_of_i.is_vertex() && label_of_i.k == k_v + 1) {
        ll += log_predictive_new_vertex(y, niw);  // marginal over the new atom
      } else if (a.is_vertex()) {
        ll += log_mvn(y, params[a.k - 1].mu, params[a.k - 1].sigma);
      } else {
        const VertexParams ep =
            edge_params(params[a.k - 1].mu, params[a.k_prime - 1].mu, geom);
        ll += log_mvn(y, ep.mu, ep.sigma);
      }
    }
    return ll;
  };

  std::vector<CandidateWeight> out;
  std::vector<double> logw;
  for (const UnitAssignment& cand : candidates) {
    GraphAlignedState attached = reduced;
    attached.attach(i, cand);
    // Label multiplicity K_v! converts the labeled pmf into the weight of
    // the partition the compacted sampler actually walks on.
    const double lp = log_garp_pmf(spec, hyper, attached) +
                      std::lgamma(attached.k_v() + 1.0) + log_likelihood_all(attached, cand);
    out.push_back({cand, lp});
    logw.push_back(lp);
  }
  double max_lw = kNegInf;
  for (double lw : logw) max_lw = std::max(max_lw, lw);
  double total = 0.0;
  for (double lw : logw) total += std::exp(lw - max_lw);
  for (auto& cw : out) cw.log_weight = cw.log_weight - max_lw - std::log(total);
  return out;
}

Sampler::Sampler(Eigen::MatrixXd data, GibbsPriorSpec spec, ModelHyper hyper, NIWParams niw,
                 EdgeGeometry geom, ChainConfig cfg)
    : data_(std::move(data)),
      spec_(std::move(spec)),
      hyper_(hyper),
      niw_(std::move(niw)),
      geom_(geom),
      cfg_(cfg),
      rng_(cfg.seed),
      state_(GraphAlignedState::all_detached(static_cast<int>(data_.rows()))) {
  if (data_.rows() < 1) throw std::invalid_argument("sampler: data is empty");
  validate(spec_);
  validate(hyper_);
  validate(niw_);
  validate(geom_);
  validate(cfg_);
}

Eigen::MatrixXd Sampler::rows_of_vertex(int k) const {
  std::vector<int> rows;
  for (int i = 0; i < state_.n_units(); ++i) {
    const UnitAssignment& a = state_.assignment(i);
    if (a.is_vertex() && a.k == k) rows.push_back(i);
  }
  Eigen::MatrixXd out(rows.size(), data_.cols());
  for (std::size_t j = 0; j < rows.size(); ++j) out.row(j) = data_.row(rows[j]);
  return out;
}

void Sampler::init_single_vertex() {
  state_ = GraphAlignedState::single_vertex(state_.n_units());
  vertex_params_.clear();
  vertex_params_.push_back(sample_niw(rng_, niw_posterior(niw_, data_)));
  invalidate_caches();
}

void Sampler::set_state(GraphAlignedState state, std::vector<VertexParams> params) {
  if (state.n_units() != static_cast<int>(data_.rows()))
    throw std::invalid_argument("set_state: unit count mismatch");
  if (static_cast<int>(params.size()) != state.k_v())
    throw std::invalid_argument("set_state: one parameter set per vertex required");
  state.check_consistent();
  state_ = std::move(state);
  vertex_params_ = std::move(params);
  invalidate_caches();
}

void Sampler::init_greedy() {
  const int n = state_.n_units();
  state_ = GraphAlignedState::all_detached(n);
  // Posterior-mean parameters per growing cluster; likelihood-off reduces to
  // the pure urn, which keeps everything in one vertex.
  std::vector<VertexParams> mean_params;
  std::vector<Eigen::MatrixXd> members;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd y = data_.row(i).transpose();
    const int k_v = state_.k_v();
    int best = k_v + 1;
    double best_lw = kNegInf;
    for (int k = 1; k <= k_v + 1; ++k) {
      double lw = k <= k_v
                      ? log_eppf_ratio_existing(spec_, state_.vertex_count(k), state_.n_v(), k_v)
                      : log_eppf_ratio_new(spec_, state_.n_v(), k_v);
      if (!unit_likelihood_) {
        if (k <= k_v)
          lw += log_mvn(y, mean_params[k - 1].mu, mean_params[k - 1].sigma);
        else
          lw += log_predictive_new_vertex(y, niw_);
      }
      if (lw > best_lw) {
        best_lw = lw;
        best = k;
      }
    }
    state_.attach(i, UnitAssignment::vertex(best));
    if (best == k_v + 1) {
      members.emplace_back(0, data_.cols());
      mean_params.emplace_back();
    }
    Eigen::MatrixXd& m = members[best - 1];
    m.conservativeResize(m.rows() + 1, Eigen::NoChange);
    m.row(m.rows() - 1) = data_.row(i);
    const NIWParams post = niw_posterior(niw_, m);
    mean_params[best - 1].mu = post.mu0;
    // IW mode rather than mean: the denominator stays positive for any nu.
    mean_params[best - 1].sigma = post.sigma0 / (post.nu0 + data_.cols() + 1);
  }
  vertex_params_.clear();
  for (int k = 1; k <= state_.k_v(); ++k)
    vertex_params_.push_back(sample_niw(rng_, niw_posterior(niw_, rows_of_vertex(k))));
  canonicalize();
}

const CachedGaussian& Sampler::vertex_gaussian(int k) const {
  if (!vertex_cache_ok_[k - 1]) {
    vertex_cache_[k - 1] = CachedGaussian(vertex_params_[k - 1].mu, vertex_params_[k - 1].sigma);
    vertex_cache_ok_[k - 1] = true;
  }
  return vertex_cache_[k - 1];
}

const CachedGaussian& Sampler::edge_gaussian(int k, int kp) const {
  auto it = edge_cache_.find({k, kp});
  if (it == edge_cache_.end()) {
    const VertexParams ep = edge_params(vertex_params_[k - 1].mu, vertex_params_[kp - 1].mu, geom_);
    it = edge_cache_.emplace(EdgePair{k, kp}, CachedGaussian(ep.mu, ep.sigma)).first;
  }
  return it->second;
}

void Sampler::invalidate_caches() {
  vertex_cache_.assign(vertex_params_.size(), CachedGaussian{});
  vertex_cache_ok_.assign(vertex_params_.size(), false);
  edge_cache_.clear();
}

void Sampler::invalidate_vertex(int k) {
  vertex_cache_ok_[k - 1] = false;
  for (auto it = edge_cache_.begin(); it != edge_cache_.end();)
    it = (it->first.first == k || it->first.second == k) ? edge_cache_.erase(it) : ++it;
}

void Sampler::erase_vertex_entry(int removed_label) {
  vertex_params_.erase(vertex_params_.begin() + (removed_label - 1));
  invalidate_caches();
}

void Sampler::update_assignment(int i) {
  const DetachResult detach = state_.detach(i);
  if (detach.blocked) return;
  if (detach.removed_vertex > 0) erase_vertex_entry(detach.removed_vertex);

  const Eigen::VectorXd y = data_.row(i).transpose();
  const int k_v = state_.k_v();
  const int n_v = state_.n_v();
  const int n_e = state_.n_e();
  const long m_e = state_.m_e();

  thread_local std::vector<UnitAssignment> labels;
  thread_local std::vector<double> logw;
  labels.clear();
  logw.clear();

  for (int k = 1; k <= k_v; ++k) {
    double lw = log_eppf_ratio_existing(spec_, state_.vertex_count(k), n_v, k_v);
    if (!unit_likelihood_) lw += vertex_gaussian(k).log_density(y);
    labels.push_back(UnitAssignment::vertex(k));
    logw.push_back(lw);
  }
  {
    double lw = log_eppf_ratio_new(spec_, n_v, k_v);
    if (cfg_.mode == WeightMode::kExact)
      lw += log_dm_concentration_shift(state_.edge_counts(), hyper_.beta, m_e,
                                       static_cast<long>(k_v + 1) * k_v / 2, n_e);
    if (!unit_likelihood_) lw += log_predictive_new_vertex(y, niw_);
    labels.push_back(UnitAssignment::vertex(k_v + 1));
    logw.push_back(lw);
  }
  // The common p_v factor on the vertex branch and (1-p_v) on the edge
  // branch do not cancel, so keep both explicitly.
  const double log_pv = std::log(hyper_.p_v);
  for (double& lw : logw) lw += log_pv;
  if (k_v >= 2 && hyper_.p_v < 1.0) {
    const double log_pe = std::log1p(-hyper_.p_v);
    const double conc = hyper_.beta / static_cast<double>(m_e);
    const double log_denom = cfg_.mode == WeightMode::kExact
                                 ? std::log(hyper_.beta + n_e)
                                 : std::log(conc + n_v);
    for (int k = 1; k < k_v; ++k)
      for (int kp = k + 1; kp <= k_v; ++kp) {
        double lw = log_pe + std::log(state_.edge_count(k, kp) + conc) - log_denom;
        if (!unit_likelihood_) lw += edge_gaussian(k, kp).log_density(y);
        labels.push_back(UnitAssignment::edge(k, kp));
        logw.push_back(lw);
      }
  }

  const UnitAssignment pick = labels[rng_.categorical_log(logw)];
  state_.attach(i, pick);
  if (pick.is_vertex() && pick.k == k_v + 1) {
    // Immediate conjugate draw for the newborn vertex given its one unit.
    Eigen::MatrixXd one(1, data_.cols());
    one.row(0) = data_.row(i);
    vertex_params_.push_back(sample_niw(rng_, niw_posterior(niw_, one)));
    vertex_cache_.emplace_back();
    vertex_cache_ok_.push_back(false);
  }
}

void Sampler::update_assignment_fixed_v(int i) {
  const bool was_vertex = state_.assignment(i).is_vertex();
  const DetachResult detach = state_.detach(i);
  if (detach.blocked) return;
  if (detach.removed_vertex > 0) erase_vertex_entry(detach.removed_vertex);

  const Eigen::VectorXd y = data_.row(i).transpose();
  const int k_v = state_.k_v();
  const int n_v = state_.n_v();
  const int n_e = state_.n_e();
  const long m_e = state_.m_e();

  std::vector<UnitAssignment> labels;
  std::vector<double> logw;
  if (was_vertex) {
    for (int k = 1; k <= k_v; ++k) {
      double lw = log_eppf_ratio_existing(spec_, state_.vertex_count(k), n_v, k_v);
      if (!unit_likelihood_) lw += vertex_gaussian(k).log_density(y);
      labels.push_back(UnitAssignment::vertex(k));
      logw.push_back(lw);
    }
    double lw = log_eppf_ratio_new(spec_, n_v, k_v);
    if (cfg_.mode == WeightMode::kExact)
      lw += log_dm_concentration_shift(state_.edge_counts(), hyper_.beta, m_e,
                                       static_cast<long>(k_v + 1) * k_v / 2, n_e);
    if (!unit_likelihood_) lw += log_predictive_new_vertex(y, niw_);
    labels.push_back(UnitAssignment::vertex(k_v + 1));
    logw.push_back(lw);
  } else {
    const double conc = hyper_.beta / static_cast<double>(m_e);
    for (int k = 1; k < k_v; ++k)
      for (int kp = k + 1; kp <= k_v; ++kp) {
        double lw = std::log(state_.edge_count(k, kp) + conc);
        if (!unit_likelihood_) lw += edge_gaussian(k, kp).log_density(y);
        labels.push_back(UnitAssignment::edge(k, kp));
        logw.push_back(lw);
      }
  }
  const UnitAssignment pick = labels[rng_.categorical_log(logw)];
  state_.attach(i, pick);
  if (pick.is_vertex() && pick.k == k_v + 1) {
    Eigen::MatrixXd one(1, data_.cols());
    one.row(0) = data_.row(i);
    vertex_params_.push_back(sample_niw(rng_, niw_posterior(niw_, one)));
    vertex_cache_.emplace_back();
    vertex_cache_ok_.push_back(false);
  }
}

void Sampler::update_vertex_params(int k) {
  if (k < 1 || k > state_.k_v()) throw std::out_of_range("update_vertex_params: no such vertex");
  const NIWParams post = niw_posterior(niw_, rows_of_vertex(k));
  const VertexParams proposal = sample_niw(rng_, post);
  ++param_proposals_;

  if (state_.adjacent_edge_units(k) == 0) {
    vertex_params_[k - 1] = proposal;
    invalidate_vertex(k);
    ++param_accepts_;
    return;
  }
  // MH with the conjugate posterior as proposal: the ratio is the likelihood
  // of the adjacent edge units under recomputed edge parameters.
  double log_ratio = 0.0;
  for (const auto& [pair, count] : state_.edge_counts()) {
    if (count == 0 || (pair.first != k && pair.second != k)) continue;
    const int other = pair.first == k ? pair.second : pair.first;
    const VertexParams ep_new = edge_params(proposal.mu, vertex_params_[other - 1].mu, geom_);
    const CachedGaussian new_gauss(ep_new.mu, ep_new.sigma);
    const CachedGaussian& old_gauss = edge_gaussian(pair.first, pair.second);
    for (int j = 0; j < state_.n_units(); ++j) {
      const UnitAssignment& a = state_.assignment(j);
      if (a.is_edge() && a.k == pair.first && a.k_prime == pair.second) {
        const Eigen::VectorXd y = data_.row(j).transpose();
        log_ratio += new_gauss.log_density(y) - old_gauss.log_density(y);
      }
    }
  }
  if (log_ratio >= 0.0 || rng_.uniform() < std::exp(log_ratio)) {
    vertex_params_[k - 1] = proposal;
    invalidate_vertex(k);
    ++param_accepts_;
  }
}

void Sampler::canonicalize() {
  RelabelResult relabeled = state_.canonical_relabel();
  std::vector<VertexParams> permuted(vertex_params_.size());
  for (int k = 1; k <= static_cast<int>(vertex_params_.size()); ++k)
    permuted[relabeled.vertex_map[k - 1] - 1] = std::move(vertex_params_[k - 1]);
  state_ = std::move(relabeled.state);
  vertex_params_ = std::move(permuted);
  invalidate_caches();
}

void Sampler::sweep() {
  for (int i = 0; i < state_.n_units(); ++i) update_assignment(i);
  if (cfg_.extra_label_pass)
    for (int i = 0; i < state_.n_units(); ++i) update_assignment_fixed_v(i);
  if (!unit_likelihood_)
    for (int k = 1; k <= state_.k_v(); ++k) update_vertex_params(k);
  canonicalize();
}

ChainSample Sampler::snapshot(int iteration) const {
  return ChainSample{iteration, state_.assignments(), vertex_params_};
}

RunResult run_chain(const ChainConfig& cfg, const Eigen::MatrixXd& data,
                    const GibbsPriorSpec& spec, const ModelHyper& hyper,
                    const NIWParams& niw, const EdgeGeometry& geom,
                    const std::function<void(int)>& progress) {
  const auto start = std::chrono::steady_clock::now();
  Sampler sampler(data, spec, hyper, niw, geom, cfg);
  sampler.init_greedy();

  RunResult result;
  result.samples.reserve((cfg.n_iter - cfg.burnin) / cfg.thin + 1);
  for (int t = 1; t <= cfg.n_iter; ++t) {
    sampler.sweep();
    if (t > cfg.burnin && (t - cfg.burnin) % cfg.thin == 0)
      result.samples.push_back(sampler.snapshot(t));
    if (progress && t % 500 == 0) progress(t);
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.param_accept_rate =
      sampler.param_proposals() > 0
          ? static_cast<double>(sampler.param_accepts()) / sampler.param_proposals()
          : 1.0;
  return result;
}

}  // namespace garp
