#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "garp/partition_state.hpp"

namespace garp {

// The four vertex-level partition priors. PYP with sigma = 0 coincides with
// the DP; Gnedin is the mixture-of-finite-mixtures special case with a
// closed-form EPPF.
struct SymDirichlet {
  int m_v;     // number of components
  double rho;  // symmetric Dirichlet concentration
};
struct Gnedin {
  double gamma;  // in (0,1)
};
struct DirichletProcess {
  double alpha;  // > 0
};
struct PitmanYor {
  double alpha;  // > 0
  double sigma;  // in [0,1)
};

using GibbsPriorSpec = std::variant<SymDirichlet, Gnedin, DirichletProcess, PitmanYor>;

void validate(const GibbsPriorSpec& spec);  // throws std::invalid_argument
// Gibbs-type discount: -rho, -1, 0, sigma.
double gibbs_discount(const GibbsPriorSpec& spec);
std::string prior_name(const GibbsPriorSpec& spec);

struct ModelHyper {
  double p_v = 0.5;    // prior vertex probability, in (0,1]
  double beta = 0.5;   // Dirichlet-multinomial mass over edges
};
void validate(const ModelHyper& hyper);

// log (x)_n = log Gamma(x+n) - log Gamma(x).
double log_rising(double x, double n);
double log_binomial(int n, int k);

// log EPPF^{(N_v)}_{K_v}(n_1..n_K). SymDirichlet with K_v > M_v gives -inf.
double log_eppf(const GibbsPriorSpec& spec, std::span<const int> counts);

// Unnormalized gCRP weights for the reduced state: one entry per existing
// vertex plus (K_v^-i + 1, new-cluster weight). The empty state yields a unit
// weight on label 1.
std::vector<std::pair<int, double>> gcrp_weights(const GibbsPriorSpec& spec,
                                                 std::span<const int> counts,
                                                 int n_v_reduced);

// Exact full-conditional log ratios of the EPPF (and, for the new-vertex
// case, nothing else): log EPPF(attach) - log EPPF(reduced).
double log_eppf_ratio_existing(const GibbsPriorSpec& spec, int n_k, int n_v, int k_v);
double log_eppf_ratio_new(const GibbsPriorSpec& spec, int n_v, int k_v);

// log DM^{(N_e)}_{M_e}(counts | beta/M_e) with the normalizer
// Gamma(beta)/Gamma(N_e+beta) that makes the urn sequence law sum to one.
// N_e = 0 or M_e = 0 gives 0 by convention. Absent pairs contribute n = 0.
double log_dm_marginal(const std::map<EdgePair, int>& edge_counts, double beta,
                       long m_e, int n_e);

// Polya weights n_{k,k'} + beta/M_e over all pairs k < k' <= K_v.
std::vector<std::pair<EdgePair, double>> dm_urn_weights(
    const std::map<EdgePair, int>& edge_counts, double beta, int k_v);

// Unnormalized log pmf of a full (V,Z) configuration; -inf outside the
// support event E_N. Includes the 1/K_v! label-spreading factor.
double log_garp_pmf(const GibbsPriorSpec& spec, const ModelHyper& hyper,
                    const GraphAlignedState& state);

// Weight of the canonical class of `state` under the relaxed model: the
// labeled pmf summed over the K_v! labelings, without the E_N indicator.
// This is what sequential simulation and the marginal sampler target.
double relaxed_log_class_weight(const GibbsPriorSpec& spec, const ModelHyper& hyper,
                                const GraphAlignedState& state);

// g_{n_v} = EPPF_1^{(n_v)}(n_v), the single-cluster probability.
double log_single_cluster_prob(const GibbsPriorSpec& spec, long n_v);
double prob_single_cluster(const GibbsPriorSpec& spec, long n_v);

// Closed-form probability of the truncation event E_N under the relaxed
// model.
double truncation_probability(const GibbsPriorSpec& spec, double p_v, int n);

// Marginal probability that the tie partition has the given block sizes,
// by exhaustive enumeration of all admissible (V,Z) configurations. N <= 10.
double feppf_bruteforce(const GibbsPriorSpec& spec, const ModelHyper& hyper,
                        std::vector<int> sizes, int n);
// Same quantity through the direct sum over vertex/edge block splits.
double feppf_direct(const GibbsPriorSpec& spec, const ModelHyper& hyper,
                    std::vector<int> sizes, int n);

// Normalized one-step predictive of the limiting infinitely exchangeable
// model: M_v vertex slots plus all M_v(M_v-1)/2 edge slots.
struct LimitUrn {
  std::vector<double> vertex;           // size M_v
  std::map<EdgePair, double> edge;      // all pairs k < k' <= M_v
};
LimitUrn limit_urn_weights(int m_v, double rho, const ModelHyper& hyper,
                           std::span<const int> vertex_counts,
                           const std::map<EdgePair, int>& edge_counts, int n_e_reduced);
// Spec-level wrapper: SymDirichlet uses its own (M_v, rho); Gnedin requires a
// conditioning M_v and uses rho = 1; other priors are rejected.
LimitUrn limit_urn_weights(const GibbsPriorSpec& spec, std::optional<int> m_v_conditioned,
                           const ModelHyper& hyper, std::span<const int> vertex_counts,
                           const std::map<EdgePair, int>& edge_counts, int n_e_reduced);

}  // namespace garp
