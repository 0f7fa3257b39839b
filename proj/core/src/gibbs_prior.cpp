#include "garp/gibbs_prior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "garp/enumerate.hpp"

namespace garp {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

void validate(const GibbsPriorSpec& spec) {
  std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SymDirichlet>) {
          if (p.m_v < 1) throw std::invalid_argument("SymDirichlet: M_v must be >= 1");
          if (!(p.rho > 0)) throw std::invalid_argument("SymDirichlet: rho must be > 0");
        } else if constexpr (std::is_same_v<T, Gnedin>) {
          if (!(p.gamma > 0 && p.gamma < 1))
            throw std::invalid_argument("Gnedin: gamma must be in (0,1)");
        } else if constexpr (std::is_same_v<T, DirichletProcess>) {
          if (!(p.alpha > 0)) throw std::invalid_argument("DP: alpha must be > 0");
        } else {
          if (!(p.alpha > 0)) throw std::invalid_argument("PYP: alpha must be > 0");
          if (!(p.sigma >= 0 && p.sigma < 1))
            throw std::invalid_argument("PYP: sigma must be in [0,1)");
        }
      },
      spec);
}

double gibbs_discount(const GibbsPriorSpec& spec) {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SymDirichlet>) return -p.rho;
        if constexpr (std::is_same_v<T, Gnedin>) return -1.0;
        if constexpr (std::is_same_v<T, DirichletProcess>) return 0.0;
        if constexpr (std::is_same_v<T, PitmanYor>) return p.sigma;
      },
      spec);
}

std::string prior_name(const GibbsPriorSpec& spec) {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SymDirichlet>) return "symdir";
        if constexpr (std::is_same_v<T, Gnedin>) return "gnedin";
        if constexpr (std::is_same_v<T, DirichletProcess>) return "dp";
        if constexpr (std::is_same_v<T, PitmanYor>) return "pyp";
      },
      spec);
}

void validate(const ModelHyper& hyper) {
  if (!(hyper.p_v > 0 && hyper.p_v <= 1))
    throw std::invalid_argument("hyper: p_v must be in (0,1]");
  if (!(hyper.beta > 0)) throw std::invalid_argument("hyper: beta must be > 0");
}

double log_rising(double x, double n) {
  if (n == 0) return 0.0;
  return std::lgamma(x + n) - std::lgamma(x);
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_eppf(const GibbsPriorSpec& spec, std::span<const int> counts) {
  if (counts.empty()) throw std::invalid_argument("log_eppf: empty count list");
  long n = 0;
  for (int c : counts) {
    if (c < 1) throw std::invalid_argument("log_eppf: counts must be positive");
    n += c;
  }
  const int k = static_cast<int>(counts.size());
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SymDirichlet>) {
          if (k > p.m_v) return kNegInf;
          double lp = std::lgamma(p.m_v + 1.0) - std::lgamma(p.m_v - k + 1.0) +
                      std::lgamma(p.rho * p.m_v) - std::lgamma(n + p.rho * p.m_v);
          for (int c : counts) lp += std::lgamma(c + p.rho) - std::lgamma(p.rho);
          return lp;
        } else if constexpr (std::is_same_v<T, Gnedin>) {
          // W_{n,k} = (1-g)_{k-1} (g)_{n-k} (k-1)! / ((n-1)! (g+1)_{n-1}),
          // block factor (2)_{c-1} = c!.
          const double g = p.gamma;
          double lp = log_rising(1.0 - g, k - 1) + log_rising(g, n - k) +
                      std::lgamma(static_cast<double>(k)) - std::lgamma(static_cast<double>(n)) -
                      log_rising(g + 1.0, n - 1);
          for (int c : counts) lp += std::lgamma(c + 1.0);
          return lp;
        } else if constexpr (std::is_same_v<T, DirichletProcess>) {
          double lp = k * std::log(p.alpha) + std::lgamma(p.alpha) - std::lgamma(p.alpha + n);
          for (int c : counts) lp += std::lgamma(static_cast<double>(c));
          return lp;
        } else {
          double lp = std::lgamma(p.alpha + 1.0) - std::lgamma(p.alpha + n);
          for (int j = 1; j < k; ++j) lp += std::log(p.alpha + j * p.sigma);
          for (int c : counts) lp += log_rising(1.0 - p.sigma, c - 1);
          return lp;
        }
      },
      spec);
}

std::vector<std::pair<int, double>> gcrp_weights(const GibbsPriorSpec& spec,
                                                 std::span<const int> counts,
                                                 int n_v_reduced) {
  const int k_v = static_cast<int>(counts.size());
  std::vector<std::pair<int, double>> w;
  w.reserve(k_v + 1);
  if (k_v == 0) {
    // First vertex unit: every prior assigns it to cluster 1 with
    // probability one.
    w.emplace_back(1, 1.0);
    return w;
  }
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SymDirichlet>) {
          for (int k = 0; k < k_v; ++k) w.emplace_back(k + 1, counts[k] + p.rho);
          w.emplace_back(k_v + 1, k_v < p.m_v ? p.rho * (p.m_v - k_v) : 0.0);
        } else if constexpr (std::is_same_v<T, Gnedin>) {
          for (int k = 0; k < k_v; ++k)
            w.emplace_back(k + 1, (counts[k] + 1.0) * (n_v_reduced - k_v + p.gamma));
          w.emplace_back(k_v + 1, static_cast<double>(k_v) * (k_v - p.gamma));
        } else if constexpr (std::is_same_v<T, DirichletProcess>) {
          for (int k = 0; k < k_v; ++k) w.emplace_back(k + 1, static_cast<double>(counts[k]));
          w.emplace_back(k_v + 1, p.alpha);
        } else {
          for (int k = 0; k < k_v; ++k) w.emplace_back(k + 1, counts[k] - p.sigma);
          w.emplace_back(k_v + 1, p.alpha + k_v * p.sigma);
        }
      },
      spec);
  return w;
}

double log_eppf_ratio_existing(const GibbsPriorSpec& spec, int n_k, int n_v, int k_v) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SymDirichlet>)
          return std::log(n_k + p.rho) - std::log(n_v + p.rho * p.m_v);
        else if constexpr (std::is_same_v<T, Gnedin>)
          return std::log((n_k + 1.0) * (n_v - k_v + p.gamma)) -
                 std::log(static_cast<double>(n_v) * (n_v + p.gamma));
        else if constexpr (std::is_same_v<T, DirichletProcess>)
          return std::log(static_cast<double>(n_k)) - std::log(p.alpha + n_v);
        else
          return std::log(n_k - p.sigma) - std::log(p.alpha + n_v);
      },
      spec);
}

double log_eppf_ratio_new(const GibbsPriorSpec& spec, int n_v, int k_v) {
  if (n_v == 0) return 0.0;  // first vertex unit, probability one
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SymDirichlet>) {
          if (k_v >= p.m_v) return kNegInf;
          return std::log(p.rho * (p.m_v - k_v)) - std::log(n_v + p.rho * p.m_v);
        } else if constexpr (std::is_same_v<T, Gnedin>) {
          return std::log(static_cast<double>(k_v) * (k_v - p.gamma)) -
                 std::log(static_cast<double>(n_v) * (n_v + p.gamma));
        } else if constexpr (std::is_same_v<T, DirichletProcess>) {
          return std::log(p.alpha) - std::log(p.alpha + n_v);
        } else {
          return std::log(p.alpha + k_v * p.sigma) - std::log(p.alpha + n_v);
        }
      },
      spec);
}

double log_dm_marginal(const std::map<EdgePair, int>& edge_counts, double beta,
                       long m_e, int n_e) {
  int total = 0;
  for (const auto& [pair, c] : edge_counts) {
    if (c < 0) throw std::invalid_argument("log_dm_marginal: negative count");
    total += c;
  }
  if (n_e == 0 || m_e == 0) return 0.0;
  if (total != n_e) throw std::invalid_argument("log_dm_marginal: counts do not sum to N_e");
  const double conc = beta / static_cast<double>(m_e);
  double lp = std::lgamma(beta) - std::lgamma(n_e + beta);
  for (const auto& [pair, c] : edge_counts)
    if (c > 0) lp += std::lgamma(c + conc) - std::lgamma(conc);
  return lp;
}

std::vector<std::pair<EdgePair, double>> dm_urn_weights(
    const std::map<EdgePair, int>& edge_counts, double beta, int k_v) {
  if (k_v < 2) throw std::invalid_argument("dm_urn_weights: K_v must be >= 2");
  const double conc = beta / (static_cast<double>(k_v) * (k_v - 1) / 2.0);
  std::vector<std::pair<EdgePair, double>> w;
  w.reserve(k_v * (k_v - 1) / 2);
  for (int k = 1; k < k_v; ++k)
    for (int kp = k + 1; kp <= k_v; ++kp) {
      auto it = edge_counts.find({k, kp});
      const int c = it == edge_counts.end() ? 0 : it->second;
      w.emplace_back(EdgePair{k, kp}, c + conc);
    }
  return w;
}

namespace {

// Shared assembly of the four pmf pieces; with_label_factor controls the
// 1/K_v! term that spreads the class mass over labelings.
double log_garp_core(const GibbsPriorSpec& spec, const ModelHyper& hyper,
                     const GraphAlignedState& state, bool with_label_factor,
                     bool with_indicator) {
  const int k_v = state.k_v();
  const int n_v = state.n_v();
  const int n_e = state.n_e();
  if (with_indicator) {
    if (n_e > 0 && k_v < 2) return kNegInf;
    for (const auto& [pair, c] : state.edge_counts())
      if (c > 0 && pair.second > k_v) return kNegInf;
  }
  double lp = 0.0;
  if (n_v > 0) {
    lp += n_v * std::log(hyper.p_v);
    lp += log_eppf(spec, state.vertex_counts());
    if (with_label_factor) lp -= std::lgamma(k_v + 1.0);
  }
  if (n_e > 0) {
    lp += n_e * std::log1p(-hyper.p_v);
    lp += log_dm_marginal(state.edge_counts(), hyper.beta, state.m_e(), n_e);
  }
  return lp;
}

}  // namespace

double log_garp_pmf(const GibbsPriorSpec& spec, const ModelHyper& hyper,
                    const GraphAlignedState& state) {
  return log_garp_core(spec, hyper, state, /*with_label_factor=*/true,
                       /*with_indicator=*/true);
}

double relaxed_log_class_weight(const GibbsPriorSpec& spec, const ModelHyper& hyper,
                                const GraphAlignedState& state) {
  return log_garp_core(spec, hyper, state, /*with_label_factor=*/false,
                       /*with_indicator=*/false);
}

double log_single_cluster_prob(const GibbsPriorSpec& spec, long n_v) {
  if (n_v < 1) throw std::invalid_argument("prob_single_cluster: n_v must be >= 1");
  if (n_v == 1) return 0.0;
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SymDirichlet>)
          return std::log(static_cast<double>(p.m_v)) + log_rising(p.rho, n_v) -
                 log_rising(p.rho * p.m_v, n_v);
        else if constexpr (std::is_same_v<T, Gnedin>)
          return std::log(p.gamma) + std::log(static_cast<double>(n_v)) -
                 std::log(p.gamma + n_v - 1.0);
        else if constexpr (std::is_same_v<T, DirichletProcess>)
          return std::lgamma(p.alpha + 1.0) + std::lgamma(static_cast<double>(n_v)) -
                 std::lgamma(p.alpha + n_v);
        else
          return log_rising(1.0 - p.sigma, n_v - 1) - log_rising(p.alpha + 1.0, n_v - 1);
      },
      spec);
}

double prob_single_cluster(const GibbsPriorSpec& spec, long n_v) {
  return std::exp(log_single_cluster_prob(spec, n_v));
}

double truncation_probability(const GibbsPriorSpec& spec, double p_v, int n) {
  if (n < 1) throw std::invalid_argument("truncation_probability: N must be >= 1");
  if (p_v >= 1.0) return 1.0;
  double prob = std::exp(n * std::log(p_v));
  for (int n_v = 2; n_v <= n - 1; ++n_v) {
    const double log_binom_term =
        log_binomial(n, n_v) + n_v * std::log(p_v) + (n - n_v) * std::log1p(-p_v);
    prob += std::exp(log_binom_term) * (1.0 - prob_single_cluster(spec, n_v));
  }
  return prob;
}

double feppf_bruteforce(const GibbsPriorSpec& spec, const ModelHyper& hyper,
                        std::vector<int> sizes, int n) {
  if (n > 10) throw std::invalid_argument("feppf_bruteforce: N exceeds the enumeration guard");
  const long total = std::accumulate(sizes.begin(), sizes.end(), 0L);
  if (total != n) throw std::invalid_argument("feppf_bruteforce: sizes must sum to N");
  std::sort(sizes.begin(), sizes.end());

  double normalizer = 0.0;
  double matched = 0.0;
  for_each_garp_state(n, [&](const GraphAlignedState& state) {
    if (!truncation_event_holds(state)) return;
    const double w = std::exp(relaxed_log_class_weight(spec, hyper, state));
    normalizer += w;
    std::vector<int> block_sizes(state.vertex_counts().begin(), state.vertex_counts().end());
    for (const auto& [pair, c] : state.edge_counts())
      if (c > 0) block_sizes.push_back(c);
    std::sort(block_sizes.begin(), block_sizes.end());
    if (block_sizes == sizes) matched += w;
  });
  return matched / normalizer;
}

double feppf_direct(const GibbsPriorSpec& spec, const ModelHyper& hyper,
                    std::vector<int> sizes, int n) {
  const int k_n = static_cast<int>(sizes.size());
  if (k_n < 1 || k_n > 30) throw std::invalid_argument("feppf_direct: bad block count");
  const long total = std::accumulate(sizes.begin(), sizes.end(), 0L);
  if (total != n) throw std::invalid_argument("feppf_direct: sizes must sum to N");

  // Number of set partitions of [N] with these block sizes:
  // N! / (prod c_j! * prod_m mult_m!).
  double log_count = std::lgamma(n + 1.0);
  std::map<int, int> mult;
  for (int c : sizes) {
    log_count -= std::lgamma(c + 1.0);
    ++mult[c];
  }
  for (const auto& [size, m] : mult) log_count -= std::lgamma(m + 1.0);

  // Probability of one specific partition with these block sizes: choose the
  // subset S of blocks that are vertices (N_v, K_v implied); the remaining
  // K_e blocks are placed injectively on the M_e = K_v(K_v-1)/2 edge slots,
  // each placement carrying the same symmetric DM weight.
  double p_specific = 0.0;
  const std::uint32_t n_subsets = 1u << k_n;
  for (std::uint32_t mask = 1; mask < n_subsets; ++mask) {
    std::vector<int> vertex_sizes;
    std::vector<int> edge_sizes;
    for (int j = 0; j < k_n; ++j)
      ((mask >> j) & 1u ? vertex_sizes : edge_sizes).push_back(sizes[j]);
    const int k_v = static_cast<int>(vertex_sizes.size());
    const int k_e = static_cast<int>(edge_sizes.size());
    const long m_e = static_cast<long>(k_v) * (k_v - 1) / 2;
    if (k_e > 0 && (k_v < 2 || k_e > m_e)) continue;
    long n_v = 0;
    for (int c : vertex_sizes) n_v += c;
    const long n_e = n - n_v;

    double lw = n_v * std::log(hyper.p_v) + log_eppf(spec, vertex_sizes);
    if (n_e > 0) {
      lw += n_e * std::log1p(-hyper.p_v);
      std::map<EdgePair, int> edge_counts;
      for (int j = 0; j < k_e; ++j) edge_counts[{1, j + 2}] = edge_sizes[j];
      lw += log_dm_marginal(edge_counts, hyper.beta, m_e, static_cast<int>(n_e));
      // falling factorial (M_e)(M_e-1)...(M_e-K_e+1)
      for (int j = 0; j < k_e; ++j) lw += std::log(static_cast<double>(m_e - j));
    }
    if (std::isfinite(lw)) p_specific += std::exp(lw);
  }
  return std::exp(log_count) * p_specific / truncation_probability(spec, hyper.p_v, n);
}

LimitUrn limit_urn_weights(int m_v, double rho, const ModelHyper& hyper,
                           std::span<const int> vertex_counts,
                           const std::map<EdgePair, int>& edge_counts, int n_e_reduced) {
  if (m_v < 1) throw std::invalid_argument("limit_urn_weights: M_v must be >= 1");
  if (static_cast<int>(vertex_counts.size()) > m_v)
    throw std::invalid_argument("limit_urn_weights: more occupied slots than M_v");
  const long m_e_plus = static_cast<long>(m_v) * (m_v - 1) / 2;
  long n_v = 0;
  for (int c : vertex_counts) n_v += c;

  LimitUrn urn;
  urn.vertex.resize(m_v);
  double total = 0.0;
  for (int z = 0; z < m_v; ++z) {
    const int c = z < static_cast<int>(vertex_counts.size()) ? vertex_counts[z] : 0;
    urn.vertex[z] = hyper.p_v * (c + rho) / (n_v + rho * m_v);
    total += urn.vertex[z];
  }
  if (m_e_plus > 0 && hyper.p_v < 1.0) {
    const double conc = hyper.beta / static_cast<double>(m_e_plus);
    for (int k = 1; k < m_v; ++k)
      for (int kp = k + 1; kp <= m_v; ++kp) {
        auto it = edge_counts.find({k, kp});
        const int c = it == edge_counts.end() ? 0 : it->second;
        const double w = (1.0 - hyper.p_v) * (conc + c) / (hyper.beta + n_e_reduced);
        urn.edge[{k, kp}] = w;
        total += w;
      }
  }
  for (double& w : urn.vertex) w /= total;
  for (auto& [pair, w] : urn.edge) w /= total;
  return urn;
}

LimitUrn limit_urn_weights(const GibbsPriorSpec& spec, std::optional<int> m_v_conditioned,
                           const ModelHyper& hyper, std::span<const int> vertex_counts,
                           const std::map<EdgePair, int>& edge_counts, int n_e_reduced) {
  if (const auto* sd = std::get_if<SymDirichlet>(&spec))
    return limit_urn_weights(sd->m_v, sd->rho, hyper, vertex_counts, edge_counts, n_e_reduced);
  if (std::holds_alternative<Gnedin>(spec)) {
    if (!m_v_conditioned)
      throw std::invalid_argument("limit_urn_weights: Gnedin requires a conditioning M_v");
    return limit_urn_weights(*m_v_conditioned, 1.0, hyper, vertex_counts, edge_counts,
                             n_e_reduced);
  }
  throw std::invalid_argument("limit_urn_weights: defined for SymDirichlet or Gnedin given M_v");
}

}  // namespace garp
