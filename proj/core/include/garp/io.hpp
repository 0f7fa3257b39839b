#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "garp/gaussian.hpp"
#include "garp/gibbs_prior.hpp"
#include "garp/mcmc.hpp"
#include "garp/prior_simulator.hpp"
#include "garp/summary.hpp"

namespace garp {

struct RunConfig {
  GibbsPriorSpec prior = Gnedin{0.5};
  ModelHyper hyper{0.9, 0.5};             // edges as sparse transitions
  double kappa0 = 0.001;
  double nu0 = 100.0;
  double xi2 = 150.0;                     // Sigma0 = xi2 * I
  std::optional<Eigen::VectorXd> mu0;     // absent: data mean
  std::optional<EdgeGeometry> geom;       // exactly one of geom / alpha_level
  double alpha_level = 0.01;
  ChainConfig chain;
  int chains = 1;
  EdgeSummaryMode edge_summary = EdgeSummaryMode::kPosteriorMeanParams;

  NIWParams make_niw(const Eigen::MatrixXd& data) const;
  EdgeGeometry make_geometry() const;
};

// Flat dotted key-value text (prior.kind = gnedin, hyper.p_v = 0.5, ...).
// Unknown keys and missing per-kind parameters are errors naming the key.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string config_canonical_text(const RunConfig& cfg);
// FNV-1a over the canonical text, hex encoded.
std::string config_hash(const RunConfig& cfg);

// Headerless comma-separated numeric matrix. Parse errors report row and
// column (1-based).
Eigen::MatrixXd load_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const Eigen::MatrixXd& data);

// Line-delimited sample stream: a meta record followed by one record per
// retained draw.
struct SampleStream {
  std::string hash;
  std::uint64_t seed = 0;
  int n_units = 0;
  int dim = 0;
  RunConfig config;
  std::vector<ChainSample> samples;
};
void write_samples(const std::filesystem::path& path, const RunConfig& cfg,
                   int n_units, int dim, const std::vector<ChainSample>& samples);
SampleStream read_samples(const std::filesystem::path& path);

void write_truth_json(const std::filesystem::path& path, const LabeledDataset& dataset,
                      std::uint64_t seed);
void write_summary_json(const std::filesystem::path& path, const PosteriorSummary& summary,
                        const RunConfig& cfg);
void write_cocluster_csv(const std::filesystem::path& path, const Eigen::MatrixXd& cocluster);
void write_plot_svg(const std::filesystem::path& path, const Eigen::MatrixXd& data,
                    const PosteriorSummary& summary);

struct FitOutputs {
  std::filesystem::path samples_path;
  std::filesystem::path summary_path;
  PosteriorSummary summary;
  double seconds = 0.0;
};

int cmd_simulate(const std::string& scenario, std::uint64_t seed,
                 const std::filesystem::path& out_dir);
FitOutputs cmd_fit(const std::filesystem::path& config_path,
                   const std::filesystem::path& data_path,
                   const std::filesystem::path& out_dir,
                   std::optional<std::uint64_t> seed_override = {},
                   std::optional<int> chains_override = {},
                   std::optional<WeightMode> mode_override = {});
int cmd_summarize(const std::filesystem::path& samples_path,
                  const std::filesystem::path& data_path,
                  const std::filesystem::path& out_dir);
int cmd_prior_check(const std::filesystem::path& config_path, int n, int draws,
                    std::uint64_t seed);

}  // namespace garp
