#include "garp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace garp {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + key + "' has non-numeric value '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + key + "' has non-integer value '" + value + "'");
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const std::array<std::string, 12> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};

}  // namespace

NIWParams RunConfig::make_niw(const Eigen::MatrixXd& data) const {
  const int d = static_cast<int>(data.cols());
  NIWParams niw;
  niw.mu0 = mu0 ? *mu0 : Eigen::VectorXd(data.colwise().mean().transpose());
  if (niw.mu0.size() != d) throw std::runtime_error("config: niw.mu0 dimension mismatch");
  niw.kappa0 = kappa0;
  niw.nu0 = nu0;
  niw.sigma0 = xi2 * Eigen::MatrixXd::Identity(d, d);
  validate(niw);
  return niw;
}

EdgeGeometry RunConfig::make_geometry() const {
  if (geom) return *geom;
  return default_edge_geometry(alpha_level);
}

RunConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("config: expected key = value, got '" + line + "'");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto require = [&](const std::string& key) {
    auto v = take(key);
    if (!v) throw std::runtime_error("config: missing key '" + key + "'");
    return *v;
  };

  RunConfig cfg;
  const std::string kind = take("prior.kind").value_or("gnedin");
  if (kind == "gnedin") {
    double gamma = 0.5;
    if (auto v = take("prior.gamma")) gamma = parse_double("prior.gamma", *v);
    cfg.prior = Gnedin{gamma};
  } else if (kind == "dp") {
    cfg.prior = DirichletProcess{parse_double("prior.alpha", require("prior.alpha"))};
  } else if (kind == "pyp") {
    cfg.prior = PitmanYor{parse_double("prior.alpha", require("prior.alpha")),
                          parse_double("prior.sigma", require("prior.sigma"))};
  } else if (kind == "symdir") {
    cfg.prior = SymDirichlet{static_cast<int>(parse_long("prior.m_v", require("prior.m_v"))),
                             parse_double("prior.rho", require("prior.rho"))};
  } else {
    throw std::runtime_error("config: unknown prior.kind '" + kind + "'");
  }

  if (auto v = take("hyper.p_v")) cfg.hyper.p_v = parse_double("hyper.p_v", *v);
  if (auto v = take("hyper.beta")) cfg.hyper.beta = parse_double("hyper.beta", *v);
  if (auto v = take("niw.kappa0")) cfg.kappa0 = parse_double("niw.kappa0", *v);
  if (auto v = take("niw.nu0")) cfg.nu0 = parse_double("niw.nu0", *v);
  if (auto v = take("niw.xi2")) cfg.xi2 = parse_double("niw.xi2", *v);
  if (auto v = take("niw.mu0")) {
    if (*v != "data_mean") {
      std::vector<double> coords;
      std::istringstream cs(*v);
      std::string tok;
      while (std::getline(cs, tok, ','))
        coords.push_back(parse_double("niw.mu0", trim(tok)));
      Eigen::VectorXd mu(coords.size());
      for (std::size_t i = 0; i < coords.size(); ++i) mu(i) = coords[i];
      cfg.mu0 = mu;
    }
  }

  const auto r0 = take("geom.r0");
  const auto r1 = take("geom.r1");
  const auto alpha = take("geom.alpha_level");
  if ((r0.has_value() || r1.has_value()) && alpha.has_value())
    throw std::runtime_error("config: give either geom.alpha_level or geom.r0/geom.r1, not both");
  if (r0.has_value() != r1.has_value())
    throw std::runtime_error("config: geom.r0 and geom.r1 must be given together");
  if (r0) {
    cfg.geom = EdgeGeometry{parse_double("geom.r0", *r0), parse_double("geom.r1", *r1)};
    validate(*cfg.geom);
  } else if (alpha) {
    cfg.alpha_level = parse_double("geom.alpha_level", *alpha);
  }

  if (auto v = take("chain.n_iter")) cfg.chain.n_iter = static_cast<int>(parse_long("chain.n_iter", *v));
  if (auto v = take("chain.burnin")) cfg.chain.burnin = static_cast<int>(parse_long("chain.burnin", *v));
  if (auto v = take("chain.thin")) cfg.chain.thin = static_cast<int>(parse_long("chain.thin", *v));
  if (auto v = take("chain.seed")) cfg.chain.seed = static_cast<std::uint64_t>(parse_long("chain.seed", *v));
  if (auto v = take("chain.chains")) cfg.chains = static_cast<int>(parse_long("chain.chains", *v));
  if (auto v = take("chain.mode")) {
    if (*v == "exact")
      cfg.chain.mode = WeightMode::kExact;
    else if (*v == "paper")
      cfg.chain.mode = WeightMode::kPaperFaithful;
    else
      throw std::runtime_error("config: chain.mode must be 'exact' or 'paper'");
  }
  if (auto v = take("chain.extra_label_pass"))
    cfg.chain.extra_label_pass = parse_long("chain.extra_label_pass", *v) != 0;
  if (auto v = take("summary.edge_mode")) {
    if (*v == "posterior_mean")
      cfg.edge_summary = EdgeSummaryMode::kPosteriorMeanParams;
    else if (*v == "per_sample")
      cfg.edge_summary = EdgeSummaryMode::kPerSampleParams;
    else
      throw std::runtime_error("config: summary.edge_mode must be 'posterior_mean' or 'per_sample'");
  }

  if (!kv.empty()) throw std::runtime_error("config: unknown key '" + kv.begin()->first + "'");

  validate(cfg.prior);
  validate(cfg.hyper);
  validate(cfg.chain);
  if (cfg.chains < 1) throw std::runtime_error("config: chain.chains must be >= 1");
  if (!(cfg.alpha_level > 0 && cfg.alpha_level < 1))
    throw std::runtime_error("config: geom.alpha_level must be in (0,1)");
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string config_canonical_text(const RunConfig& cfg) {
  std::ostringstream os;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SymDirichlet>)
          os << "prior.kind = symdir\nprior.m_v = " << p.m_v
             << "\nprior.rho = " << format_double(p.rho) << "\n";
        else if constexpr (std::is_same_v<T, Gnedin>)
          os << "prior.kind = gnedin\nprior.gamma = " << format_double(p.gamma) << "\n";
        else if constexpr (std::is_same_v<T, DirichletProcess>)
          os << "prior.kind = dp\nprior.alpha = " << format_double(p.alpha) << "\n";
        else
          os << "prior.kind = pyp\nprior.alpha = " << format_double(p.alpha)
             << "\nprior.sigma = " << format_double(p.sigma) << "\n";
      },
      cfg.prior);
  os << "hyper.p_v = " << format_double(cfg.hyper.p_v) << "\n";
  os << "hyper.beta = " << format_double(cfg.hyper.beta) << "\n";
  os << "niw.kappa0 = " << format_double(cfg.kappa0) << "\n";
  os << "niw.nu0 = " << format_double(cfg.nu0) << "\n";
  os << "niw.xi2 = " << format_double(cfg.xi2) << "\n";
  if (cfg.mu0) {
    os << "niw.mu0 = ";
    for (int i = 0; i < cfg.mu0->size(); ++i)
      os << (i ? "," : "") << format_double((*cfg.mu0)(i));
    os << "\n";
  } else {
    os << "niw.mu0 = data_mean\n";
  }
  if (cfg.geom)
    os << "geom.r0 = " << format_double(cfg.geom->r0)
       << "\ngeom.r1 = " << format_double(cfg.geom->r1) << "\n";
  else
    os << "geom.alpha_level = " << format_double(cfg.alpha_level) << "\n";
  os << "chain.n_iter = " << cfg.chain.n_iter << "\n";
  os << "chain.burnin = " << cfg.chain.burnin << "\n";
  os << "chain.thin = " << cfg.chain.thin << "\n";
  os << "chain.seed = " << cfg.chain.seed << "\n";
  os << "chain.chains = " << cfg.chains << "\n";
  os << "chain.mode = " << (cfg.chain.mode == WeightMode::kExact ? "exact" : "paper") << "\n";
  os << "chain.extra_label_pass = " << (cfg.chain.extra_label_pass ? 1 : 0) << "\n";
  os << "summary.edge_mode = "
     << (cfg.edge_summary == EdgeSummaryMode::kPosteriorMeanParams ? "posterior_mean"
                                                                   : "per_sample")
     << "\n";
  return os.str();
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = config_canonical_text(cfg);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Eigen::MatrixXd load_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  int row = 0;
  std::size_t n_cols = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    std::vector<double> values;
    std::istringstream ls(line);
    std::string cell;
    int col = 0;
    while (std::getline(ls, cell, ',')) {
      ++col;
      const std::string t = trim(cell);
      try {
        std::size_t pos = 0;
        values.push_back(std::stod(t, &pos));
        if (pos != t.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw std::runtime_error("csv: non-numeric cell at row " + std::to_string(row) +
                                 ", column " + std::to_string(col));
      }
    }
    if (n_cols == 0) n_cols = values.size();
    if (values.size() != n_cols)
      throw std::runtime_error("csv: row " + std::to_string(row) + " has " +
                               std::to_string(values.size()) + " columns, expected " +
                               std::to_string(n_cols));
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw std::runtime_error("csv: no data rows in " + path.string());
  Eigen::MatrixXd out(rows.size(), n_cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n_cols; ++j) out(i, j) = rows[i][j];
  return out;
}

void write_csv(const fs::path& path, const Eigen::MatrixXd& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot write " + path.string());
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j)
      out << (j ? "," : "") << format_double(data(i, j));
    out << "\n";
  }
}

namespace {

json assignments_to_json(const std::vector<UnitAssignment>& assignments) {
  json v = json::array();
  json z = json::array();
  for (const UnitAssignment& a : assignments) {
    v.push_back(a.is_vertex() ? 1 : 0);
    z.push_back(json::array({a.k, a.k_prime}));
  }
  return json{{"v", std::move(v)}, {"z", std::move(z)}};
}

std::vector<UnitAssignment> assignments_from_json(const json& record) {
  const auto& z = record.at("z");
  std::vector<UnitAssignment> out;
  out.reserve(z.size());
  for (const auto& pair : z)
    out.push_back(UnitAssignment{pair.at(0).get<int>(), pair.at(1).get<int>()});
  return out;
}

json params_to_json(const std::vector<VertexParams>& params) {
  json out = json::array();
  for (const VertexParams& p : params) {
    json mu = json::array();
    for (int i = 0; i < p.mu.size(); ++i) mu.push_back(p.mu(i));
    json sigma = json::array();
    for (int i = 0; i < p.sigma.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < p.sigma.cols(); ++j) row.push_back(p.sigma(i, j));
      sigma.push_back(std::move(row));
    }
    out.push_back(json{{"mu", std::move(mu)}, {"sigma", std::move(sigma)}});
  }
  return out;
}

std::vector<VertexParams> params_from_json(const json& arr) {
  std::vector<VertexParams> out;
  for (const auto& p : arr) {
    VertexParams vp;
    const auto& mu = p.at("mu");
    vp.mu.resize(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) vp.mu(i) = mu[i].get<double>();
    const auto& sigma = p.at("sigma");
    vp.sigma.resize(sigma.size(), sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i)
      for (std::size_t j = 0; j < sigma[i].size(); ++j) vp.sigma(i, j) = sigma[i][j].get<double>();
    out.push_back(std::move(vp));
  }
  return out;
}

}  // namespace

void write_samples(const fs::path& path, const RunConfig& cfg, int n_units, int dim,
                   const std::vector<ChainSample>& samples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("samples: cannot write " + path.string());
  json meta{{"type", "meta"},
            {"config_hash", config_hash(cfg)},
            {"seed", cfg.chain.seed},
            {"n_units", n_units},
            {"dim", dim},
            {"config", config_canonical_text(cfg)}};
  out << meta.dump() << "\n";
  for (const ChainSample& s : samples) {
    json rec{{"type", "sample"}, {"iter", s.iteration}};
    rec.update(assignments_to_json(s.assignments));
    rec["params"] = params_to_json(s.vertex_params);
    out << rec.dump() << "\n";
  }
}

SampleStream read_samples(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("samples: cannot open " + path.string());
  SampleStream stream;
  std::string line;
  bool have_meta = false;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const json rec = json::parse(line);
    if (rec.at("type") == "meta") {
      stream.hash = rec.at("config_hash").get<std::string>();
      stream.seed = rec.at("seed").get<std::uint64_t>();
      stream.n_units = rec.at("n_units").get<int>();
      stream.dim = rec.at("dim").get<int>();
      stream.config = parse_config_text(rec.at("config").get<std::string>());
      have_meta = true;
    } else {
      ChainSample s;
      s.iteration = rec.at("iter").get<int>();
      s.assignments = assignments_from_json(rec);
      s.vertex_params = params_from_json(rec.at("params"));
      stream.samples.push_back(std::move(s));
    }
  }
  if (!have_meta) throw std::runtime_error("samples: missing meta record in " + path.string());
  if (stream.samples.empty()) throw std::runtime_error("samples: no sample records");
  return stream;
}

void write_truth_json(const fs::path& path, const LabeledDataset& dataset, std::uint64_t seed) {
  json truth{{"seed", seed}, {"n_units", dataset.points.rows()}};
  truth.update(assignments_to_json(dataset.true_assignments));
  truth["vertex_params"] = params_to_json(dataset.true_vertex_params);
  json edges = json::array();
  for (const auto& [k, kp] : dataset.true_edges) edges.push_back(json::array({k, kp}));
  truth["edges"] = std::move(edges);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("truth: cannot write " + path.string());
  out << truth.dump(2) << "\n";
}

void write_summary_json(const fs::path& path, const PosteriorSummary& summary,
                        const RunConfig& cfg) {
  json j;
  j["config_hash"] = config_hash(cfg);
  j["seed"] = cfg.chain.seed;
  j["v_bar"] = summary.v_bar;
  json vh = json::array();
  for (bool b : summary.v_hat) vh.push_back(b ? 1 : 0);
  j["v_hat"] = std::move(vh);
  j["v_uncertainty"] = summary.v_uncertainty;
  j["vertex_partition"] = summary.vertex_partition;
  json pe = json::array();
  for (const UnitAssignment& a : summary.point_estimate)
    pe.push_back(json::array({a.k, a.k_prime}));
  j["point_estimate"] = std::move(pe);
  json edges = json::array();
  for (const auto& [pair, prob] : summary.edge_prob_table)
    edges.push_back(json{{"k", pair.first}, {"k_prime", pair.second}, {"probability", prob}});
  j["edge_prob_table"] = std::move(edges);
  json kv = json::object();
  for (const auto& [k, f] : summary.kv_posterior) kv[std::to_string(k)] = f;
  j["kv_posterior"] = std::move(kv);
  j["vertex_means"] = params_to_json(summary.vertex_means);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("summary: cannot write " + path.string());
  out << j.dump(2) << "\n";
}

void write_cocluster_csv(const fs::path& path, const Eigen::MatrixXd& cocluster) {
  write_csv(path, cocluster);
}

void write_plot_svg(const fs::path& path, const Eigen::MatrixXd& data,
                    const PosteriorSummary& summary) {
  const double min_x = data.col(0).minCoeff();
  const double max_x = data.col(0).maxCoeff();
  const double min_y = data.col(1).minCoeff();
  const double max_y = data.col(1).maxCoeff();
  const double width = 720.0;
  const double height = 720.0;
  const double pad = 40.0;
  auto sx = [&](double x) { return pad + (x - min_x) / (max_x - min_x) * (width - 2 * pad); };
  auto sy = [&](double y) { return height - pad - (y - min_y) / (max_y - min_y) * (height - 2 * pad); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Cluster centers of the point estimate, for edge segments.
  std::map<int, Eigen::Vector2d> centers;
  std::map<int, int> sizes;
  for (int i = 0; i < data.rows(); ++i) {
    const UnitAssignment& a = summary.point_estimate[i];
    if (!a.is_vertex()) continue;
    auto [it, inserted] = centers.try_emplace(a.k, Eigen::Vector2d::Zero());
    it->second += data.row(i).head(2).transpose();
    ++sizes[a.k];
  }
  for (auto& [k, c] : centers) c /= sizes[k];

  double max_prob = 0.0;
  for (const auto& [pair, prob] : summary.edge_prob_table) max_prob = std::max(max_prob, prob);
  for (const auto& [pair, prob] : summary.edge_prob_table) {
    if (!(prob > 0.0)) continue;
    auto a = centers.find(pair.first);
    auto b = centers.find(pair.second);
    if (a == centers.end() || b == centers.end()) continue;
    const double shade = max_prob > 0 ? prob / max_prob : 0.0;
    const int grey = static_cast<int>(200 - 170 * shade);
    os << "<line x1=\"" << sx(a->second.x()) << "\" y1=\"" << sy(a->second.y()) << "\" x2=\""
       << sx(b->second.x()) << "\" y2=\"" << sy(b->second.y()) << "\" stroke=\"rgb(" << grey
       << "," << grey << "," << grey << ")\" stroke-width=\"3\"/>\n";
  }

  for (int i = 0; i < data.rows(); ++i) {
    const UnitAssignment& a = summary.point_estimate[i];
    const double x = sx(data(i, 0));
    const double y = sy(data(i, 1));
    std::string color;
    if (a.is_vertex()) {
      color = kPalette[(a.k - 1) % kPalette.size()];
      os << "<polygon points=\"" << x << "," << y - 4 << " " << x - 3.5 << "," << y + 3 << " "
         << x + 3.5 << "," << y + 3 << "\" fill=\"" << color << "\"/>\n";
    } else {
      const long pair_index =
          static_cast<long>(a.k) * 1000 + a.k_prime;  // stable palette slot per pair
      color = kPalette[pair_index % kPalette.size()];
      os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2.5\" fill=\"" << color
         << "\" fill-opacity=\"0.7\"/>\n";
    }
  }
  os << "</svg>\n";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("svg: cannot write " + path.string());
  out << os.str();
}

int cmd_simulate(const std::string& scenario, std::uint64_t seed, const fs::path& out_dir) {
  ScenarioSpec spec;
  spec.seed = seed;
  if (scenario == "wellspecified")
    spec.kind = Scenario::kWellSpecified;
  else if (scenario == "misspecified")
    spec.kind = Scenario::kMisspecified;
  else if (scenario == "nonconnected")
    spec.kind = Scenario::kNonConnected;
  else
    throw std::runtime_error("simulate: unknown scenario '" + scenario +
                             "' (wellspecified|misspecified|nonconnected)");
  fs::create_directories(out_dir);
  const LabeledDataset dataset = generate_scenario(spec);
  write_csv(out_dir / "data.csv", dataset.points);
  write_truth_json(out_dir / "truth.json", dataset, seed);
  return 0;
}

FitOutputs cmd_fit(const fs::path& config_path, const fs::path& data_path,
                   const fs::path& out_dir, std::optional<std::uint64_t> seed_override,
                   std::optional<int> chains_override, std::optional<WeightMode> mode_override) {
  RunConfig cfg = load_config(config_path);
  if (seed_override) cfg.chain.seed = *seed_override;
  if (chains_override) cfg.chains = *chains_override;
  if (mode_override) cfg.chain.mode = *mode_override;
  const Eigen::MatrixXd data = load_csv(data_path);
  const NIWParams niw = cfg.make_niw(data);
  const EdgeGeometry geom = cfg.make_geometry();
  fs::create_directories(out_dir);

  std::vector<RunResult> results(cfg.chains);
  std::vector<std::thread> workers;
  for (int c = 0; c < cfg.chains; ++c) {
    workers.emplace_back([&, c]() {
      ChainConfig chain_cfg = cfg.chain;
      chain_cfg.seed = cfg.chain.seed + static_cast<std::uint64_t>(c);
      results[c] = run_chain(chain_cfg, data, cfg.prior, cfg.hyper, niw, geom);
    });
  }
  for (auto& w : workers) w.join();

  std::vector<ChainSample> samples;
  double seconds = 0.0;
  for (const RunResult& r : results) {
    samples.insert(samples.end(), r.samples.begin(), r.samples.end());
    seconds = std::max(seconds, r.seconds);
  }

  FitOutputs out;
  out.samples_path = out_dir / "samples.jsonl";
  out.summary_path = out_dir / "summary.json";
  write_samples(out.samples_path, cfg, static_cast<int>(data.rows()),
                static_cast<int>(data.cols()), samples);
  out.summary = summarize(samples, data, cfg.hyper, niw, geom, cfg.chain.seed, cfg.edge_summary);
  write_summary_json(out.summary_path, out.summary, cfg);
  write_cocluster_csv(out_dir / "cocluster.csv", out.summary.cocluster);
  if (data.cols() >= 2) write_plot_svg(out_dir / "plot.svg", data, out.summary);
  out.seconds = seconds;

  json run_info{{"config_hash", config_hash(cfg)},
                {"seed", cfg.chain.seed},
                {"chains", cfg.chains},
                {"retained_samples", samples.size()},
                {"seconds", seconds}};
  std::ofstream info(out_dir / "run_info.json");
  info << run_info.dump(2) << "\n";
  return out;
}

int cmd_summarize(const fs::path& samples_path, const fs::path& data_path,
                  const fs::path& out_dir) {
  const SampleStream stream = read_samples(samples_path);
  const Eigen::MatrixXd data = load_csv(data_path);
  if (data.rows() != stream.n_units)
    throw std::runtime_error("summarize: sample stream has " + std::to_string(stream.n_units) +
                             " units but data has " + std::to_string(data.rows()) + " rows");
  const RunConfig& cfg = stream.config;
  const NIWParams niw = cfg.make_niw(data);
  const EdgeGeometry geom = cfg.make_geometry();
  fs::create_directories(out_dir);
  const PosteriorSummary summary =
      summarize(stream.samples, data, cfg.hyper, niw, geom, cfg.chain.seed, cfg.edge_summary);
  write_summary_json(out_dir / "summary.json", summary, cfg);
  write_cocluster_csv(out_dir / "cocluster.csv", summary.cocluster);
  if (data.cols() >= 2) write_plot_svg(out_dir / "plot.svg", data, summary);

  std::cout << "posterior of the number of vertex-clusters\n";
  std::cout << "k        ";
  for (const auto& [k, f] : summary.kv_posterior) std::cout << k << "\t";
  std::cout << "\nP(K_v=k) ";
  std::cout.setf(std::ios::fixed);
  std::cout.precision(4);
  for (const auto& [k, f] : summary.kv_posterior) std::cout << f << "\t";
  std::cout << "\n";
  return 0;
}

int cmd_prior_check(const fs::path& config_path, int n, int draws, std::uint64_t seed) {
  const RunConfig cfg = load_config(config_path);
  const double closed_form = truncation_probability(cfg.prior, cfg.hyper.p_v, n);

  Rng rng(seed);
  int accepted = 0;
  for (int t = 0; t < draws; ++t)
    if (truncation_event_holds(sample_relaxed(rng, cfg.prior, cfg.hyper, n))) ++accepted;
  const double mc = static_cast<double>(accepted) / draws;
  const double se = std::sqrt(std::max(mc * (1.0 - mc), 1e-12) / draws);

  std::cout << "config hash: " << config_hash(cfg) << "\n";
  std::cout << "prior: " << prior_name(cfg.prior) << ", p_v = " << cfg.hyper.p_v
            << ", N = " << n << "\n";
  std::cout << "truncation probability (closed form): " << closed_form << "\n";
  std::cout << "truncation probability (Monte Carlo, " << draws << " draws): " << mc
            << " +/- " << se << "\n";

  std::cout << "\nsingle-cluster probability g_{n_v}\n";
  std::cout << "n_v\tg\n";
  for (int n_v : {1, 2, 5, 10, 50, 100, 500, 1000, 10000})
    std::cout << n_v << "\t" << prob_single_cluster(cfg.prior, n_v) << "\n";

  // Tail-rate diagnostic: g_{n_v} divided by its asymptotic rate, which
  // should be close to 1 for large n_v.
  const int big = 10000;
  const double g_big = prob_single_cluster(cfg.prior, big);
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        std::cout << "\nrate diagnostic at n_v = " << big << ": ";
        if constexpr (std::is_same_v<T, SymDirichlet>) {
          const double rate = std::exp(std::lgamma(p.rho * p.m_v) - std::lgamma(p.rho)) *
                              p.m_v * std::pow(big, p.rho * (1.0 - p.m_v));
          std::cout << "g/rate = " << g_big / rate << " (target 1)\n";
        } else if constexpr (std::is_same_v<T, Gnedin>) {
          std::cout << "g/gamma = " << g_big / p.gamma << " (target 1)\n";
        } else if constexpr (std::is_same_v<T, DirichletProcess>) {
          const double rate = std::exp(std::lgamma(p.alpha + 1.0)) * std::pow(big, -p.alpha);
          std::cout << "g/rate = " << g_big / rate << " (target 1)\n";
        } else {
          const double rate = std::exp(std::lgamma(p.alpha + 1.0) - std::lgamma(1.0 - p.sigma)) *
                              std::pow(big, -(p.alpha + p.sigma));
          std::cout << "g/rate = " << g_big / rate << " (target 1)\n";
        }
      },
      cfg.prior);
  return 0;
}

}  // namespace garp
