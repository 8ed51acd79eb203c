#include "mixtest/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "mixtest/errors.hpp"
#include "mixtest/oracles.hpp"
#include "mixtest/special.hpp"

namespace fs = std::filesystem;

namespace mixtest {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_number(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": cannot parse number '" + s + "'");
  }
}

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

DataSchema schema_from_name(const std::string& name) {
  if (name == "iid") return DataSchema::Iid;
  if (name == "binary-regression") return DataSchema::BinaryRegression;
  if (name == "survival") return DataSchema::Survival;
  throw ParameterError("unknown data schema: " + name);
}

const char* schema_name(DataSchema schema) {
  switch (schema) {
    case DataSchema::Iid: return "iid";
    case DataSchema::BinaryRegression: return "binary-regression";
    case DataSchema::Survival: return "survival";
  }
  return "?";
}

Dataset simulate_dataset(const SimSource& source, std::uint64_t seed) {
  if (source.n < 1) throw ParameterError("simulate: n must be >= 1");
  RandomStream rng(seed);
  Dataset data;
  data.y = sample(source.family, source.params, source.n, rng);
  return data;
}

Dataset simulate_regression_dataset(std::size_t n, const Eigen::VectorXd& beta, double sigma,
                                    std::uint64_t seed) {
  if (beta.size() != 4) throw ParameterError("benchmark design expects 4 coefficients");
  RandomStream rng(seed);
  Dataset data;
  data.design.resize(static_cast<long>(n), 4);
  data.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long r = static_cast<long>(i);
    data.design(r, 0) = 1.0;
    data.design(r, 1) = rng.normal();
    data.design(r, 2) = rng.bernoulli(0.5) ? 1.0 : 0.0;
    data.design(r, 3) = rng.uniform(10.0, 11.0);
    data.y[i] = data.design.row(r).dot(beta) + sigma * rng.normal();
  }
  return data;
}

Dataset simulate_binary_dataset(Link link, std::size_t n, const Eigen::VectorXd& beta,
                                std::uint64_t seed) {
  if (beta.size() != 2) throw ParameterError("binary benchmark expects (intercept, slope)");
  RandomStream rng(seed);
  Dataset data;
  data.design.resize(static_cast<long>(n), 2);
  data.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long r = static_cast<long>(i);
    data.design(r, 0) = 1.0;
    data.design(r, 1) = rng.normal();
    const double eta = data.design.row(r).dot(beta);
    const double p = link == Link::Logit ? 1.0 / (1.0 + std::exp(-eta)) : norm_cdf(eta);
    data.y[i] = rng.bernoulli(p) ? 1.0 : 0.0;
  }
  return data;
}

Dataset ingest_csv(const std::string& path, DataSchema schema) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  Dataset data;
  std::vector<std::vector<double>> covariates;
  bool header_checked = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (!header_checked) {
      header_checked = true;
      // a non-numeric first field marks a header row
      if (!looks_numeric(fields[0])) continue;
    }
    switch (schema) {
      case DataSchema::Iid: {
        if (fields.size() != 1) {
          throw ParseError("line " + std::to_string(line_no) + ": expected a single column");
        }
        data.y.push_back(parse_number(fields[0], line_no));
        break;
      }
      case DataSchema::BinaryRegression: {
        if (fields.size() < 2) {
          throw ParseError("line " + std::to_string(line_no) +
                           ": expected covariates and a response column");
        }
        std::vector<double> row;
        for (std::size_t c = 0; c + 1 < fields.size(); ++c) {
          row.push_back(parse_number(fields[c], line_no));
        }
        const std::string& resp = fields.back();
        double y;
        if (resp == "Yes" || resp == "yes" || resp == "1") {
          y = 1.0;
        } else if (resp == "No" || resp == "no" || resp == "0") {
          y = 0.0;
        } else {
          throw ParseError("line " + std::to_string(line_no) + ": response must be Yes/No/1/0");
        }
        covariates.push_back(std::move(row));
        data.y.push_back(y);
        break;
      }
      case DataSchema::Survival: {
        if (fields.size() != 2) {
          throw ParseError("line " + std::to_string(line_no) + ": expected time,censored");
        }
        const double time = parse_number(fields[0], line_no);
        if (!(time > 0.0)) {
          throw ParseError("line " + std::to_string(line_no) +
                           ": time must be > 0 for the log transform");
        }
        const double cens = parse_number(fields[1], line_no);
        if (cens != 0.0 && cens != 1.0) {
          throw ParseError("line " + std::to_string(line_no) + ": censored must be 0 or 1");
        }
        data.y.push_back(-std::log(time));
        data.censored.push_back(static_cast<std::uint8_t>(cens));
        break;
      }
    }
  }
  if (data.y.empty()) throw ParseError(path + ": no data rows");
  if (schema == DataSchema::BinaryRegression) {
    const std::size_t k = covariates.front().size();
    data.design.resize(static_cast<long>(data.y.size()), static_cast<long>(k + 1));
    for (std::size_t i = 0; i < covariates.size(); ++i) {
      if (covariates[i].size() != k) {
        throw ParseError("ragged covariate rows in " + path);
      }
      data.design(static_cast<long>(i), 0) = 1.0;
      for (std::size_t c = 0; c < k; ++c) {
        data.design(static_cast<long>(i), static_cast<long>(c) + 1) = covariates[i][c];
      }
    }
  }
  data.validate();
  return data;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

void write_dataset_csv(const Dataset& data, const std::string& path, DataSchema schema) {
  std::ostringstream out;
  switch (schema) {
    case DataSchema::Iid:
      out << "y\n";
      for (double v : data.y) out << fmt_double(v) << '\n';
      break;
    case DataSchema::Survival:
      out << "time,censored\n";
      for (std::size_t i = 0; i < data.size(); ++i) {
        out << fmt_double(std::exp(-data.y[i])) << ','
            << (data.is_censored(i) ? 1 : 0) << '\n';
      }
      break;
    case DataSchema::BinaryRegression: {
      if (!data.has_design()) throw ContractError("binary-regression write needs a design");
      const long k = data.design.cols() - 1;
      for (long c = 0; c < k; ++c) out << 'x' << (c + 1) << ',';
      out << "y\n";
      for (std::size_t i = 0; i < data.size(); ++i) {
        for (long c = 0; c < k; ++c) {
          out << fmt_double(data.design(static_cast<long>(i), c + 1)) << ',';
        }
        out << (data.y[i] == 1.0 ? "1" : "0") << '\n';
      }
      break;
    }
  }
  write_text_atomic(path, out.str());
}

void ExperimentConfig::validate() const {
  if (schema_version != 1) throw ConfigError("unsupported config schema_version");
  pair_from_name(test);
  if (a0_grid.empty()) throw ConfigError("a0_grid must be nonempty");
  for (double a : a0_grid) {
    if (!(a > 0.0)) throw ConfigError("a0 values must be > 0");
  }
  if (replicas < 1) throw ConfigError("replicas must be >= 1");
  if (simulate.has_value() == !file.empty()) {
    throw ConfigError("exactly one of simulate/file must be given");
  }
  if (simulate.has_value() && n_grid.empty()) throw ConfigError("n_grid must be nonempty");
  chain.validate();
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.schema_version = j.value("schema_version", 1);
  cfg.test = j.at("test").get<std::string>();
  if (j.contains("data_source")) {
    const auto& ds = j.at("data_source");
    if (ds.contains("simulate")) {
      const auto& sim = ds.at("simulate");
      SimSource src;
      src.family = family_from_name(sim.at("family").get<std::string>());
      src.params.values = sim.at("params").get<std::vector<double>>();
      src.n = sim.value("n", std::size_t{0});
      cfg.simulate = src;
    }
    if (ds.contains("file")) {
      cfg.file = ds.at("file").get<std::string>();
      cfg.file_schema = schema_from_name(ds.value("schema", std::string("iid")));
    }
  }
  cfg.a0_grid = j.value("a0_grid", std::vector<double>{});
  cfg.n_grid = j.value("n_grid", std::vector<std::size_t>{});
  cfg.replicas = j.value("replicas", std::size_t{1});
  if (j.contains("chain")) {
    const auto& ch = j.at("chain");
    cfg.chain.iterations = ch.value("iterations", 10000L);
    cfg.chain.burn_in = ch.value("burn_in", cfg.chain.iterations / 10);
    cfg.chain.seed = ch.value("seed", std::uint64_t{0});
    if (ch.contains("alpha_proposal")) {
      const auto& ap = ch.at("alpha_proposal");
      if (ap.is_string() && ap.get<std::string>() == "from-prior") {
        cfg.chain.alpha_proposal.kind = AlphaProposal::Kind::FromPrior;
      } else if (ap.is_object() && ap.contains("logit_step")) {
        cfg.chain.alpha_proposal.kind = AlphaProposal::Kind::LogitRandomWalk;
        cfg.chain.alpha_proposal.step = ap.at("logit_step").get<double>();
      } else {
        throw ConfigError("alpha_proposal must be \"from-prior\" or {\"logit_step\": s}");
      }
    }
  }
  cfg.with_oracle = j.value("oracle", true);
  cfg.full_scale = j.value("full_scale", false);
  cfg.outputs = j.value("outputs", std::string("."));
  cfg.validate();
  return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["schema_version"] = schema_version;
  j["test"] = test;
  if (simulate.has_value()) {
    j["data_source"]["simulate"] = {{"family", family_name(simulate->family)},
                                    {"params", simulate->params.values},
                                    {"n", simulate->n}};
  } else {
    j["data_source"]["file"] = file;
    j["data_source"]["schema"] = schema_name(file_schema);
  }
  j["a0_grid"] = a0_grid;
  j["n_grid"] = n_grid;
  j["replicas"] = replicas;
  j["chain"] = {{"iterations", chain.iterations},
                {"burn_in", chain.burn_in},
                {"seed", chain.seed}};
  if (chain.alpha_proposal.kind == AlphaProposal::Kind::FromPrior) {
    j["chain"]["alpha_proposal"] = "from-prior";
  } else {
    j["chain"]["alpha_proposal"] = {{"logit_step", chain.alpha_proposal.step}};
  }
  j["oracle"] = with_oracle;
  j["full_scale"] = full_scale;
  j["outputs"] = outputs;
  return j;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config parse error: ") + e.what());
  }
  return from_json(j);
}

std::uint64_t cell_seed(std::uint64_t base, std::size_t a0_index, std::size_t n_index,
                        std::size_t replica) {
  return RandomStream::mix({base, a0_index + 1, n_index + 1, replica + 1});
}

namespace {

std::optional<BayesFactorResult> pair_oracle(PairKind kind, const Dataset& data) {
  switch (kind) {
    case PairKind::PoissonVsGeometric:
      return bf_poisson_geometric(data.y);
    case PairKind::NormalVar1VsVar2:
      return bf_normal_var(data.y);
    case PairKind::NormalVsLaplace:
      return bf_normal_laplace(data.y);
    case PairKind::PointNullMean:
      return std::nullopt;
  }
  return std::nullopt;
}

struct Cell {
  std::size_t a0_index;
  std::size_t n_index;
  std::size_t replica;
};

}  // namespace

std::string result_rows_to_csv(const std::vector<ResultRow>& rows) {
  // runtime_ms lives in the digest: the CSV stays byte-identical across reruns
  std::ostringstream out;
  out << "test,a0,n,replica,estimator,value,seed,error\n";
  for (const ResultRow& r : rows) {
    out << r.test << ',' << fmt_double(r.a0) << ',' << r.n << ',' << r.replica << ','
        << r.estimator << ',' << fmt_double(r.value) << ',' << r.seed << ',' << r.error << '\n';
  }
  return out.str();
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const PairKind kind = pair_from_name(config.test);

  Dataset file_data;
  std::vector<std::size_t> n_grid = config.n_grid;
  if (!config.file.empty()) {
    file_data = ingest_csv(config.file, config.file_schema);
    n_grid = {file_data.size()};
  }
  const std::size_t replicas = config.full_scale ? std::max<std::size_t>(config.replicas, 100)
                                                 : config.replicas;

  std::vector<Cell> cells;
  for (std::size_t ai = 0; ai < config.a0_grid.size(); ++ai) {
    for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
      for (std::size_t r = 0; r < replicas; ++r) cells.push_back({ai, ni, r});
    }
  }

  std::vector<ResultRow> rows;
  std::mutex rows_mutex;
  std::size_t next_cell = 0;
  std::mutex next_mutex;

  auto worker = [&]() {
    for (;;) {
      std::size_t idx;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next_cell >= cells.size()) return;
        idx = next_cell++;
      }
      const Cell cell = cells[idx];
      const double a0 = config.a0_grid[cell.a0_index];
      const std::size_t n = n_grid[cell.n_index];
      const std::uint64_t seed =
          cell_seed(config.chain.seed, cell.a0_index, cell.n_index, cell.replica);
      std::vector<ResultRow> local;
      const auto start = std::chrono::steady_clock::now();
      try {
        Dataset data;
        if (config.simulate.has_value()) {
          SimSource src = *config.simulate;
          src.n = n;
          data = simulate_dataset(src, RandomStream::mix({seed, 0xda7aULL}));
        } else {
          data = file_data;
        }
        ChainConfig chain = config.chain;
        chain.seed = seed;
        const Trace trace = run_pair_mh(kind, data, a0, chain);
        const PosteriorSummary summary = summarize(trace);
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        local.push_back({config.test, a0, n, cell.replica, "post_median_alpha",
                         summary.weights[0].median, ms, seed, ""});
        local.push_back({config.test, a0, n, cell.replica, "post_mean_alpha",
                         summary.weights[0].mean, ms, seed, ""});
        if (config.with_oracle) {
          if (const auto oracle = pair_oracle(kind, data)) {
            local.push_back({config.test, a0, n, cell.replica, "bf_post_prob",
                             oracle->posterior_prob_m1, ms, seed, ""});
          }
        }
      } catch (const std::exception& e) {
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        local.push_back({config.test, a0, n, cell.replica, "error",
                         std::numeric_limits<double>::quiet_NaN(), ms, seed, e.what()});
      }
      std::lock_guard<std::mutex> lock(rows_mutex);
      rows.insert(rows.end(), local.begin(), local.end());
    }
  };

  const std::size_t hw = std::max<std::size_t>(std::thread::hardware_concurrency(), 1);
  const std::size_t n_workers = std::min(hw, cells.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.a0, a.n, a.replica, a.estimator) <
           std::tie(b.a0, b.n, b.replica, b.estimator);
  });

  // digest: per (a0, n) cell, mean and range of the posterior medians
  nlohmann::json digest;
  digest["schema_version"] = 1;
  digest["test"] = config.test;
  digest["cells"] = nlohmann::json::array();
  for (std::size_t ai = 0; ai < config.a0_grid.size(); ++ai) {
    for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
      std::vector<double> medians;
      std::size_t errors = 0;
      for (const ResultRow& r : rows) {
        if (r.a0 != config.a0_grid[ai] || r.n != n_grid[ni]) continue;
        if (r.estimator == "post_median_alpha") medians.push_back(r.value);
        if (r.estimator == "error") ++errors;
      }
      std::vector<double> runtimes;
      for (const ResultRow& r : rows) {
        if (r.a0 == config.a0_grid[ai] && r.n == n_grid[ni] &&
            r.estimator == "post_median_alpha") {
          runtimes.push_back(r.runtime_ms);
        }
      }
      nlohmann::json cell;
      cell["a0"] = config.a0_grid[ai];
      cell["n"] = n_grid[ni];
      cell["errors"] = errors;
      if (!runtimes.empty()) cell["mean_runtime_ms"] = mean_of(runtimes);
      if (!medians.empty()) {
        cell["median_alpha_mean"] = mean_of(medians);
        cell["median_alpha_min"] = *std::min_element(medians.begin(), medians.end());
        cell["median_alpha_max"] = *std::max_element(medians.begin(), medians.end());
      }
      digest["cells"].push_back(cell);
    }
  }

  ExperimentResult result;
  result.rows = std::move(rows);
  result.digest = digest;
  const fs::path outdir(config.outputs);
  result.csv_path = (outdir / "results.csv").string();
  result.json_path = (outdir / "digest.json").string();
  write_text_atomic(result.csv_path, result_rows_to_csv(result.rows));
  write_text_atomic(result.json_path, digest.dump(2) + "\n");
  return result;
}

std::vector<ConsistencyRow> consistency_harness(PairKind kind, int true_component,
                                                const std::vector<double>& true_globals,
                                                const std::vector<std::size_t>& n_grid,
                                                std::size_t replicas, double a0,
                                                const ChainConfig& chain) {
  if (n_grid.empty()) throw ConfigError("n_grid must be nonempty");
  if (replicas < 1) throw ConfigError("replicas must be >= 1");
  if (true_component != 0 && true_component != 1) {
    throw ConfigError("true_component must be 0 or 1");
  }
  const MixtureSpec spec = build_pair(kind, a0);
  const ComponentBinding& comp = spec.components[true_component];
  const Params params = comp.bind(true_globals);

  std::vector<ConsistencyRow> rows;
  for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
    const std::size_t n = n_grid[ni];
    std::vector<double> abs_err, log_stat, prob_stat;
    for (std::size_t r = 0; r < replicas; ++r) {
      const std::uint64_t seed = cell_seed(chain.seed, 0, ni, r);
      RandomStream sim_rng(RandomStream::mix({seed, 0x51e3ULL}));
      Dataset data;
      data.y = sample(comp.family, params, n, sim_rng);
      ChainConfig cc = chain;
      cc.seed = seed;
      const Trace trace = run_pair_mh(kind, data, a0, cc);
      const PosteriorSummary summary = summarize(trace);
      const double med = summary.weights[true_component].median;
      const double mean_w = summary.weights[true_component].mean;
      // |median(alpha) - alpha*| equals the true-component weight's gap to 1
      abs_err.push_back(std::fabs(med - 1.0));
      const double one_minus = std::max(1.0 - mean_w, 1e-300);
      log_stat.push_back(std::log(static_cast<double>(n)) * std::log(one_minus));
      if (const auto oracle = pair_oracle(kind, data)) {
        const double p_true = true_component == 0 ? oracle->posterior_prob_m1
                                                  : 1.0 - oracle->posterior_prob_m1;
        prob_stat.push_back(std::log(std::max(1.0 - p_true, 1e-300)));
      }
    }
    ConsistencyRow row;
    row.n = n;
    row.abs_err_q25 = quantile_type7(abs_err, 0.25);
    row.abs_err_median = quantile_type7(abs_err, 0.5);
    row.abs_err_q75 = quantile_type7(abs_err, 0.75);
    row.mean_logn_log1m_mean_weight = mean_of(log_stat);
    row.mean_log1m_post_prob =
        prob_stat.empty() ? std::numeric_limits<double>::quiet_NaN() : mean_of(prob_stat);
    rows.push_back(row);
  }
  return rows;
}

std::string consistency_rows_to_csv(const std::vector<ConsistencyRow>& rows) {
  std::ostringstream out;
  out << "n,abs_err_q25,abs_err_median,abs_err_q75,logn_log1m_mean_weight,log1m_post_prob\n";
  for (const ConsistencyRow& r : rows) {
    out << r.n << ',' << fmt_double(r.abs_err_q25) << ',' << fmt_double(r.abs_err_median) << ','
        << fmt_double(r.abs_err_q75) << ',' << fmt_double(r.mean_logn_log1m_mean_weight) << ','
        << fmt_double(r.mean_log1m_post_prob) << '\n';
  }
  return out.str();
}

}  // namespace mixtest
