// SPDX-License-Identifier: Apache-2.0

// exch-cli: samplers, exact laws, correlation functions and verification
// suites over the exch C interface.
//
// Exit status: 0 success, 1 verification failure, 2 usage or parameter error.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "cli_io.hpp"
#include "exch/exch.h"

namespace {

using exch::cli::JsonObject;
using exch::cli::UsageError;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

// A library call reported a parameter or domain error.
class ParameterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(exch_status status) {
  if (status != EXCH_OK) throw ParameterError(exch_last_error());
}

struct RngDeleter {
  void operator()(exch_rng* p) const { exch_rng_destroy(p); }
};
struct CrpDeleter {
  void operator()(exch_crp* p) const { exch_crp_destroy(p); }
};
struct PartitionDeleter {
  void operator()(exch_partition* p) const { exch_partition_destroy(p); }
};
struct ReportsDeleter {
  void operator()(exch_report_list* p) const { exch_report_list_destroy(p); }
};
using Rng = std::unique_ptr<exch_rng, RngDeleter>;
using Crp = std::unique_ptr<exch_crp, CrpDeleter>;
using PartitionHandle = std::unique_ptr<exch_partition, PartitionDeleter>;
using Reports = std::unique_ptr<exch_report_list, ReportsDeleter>;

Rng make_rng(std::uint64_t seed) {
  exch_rng* raw = nullptr;
  check(exch_rng_create(seed, &raw));
  return Rng(raw);
}

Crp make_crp(double alpha, double theta) {
  exch_crp* raw = nullptr;
  check(exch_crp_create(alpha, theta, &raw));
  return Crp(raw);
}

PartitionHandle make_partition(const std::vector<std::vector<std::uint32_t>>& blocks) {
  std::vector<std::uint32_t> flat;
  std::vector<std::size_t> lengths;
  for (const auto& b : blocks) {
    flat.insert(flat.end(), b.begin(), b.end());
    lengths.push_back(b.size());
  }
  exch_partition* raw = nullptr;
  check(exch_partition_create(flat.data(), lengths.data(), lengths.size(), &raw));
  return PartitionHandle(raw);
}

std::vector<std::vector<std::uint32_t>> partition_blocks(const exch_partition* pi) {
  std::vector<std::vector<std::uint32_t>> blocks(exch_partition_num_blocks(pi));
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    blocks[j].resize(exch_partition_block_size(pi, j));
    check(exch_partition_block(pi, j, blocks[j].data(), blocks[j].size()));
  }
  return blocks;
}

struct Config {
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 0;
  std::string alphas;
  double alpha = 0.0;
  double theta = 1.0;
  std::size_t n = 0;
  std::size_t depth = 10;
  std::size_t k = 1;
  std::string method = "gamma";
  std::string seq;
  std::string counts;
  std::string partition;
  std::string xs;
  std::string sizes;
  std::string suite;
  bool ranked = false;
};

class Output {
 public:
  explicit Output(const Config& cfg) : csv_(cfg.format == "csv") {
    if (!cfg.output.empty() && cfg.output != "-") {
      file_.open(cfg.output);
      if (!file_) throw UsageError("--output: cannot open '" + cfg.output + "'");
    }
  }
  bool csv() const { return csv_; }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void line(const std::string& s) { os() << s << '\n'; }

 private:
  bool csv_;
  std::ofstream file_;
};

void emit_log_prob(Output& out, const exch_signed_log& v) {
  const double log_prob = v.sign == 0 ? -HUGE_VAL : v.logmag;
  const double prob = v.sign == 0 ? 0.0 : v.sign * std::exp(v.logmag);
  if (out.csv()) {
    out.line("log_prob,prob");
    out.line(exch::cli::csv_number(log_prob) + "," + exch::cli::csv_number(prob));
  } else {
    out.line(JsonObject().number("log_prob", log_prob).number("prob", prob).str());
  }
}

void emit_weights(Output& out, const std::vector<double>& weights, double residual) {
  if (out.csv()) {
    out.line("index,weight");
    for (std::size_t i = 0; i < weights.size(); ++i) {
      out.line(std::to_string(i + 1) + "," + exch::cli::csv_number(weights[i]));
    }
    out.line("residual," + exch::cli::csv_number(residual));
  } else {
    out.line(JsonObject().numbers("weights", weights).number("residual", residual).str());
  }
}

std::vector<std::uint32_t> to_labels(const std::vector<std::uint64_t>& v) { return {v.begin(), v.end()}; }

int cmd_sample_polya(const Config& cfg, Output& out) {
  const auto alphas = exch::cli::parse_reals("--alphas", cfg.alphas);
  auto rng = make_rng(cfg.seed);
  std::vector<std::uint32_t> labels(cfg.n);
  check(exch_polya_sample(alphas.data(), alphas.size(), cfg.n, rng.get(), labels.data()));
  if (out.csv()) {
    out.line("index,label");
    for (std::size_t i = 0; i < labels.size(); ++i) out.line(std::to_string(i + 1) + "," + std::to_string(labels[i]));
  } else {
    out.line(JsonObject().integers("labels", labels).str());
  }
  return kExitOk;
}

int cmd_sample_crp(const Config& cfg, Output& out) {
  auto crp = make_crp(cfg.alpha, cfg.theta);
  auto rng = make_rng(cfg.seed);
  exch_partition* raw = nullptr;
  check(exch_crp_sample(crp.get(), cfg.n, rng.get(), &raw));
  PartitionHandle pi(raw);
  const auto blocks = partition_blocks(pi.get());
  if (out.csv()) {
    out.line("element,block");
    std::vector<std::size_t> block_of(cfg.n);
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      for (auto e : blocks[j]) block_of[e - 1] = j + 1;
    }
    for (std::size_t i = 0; i < cfg.n; ++i) out.line(std::to_string(i + 1) + "," + std::to_string(block_of[i]));
  } else {
    out.line(JsonObject().nested_integers("partition", blocks).str());
  }
  return kExitOk;
}

int cmd_sample_gem(const Config& cfg, Output& out) {
  auto crp = make_crp(cfg.alpha, cfg.theta);
  auto rng = make_rng(cfg.seed);
  std::vector<double> weights(cfg.depth);
  double residual = 0.0;
  check(exch_gem_sample(crp.get(), cfg.depth, rng.get(), weights.data(), &residual));
  if (cfg.ranked) check(exch_rank_weights(weights.data(), weights.size(), weights.data()));
  emit_weights(out, weights, residual);
  return kExitOk;
}

int cmd_sample_dirichlet(const Config& cfg, Output& out) {
  const auto alphas = exch::cli::parse_reals("--alphas", cfg.alphas);
  exch_dirichlet_method method;
  if (cfg.method == "gamma") {
    method = EXCH_DIRICHLET_GAMMA;
  } else if (cfg.method == "stick") {
    method = EXCH_DIRICHLET_STICK;
  } else {
    throw UsageError("--method: expected gamma or stick, got '" + cfg.method + "'");
  }
  auto rng = make_rng(cfg.seed);
  std::vector<double> x(alphas.size());
  check(exch_dirichlet_sample(alphas.data(), alphas.size(), method, rng.get(), x.data()));
  if (out.csv()) {
    out.line("index,x");
    for (std::size_t i = 0; i < x.size(); ++i) out.line(std::to_string(i + 1) + "," + exch::cli::csv_number(x[i]));
  } else {
    out.line(JsonObject().numbers("x", x).str());
  }
  return kExitOk;
}

int cmd_pmf_polya_seq(const Config& cfg, Output& out) {
  const auto alphas = exch::cli::parse_reals("--alphas", cfg.alphas);
  const auto labels = to_labels(exch::cli::parse_counts("--seq", cfg.seq));
  exch_signed_log v;
  check(exch_polya_seq_log_pmf(alphas.data(), alphas.size(), labels.data(), labels.size(), &v));
  emit_log_prob(out, v);
  return kExitOk;
}

int cmd_pmf_polya_counts(const Config& cfg, Output& out) {
  const auto alphas = exch::cli::parse_reals("--alphas", cfg.alphas);
  const auto counts = exch::cli::parse_counts("--counts", cfg.counts);
  if (counts.size() != alphas.size()) {
    throw UsageError("--counts: expected " + std::to_string(alphas.size()) + " values, got " + std::to_string(counts.size()));
  }
  exch_signed_log v;
  check(exch_polya_count_log_pmf(alphas.data(), alphas.size(), counts.data(), &v));
  emit_log_prob(out, v);
  return kExitOk;
}

int cmd_pmf_ewens_pitman(const Config& cfg, Output& out) {
  auto crp = make_crp(cfg.alpha, cfg.theta);
  auto pi = make_partition(exch::cli::parse_partition(cfg.partition));
  exch_signed_log v;
  check(exch_ewens_pitman_log_pmf(crp.get(), pi.get(), &v));
  emit_log_prob(out, v);
  return kExitOk;
}

int cmd_blockweights(const Config& cfg, Output& out) {
  auto crp = make_crp(cfg.alpha, cfg.theta);
  auto rng = make_rng(cfg.seed);
  exch_partition* raw = nullptr;
  check(exch_crp_sample(crp.get(), cfg.n, rng.get(), &raw));
  PartitionHandle pi(raw);
  std::vector<double> weights(exch_partition_num_blocks(pi.get()));
  check(exch_block_weights(pi.get(), weights.data()));
  if (cfg.ranked) check(exch_rank_weights(weights.data(), weights.size(), weights.data()));
  emit_weights(out, weights, 0.0);
  return kExitOk;
}

int cmd_rho(const Config& cfg, Output& out) {
  auto crp = make_crp(cfg.alpha, cfg.theta);
  const auto xs = exch::cli::parse_reals("--x", cfg.xs);
  if (xs.size() != cfg.k) {
    throw UsageError("--x: expected " + std::to_string(cfg.k) + " points for --k, got " + std::to_string(xs.size()));
  }
  double rho = 0.0;
  check(exch_rho_k(crp.get(), xs.data(), xs.size(), &rho));
  if (out.csv()) {
    out.line("rho");
    out.line(exch::cli::csv_number(rho));
  } else {
    out.line(JsonObject().number("rho", rho).str());
  }
  return kExitOk;
}

int cmd_blockcount(const Config& cfg, Output& out) {
  auto crp = make_crp(cfg.alpha, cfg.theta);
  const auto sizes = exch::cli::parse_counts("--sizes", cfg.sizes);
  double prob = 0.0;
  check(exch_block_count_prob(crp.get(), cfg.n, sizes.data(), sizes.size(), &prob));
  if (out.csv()) {
    out.line("prob");
    out.line(exch::cli::csv_number(prob));
  } else {
    out.line(JsonObject().number("prob", prob).str());
  }
  return kExitOk;
}

int cmd_verify(const Config& cfg, Output& out) {
  exch_report_list* raw = nullptr;
  check(exch_verify_run(cfg.suite.c_str(), cfg.seed, &raw));
  Reports reports(raw);
  bool all_passed = true;
  if (out.csv()) out.line("name,statistic,threshold,passed,control,seed,details");
  for (std::size_t i = 0; i < exch_report_count(reports.get()); ++i) {
    exch_report_view r;
    check(exch_report_get(reports.get(), i, &r));
    all_passed = all_passed && r.passed;
    if (out.csv()) {
      out.line(exch::cli::csv_field(r.name) + "," + exch::cli::csv_number(r.statistic) + "," +
               exch::cli::csv_number(r.threshold) + "," + (r.passed ? "true" : "false") + "," +
               (r.control ? "true" : "false") + "," + std::to_string(r.seed) + "," + exch::cli::csv_field(r.details));
    } else {
      out.line(JsonObject()
                   .string("suite", cfg.suite)
                   .string("name", r.name)
                   .number("statistic", r.statistic)
                   .number("threshold", r.threshold)
                   .boolean("passed", r.passed)
                   .boolean("control", r.control)
                   .unsigned_integer("seed", r.seed)
                   .string("details", r.details)
                   .str());
    }
  }
  return all_passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exchangeable random structures: urns, restaurants, stick-breaking and their exact laws"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", cfg.output, "Write to this file instead of standard output");

  std::function<int(const Config&, Output&)> command;
  auto bind = [&](CLI::App* sub, int (*fn)(const Config&, Output&)) {
    sub->callback([&command, fn] { command = fn; });
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", cfg.seed, "Master seed (default 0)"); };
  auto add_crp = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha, "Discount alpha")->required();
    sub->add_option("--theta", cfg.theta, "Concentration theta")->required();
  };

  auto* sample = app.add_subcommand("sample", "Draw from a sampler");
  sample->require_subcommand(1);
  {
    auto* s = sample->add_subcommand("polya", "Polya urn label sequence");
    s->add_option("--alphas", cfg.alphas, "Comma-separated urn weights")->required();
    s->add_option("--n", cfg.n, "Sequence length")->required();
    add_seed(s);
    bind(s, cmd_sample_polya);
  }
  {
    auto* s = sample->add_subcommand("crp", "Chinese restaurant process partition of [n]");
    add_crp(s);
    s->add_option("--n", cfg.n, "Number of customers")->required();
    add_seed(s);
    bind(s, cmd_sample_crp);
  }
  {
    auto* s = sample->add_subcommand("gem", "Stick-breaking block weights");
    add_crp(s);
    s->add_option("--depth", cfg.depth, "Number of sticks")->required();
    s->add_flag("--ranked", cfg.ranked, "Sort weights non-increasing");
    add_seed(s);
    bind(s, cmd_sample_gem);
  }
  {
    auto* s = sample->add_subcommand("dirichlet", "Dirichlet vector");
    s->add_option("--alphas", cfg.alphas, "Comma-separated parameters")->required();
    s->add_option("--method", cfg.method, "gamma or stick");
    add_seed(s);
    bind(s, cmd_sample_dirichlet);
  }

  auto* pmf = app.add_subcommand("pmf", "Evaluate an exact law");
  pmf->require_subcommand(1);
  {
    auto* s = pmf->add_subcommand("polya-seq", "Probability of a label sequence");
    s->add_option("--alphas", cfg.alphas, "Comma-separated urn weights")->required();
    s->add_option("--seq", cfg.seq, "Comma-separated 1-based labels")->required();
    bind(s, cmd_pmf_polya_seq);
  }
  {
    auto* s = pmf->add_subcommand("polya-counts", "Probability of label counts");
    s->add_option("--alphas", cfg.alphas, "Comma-separated urn weights")->required();
    s->add_option("--counts", cfg.counts, "Comma-separated counts, one per label")->required();
    bind(s, cmd_pmf_polya_counts);
  }
  {
    auto* s = pmf->add_subcommand("ewens-pitman", "Probability of a partition");
    add_crp(s);
    s->add_option("--partition", cfg.partition, "JSON blocks, e.g. [[1,3],[2]]")->required();
    bind(s, cmd_pmf_ewens_pitman);
  }

  {
    auto* s = app.add_subcommand("blockweights", "Empirical block weights of a sampled partition");
    add_crp(s);
    s->add_option("--n", cfg.n, "Number of customers")->required();
    s->add_flag("--ranked", cfg.ranked, "Sort weights non-increasing");
    add_seed(s);
    bind(s, cmd_blockweights);
  }
  {
    auto* s = app.add_subcommand("rho", "k-point correlation density of the ranked weights");
    add_crp(s);
    s->add_option("--k", cfg.k, "Number of points")->required();
    s->add_option("--x", cfg.xs, "Comma-separated points")->required();
    bind(s, cmd_rho);
  }
  {
    auto* s = app.add_subcommand("blockcount", "Formal-set block-size count");
    add_crp(s);
    s->add_option("--n", cfg.n, "Number of customers")->required();
    s->add_option("--sizes", cfg.sizes, "Comma-separated block sizes")->required();
    bind(s, cmd_blockcount);
  }
  {
    auto* s = app.add_subcommand("verify", "Run a verification suite");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < exch_suite_count(); ++i) names.emplace_back(exch_suite_name(i));
    s->add_option("--suite", cfg.suite, "Suite name")->required()->check(CLI::IsMember(names));
    add_seed(s);
    bind(s, cmd_verify);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Output out(cfg);
    return command(cfg, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
  }
  return kExitUsage;
}
