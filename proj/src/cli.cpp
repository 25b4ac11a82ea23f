#include "sbn/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "sbn/em.hpp"
#include "sbn/enumerate.hpp"
#include "sbn/errors.hpp"
#include "sbn/estimators.hpp"
#include "sbn/newick.hpp"
#include "sbn/param_file.hpp"
#include "sbn/simulation.hpp"
#include "sbn/tree_file.hpp"

namespace sbn {

namespace {

std::string Number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::ifstream OpenInput(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return in;
}

// Trees resolved against a fixed taxon set. A tree over other taxa is a validation
// failure rather than a syntax error.
TreeSample LoadTreesFor(const std::string &path, const TaxonSetPtr &taxa) {
  auto in = OpenInput(path);
  std::vector<std::string> expected = taxa->Names();
  std::sort(expected.begin(), expected.end());
  TreeSample sample;
  sample.taxa = taxa;
  for (const auto &record : ReadTreeRecords(in)) {
    const NewickNode syntax = ParseNewickSyntax(record.newick, record.line, record.column);
    auto names = LeafNames(syntax);
    std::sort(names.begin(), names.end());
    if (names != expected) {
      throw ValidationError("line " + std::to_string(record.line) +
                            ": tree taxa do not match the parameter taxa");
    }
    sample.trees.push_back({ToTopology(syntax, taxa), record.weight});
    sample.texts.push_back(record.newick);
  }
  return sample;
}

// Lines of "<probability><TAB><newick>".
DiscreteDistribution LoadTarget(const std::string &path, const TaxonSetPtr &taxa) {
  auto in = OpenInput(path);
  DiscreteDistribution target;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError("expected '<probability><TAB><newick>'", number, 1);
    }
    const std::string text = line.substr(0, tab);
    double p = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
      throw ParseError("invalid probability '" + text + "'", number, 1);
    }
    const NewickNode syntax = ParseNewickSyntax(line.substr(tab + 1), number, tab + 2);
    auto names = LeafNames(syntax);
    auto expected = taxa->Names();
    std::sort(names.begin(), names.end());
    std::sort(expected.begin(), expected.end());
    if (names != expected) {
      throw ValidationError("line " + std::to_string(number) +
                            ": target taxa do not match the parameter taxa");
    }
    target.entries.push_back({AsUnrooted(ToTopology(syntax, taxa)), p});
  }
  if (target.entries.empty()) throw ValidationError("target distribution is empty");
  for (const auto &entry : target.entries) {
    if (!(entry.probability >= 0.0)) throw ValidationError("negative target probability");
  }
  const double total = target.Total();
  if (std::abs(total - 1.0) > 1e-6) {
    throw ValidationError("target probabilities sum to " + Number(total) + ", not 1");
  }
  return target;
}

struct KlFlags {
  std::string direction = "estimate-to-target";
  std::string support = "target";
  double floor = 0.0;

  void Add(CLI::App &app) {
    app.add_option("--direction", direction, "estimate-to-target or target-to-estimate")
        ->check(CLI::IsMember({"estimate-to-target", "target-to-estimate"}));
    app.add_option("--support", support, "Trees summed over")
        ->check(CLI::IsMember({"target", "estimate", "union"}));
    app.add_option("--floor", floor, "Floor on the second argument, below 1e-3");
  }

  KlOptions Options() const {
    KlOptions options;
    options.direction = direction == "estimate-to-target" ? KlDirection::kEstimateToTarget
                                                          : KlDirection::kTargetToEstimate;
    options.support = support == "target"     ? KlSupport::kTarget
                      : support == "estimate" ? KlSupport::kEstimate
                                              : KlSupport::kUnion;
    options.epsilon_floor = floor;
    return options;
  }
};

size_t CapFrom(const std::optional<size_t> &cap) { return cap ? *cap : EnumerationCap(); }

struct FitFlags {
  std::string trees;
  std::string method;
  std::string output;
  double alpha = 0.0;
  size_t max_iters = 200;
  double rel_tol = 1e-6;
  std::string init = "sa";
  bool trace = false;
};

int Fit(const FitFlags &flags, std::ostream &out) {
  if (flags.method != "sbn-em" && flags.alpha != 0.0) {
    throw UsageError("--alpha applies to sbn-em only");
  }
  const TreeSample sample = LoadTreeSampleFile(flags.trees);
  if (sample.trees.empty()) throw ValidationError("tree sample is empty");
  double total = 0.0;
  for (const auto &tree : sample.trees) total += tree.weight;
  out << "trees=" << Number(total) << '\n';
  out << "distinct_records=" << sample.trees.size() << '\n';
  out << "taxa=" << (sample.taxa ? sample.taxa->Size() : 0) << '\n';

  auto write = [&](const AnyParams &params) {
    if (!flags.output.empty()) WriteParamsFile(flags.output, params);
  };
  auto summarize = [&](const SbnParams &params) {
    out << "root_splits=" << params.RootDistribution().size() << '\n';
    out << "pcsps=" << params.Conditionals().size() << '\n';
  };

  if (flags.method == "srf") {
    auto params = FitSrf(ToUnrootedSample(sample));
    out << "topologies=" << params.Frequencies().size() << '\n';
    write(params);
  } else if (flags.method == "ccd") {
    auto params = FitCcd(ToUnrootedSample(sample));
    size_t splits = 0;
    for (const auto &[clade, dist] : params.Distributions()) splits += dist.size();
    out << "clades=" << params.Distributions().size() << '\n';
    out << "clade_splits=" << splits << '\n';
    write(params);
  } else if (flags.method == "sbn-ml") {
    auto params = FitMlRooted(ToRootedSample(sample));
    summarize(params);
    write(params);
  } else if (flags.method == "sbn-sa") {
    const auto trees = ToUnrootedSample(sample);
    auto params = FitSa(trees);
    summarize(params);
    out << "log_likelihood=" << Number(LogLikelihood(params, trees)) << '\n';
    write(params);
  } else {
    EmConfig config;
    config.alpha = flags.alpha;
    config.max_iters = flags.max_iters;
    config.rel_tol = flags.rel_tol;
    config.init = flags.init == "sa" ? EmInit::kSa : EmInit::kUniform;
    auto result = FitEm(ToUnrootedSample(sample), config);
    summarize(result.params);
    const auto &diag = result.diagnostics;
    out << "alpha=" << Number(flags.alpha) << '\n';
    out << "iterations=" << diag.iterations << '\n';
    out << "converged=" << (diag.converged ? "true" : "false") << '\n';
    out << "zero_support_trees=" << diag.zero_support_trees << '\n';
    out << "log_likelihood=" << Number(diag.log_likelihoods.back()) << '\n';
    if (flags.trace) {
      for (size_t i = 0; i < diag.log_likelihoods.size(); ++i) {
        out << "trace[" << i << "]=" << Number(diag.log_likelihoods[i]) << '\n';
      }
    }
    write(result.params);
  }
  return kExitOk;
}

struct SimulateFlags {
  size_t n_taxa = 8;
  std::vector<double> betas = {0.01, 0.05, 0.1, 0.2};
  std::vector<size_t> sizes = {250, 1000, 4000, 16000};
  std::vector<std::string> methods = {"srf", "ccd", "sbn-sa", "sbn-em", "sbn-em-alpha"};
  size_t replicates = 10;
  uint64_t seed = 1;
  std::optional<double> alpha;
  double alpha_numerator = 50.0;
  size_t max_iters = 200;
  double rel_tol = 1e-6;
  size_t threads = 1;
  std::string output;
  std::string summary;
  bool no_timing = false;
  KlFlags kl;
};

void WriteTextFile(const std::string &path, const std::string &text) {
  std::ofstream file(path);
  if (!file) throw ValidationError("cannot write '" + path + "'");
  file << text;
}

int Simulate(const SimulateFlags &flags, const std::optional<size_t> &cap, std::ostream &out) {
  ExperimentConfig config;
  config.n_taxa = flags.n_taxa;
  config.betas = flags.betas;
  config.sample_sizes = flags.sizes;
  config.methods.clear();
  for (const auto &name : flags.methods) config.methods.push_back(ParseMethod(name));
  config.replicates = flags.replicates;
  config.seed = flags.seed;
  config.alpha_rule.fixed = flags.alpha;
  config.alpha_rule.numerator = flags.alpha_numerator;
  config.kl = flags.kl.Options();
  config.em_max_iters = flags.max_iters;
  config.em_rel_tol = flags.rel_tol;
  config.threads = flags.threads;
  config.Validate(CapFrom(cap));

  const ResultTable table = RunExperiment(config);
  std::ostringstream csv;
  table.WriteCsv(csv, !flags.no_timing);
  if (flags.output.empty()) {
    out << csv.str();
  } else {
    WriteTextFile(flags.output, csv.str());
  }
  if (!flags.summary.empty()) {
    std::ostringstream summary;
    table.WriteSummaryCsv(summary, !flags.no_timing);
    WriteTextFile(flags.summary, summary.str());
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Subsplit Bayesian network estimators for tree topology distributions", "sbn"};
  app.require_subcommand(1);
  std::optional<size_t> cap;
  app.add_option("--cap", cap, "Largest taxon count for enumeration (default 10 or SBN_ENUM_CAP)");

  FitFlags fit;
  auto *fit_cmd = app.add_subcommand("fit", "Fit an estimator to a tree sample");
  fit_cmd->add_option("trees", fit.trees, "Tree file")->required();
  fit_cmd->add_option("-m,--method", fit.method, "srf, ccd, sbn-ml, sbn-sa or sbn-em")
      ->required()
      ->check(CLI::IsMember({"srf", "ccd", "sbn-ml", "sbn-sa", "sbn-em"}));
  fit_cmd->add_option("-o,--output", fit.output, "Parameter file to write");
  fit_cmd->add_option("--alpha", fit.alpha, "Regularization coefficient (sbn-em)")
      ->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--max-iters", fit.max_iters, "EM iteration limit")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--rel-tol", fit.rel_tol, "EM stopping tolerance per unit weight")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--init", fit.init, "EM initialization")
      ->check(CLI::IsMember({"sa", "uniform"}));
  fit_cmd->add_flag("--trace", fit.trace, "Print the EM objective after every iteration");

  std::string params_path, trees_path, target_path;
  auto *eval_cmd = app.add_subcommand("eval", "Probability of each tree in a file");
  eval_cmd->add_option("params", params_path, "Parameter file")->required();
  eval_cmd->add_option("trees", trees_path, "Tree file")->required();

  KlFlags kl;
  auto *kl_cmd = app.add_subcommand("kl", "KL divergence between a target and an estimate");
  kl_cmd->add_option("target", target_path, "Target file of '<prob><TAB><newick>' lines")
      ->required();
  kl_cmd->add_option("params", params_path, "Parameter file")->required();
  kl.Add(*kl_cmd);

  std::string space = "unrooted";
  auto *audit_cmd = app.add_subcommand("audit", "Total probability over the whole tree space");
  audit_cmd->add_option("params", params_path, "Parameter file")->required();
  audit_cmd->add_option("--space", space, "rooted or unrooted (SBN files only)")
      ->check(CLI::IsMember({"rooted", "unrooted"}));

  SimulateFlags sim;
  auto *sim_cmd = app.add_subcommand("simulate", "Run the simulated-data experiment");
  sim_cmd->add_option("--n-taxa", sim.n_taxa, "Number of taxa");
  sim_cmd->add_option("--betas", sim.betas, "Dirichlet concentrations")->delimiter(',');
  sim_cmd->add_option("--sizes", sim.sizes, "Sample sizes K")->delimiter(',');
  sim_cmd->add_option("--methods", sim.methods, "Estimators")
      ->delimiter(',')
      ->check(CLI::IsMember({"srf", "ccd", "sbn-sa", "sbn-em", "sbn-em-alpha"}));
  sim_cmd->add_option("--replicates", sim.replicates, "Replicates per cell");
  sim_cmd->add_option("--seed", sim.seed, "Base seed");
  sim_cmd->add_option("--alpha", sim.alpha, "Fixed alpha for sbn-em-alpha");
  sim_cmd->add_option("--alpha-numerator", sim.alpha_numerator,
                      "sbn-em-alpha uses this divided by K unless --alpha is given");
  sim_cmd->add_option("--max-iters", sim.max_iters, "EM iteration limit")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--rel-tol", sim.rel_tol, "EM stopping tolerance")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--threads", sim.threads, "Worker threads");
  sim_cmd->add_option("-o,--output", sim.output, "CSV file (default standard output)");
  sim_cmd->add_option("--summary", sim.summary, "Per-cell mean and standard deviation CSV");
  sim_cmd->add_flag("--no-timing", sim.no_timing, "Write zero fit times for reproducible output");
  sim.kl.Add(*sim_cmd);

  size_t n = 0;
  bool count_only = false, rooted = false;
  auto *enum_cmd = app.add_subcommand("enumerate", "List every topology on n taxa");
  enum_cmd->add_option("-n,--n", n, "Number of taxa")->required();
  enum_cmd->add_flag("--count-only", count_only, "Print the number of topologies only");
  enum_cmd->add_flag("--rooted", rooted, "Rooted rather than unrooted topologies");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (fit_cmd->parsed()) return Fit(fit, out);
    if (eval_cmd->parsed()) {
      const AnyParams params = ReadParamsFile(params_path);
      const TreeSample sample = LoadTreesFor(trees_path, TaxaOf(params));
      const Evaluator evaluate = MakeEvaluator(params);
      for (size_t i = 0; i < sample.trees.size(); ++i) {
        const UnrootedTopology tree = AsUnrooted(sample.trees[i].tree);
        out << Number(evaluate(tree)) << '\t' << sample.texts[i] << '\n';
      }
      return kExitOk;
    }
    if (kl_cmd->parsed()) {
      const AnyParams params = ReadParamsFile(params_path);
      const DiscreteDistribution target = LoadTarget(target_path, TaxaOf(params));
      const KlOptions options = kl.Options();
      std::vector<UnrootedTopology> universe;
      if (options.support != KlSupport::kTarget) {
        universe = EnumerateUnrooted(TaxaOf(params), CapFrom(cap));
      }
      out << Number(KlDivergence(target, MakeEvaluator(params), options,
                                 options.support == KlSupport::kTarget ? nullptr : &universe))
          << '\n';
      return kExitOk;
    }
    if (audit_cmd->parsed()) {
      const AnyParams params = ReadParamsFile(params_path);
      double total = 0.0;
      if (const auto *sbn = std::get_if<SbnParams>(&params)) {
        total = NormalizationAudit(
            *sbn, space == "rooted" ? TreeSpace::kRooted : TreeSpace::kUnrooted, CapFrom(cap));
      } else if (const auto *ccd = std::get_if<CcdParams>(&params)) {
        total = NormalizationAudit(*ccd, CapFrom(cap));
      } else {
        total = NormalizationAudit(std::get<SrfParams>(params), CapFrom(cap));
      }
      out << Number(total) << '\n';
      return kExitOk;
    }
    if (sim_cmd->parsed()) return Simulate(sim, cap, out);
    if (enum_cmd->parsed()) {
      CheckEnumerable(n, CapFrom(cap));
      const auto taxa = std::make_shared<const TaxonSet>(TaxonSet::Numbered(n));
      if (count_only) {
        out << (rooted ? RootedTreeCount(n) : UnrootedTreeCount(n)) << '\n';
      } else if (rooted) {
        ForEachRooted(taxa, [&](const RootedTopology &t) { out << WriteNewick(t) << '\n'; },
                      CapFrom(cap));
      } else {
        ForEachUnrooted(taxa, [&](const UnrootedTopology &t) { out << WriteNewick(t) << '\n'; },
                        CapFrom(cap));
      }
      return kExitOk;
    }
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError &e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const UsageError &e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IncompatibleError &e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InvalidSubsplitError &e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace sbn
