#include "sbn/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <thread>

#include "sbn/em.hpp"
#include "sbn/enumerate.hpp"
#include "sbn/errors.hpp"
#include "sbn/estimators.hpp"

namespace sbn {

namespace {

constexpr uint64_t kTargetStream = 1;
constexpr uint64_t kSampleStream = 2;

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string FormatSeconds(double seconds) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6f", seconds);
  return buffer;
}

}  // namespace

std::string MethodName(Method method) {
  switch (method) {
    case Method::kSrf: return "srf";
    case Method::kCcd: return "ccd";
    case Method::kSbnSa: return "sbn-sa";
    case Method::kSbnEm: return "sbn-em";
    case Method::kSbnEmAlpha: return "sbn-em-alpha";
  }
  throw InternalError("unknown method");
}

Method ParseMethod(const std::string &name) {
  for (Method m : {Method::kSrf, Method::kCcd, Method::kSbnSa, Method::kSbnEm,
                   Method::kSbnEmAlpha}) {
    if (MethodName(m) == name) return m;
  }
  throw UsageError("unknown method '" + name + "'");
}

double AlphaRule::For(size_t sample_size) const {
  if (fixed) return *fixed;
  return numerator / static_cast<double>(sample_size);
}

void ExperimentConfig::Validate(size_t cap) const {
  if (n_taxa < 4) throw ValidationError("simulations need at least 4 taxa");
  CheckEnumerable(n_taxa, cap);
  if (betas.empty() || sample_sizes.empty() || methods.empty()) {
    throw ValidationError("experiment grid is empty");
  }
  for (double beta : betas) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be positive");
  }
  for (size_t k : sample_sizes) {
    if (k == 0) throw ValidationError("sample sizes must be positive");
  }
  if (replicates == 0) throw ValidationError("replicates must be at least 1");
  if (alpha_rule.fixed && !(*alpha_rule.fixed >= 0.0)) {
    throw ValidationError("alpha must be nonnegative");
  }
  if (!(alpha_rule.numerator >= 0.0)) throw ValidationError("alpha must be nonnegative");
  if (threads == 0) throw ValidationError("threads must be positive");
}

std::vector<double> DirichletWeights(size_t m, double beta, Rng &rng) {
  if (m < 2) throw UsageError("a Dirichlet target needs at least two categories");
  if (!(beta > 0.0)) throw UsageError("beta must be positive");
  // Small shapes put most Gamma variates far below the double range, so work with
  // logs and normalize against the largest.
  std::vector<double> weights(m);
  for (auto &w : weights) w = rng.LogGamma(beta);
  const double top = *std::max_element(weights.begin(), weights.end());
  double total = 0.0;
  for (auto &w : weights) {
    w = std::exp(w - top);
    total += w;
  }
  for (auto &w : weights) {
    w = std::max(w / total, std::numeric_limits<double>::min());
  }
  return weights;
}

DiscreteDistribution DirichletTarget(const std::vector<UnrootedTopology> &trees, double beta,
                                     Rng &rng) {
  const auto weights = DirichletWeights(trees.size(), beta, rng);
  DiscreteDistribution target;
  target.entries.reserve(trees.size());
  for (size_t i = 0; i < trees.size(); ++i) target.entries.push_back({trees[i], weights[i]});
  return target;
}

UnrootedSample SampleTrees(const DiscreteDistribution &target, size_t sample_size, Rng &rng) {
  if (sample_size == 0) throw UsageError("sample size must be positive");
  if (target.entries.empty()) throw UsageError("target is empty");
  std::vector<double> cumulative(target.entries.size());
  double running = 0.0;
  for (size_t i = 0; i < target.entries.size(); ++i) {
    running += target.entries[i].probability;
    cumulative[i] = running;
  }
  std::vector<size_t> counts(target.entries.size(), 0);
  for (size_t k = 0; k < sample_size; ++k) {
    const double u = rng.Uniform01() * running;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    ++counts[static_cast<size_t>(it - cumulative.begin())];
  }
  UnrootedSample sample;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) {
      sample.push_back({target.entries[i].tree, static_cast<double>(counts[i])});
    }
  }
  return sample;
}

double FitAndScore(Method method, const UnrootedSample &sample,
                   const DiscreteDistribution &target, const ExperimentConfig &config,
                   double *fit_seconds, const std::vector<UnrootedTopology> *universe) {
  double total = 0.0;
  for (const auto &entry : sample) total += entry.weight;
  const auto sample_size = static_cast<size_t>(std::llround(total));

  EmConfig em;
  em.max_iters = config.em_max_iters;
  em.rel_tol = config.em_rel_tol;
  if (method == Method::kSbnEmAlpha) em.alpha = config.alpha_rule.For(sample_size);

  const auto start = std::chrono::steady_clock::now();
  auto stop_clock = [&] {
    if (fit_seconds != nullptr) {
      *fit_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  switch (method) {
    case Method::kSrf: {
      const auto params = FitSrf(sample);
      stop_clock();
      return KlDivergence(target, MakeEvaluator(params), config.kl, universe);
    }
    case Method::kCcd: {
      const auto params = FitCcd(sample);
      stop_clock();
      return KlDivergence(target, MakeEvaluator(params), config.kl, universe);
    }
    case Method::kSbnSa: {
      const auto params = FitSa(sample);
      stop_clock();
      return KlDivergence(target, MakeEvaluator(params), config.kl, universe);
    }
    case Method::kSbnEm:
    case Method::kSbnEmAlpha: {
      const auto result = FitEm(sample, em);
      stop_clock();
      return KlDivergence(target, MakeEvaluator(result.params), config.kl, universe);
    }
  }
  throw InternalError("unknown method");
}

ResultTable RunExperiment(const ExperimentConfig &config) {
  config.Validate();
  const auto taxa = std::make_shared<const TaxonSet>(TaxonSet::Numbered(config.n_taxa));
  const auto universe = EnumerateUnrooted(taxa);
  // Supports other than the target list need the whole space.
  const bool needs_universe = config.kl.support != KlSupport::kTarget;

  struct Cell {
    double beta;
    size_t sample_size;
    size_t replicate;
  };
  std::vector<Cell> cells;
  for (double beta : config.betas) {
    for (size_t k : config.sample_sizes) {
      for (size_t r = 0; r < config.replicates; ++r) cells.push_back({beta, k, r});
    }
  }

  const size_t per_cell = config.methods.size();
  ResultTable table;
  table.rows.resize(cells.size() * per_cell);

  auto run_cell = [&](size_t c) {
    const Cell &cell = cells[c];
    const uint64_t beta_bits = std::bit_cast<uint64_t>(cell.beta);
    Rng target_rng =
        Rng::Stream(config.seed, {kTargetStream, beta_bits, cell.sample_size, cell.replicate});
    Rng sample_rng =
        Rng::Stream(config.seed, {kSampleStream, beta_bits, cell.sample_size, cell.replicate});
    const auto target = DirichletTarget(universe, cell.beta, target_rng);
    const auto sample = SampleTrees(target, cell.sample_size, sample_rng);
    for (size_t m = 0; m < per_cell; ++m) {
      ResultRow &row = table.rows[c * per_cell + m];
      row = {config.methods[m], cell.beta, cell.sample_size, cell.replicate, NAN, 0.0, {}};
      try {
        row.kl = FitAndScore(config.methods[m], sample, target, config, &row.fit_seconds,
                             needs_universe ? &universe : nullptr);
      } catch (const std::exception &error) {
        row.kl = NAN;
        row.error = error.what();
      }
    }
  };

  if (config.threads <= 1) {
    for (size_t c = 0; c < cells.size(); ++c) run_cell(c);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    for (size_t t = 0; t < std::min(config.threads, cells.size()); ++t) {
      workers.emplace_back([&] {
        for (size_t c = next++; c < cells.size(); c = next++) run_cell(c);
      });
    }
    for (auto &worker : workers) worker.join();
  }
  return table;
}

void ResultTable::WriteCsv(std::ostream &out, bool with_timing) const {
  out << "method,beta,K,replicate,kl,fit_seconds\n";
  for (const auto &row : rows) {
    out << MethodName(row.method) << ',' << FormatNumber(row.beta) << ',' << row.sample_size
        << ',' << row.replicate << ',' << FormatNumber(row.kl) << ','
        << FormatSeconds(with_timing ? row.fit_seconds : 0.0) << '\n';
  }
}

void ResultTable::WriteSummaryCsv(std::ostream &out, bool with_timing) const {
  struct Acc {
    std::vector<double> kl;
    double seconds = 0.0;
  };
  // Keeps the first-seen order of (method, beta, K).
  std::vector<std::tuple<Method, double, size_t>> order;
  std::map<std::tuple<int, double, size_t>, Acc> groups;
  for (const auto &row : rows) {
    const auto key = std::make_tuple(static_cast<int>(row.method), row.beta, row.sample_size);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.emplace_back(row.method, row.beta, row.sample_size);
    it->second.kl.push_back(row.kl);
    it->second.seconds += row.fit_seconds;
  }
  out << "method,beta,K,replicates,mean_kl,sd_kl,mean_fit_seconds\n";
  for (const auto &[method, beta, k] : order) {
    const auto &acc = groups.at({static_cast<int>(method), beta, k});
    const auto n = static_cast<double>(acc.kl.size());
    double mean = 0.0;
    for (double v : acc.kl) mean += v;
    mean /= n;
    double sd = 0.0;
    if (acc.kl.size() > 1) {
      for (double v : acc.kl) sd += (v - mean) * (v - mean);
      sd = std::sqrt(sd / (n - 1.0));
    }
    out << MethodName(method) << ',' << FormatNumber(beta) << ',' << k << ',' << acc.kl.size()
        << ',' << FormatNumber(mean) << ',' << FormatNumber(sd) << ','
        << FormatSeconds(with_timing ? acc.seconds / n : 0.0) << '\n';
  }
}

}  // namespace sbn
