// Simulated experiments: Dirichlet targets over the enumerated unrooted tree space,
// multinomial samples from them, and KL tables for every estimator.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sbn/enumerate.hpp"
#include "sbn/evaluation.hpp"
#include "sbn/random.hpp"

namespace sbn {

enum class Method { kSrf, kCcd, kSbnSa, kSbnEm, kSbnEmAlpha };

std::string MethodName(Method method);
// Accepts "srf", "ccd", "sbn-sa", "sbn-em" and "sbn-em-alpha"; throws UsageError
// otherwise.
Method ParseMethod(const std::string &name);

// Regularization strength for sbn-em-alpha: `fixed` if set, else numerator / K.
struct AlphaRule {
  std::optional<double> fixed;
  double numerator = 50.0;

  double For(size_t sample_size) const;
};

struct ExperimentConfig {
  size_t n_taxa = 8;
  std::vector<double> betas = {0.01, 0.05, 0.1, 0.2};
  std::vector<size_t> sample_sizes = {250, 1000, 4000, 16000};
  std::vector<Method> methods = {Method::kSrf, Method::kCcd, Method::kSbnSa, Method::kSbnEm,
                                 Method::kSbnEmAlpha};
  size_t replicates = 10;
  uint64_t seed = 1;
  AlphaRule alpha_rule;
  KlOptions kl;
  size_t em_max_iters = 200;
  double em_rel_tol = 1e-6;
  size_t threads = 1;

  // Throws ValidationError for an empty grid, nonpositive beta or K, zero replicates,
  // or a taxon count outside 4..cap.
  void Validate(size_t cap = EnumerationCap()) const;
};

struct ResultRow {
  Method method;
  double beta;
  size_t sample_size;
  size_t replicate;
  double kl;
  double fit_seconds;
  std::string error;  // nonempty if fitting or evaluation failed; kl is NaN then
};

struct ResultTable {
  std::vector<ResultRow> rows;

  // Header "method,beta,K,replicate,kl,fit_seconds". Without timing every
  // fit_seconds is written as 0 so that the output is reproducible byte for byte.
  void WriteCsv(std::ostream &out, bool with_timing = true) const;
  // One line per (method, beta, K) with mean and sample standard deviation over
  // replicates.
  void WriteSummaryCsv(std::ostream &out, bool with_timing = true) const;
};

// Normalized independent Gamma(beta, 1) draws. Components too small to represent are
// raised to the smallest normal double so the vector stays strictly positive.
std::vector<double> DirichletWeights(size_t m, double beta, Rng &rng);
DiscreteDistribution DirichletTarget(const std::vector<UnrootedTopology> &trees, double beta,
                                     Rng &rng);

// K multinomial draws, returned as distinct trees with their counts in target order.
UnrootedSample SampleTrees(const DiscreteDistribution &target, size_t sample_size, Rng &rng);

// Fits `method` to `sample` and returns its KL divergence against `target`.
// `universe` is needed for KL supports other than the target list.
double FitAndScore(Method method, const UnrootedSample &sample,
                   const DiscreteDistribution &target, const ExperimentConfig &config,
                   double *fit_seconds = nullptr,
                   const std::vector<UnrootedTopology> *universe = nullptr);

// Rows are ordered by beta, K, replicate and method as configured. Every cell draws
// its target and sample from streams derived from (seed, beta, K, replicate), so the
// table depends on nothing but the configuration.
ResultTable RunExperiment(const ExperimentConfig &config);

}  // namespace sbn
