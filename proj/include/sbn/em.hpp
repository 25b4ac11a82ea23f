// Expectation maximization over the unknown root placements of unrooted trees, with
// optional Dirichlet-style regularization toward equivalent counts.

#pragma once

#include <optional>
#include <vector>

#include "sbn/counting.hpp"
#include "sbn/params.hpp"

namespace sbn {

enum class EmInit {
  kSa,       // simple-average estimates
  kUniform,  // uniform within every group of the observed support
  kExplicit  // EmConfig::initial
};

struct EmConfig {
  double alpha = 0.0;
  size_t max_iters = 200;
  // Stop once the objective changes by less than rel_tol per unit of sample weight.
  double rel_tol = 1e-6;
  EmInit init = EmInit::kSa;
  std::optional<SbnParams> initial;
  // Equivalent counts m~ for the regularizer. Defaults to the SA counts of the sample.
  std::optional<CountsTable> equivalent_counts;

  void Validate() const;
};

struct EmDiagnostics {
  // Objective (log-likelihood plus regularizer) of the initial parameters followed by
  // one value per iteration.
  std::vector<double> log_likelihoods;
  size_t iterations = 0;
  // Trees with zero probability under the final parameters.
  size_t zero_support_trees = 0;
  bool converged = false;
};

struct EmResult {
  SbnParams params;
  EmDiagnostics diagnostics;
};

// Throws InternalError if the objective decreases by more than 1e-8 per unit of
// sample weight, which can only come from a defect.
EmResult FitEm(const UnrootedSample &trees, const EmConfig &config = {});

}  // namespace sbn
