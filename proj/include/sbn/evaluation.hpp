// Probabilities of trees under fitted parameters, KL divergence and exhaustive
// normalization checks.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sbn/counting.hpp"
#include "sbn/enumerate.hpp"
#include "sbn/params.hpp"
#include "sbn/rooting_layout.hpp"

namespace sbn {

// Product of the root split probability and every PCSP conditional; missing keys
// give zero.
double SbnProbRooted(const SbnParams &params, const RootedTopology &tree);

enum class JointMode {
  kNaive,    // root at every edge and evaluate each rooted tree separately
  kTwoPass,  // shared subtree products, linear in the number of edges
};

// log p(root on edge e, tree) for every edge, computed with the two-pass sweep.
std::vector<double> RootingLogJoints(const SbnParams &params, const RootingLayout &layout);
// p(root on edge e, tree) for every edge.
std::vector<double> RootingJoints(const SbnParams &params, const UnrootedTopology &tree,
                                  JointMode mode = JointMode::kTwoPass);

// Sum of the rooting joints.
double SbnProbUnrooted(const SbnParams &params, const UnrootedTopology &tree);
double SbnLogProbUnrooted(const SbnParams &params, const UnrootedTopology &tree);

// Rooted on the pendant edge of taxon 0, then the product of clade conditionals.
double CcdProb(const CcdParams &params, const UnrootedTopology &tree);
// Clade conditionals of a tree that is already rooted.
double CcdProbRooted(const CcdParams &params, const RootedTopology &tree);

double SrfProb(const SrfParams &params, const UnrootedTopology &tree);

// log(sum(exp(values))); -inf for an empty or all -inf input.
double LogSumExp(std::span<const double> values);

// sum_k w_k log p(T_k), plus alpha * (sum m~ log p) over root splits and PCSPs of
// `equivalent_counts` when alpha > 0. Returns -inf when a term has probability zero.
double LogLikelihood(const SbnParams &params, const UnrootedSample &trees, double alpha = 0.0,
                     const CountsTable *equivalent_counts = nullptr);
// The alpha-weighted prior term alone.
double RegularizationTerm(const SbnParams &params, double alpha,
                          const CountsTable &equivalent_counts);

using Evaluator = std::function<double(const UnrootedTopology &)>;
Evaluator MakeEvaluator(const SbnParams &params);
Evaluator MakeEvaluator(const CcdParams &params);
Evaluator MakeEvaluator(const SrfParams &params);

// A distribution over listed unrooted trees.
struct DiscreteDistribution {
  struct Entry {
    UnrootedTopology tree;
    double probability;
  };
  std::vector<Entry> entries;

  // Throws ValidationError on negative entries or a total outside 1 +- tolerance.
  void Validate(double tolerance = 1e-9) const;
  double Total() const;
};

enum class KlDirection { kEstimateToTarget, kTargetToEstimate };
enum class KlSupport { kTarget, kEstimate, kUnion };

struct KlOptions {
  KlDirection direction = KlDirection::kEstimateToTarget;
  // When positive, the second argument of the divergence is floored at this value
  // and renormalized over the support.
  double epsilon_floor = 0.0;
  KlSupport support = KlSupport::kTarget;
};

// KL divergence in nats. With estimate_to_target the sum runs over a = estimate,
// b = target; the other direction swaps them. Supports other than the target's list
// need `universe`, the enumerated tree space; without it UsageError is thrown.
double KlDivergence(const DiscreteDistribution &target, const Evaluator &estimate,
                    const KlOptions &options = {},
                    const std::vector<UnrootedTopology> *universe = nullptr);

enum class TreeSpace { kRooted, kUnrooted };

// Exhaustive sums over every topology on the parameters' taxa.
double NormalizationAudit(const SbnParams &params, TreeSpace space,
                          size_t cap = EnumerationCap());
double NormalizationAudit(const CcdParams &params, size_t cap = EnumerationCap());
double NormalizationAudit(const SrfParams &params, size_t cap = EnumerationCap());

}  // namespace sbn
