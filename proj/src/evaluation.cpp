#include "sbn/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "sbn/errors.hpp"
#include "sbn/newick.hpp"

namespace sbn {

namespace {

void CheckTaxa(const TaxonSetPtr &params_taxa, const TaxonSetPtr &tree_taxa) {
  if (!SameTaxa(params_taxa, tree_taxa)) {
    throw ValidationError("tree and parameters use different taxon sets");
  }
}

double SafeLog(double p) { return p > 0.0 ? std::log(p) : -INFINITY; }

}  // namespace

double SbnProbRooted(const SbnParams &params, const RootedTopology &tree) {
  CheckTaxa(params.Taxa(), tree.Taxa());
  const auto decomposition = DecomposeRooted(tree);
  double p = params.Root(decomposition.root_split);
  for (const auto &pcsp : decomposition.pcsps) {
    if (p == 0.0) break;
    p *= params.Conditional(pcsp);
  }
  return p;
}

std::vector<double> RootingLogJoints(const SbnParams &params, const RootingLayout &layout) {
  return layout.LogJoints(
      [&](size_t e) { return SafeLog(params.Root(layout.EdgeSplit(e))); },
      [&](size_t d) { return SafeLog(params.Conditional(layout.AdjacentPcsp(d))); },
      [&](size_t d, size_t c) { return SafeLog(params.Conditional(layout.ChildPcsp(d, c))); });
}

std::vector<double> RootingJoints(const SbnParams &params, const UnrootedTopology &tree,
                                  JointMode mode) {
  CheckTaxa(params.Taxa(), tree.Taxa());
  std::vector<double> joints(tree.EdgeCount());
  if (mode == JointMode::kNaive) {
    for (size_t e = 0; e < tree.EdgeCount(); ++e) {
      joints[e] = SbnProbRooted(params, RootAtEdge(tree, e));
    }
    return joints;
  }
  const auto log_joints = RootingLogJoints(params, RootingLayout(tree));
  for (size_t e = 0; e < joints.size(); ++e) joints[e] = std::exp(log_joints[e]);
  return joints;
}

double SbnProbUnrooted(const SbnParams &params, const UnrootedTopology &tree) {
  double total = 0.0;
  for (double joint : RootingJoints(params, tree)) total += joint;
  return total;
}

double SbnLogProbUnrooted(const SbnParams &params, const UnrootedTopology &tree) {
  CheckTaxa(params.Taxa(), tree.Taxa());
  return LogSumExp(RootingLogJoints(params, RootingLayout(tree)));
}

double CcdProbRooted(const CcdParams &params, const RootedTopology &tree) {
  CheckTaxa(params.Taxa(), tree.Taxa());
  double p = 1.0;
  for (const auto &split : CladeSplits(tree)) {
    p *= params.Probability(split);
    if (p == 0.0) break;
  }
  return p;
}

double CcdProb(const CcdParams &params, const UnrootedTopology &tree) {
  // Edge 0 is the pendant edge of taxon 0.
  return CcdProbRooted(params, RootAtEdge(tree, 0));
}

double SrfProb(const SrfParams &params, const UnrootedTopology &tree) {
  CheckTaxa(params.Taxa(), tree.Taxa());
  return params.Probability(TreeIdOf(tree));
}

double LogSumExp(std::span<const double> values) {
  double max = -INFINITY;
  for (double v : values) max = std::max(max, v);
  if (max == -INFINITY) return -INFINITY;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max);
  return max + std::log(sum);
}

double RegularizationTerm(const SbnParams &params, double alpha,
                          const CountsTable &equivalent_counts) {
  if (alpha == 0.0) return 0.0;
  double term = 0.0;
  for (const auto &[split, m] : equivalent_counts.root_counts) {
    if (m > 0.0) term += alpha * m * SafeLog(params.Root(split));
  }
  for (const auto &[pcsp, m] : equivalent_counts.pcsp_counts) {
    if (m > 0.0) term += alpha * m * SafeLog(params.Conditional(pcsp));
  }
  return term;
}

double LogLikelihood(const SbnParams &params, const UnrootedSample &trees, double alpha,
                     const CountsTable *equivalent_counts) {
  if (alpha < 0.0) throw UsageError("alpha must be nonnegative");
  double total = 0.0;
  for (const auto &[tree, weight] : trees) {
    if (!(weight > 0.0)) throw ValidationError("tree weights must be positive");
    total += weight * SbnLogProbUnrooted(params, tree);
  }
  if (alpha > 0.0) {
    if (equivalent_counts == nullptr) {
      throw UsageError("regularized likelihood needs equivalent counts");
    }
    total += RegularizationTerm(params, alpha, *equivalent_counts);
  }
  return total;
}

Evaluator MakeEvaluator(const SbnParams &params) {
  return [&params](const UnrootedTopology &tree) { return SbnProbUnrooted(params, tree); };
}

Evaluator MakeEvaluator(const CcdParams &params) {
  return [&params](const UnrootedTopology &tree) { return CcdProb(params, tree); };
}

Evaluator MakeEvaluator(const SrfParams &params) {
  return [&params](const UnrootedTopology &tree) { return SrfProb(params, tree); };
}

double DiscreteDistribution::Total() const {
  double total = 0.0;
  for (const auto &entry : entries) total += entry.probability;
  return total;
}

void DiscreteDistribution::Validate(double tolerance) const {
  for (const auto &entry : entries) {
    if (!(entry.probability >= 0.0)) throw ValidationError("negative target probability");
  }
  const double total = Total();
  if (std::abs(total - 1.0) > tolerance) {
    throw ValidationError("target probabilities sum to " + std::to_string(total));
  }
}

double KlDivergence(const DiscreteDistribution &target, const Evaluator &estimate,
                    const KlOptions &options, const std::vector<UnrootedTopology> *universe) {
  if (!(options.epsilon_floor >= 0.0) || options.epsilon_floor >= 1e-3) {
    throw UsageError("epsilon floor must lie in [0, 1e-3)");
  }
  struct Term {
    double target;
    double estimate;
  };
  std::vector<Term> terms;
  if (options.support == KlSupport::kTarget) {
    for (const auto &entry : target.entries) {
      terms.push_back({entry.probability, estimate(entry.tree)});
    }
  } else {
    if (universe == nullptr) {
      throw UsageError("KL support other than the target needs the enumerated tree space");
    }
    std::unordered_map<TreeId, double> target_by_id;
    for (const auto &entry : target.entries) target_by_id[TreeIdOf(entry.tree)] += entry.probability;
    for (const auto &tree : *universe) {
      const double q = estimate(tree);
      auto it = target_by_id.find(TreeIdOf(tree));
      const double p = it == target_by_id.end() ? 0.0 : it->second;
      if (it != target_by_id.end()) target_by_id.erase(it);
      const bool in_support =
          options.support == KlSupport::kEstimate ? q > 0.0 : (q > 0.0 || p > 0.0);
      if (in_support) terms.push_back({p, q});
    }
    // Listed target trees outside the universe still belong to the union.
    if (options.support == KlSupport::kUnion) {
      for (const auto &entry : target.entries) {
        if (target_by_id.count(TreeIdOf(entry.tree)) != 0) {
          terms.push_back({entry.probability, estimate(entry.tree)});
        }
      }
    }
  }

  const bool estimate_first = options.direction == KlDirection::kEstimateToTarget;
  double floor_total = 0.0;
  if (options.epsilon_floor > 0.0) {
    for (const auto &term : terms) {
      floor_total += std::max(estimate_first ? term.target : term.estimate, options.epsilon_floor);
    }
  }
  double kl = 0.0;
  for (const auto &term : terms) {
    const double a = estimate_first ? term.estimate : term.target;
    double b = estimate_first ? term.target : term.estimate;
    if (options.epsilon_floor > 0.0) b = std::max(b, options.epsilon_floor) / floor_total;
    if (a <= 0.0) continue;
    if (b <= 0.0) return INFINITY;
    kl += a * std::log(a / b);
  }
  return kl;
}

double NormalizationAudit(const SbnParams &params, TreeSpace space, size_t cap) {
  double total = 0.0;
  if (space == TreeSpace::kRooted) {
    ForEachRooted(
        params.Taxa(), [&](const RootedTopology &tree) { total += SbnProbRooted(params, tree); },
        cap);
  } else {
    ForEachUnrooted(
        params.Taxa(),
        [&](const UnrootedTopology &tree) { total += SbnProbUnrooted(params, tree); }, cap);
  }
  return total;
}

double NormalizationAudit(const CcdParams &params, size_t cap) {
  double total = 0.0;
  ForEachUnrooted(
      params.Taxa(), [&](const UnrootedTopology &tree) { total += CcdProb(params, tree); }, cap);
  return total;
}

double NormalizationAudit(const SrfParams &params, size_t cap) {
  double total = 0.0;
  ForEachUnrooted(
      params.Taxa(), [&](const UnrootedTopology &tree) { total += SrfProb(params, tree); }, cap);
  return total;
}

}  // namespace sbn
