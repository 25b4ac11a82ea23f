#include "sbn/estimators.hpp"

#include <unordered_map>

#include "sbn/errors.hpp"
#include "sbn/newick.hpp"

namespace sbn {

SbnParams FitFromCounts(const CountsTable &counts, double alpha, const CountsTable *equivalent) {
  if (alpha < 0.0) throw UsageError("alpha must be nonnegative");
  if (alpha > 0.0 && equivalent == nullptr) {
    throw UsageError("regularized fit needs equivalent counts");
  }
  if (counts.root_counts.empty() && (alpha == 0.0 || equivalent->root_counts.empty())) {
    throw ValidationError("cannot fit parameters from an empty counts table");
  }

  // Combined counts m + alpha * m~.
  std::unordered_map<Subsplit, double> roots = counts.root_counts;
  std::unordered_map<PcspKey, double> pcsps = counts.pcsp_counts;
  if (alpha > 0.0) {
    for (const auto &[split, m] : equivalent->root_counts) roots[split] += alpha * m;
    for (const auto &[pcsp, m] : equivalent->pcsp_counts) pcsps[pcsp] += alpha * m;
  }

  SbnParams params(counts.taxa);
  double root_total = 0.0;
  for (const auto &[split, m] : roots) root_total += m;
  if (!(root_total > 0.0)) throw ValidationError("root split counts sum to zero");
  for (const auto &[split, m] : roots) {
    if (m > 0.0) params.SetRoot(split, m / root_total);
  }

  std::unordered_map<ParentContext, double> totals;
  for (const auto &[pcsp, m] : pcsps) totals[pcsp.Context()] += m;
  for (const auto &[pcsp, m] : pcsps) {
    if (m > 0.0) params.SetConditional(pcsp, m / totals.at(pcsp.Context()));
  }
  return params;
}

SbnParams FitMlRooted(const CountsTable &counts) {
  if (!(counts.total_trees > 0.0)) throw ValidationError("no trees to fit");
  return FitFromCounts(counts);
}

SbnParams FitMlRooted(const RootedSample &trees) { return FitMlRooted(CollectRootedCounts(trees)); }

SbnParams FitSa(const UnrootedSample &trees) { return FitFromCounts(CollectSaCounts(trees)); }

CcdParams FitCcd(const UnrootedSample &trees) {
  auto taxa = CheckSample(trees);
  std::unordered_map<Clade, std::unordered_map<Subsplit, double>> tallies;
  for (const auto &[tree, weight] : trees) {
    for (const auto &split : CladeSplits(RootAtEdge(tree, 0))) {
      tallies[split.UnionClade()][split] += weight;
    }
  }
  CcdParams params(taxa);
  for (const auto &[clade, splits] : tallies) {
    double total = 0.0;
    for (const auto &[split, m] : splits) total += m;
    for (const auto &[split, m] : splits) params.Set(split, m / total);
  }
  return params;
}

SrfParams FitSrf(const UnrootedSample &trees) {
  auto taxa = CheckSample(trees);
  std::unordered_map<TreeId, double> tallies;
  double total = 0.0;
  for (const auto &[tree, weight] : trees) {
    tallies[TreeIdOf(tree)] += weight;
    total += weight;
  }
  SrfParams params(taxa);
  for (const auto &[id, m] : tallies) params.Set(id, m / total);
  return params;
}

}  // namespace sbn
