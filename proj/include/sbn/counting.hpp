// Tree decomposition and frequency tables of root splits and PCSPs.

#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "sbn/params.hpp"
#include "sbn/rooting_layout.hpp"
#include "sbn/subsplit.hpp"
#include "sbn/topology.hpp"

namespace sbn {

// The nontrivial splitting process of a rooted tree: its root split and one PCSP per
// non-root internal node whose clade has at least three taxa, in preorder.
struct RootedDecomposition {
  Subsplit root_split;
  std::vector<PcspKey> pcsps;
};

RootedDecomposition DecomposeRooted(const RootedTopology &tree);

// Subsplits of every clade with at least three taxa, root first. This is the
// factorization used by the conditional clade distribution.
std::vector<Subsplit> CladeSplits(const RootedTopology &tree);

// Real-valued tallies. Partial tables over disjoint inputs merge by addition.
struct CountsTable {
  TaxonSetPtr taxa;
  std::unordered_map<Subsplit, double> root_counts;
  std::unordered_map<PcspKey, double> pcsp_counts;
  double total_trees = 0.0;

  CountsTable &operator+=(const CountsTable &other);
  double RootTotal() const;
  // Sum of child counts in every (parent, focal) context.
  std::unordered_map<ParentContext, double> ContextTotals() const;
};

CountsTable CollectRootedCounts(const RootedSample &trees);

// Simple-average counts: every rooting of every tree carries weight/(2N-3).
CountsTable CollectSaCounts(const UnrootedSample &trees);

// Adds one tree whose rootings carry `rooting_weights` (one per edge, summing to one)
// scaled by `weight`.
void AccumulateRootings(const RootingLayout &layout, std::span<const double> rooting_weights,
                        double weight, CountsTable &counts);

struct EmCounts {
  CountsTable counts;
  // Trees with probability zero under the given parameters; they add nothing.
  size_t zero_support_trees = 0;
  // Unregularized log-likelihood of the parameters the counts were computed under,
  // over supported trees.
  double log_likelihood = 0.0;
};

// Expected counts: every rooting weighted by its posterior probability given the
// tree under `params`.
EmCounts CollectEmCounts(const UnrootedSample &trees, const SbnParams &params);

// Throws ValidationError if the sample is empty, has a nonpositive weight, or mixes
// taxon sets. Returns the shared taxa.
template <typename Tree>
TaxonSetPtr CheckSample(const std::vector<Weighted<Tree>> &trees);

}  // namespace sbn
