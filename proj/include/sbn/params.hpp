// Parameter containers for the three estimator families.

#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "sbn/subsplit.hpp"
#include "sbn/topology.hpp"

namespace sbn {

constexpr double kNormalizationTolerance = 1e-12;

// Root-split distribution plus one conditional distribution per (parent subsplit,
// focal clade) context. Absent entries have probability zero, which keeps the
// conditionals consistent: a stored child always refines its focal clade. Focal
// clades with one or two taxa split deterministically and are never stored.
class SbnParams {
 public:
  using RootMap = std::unordered_map<Subsplit, double>;
  using ConditionalMap = std::unordered_map<PcspKey, double>;
  using Group = std::vector<std::pair<Subsplit, double>>;

  explicit SbnParams(TaxonSetPtr taxa);

  const TaxonSetPtr &Taxa() const { return taxa_; }

  // Throws ValidationError unless the subsplit divides the full taxon set.
  void SetRoot(const Subsplit &split, double probability);
  // Throws ValidationError unless the key is compatible and its focal clade has at
  // least three taxa.
  void SetConditional(const PcspKey &pcsp, double probability);

  double Root(const Subsplit &split) const;
  // 1 for focal clades of size <= 2, 0 for absent keys.
  double Conditional(const PcspKey &pcsp) const;

  const RootMap &RootDistribution() const { return root_; }
  const ConditionalMap &Conditionals() const { return conditional_; }
  // Conditionals grouped by context, children sorted; deterministic iteration.
  std::map<ParentContext, Group> Groups() const;
  std::map<Subsplit, double> SortedRoots() const;

  // Throws ValidationError if the root distribution or any context group fails to
  // sum to one within `tolerance`, or any probability is negative.
  void Validate(double tolerance = kNormalizationTolerance) const;

 private:
  TaxonSetPtr taxa_;
  RootMap root_;
  ConditionalMap conditional_;
};

// Conditional clade distribution: each clade splits independently of its sister.
class CcdParams {
 public:
  using SplitMap = std::unordered_map<Subsplit, double>;

  explicit CcdParams(TaxonSetPtr taxa);

  const TaxonSetPtr &Taxa() const { return taxa_; }
  // Throws ValidationError unless `split` divides a clade of at least three taxa.
  void Set(const Subsplit &split, double probability);
  // 1 for clades of size <= 2, 0 for absent entries.
  double Probability(const Subsplit &split) const;
  const std::unordered_map<Clade, SplitMap> &Distributions() const { return clades_; }
  std::map<Clade, std::map<Subsplit, double>> Sorted() const;

  void Validate(double tolerance = kNormalizationTolerance) const;

 private:
  TaxonSetPtr taxa_;
  std::unordered_map<Clade, SplitMap> clades_;
};

// Sample relative frequencies over unrooted topologies.
class SrfParams {
 public:
  explicit SrfParams(TaxonSetPtr taxa);

  const TaxonSetPtr &Taxa() const { return taxa_; }
  void Set(const TreeId &id, double probability);
  double Probability(const TreeId &id) const;
  const std::unordered_map<TreeId, double> &Frequencies() const { return frequencies_; }
  std::map<TreeId, double> Sorted() const;

  void Validate(double tolerance = kNormalizationTolerance) const;

 private:
  TaxonSetPtr taxa_;
  std::unordered_map<TreeId, double> frequencies_;
};

}  // namespace sbn
