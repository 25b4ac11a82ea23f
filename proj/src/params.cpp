#include "sbn/params.hpp"

#include <cmath>

#include "sbn/errors.hpp"

namespace sbn {

namespace {

void CheckProbability(double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw ValidationError("probabilities must be finite and nonnegative");
  }
}

void CheckSum(double sum, double tolerance, const std::string &what) {
  if (std::abs(sum - 1.0) > tolerance) {
    throw ValidationError(what + " sums to " + std::to_string(sum) + ", not 1");
  }
}

}  // namespace

// ** SbnParams

SbnParams::SbnParams(TaxonSetPtr taxa) : taxa_(std::move(taxa)) {
  if (!taxa_) throw UsageError("parameters need a taxon set");
}

void SbnParams::SetRoot(const Subsplit &split, double probability) {
  CheckProbability(probability);
  if (split.y.Width() != taxa_->Size() || split.UnionClade() != Clade::Full(taxa_->Size())) {
    throw ValidationError("root split must divide the full taxon set");
  }
  root_[split] = probability;
}

void SbnParams::SetConditional(const PcspKey &pcsp, double probability) {
  CheckProbability(probability);
  if (pcsp.focal.Width() != taxa_->Size()) throw ValidationError("PCSP width mismatch");
  if (pcsp.focal != pcsp.parent.y && pcsp.focal != pcsp.parent.z) {
    throw ValidationError("PCSP focal clade is not part of its parent");
  }
  if (pcsp.child.UnionClade() != pcsp.focal) {
    throw ValidationError("PCSP child does not split its focal clade");
  }
  if (pcsp.focal.Count() < 3) {
    throw ValidationError("clades with fewer than 3 taxa split deterministically");
  }
  conditional_[pcsp] = probability;
}

double SbnParams::Root(const Subsplit &split) const {
  auto it = root_.find(split);
  return it == root_.end() ? 0.0 : it->second;
}

double SbnParams::Conditional(const PcspKey &pcsp) const {
  if (pcsp.focal.Count() <= 2) return 1.0;
  auto it = conditional_.find(pcsp);
  return it == conditional_.end() ? 0.0 : it->second;
}

std::map<ParentContext, SbnParams::Group> SbnParams::Groups() const {
  std::map<ParentContext, std::map<Subsplit, double>> sorted;
  for (const auto &[pcsp, p] : conditional_) sorted[pcsp.Context()][pcsp.child] = p;
  std::map<ParentContext, Group> groups;
  for (auto &[context, children] : sorted) {
    groups[context] = Group(children.begin(), children.end());
  }
  return groups;
}

std::map<Subsplit, double> SbnParams::SortedRoots() const {
  return {root_.begin(), root_.end()};
}

void SbnParams::Validate(double tolerance) const {
  double total = 0.0;
  for (const auto &[split, p] : SortedRoots()) {
    CheckProbability(p);
    total += p;
  }
  CheckSum(total, tolerance, "root split distribution");
  for (const auto &[context, children] : Groups()) {
    double sum = 0.0;
    for (const auto &[child, p] : children) {
      CheckProbability(p);
      sum += p;
    }
    CheckSum(sum, tolerance,
             "conditional distribution for " + SubsplitToString(context.parent, *taxa_) + " / " +
                 CladeToString(context.focal, *taxa_));
  }
}

// ** CcdParams

CcdParams::CcdParams(TaxonSetPtr taxa) : taxa_(std::move(taxa)) {
  if (!taxa_) throw UsageError("parameters need a taxon set");
}

void CcdParams::Set(const Subsplit &split, double probability) {
  CheckProbability(probability);
  if (split.y.Width() != taxa_->Size()) throw ValidationError("subsplit width mismatch");
  const Clade clade = split.UnionClade();
  if (clade.Count() < 3) {
    throw ValidationError("clades with fewer than 3 taxa split deterministically");
  }
  clades_[clade][split] = probability;
}

double CcdParams::Probability(const Subsplit &split) const {
  const Clade clade = split.UnionClade();
  if (clade.Count() <= 2) return 1.0;
  auto it = clades_.find(clade);
  if (it == clades_.end()) return 0.0;
  auto found = it->second.find(split);
  return found == it->second.end() ? 0.0 : found->second;
}

std::map<Clade, std::map<Subsplit, double>> CcdParams::Sorted() const {
  std::map<Clade, std::map<Subsplit, double>> sorted;
  for (const auto &[clade, splits] : clades_) sorted[clade] = {splits.begin(), splits.end()};
  return sorted;
}

void CcdParams::Validate(double tolerance) const {
  for (const auto &[clade, splits] : Sorted()) {
    double sum = 0.0;
    for (const auto &[split, p] : splits) {
      CheckProbability(p);
      sum += p;
    }
    CheckSum(sum, tolerance, "clade distribution for " + CladeToString(clade, *taxa_));
  }
}

// ** SrfParams

SrfParams::SrfParams(TaxonSetPtr taxa) : taxa_(std::move(taxa)) {
  if (!taxa_) throw UsageError("parameters need a taxon set");
}

void SrfParams::Set(const TreeId &id, double probability) {
  CheckProbability(probability);
  frequencies_[id] = probability;
}

double SrfParams::Probability(const TreeId &id) const {
  auto it = frequencies_.find(id);
  return it == frequencies_.end() ? 0.0 : it->second;
}

std::map<TreeId, double> SrfParams::Sorted() const {
  return {frequencies_.begin(), frequencies_.end()};
}

void SrfParams::Validate(double tolerance) const {
  double total = 0.0;
  for (const auto &[id, p] : Sorted()) {
    CheckProbability(p);
    total += p;
  }
  CheckSum(total, tolerance, "tree frequency table");
}

}  // namespace sbn
