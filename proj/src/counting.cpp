#include "sbn/counting.hpp"

#include <cmath>

#include "sbn/errors.hpp"
#include "sbn/evaluation.hpp"

namespace sbn {

template <typename Tree>
TaxonSetPtr CheckSample(const std::vector<Weighted<Tree>> &trees) {
  if (trees.empty()) throw ValidationError("tree sample is empty");
  const TaxonSetPtr &taxa = trees.front().tree.Taxa();
  for (const auto &[tree, weight] : trees) {
    if (!(weight > 0.0) || !std::isfinite(weight)) {
      throw ValidationError("tree weights must be positive");
    }
    if (!SameTaxa(tree.Taxa(), taxa)) throw ValidationError("sample mixes taxon sets");
  }
  if (taxa->Size() < 3) throw ValidationError("estimation needs at least 3 taxa");
  return taxa;
}

template TaxonSetPtr CheckSample(const RootedSample &);
template TaxonSetPtr CheckSample(const UnrootedSample &);

RootedDecomposition DecomposeRooted(const RootedTopology &tree) {
  if (tree.LeafCount() < 3) throw ValidationError("decomposition needs at least 3 taxa");
  const auto clades = tree.NodeClades();
  auto split_at = [&](int index) {
    const auto &node = tree.At(index);
    return MakeSubsplit(clades[static_cast<size_t>(node.left)],
                        clades[static_cast<size_t>(node.right)]);
  };
  RootedDecomposition out{split_at(tree.Root()), {}};
  std::vector<int> order{tree.Root()};
  while (!order.empty()) {
    const int index = order.back();
    order.pop_back();
    const auto &node = tree.At(index);
    const Subsplit parent = split_at(index);
    for (int child : {node.right, node.left}) {
      const auto &child_node = tree.At(child);
      if (child_node.IsLeaf()) continue;
      order.push_back(child);
    }
    for (int child : {node.left, node.right}) {
      const auto &clade = clades[static_cast<size_t>(child)];
      if (tree.At(child).IsLeaf() || clade.Count() < 3) continue;
      out.pcsps.push_back({parent, clade, split_at(child)});
    }
  }
  return out;
}

std::vector<Subsplit> CladeSplits(const RootedTopology &tree) {
  const auto clades = tree.NodeClades();
  std::vector<Subsplit> splits;
  std::vector<int> order{tree.Root()};
  while (!order.empty()) {
    const int index = order.back();
    order.pop_back();
    const auto &node = tree.At(index);
    if (node.IsLeaf() || clades[static_cast<size_t>(index)].Count() < 3) continue;
    splits.push_back(MakeSubsplit(clades[static_cast<size_t>(node.left)],
                                  clades[static_cast<size_t>(node.right)]));
    order.push_back(node.right);
    order.push_back(node.left);
  }
  return splits;
}

CountsTable &CountsTable::operator+=(const CountsTable &other) {
  if (!taxa) taxa = other.taxa;
  if (other.taxa && !SameTaxa(taxa, other.taxa)) {
    throw ValidationError("cannot merge counts over different taxon sets");
  }
  for (const auto &[split, w] : other.root_counts) root_counts[split] += w;
  for (const auto &[pcsp, w] : other.pcsp_counts) pcsp_counts[pcsp] += w;
  total_trees += other.total_trees;
  return *this;
}

double CountsTable::RootTotal() const {
  double total = 0.0;
  for (const auto &[split, w] : root_counts) total += w;
  return total;
}

std::unordered_map<ParentContext, double> CountsTable::ContextTotals() const {
  std::unordered_map<ParentContext, double> totals;
  for (const auto &[pcsp, w] : pcsp_counts) totals[pcsp.Context()] += w;
  return totals;
}

CountsTable CollectRootedCounts(const RootedSample &trees) {
  CountsTable counts;
  counts.taxa = CheckSample(trees);
  for (const auto &[tree, weight] : trees) {
    const auto decomposition = DecomposeRooted(tree);
    counts.root_counts[decomposition.root_split] += weight;
    for (const auto &pcsp : decomposition.pcsps) counts.pcsp_counts[pcsp] += weight;
    counts.total_trees += weight;
  }
  return counts;
}

void AccumulateRootings(const RootingLayout &layout, std::span<const double> rooting_weights,
                        double weight, CountsTable &counts) {
  // Rootings without posterior mass leave no zero entries behind.
  layout.Accumulate(
      rooting_weights, weight,
      [&](size_t e, double w) {
        if (w > 0.0) counts.root_counts[layout.EdgeSplit(e)] += w;
      },
      [&](size_t d, double w) {
        if (w > 0.0) counts.pcsp_counts[layout.AdjacentPcsp(d)] += w;
      },
      [&](size_t d, size_t c, double w) {
        if (w > 0.0) counts.pcsp_counts[layout.ChildPcsp(d, c)] += w;
      });
  counts.total_trees += weight;
}

CountsTable CollectSaCounts(const UnrootedSample &trees) {
  CountsTable counts;
  counts.taxa = CheckSample(trees);
  const size_t edge_count = 2 * counts.taxa->Size() - 3;
  const std::vector<double> uniform(edge_count, 1.0 / static_cast<double>(edge_count));
  for (const auto &[tree, weight] : trees) {
    AccumulateRootings(RootingLayout(tree), uniform, weight, counts);
  }
  return counts;
}

EmCounts CollectEmCounts(const UnrootedSample &trees, const SbnParams &params) {
  EmCounts out;
  out.counts.taxa = CheckSample(trees);
  if (!SameTaxa(out.counts.taxa, params.Taxa())) {
    throw ValidationError("parameters and sample use different taxa");
  }
  std::vector<double> posterior;
  for (const auto &[tree, weight] : trees) {
    const RootingLayout layout(tree);
    const auto log_joints = RootingLogJoints(params, layout);
    const double log_total = LogSumExp(log_joints);
    if (log_total == -INFINITY) {
      ++out.zero_support_trees;
      continue;
    }
    posterior.resize(log_joints.size());
    for (size_t e = 0; e < log_joints.size(); ++e) {
      posterior[e] = std::exp(log_joints[e] - log_total);
    }
    AccumulateRootings(layout, posterior, weight, out.counts);
    out.log_likelihood += weight * log_total;
  }
  return out;
}

}  // namespace sbn
