// Directed-edge view of an unrooted tree used to handle all of its rootings at once.
//
// Directed edge 2e points from the tail of edge e to its head (away from taxon 0),
// 2e+1 points back. For a directed edge d = (u -> v):
//   side(d)   the taxa on v's side,
//   split(d)  the subsplit of side(d) at v (only when v is internal),
//   out(d)    the two directed edges leaving v other than (v -> u).
// When the tree is rooted on edge e, the root split is EdgeSplit(e) and the nodes at
// both ends of e carry split(2e) and split(2e+1) with the root split as parent. Any
// deeper node reached along c in out(d) carries split(c) with parent split(d), which
// happens exactly for rootings on the tail side of d (edge(d) included).
//
// Both sweeps below therefore visit each directed edge once: a postorder over edges
// pointing away from taxon 0 followed by a preorder over edges pointing back.

#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "sbn/subsplit.hpp"
#include "sbn/topology.hpp"

namespace sbn {

// Traversal structure of the directed edges, without any clades. Light enough to
// keep for every tree of a large sample.
class RootingSkeleton {
 public:
  explicit RootingSkeleton(const UnrootedTopology &tree);

  size_t EdgeCount() const { return out_.size() / 2; }
  static size_t Away(size_t e) { return 2 * e; }
  static size_t Toward(size_t e) { return 2 * e + 1; }
  static size_t Reverse(size_t d) { return d ^ 1U; }
  static size_t EdgeOf(size_t d) { return d / 2; }

  bool HeadIsLeaf(size_t d) const { return out_[d][0] < 0; }
  const std::array<int, 2> &Out(size_t d) const { return out_[d]; }
  // True when the node at the head of d has a nontrivial conditional parameter,
  // i.e. it is internal and its clade has at least 3 taxa.
  bool HasConditional(size_t d) const { return has_conditional_[d]; }
  const std::vector<int> &Preorder() const { return preorder_; }

  // log of the product of conditionals in the subtree behind each directed edge.
  // `pair_log(d, c)` is the log conditional of split(c) given split(d), called only
  // where HasConditional(c).
  template <typename PairLog>
  std::vector<double> LogBelow(PairLog &&pair_log) const;

  // Per-edge log joint probabilities of root placement and tree.
  // `root_log(e)` is the log root-split probability of edge e, `adjacent_log(d)` the
  // log conditional of split(d) given EdgeSplit(edge(d)).
  template <typename RootLog, typename AdjacentLog, typename PairLog>
  std::vector<double> LogJoints(RootLog &&root_log, AdjacentLog &&adjacent_log,
                                PairLog &&pair_log) const;

  // For each directed edge d, the total rooting weight on the tail side of d
  // including edge(d) itself.
  std::vector<double> WeightBehind(std::span<const double> rooting_weights) const;

  // Distributes rooting weights (scaled by `scale`) onto root splits and PCSPs:
  // root(e, w), adjacent(d, w) and child(d, c, w) receive the weight each
  // occurrence carries.
  template <typename RootFn, typename AdjacentFn, typename ChildFn>
  void Accumulate(std::span<const double> rooting_weights, double scale, RootFn &&root,
                  AdjacentFn &&adjacent, ChildFn &&child) const;

 private:
  std::vector<std::array<int, 2>> out_;
  std::vector<bool> has_conditional_;
  std::vector<int> preorder_;
};

// The skeleton plus the clade and subsplit carried by every directed edge.
class RootingLayout : public RootingSkeleton {
 public:
  explicit RootingLayout(const UnrootedTopology &tree);

  const Clade &Side(size_t d) const { return sides_[d]; }
  const Subsplit &Split(size_t d) const { return splits_[d]; }
  const Subsplit &EdgeSplit(size_t e) const { return edge_splits_[e]; }

  // Parameter keys. Only valid where HasConditional holds for the child edge.
  PcspKey AdjacentPcsp(size_t d) const {
    return {edge_splits_[EdgeOf(d)], sides_[d], splits_[d]};
  }
  PcspKey ChildPcsp(size_t d, size_t c) const { return {splits_[d], sides_[c], splits_[c]}; }

 private:
  std::vector<Clade> sides_;
  std::vector<Subsplit> splits_;
  std::vector<Subsplit> edge_splits_;
};

template <typename PairLog>
std::vector<double> RootingSkeleton::LogBelow(PairLog &&pair_log) const {
  std::vector<double> below(out_.size(), 0.0);
  auto fill = [&](size_t d) {
    if (HeadIsLeaf(d)) return;
    double sum = 0.0;
    for (int c : out_[d]) {
      const auto child = static_cast<size_t>(c);
      if (has_conditional_[child]) sum += pair_log(d, child);
      sum += below[child];
    }
    below[d] = sum;
  };
  for (auto it = preorder_.rbegin(); it != preorder_.rend(); ++it) {
    fill(Away(static_cast<size_t>(*it)));
  }
  for (int e : preorder_) fill(Toward(static_cast<size_t>(e)));
  return below;
}

template <typename RootLog, typename AdjacentLog, typename PairLog>
std::vector<double> RootingSkeleton::LogJoints(RootLog &&root_log, AdjacentLog &&adjacent_log,
                                             PairLog &&pair_log) const {
  const auto below = LogBelow(pair_log);
  std::vector<double> joints(EdgeCount());
  for (size_t e = 0; e < EdgeCount(); ++e) {
    double value = root_log(e) + below[Away(e)] + below[Toward(e)];
    for (size_t d : {Away(e), Toward(e)}) {
      if (has_conditional_[d]) value += adjacent_log(d);
    }
    joints[e] = std::isnan(value) ? -INFINITY : value;
  }
  return joints;
}

template <typename RootFn, typename AdjacentFn, typename ChildFn>
void RootingSkeleton::Accumulate(std::span<const double> rooting_weights, double scale,
                               RootFn &&root, AdjacentFn &&adjacent, ChildFn &&child) const {
  const auto behind = WeightBehind(rooting_weights);
  for (size_t e = 0; e < EdgeCount(); ++e) {
    const double w = scale * rooting_weights[e];
    root(e, w);
    for (size_t d : {Away(e), Toward(e)}) {
      if (has_conditional_[d]) adjacent(d, w);
    }
  }
  for (size_t d = 0; d < out_.size(); ++d) {
    if (HeadIsLeaf(d)) continue;
    for (int c : out_[d]) {
      const auto next = static_cast<size_t>(c);
      if (has_conditional_[next]) child(d, next, scale * behind[d]);
    }
  }
}

}  // namespace sbn
