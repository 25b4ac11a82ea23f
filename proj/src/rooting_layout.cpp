#include "sbn/rooting_layout.hpp"

#include "sbn/errors.hpp"

namespace sbn {

RootingSkeleton::RootingSkeleton(const UnrootedTopology &tree) : preorder_(tree.Preorder()) {
  const size_t edge_count = tree.EdgeCount();
  const size_t n = tree.LeafCount();
  out_.assign(2 * edge_count, {-1, -1});
  has_conditional_.assign(2 * edge_count, false);
  for (size_t d = 0; d < 2 * edge_count; ++d) {
    const auto &edge = tree.EdgeAt(EdgeOf(d));
    const bool away = d % 2 == 0;
    const int head = away ? edge.head : edge.tail;
    const int tail = away ? edge.tail : edge.head;
    if (tree.IsLeaf(head)) continue;
    const auto &adj = tree.Neighbors(head);
    int k = 0;
    for (int i = 0; i < adj.degree; ++i) {
      if (adj.vertex[static_cast<size_t>(i)] == tail) continue;
      const auto f = static_cast<size_t>(adj.edge[static_cast<size_t>(i)]);
      out_[d][static_cast<size_t>(k++)] =
          static_cast<int>(tree.EdgeAt(f).tail == head ? Away(f) : Toward(f));
    }
    if (k != 2) throw InternalError("internal vertex without two outgoing edges");
    const size_t away_size = tree.AwayClade(EdgeOf(d)).Count();
    has_conditional_[d] = (away ? away_size : n - away_size) >= 3;
  }
}

std::vector<double> RootingSkeleton::WeightBehind(std::span<const double> rooting_weights) const {
  if (rooting_weights.size() != EdgeCount()) {
    throw UsageError("rooting weights must have one entry per edge");
  }
  std::vector<double> behind(out_.size(), 0.0);
  auto fill = [&](size_t d) {
    double sum = rooting_weights[EdgeOf(d)];
    const auto &out = out_[Reverse(d)];
    if (out[0] >= 0) {
      for (int c : out) sum += behind[Reverse(static_cast<size_t>(c))];
    }
    behind[d] = sum;
  };
  for (auto it = preorder_.rbegin(); it != preorder_.rend(); ++it) {
    fill(Toward(static_cast<size_t>(*it)));
  }
  for (int e : preorder_) fill(Away(static_cast<size_t>(e)));
  return behind;
}

RootingLayout::RootingLayout(const UnrootedTopology &tree) : RootingSkeleton(tree) {
  const size_t edge_count = tree.EdgeCount();
  sides_.resize(2 * edge_count);
  splits_.resize(2 * edge_count);
  edge_splits_.resize(edge_count);
  for (size_t e = 0; e < edge_count; ++e) {
    sides_[Away(e)] = tree.AwayClade(e);
    sides_[Toward(e)] = ~tree.AwayClade(e);
    edge_splits_[e] = MakeSubsplit(sides_[Away(e)], sides_[Toward(e)]);
  }
  for (size_t d = 0; d < 2 * edge_count; ++d) {
    if (HeadIsLeaf(d)) continue;
    const auto &out = Out(d);
    splits_[d] = MakeSubsplit(sides_[static_cast<size_t>(out[0])],
                              sides_[static_cast<size_t>(out[1])]);
  }
}

}  // namespace sbn
