// Rooted and unrooted bifurcating tree topologies on a fixed taxon set.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sbn/clade.hpp"
#include "sbn/taxon_set.hpp"

namespace sbn {

// A binary tree stored as a node array. Leaves carry a taxon index; internal nodes
// carry exactly two children.
class RootedTopology {
 public:
  struct Node {
    int left = -1;
    int right = -1;
    int taxon = -1;
    bool IsLeaf() const { return taxon >= 0; }
  };

  // Validates that the nodes form a binary tree whose leaves are exactly the taxa.
  RootedTopology(TaxonSetPtr taxa, std::vector<Node> nodes, int root);

  const TaxonSetPtr &Taxa() const { return taxa_; }
  size_t LeafCount() const { return taxa_->Size(); }
  const std::vector<Node> &Nodes() const { return nodes_; }
  const Node &At(int index) const { return nodes_.at(static_cast<size_t>(index)); }
  int Root() const { return root_; }

  // Children before parents.
  std::vector<int> PostOrder() const;
  // Leaf set below each node, indexed like Nodes().
  std::vector<Clade> NodeClades() const;

 private:
  TaxonSetPtr taxa_;
  std::vector<Node> nodes_;
  int root_;
};

// An unrooted binary tree in canonical form.
//
// Vertices 0..N-1 are the leaves (vertex i carries taxon i) and N..2N-3 are the
// internal vertices, numbered in preorder from leaf 0. Edge i < N is the pendant edge
// of taxon i; the remaining edges are sorted by decreasing clade order of the side
// away from taxon 0. Every edge is stored as (tail, head) with the tail nearer to
// leaf 0, so two isomorphic trees have identical representations.
class UnrootedTopology {
 public:
  struct Edge {
    int tail;
    int head;
  };
  struct Adjacency {
    std::array<int, 3> vertex{-1, -1, -1};
    std::array<int, 3> edge{-1, -1, -1};
    int degree = 0;
  };

  // Accepts any labelling of the internal vertices (ids N..2N-3) and any edge order;
  // validates degrees and connectivity, then canonicalizes.
  UnrootedTopology(TaxonSetPtr taxa, const std::vector<std::pair<int, int>> &edges);

  const TaxonSetPtr &Taxa() const { return taxa_; }
  size_t LeafCount() const { return taxa_->Size(); }
  size_t EdgeCount() const { return edges_.size(); }
  size_t VertexCount() const { return adjacency_.size(); }
  const std::vector<Edge> &Edges() const { return edges_; }
  const Edge &EdgeAt(size_t e) const { return edges_.at(e); }
  const Adjacency &Neighbors(int vertex) const {
    return adjacency_.at(static_cast<size_t>(vertex));
  }
  bool IsLeaf(int vertex) const { return vertex < static_cast<int>(taxa_->Size()); }

  // Taxa on the head side of edge e (the side without taxon 0).
  const Clade &AwayClade(size_t e) const { return away_clades_.at(e); }
  // Edge ids in preorder from leaf 0, i.e. every edge appears after the edge that
  // leads into its tail.
  const std::vector<int> &Preorder() const { return preorder_; }
  // Edge whose away side is exactly `clade`, if any.
  std::optional<size_t> FindEdge(const Clade &away) const;

  friend bool operator==(const UnrootedTopology &a, const UnrootedTopology &b);

 private:
  TaxonSetPtr taxa_;
  std::vector<Edge> edges_;
  std::vector<Adjacency> adjacency_;
  std::vector<Clade> away_clades_;
  std::vector<int> preorder_;
};

// Canonical string identity of a topology (its canonical Newick form).
struct TreeId {
  std::string key;
  friend bool operator==(const TreeId &, const TreeId &) = default;
  friend auto operator<=>(const TreeId &, const TreeId &) = default;
};

// Roots the tree on edge e. The root split is the bipartition induced by e.
RootedTopology RootAtEdge(const UnrootedTopology &tree, size_t e);

struct UnrootedWithEdge {
  UnrootedTopology tree;
  size_t edge;
};

// Suppresses the root; `edge` is the edge that carried it. Requires N >= 3.
UnrootedWithEdge Unroot(const RootedTopology &tree);

}  // namespace sbn

template <>
struct std::hash<sbn::TreeId> {
  size_t operator()(const sbn::TreeId &id) const { return std::hash<std::string>{}(id.key); }
};

namespace sbn {

// A tree with a positive multiplicity; samples arrive deduplicated with counts.
template <typename Tree>
struct Weighted {
  Tree tree;
  double weight = 1.0;
};

using RootedSample = std::vector<Weighted<RootedTopology>>;
using UnrootedSample = std::vector<Weighted<UnrootedTopology>>;

}  // namespace sbn
