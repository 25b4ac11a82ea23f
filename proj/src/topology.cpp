#include "sbn/topology.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "sbn/errors.hpp"

namespace sbn {

// ** RootedTopology

RootedTopology::RootedTopology(TaxonSetPtr taxa, std::vector<Node> nodes, int root)
    : taxa_(std::move(taxa)), nodes_(std::move(nodes)), root_(root) {
  if (!taxa_) throw UsageError("rooted topology needs a taxon set");
  const size_t n = taxa_->Size();
  if (n < 2) throw ValidationError("a rooted tree needs at least 2 taxa");
  if (nodes_.size() != 2 * n - 1) {
    throw ValidationError("a binary tree on " + std::to_string(n) + " taxa has " +
                          std::to_string(2 * n - 1) + " nodes, got " +
                          std::to_string(nodes_.size()));
  }
  const int count = static_cast<int>(nodes_.size());
  if (root_ < 0 || root_ >= count) throw ValidationError("root index out of range");
  std::vector<int> parent_count(nodes_.size(), 0);
  std::vector<bool> seen_taxon(n, false);
  for (const auto &node : nodes_) {
    if (node.IsLeaf()) {
      if (node.left != -1 || node.right != -1) {
        throw ValidationError("leaf node has children");
      }
      if (static_cast<size_t>(node.taxon) >= n) throw ValidationError("taxon out of range");
      if (seen_taxon[static_cast<size_t>(node.taxon)]) {
        throw ValidationError("duplicate taxon '" + taxa_->Name(static_cast<size_t>(node.taxon)) +
                              "'");
      }
      seen_taxon[static_cast<size_t>(node.taxon)] = true;
      continue;
    }
    for (int child : {node.left, node.right}) {
      if (child < 0 || child >= count) throw ValidationError("internal node lacks two children");
      ++parent_count[static_cast<size_t>(child)];
    }
  }
  for (int i = 0; i < count; ++i) {
    const int expected = i == root_ ? 0 : 1;
    if (parent_count[static_cast<size_t>(i)] != expected) {
      throw ValidationError("node array is not a tree");
    }
  }
  // With n leaves, n-1 internal nodes and unique parents, reachability from the root
  // rules out cycles.
  if (PostOrder().size() != nodes_.size()) throw ValidationError("node array is not a tree");
}

std::vector<int> RootedTopology::PostOrder() const {
  std::vector<int> order;
  order.reserve(nodes_.size());
  std::vector<std::pair<int, bool>> stack{{root_, false}};
  while (!stack.empty()) {
    auto [index, expanded] = stack.back();
    stack.pop_back();
    const Node &node = nodes_[static_cast<size_t>(index)];
    if (expanded || node.IsLeaf()) {
      order.push_back(index);
      if (order.size() > nodes_.size()) break;
      continue;
    }
    stack.push_back({index, true});
    stack.push_back({node.right, false});
    stack.push_back({node.left, false});
  }
  return order;
}

std::vector<Clade> RootedTopology::NodeClades() const {
  std::vector<Clade> clades(nodes_.size(), Clade(taxa_->Size()));
  for (int index : PostOrder()) {
    const Node &node = nodes_[static_cast<size_t>(index)];
    auto &clade = clades[static_cast<size_t>(index)];
    if (node.IsLeaf()) {
      clade.Set(static_cast<size_t>(node.taxon));
    } else {
      clade = clades[static_cast<size_t>(node.left)] | clades[static_cast<size_t>(node.right)];
    }
  }
  return clades;
}

// ** UnrootedTopology

UnrootedTopology::UnrootedTopology(TaxonSetPtr taxa,
                                   const std::vector<std::pair<int, int>> &edges)
    : taxa_(std::move(taxa)) {
  if (!taxa_) throw UsageError("unrooted topology needs a taxon set");
  const int n = static_cast<int>(taxa_->Size());
  if (n < 3) throw ValidationError("an unrooted binary tree needs at least 3 taxa");
  const int vertex_count = 2 * n - 2;
  if (edges.size() != static_cast<size_t>(2 * n - 3)) {
    throw ValidationError("an unrooted binary tree on " + std::to_string(n) + " taxa has " +
                          std::to_string(2 * n - 3) + " edges, got " +
                          std::to_string(edges.size()));
  }
  std::vector<std::vector<int>> raw(static_cast<size_t>(vertex_count));
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count || a == b) {
      throw ValidationError("invalid edge endpoints");
    }
    raw[static_cast<size_t>(a)].push_back(b);
    raw[static_cast<size_t>(b)].push_back(a);
  }
  for (int v = 0; v < vertex_count; ++v) {
    const size_t expected = v < n ? 1 : 3;
    if (raw[static_cast<size_t>(v)].size() != expected) {
      throw ValidationError(v < n ? "leaf vertex must have degree 1"
                                  : "internal vertex must have degree 3");
    }
  }

  // Orient every vertex towards leaf 0 and collect away clades bottom-up.
  std::vector<int> parent(static_cast<size_t>(vertex_count), -2);
  std::vector<int> order;
  order.reserve(static_cast<size_t>(vertex_count));
  parent[0] = -1;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int w : raw[static_cast<size_t>(v)]) {
      if (w == parent[static_cast<size_t>(v)]) continue;
      if (parent[static_cast<size_t>(w)] != -2) throw ValidationError("edges contain a cycle");
      parent[static_cast<size_t>(w)] = v;
      stack.push_back(w);
    }
  }
  if (order.size() != static_cast<size_t>(vertex_count)) {
    throw ValidationError("edges do not form a connected tree");
  }
  std::vector<Clade> below(static_cast<size_t>(vertex_count), Clade(static_cast<size_t>(n)));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    if (v < n) below[static_cast<size_t>(v)].Set(static_cast<size_t>(v));
    if (parent[static_cast<size_t>(v)] >= 0) {
      auto &up = below[static_cast<size_t>(parent[static_cast<size_t>(v)])];
      up = up | below[static_cast<size_t>(v)];
    }
  }
  auto children_of = [&](int v) {
    std::vector<int> children;
    for (int w : raw[static_cast<size_t>(v)]) {
      if (w != parent[static_cast<size_t>(v)]) children.push_back(w);
    }
    std::sort(children.begin(), children.end(), [&](int a, int b) {
      return below[static_cast<size_t>(a)] > below[static_cast<size_t>(b)];
    });
    return children;
  };

  // Relabel internal vertices in preorder, visiting larger clades first.
  std::vector<int> relabel(static_cast<size_t>(vertex_count), -1);
  for (int v = 0; v < n; ++v) relabel[static_cast<size_t>(v)] = v;
  std::vector<int> preorder_vertices;
  int next_internal = n;
  stack.assign({raw[0][0]});
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    preorder_vertices.push_back(v);
    if (v < n) continue;
    relabel[static_cast<size_t>(v)] = next_internal++;
    auto children = children_of(v);
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
  }

  // Pendant edges take their taxon's id; internal edges follow in clade order.
  std::vector<int> internal_heads;
  for (int v : preorder_vertices) {
    if (v >= n && parent[static_cast<size_t>(v)] >= n) internal_heads.push_back(v);
  }
  std::sort(internal_heads.begin(), internal_heads.end(), [&](int a, int b) {
    return below[static_cast<size_t>(a)] > below[static_cast<size_t>(b)];
  });
  std::vector<int> edge_of_head(static_cast<size_t>(vertex_count), -1);
  for (int v = 0; v < n; ++v) {
    edge_of_head[static_cast<size_t>(v == 0 ? raw[0][0] : v)] = v;
  }
  for (size_t i = 0; i < internal_heads.size(); ++i) {
    edge_of_head[static_cast<size_t>(internal_heads[i])] = n + static_cast<int>(i);
  }

  edges_.resize(edges.size());
  away_clades_.resize(edges.size());
  auto add_edge = [&](int tail, int head) {
    const int e = edge_of_head[static_cast<size_t>(head)];
    edges_[static_cast<size_t>(e)] = {relabel[static_cast<size_t>(tail)],
                                      relabel[static_cast<size_t>(head)]};
    away_clades_[static_cast<size_t>(e)] = below[static_cast<size_t>(head)];
    preorder_.push_back(e);
  };
  // Leaf 0 is the tail of edge 0; its pendant edge is keyed by its neighbour.
  edge_of_head[0] = -1;
  add_edge(0, raw[0][0]);
  for (int v : preorder_vertices) {
    if (v == raw[0][0]) continue;
    add_edge(parent[static_cast<size_t>(v)], v);
  }

  adjacency_.resize(static_cast<size_t>(vertex_count));
  auto link = [&](int v, int w, int e) {
    auto &adj = adjacency_[static_cast<size_t>(v)];
    adj.vertex[static_cast<size_t>(adj.degree)] = w;
    adj.edge[static_cast<size_t>(adj.degree)] = e;
    ++adj.degree;
  };
  // Preorder insertion puts each internal vertex's parent edge first, then its
  // children in clade order.
  for (int e : preorder_) {
    const auto &edge = edges_[static_cast<size_t>(e)];
    link(edge.tail, edge.head, e);
    link(edge.head, edge.tail, e);
  }
}

std::optional<size_t> UnrootedTopology::FindEdge(const Clade &away) const {
  for (size_t e = 0; e < away_clades_.size(); ++e) {
    if (away_clades_[e] == away) return e;
  }
  return std::nullopt;
}

bool operator==(const UnrootedTopology &a, const UnrootedTopology &b) {
  if (!SameTaxa(a.taxa_, b.taxa_) || a.edges_.size() != b.edges_.size()) return false;
  for (size_t e = 0; e < a.edges_.size(); ++e) {
    if (a.edges_[e].tail != b.edges_[e].tail || a.edges_[e].head != b.edges_[e].head) {
      return false;
    }
  }
  return true;
}

// ** Rooting

RootedTopology RootAtEdge(const UnrootedTopology &tree, size_t e) {
  if (e >= tree.EdgeCount()) {
    throw UsageError("edge " + std::to_string(e) + " out of range 0.." +
                     std::to_string(tree.EdgeCount() - 1));
  }
  const size_t n = tree.LeafCount();
  std::vector<RootedTopology::Node> nodes;
  nodes.reserve(2 * n - 1);
  std::vector<Clade> clades;
  clades.reserve(2 * n - 1);

  // Builds the subtree hanging off `vertex` when entered from `from`.
  std::function<int(int, int)> build = [&](int vertex, int from) -> int {
    RootedTopology::Node node;
    Clade clade(n);
    if (tree.IsLeaf(vertex)) {
      node.taxon = vertex;
      clade.Set(static_cast<size_t>(vertex));
    } else {
      std::array<int, 2> kids{};
      int k = 0;
      const auto &adj = tree.Neighbors(vertex);
      for (int i = 0; i < adj.degree; ++i) {
        if (adj.vertex[static_cast<size_t>(i)] != from) {
          kids[static_cast<size_t>(k++)] = build(adj.vertex[static_cast<size_t>(i)], vertex);
        }
      }
      if (clades[static_cast<size_t>(kids[0])] < clades[static_cast<size_t>(kids[1])]) {
        std::swap(kids[0], kids[1]);
      }
      node.left = kids[0];
      node.right = kids[1];
      clade = clades[static_cast<size_t>(kids[0])] | clades[static_cast<size_t>(kids[1])];
    }
    nodes.push_back(node);
    clades.push_back(clade);
    return static_cast<int>(nodes.size()) - 1;
  };

  const auto &edge = tree.EdgeAt(e);
  int a = build(edge.tail, edge.head);
  int b = build(edge.head, edge.tail);
  if (clades[static_cast<size_t>(a)] < clades[static_cast<size_t>(b)]) std::swap(a, b);
  RootedTopology::Node root;
  root.left = a;
  root.right = b;
  nodes.push_back(root);
  const int root_index = static_cast<int>(nodes.size()) - 1;
  return RootedTopology(tree.Taxa(), std::move(nodes), root_index);
}

UnrootedWithEdge Unroot(const RootedTopology &tree) {
  const int n = static_cast<int>(tree.LeafCount());
  if (n < 3) throw ValidationError("unrooting needs at least 3 taxa");
  const auto &nodes = tree.Nodes();
  std::vector<int> vertex(nodes.size(), -1);
  int next_internal = n;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (static_cast<int>(i) == tree.Root()) continue;
    vertex[i] = nodes[i].IsLeaf() ? nodes[i].taxon : next_internal++;
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(2 * n - 3));
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].IsLeaf() || static_cast<int>(i) == tree.Root()) continue;
    edges.emplace_back(vertex[i], vertex[static_cast<size_t>(nodes[i].left)]);
    edges.emplace_back(vertex[i], vertex[static_cast<size_t>(nodes[i].right)]);
  }
  const auto &root = tree.At(tree.Root());
  edges.emplace_back(vertex[static_cast<size_t>(root.left)],
                     vertex[static_cast<size_t>(root.right)]);

  UnrootedTopology unrooted(tree.Taxa(), edges);
  Clade side = tree.NodeClades()[static_cast<size_t>(root.left)];
  if (side.Test(0)) side = ~side;
  auto e = unrooted.FindEdge(side);
  if (!e) throw InternalError("root edge not found after unrooting");
  return {std::move(unrooted), *e};
}

}  // namespace sbn
