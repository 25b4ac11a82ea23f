#include "sbn/enumerate.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#include "sbn/errors.hpp"

namespace sbn {

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

EdgeList Star(int n) { return {{0, n}, {1, n}, {2, n}}; }

// Attaches taxon k to edges[i] through a new internal vertex.
void Insert(EdgeList &edges, size_t i, int k, int internal) {
  const int head = edges[i].second;
  edges[i].second = internal;
  edges.emplace_back(internal, head);
  edges.emplace_back(internal, k);
}

void Remove(EdgeList &edges, size_t i) {
  edges.pop_back();
  edges[i].second = edges.back().second;
  edges.pop_back();
}

void Extend(const TaxonSetPtr &taxa, EdgeList &edges, int k,
            const std::function<void(const UnrootedTopology &)> &visit) {
  const int n = static_cast<int>(taxa->Size());
  if (k == n) {
    visit(UnrootedTopology(taxa, edges));
    return;
  }
  const size_t count = edges.size();
  for (size_t i = 0; i < count; ++i) {
    Insert(edges, i, k, n + k - 2);
    Extend(taxa, edges, k + 1, visit);
    Remove(edges, i);
  }
}

uint64_t OddDoubleFactorial(int64_t k) {
  uint64_t result = 1;
  for (int64_t i = k; i > 1; i -= 2) result *= static_cast<uint64_t>(i);
  return result;
}

}  // namespace

size_t EnumerationCap() {
  const char *env = std::getenv("SBN_ENUM_CAP");
  if (env == nullptr) return kDefaultEnumerationCap;
  size_t value = 0;
  auto [end, ec] = std::from_chars(env, env + std::strlen(env), value);
  if (ec != std::errc() || *end != '\0' || value == 0) return kDefaultEnumerationCap;
  return value;
}

void CheckEnumerable(size_t n, size_t cap) {
  if (n < 3) throw ValidationError("enumeration needs at least 3 taxa");
  if (n > cap) {
    throw CapExceededError("refusing to enumerate trees on " + std::to_string(n) +
                           " taxa; the cap is " + std::to_string(cap) +
                           " (raise it with SBN_ENUM_CAP)");
  }
}

uint64_t UnrootedTreeCount(size_t n) {
  return n < 3 ? 0 : OddDoubleFactorial(2 * static_cast<int64_t>(n) - 5);
}

uint64_t RootedTreeCount(size_t n) {
  return n < 2 ? 0 : OddDoubleFactorial(2 * static_cast<int64_t>(n) - 3);
}

void ForEachUnrooted(const TaxonSetPtr &taxa,
                     const std::function<void(const UnrootedTopology &)> &visit, size_t cap) {
  CheckEnumerable(taxa->Size(), cap);
  const int n = static_cast<int>(taxa->Size());
  EdgeList edges = Star(n);
  edges.reserve(static_cast<size_t>(2 * n));
  Extend(taxa, edges, 3, visit);
}

void ForEachRooted(const TaxonSetPtr &taxa,
                   const std::function<void(const RootedTopology &)> &visit, size_t cap) {
  ForEachUnrooted(
      taxa,
      [&](const UnrootedTopology &tree) {
        for (size_t e = 0; e < tree.EdgeCount(); ++e) visit(RootAtEdge(tree, e));
      },
      cap);
}

std::vector<UnrootedTopology> EnumerateUnrooted(const TaxonSetPtr &taxa, size_t cap) {
  std::vector<UnrootedTopology> trees;
  ForEachUnrooted(taxa, [&](const UnrootedTopology &tree) { trees.push_back(tree); }, cap);
  return trees;
}

std::vector<RootedTopology> EnumerateRooted(const TaxonSetPtr &taxa, size_t cap) {
  std::vector<RootedTopology> trees;
  ForEachRooted(taxa, [&](const RootedTopology &tree) { trees.push_back(tree); }, cap);
  return trees;
}

UnrootedTopology RandomUnrooted(const TaxonSetPtr &taxa, Rng &rng) {
  const int n = static_cast<int>(taxa->Size());
  if (n < 3) throw ValidationError("random unrooted trees need at least 3 taxa");
  EdgeList edges = Star(n);
  for (int k = 3; k < n; ++k) {
    Insert(edges, static_cast<size_t>(rng.UniformInt(edges.size())), k, n + k - 2);
  }
  return UnrootedTopology(taxa, edges);
}

RootedTopology RandomRooted(const TaxonSetPtr &taxa, Rng &rng) {
  const auto tree = RandomUnrooted(taxa, rng);
  return RootAtEdge(tree, static_cast<size_t>(rng.UniformInt(tree.EdgeCount())));
}

}  // namespace sbn
