// Exhaustive enumeration of small tree spaces and uniform random trees.
//
// Unrooted trees are generated by stepwise leaf insertion: taxon k is attached to
// every edge, in order, of every tree on the first k taxa. The resulting order is
// deterministic and is what simulation targets index into.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sbn/random.hpp"
#include "sbn/topology.hpp"

namespace sbn {

constexpr size_t kDefaultEnumerationCap = 10;

// kDefaultEnumerationCap unless SBN_ENUM_CAP holds a positive integer.
size_t EnumerationCap();
// Throws CapExceededError if n > cap, ValidationError if n < 3.
void CheckEnumerable(size_t n, size_t cap);

// (2n-5)!! and (2n-3)!!.
uint64_t UnrootedTreeCount(size_t n);
uint64_t RootedTreeCount(size_t n);

void ForEachUnrooted(const TaxonSetPtr &taxa,
                     const std::function<void(const UnrootedTopology &)> &visit,
                     size_t cap = EnumerationCap());
// Each unrooted tree rooted at edges 0..2n-4 in turn.
void ForEachRooted(const TaxonSetPtr &taxa,
                   const std::function<void(const RootedTopology &)> &visit,
                   size_t cap = EnumerationCap());

std::vector<UnrootedTopology> EnumerateUnrooted(const TaxonSetPtr &taxa,
                                                size_t cap = EnumerationCap());
std::vector<RootedTopology> EnumerateRooted(const TaxonSetPtr &taxa,
                                            size_t cap = EnumerationCap());

// Uniform over unrooted (resp. rooted) topologies.
UnrootedTopology RandomUnrooted(const TaxonSetPtr &taxa, Rng &rng);
RootedTopology RandomRooted(const TaxonSetPtr &taxa, Rng &rng);

}  // namespace sbn
