// Shared helpers for the unit tests.

#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "sbn/enumerate.hpp"
#include "sbn/newick.hpp"
#include "sbn/params.hpp"
#include "sbn/random.hpp"
#include "sbn/subsplit.hpp"

namespace sbn::testing {

inline TaxonSetPtr Taxa(std::vector<std::string> names) { return MakeTaxa(std::move(names)); }

inline TaxonSetPtr Numbered(size_t n) {
  return std::make_shared<const TaxonSet>(TaxonSet::Numbered(n));
}

// The eight taxa O1..O8 of the running example.
inline TaxonSetPtr EightTaxa() {
  return Taxa({"O1", "O2", "O3", "O4", "O5", "O6", "O7", "O8"});
}

inline TaxonSetPtr Abcd() { return Taxa({"A", "B", "C", "D"}); }

inline RootedTopology Rooted(const TaxonSetPtr &taxa, const std::string &newick) {
  return std::get<RootedTopology>(ParseNewick(newick, taxa));
}

inline UnrootedTopology Unrooted(const TaxonSetPtr &taxa, const std::string &newick) {
  return AsUnrooted(ParseNewick(newick, taxa));
}

inline Clade C(const TaxonSetPtr &taxa, const std::string &names) {
  return CladeFromString(names, *taxa);
}

inline Subsplit S(const TaxonSetPtr &taxa, const std::string &text) {
  return SubsplitFromString(text, *taxa);
}

// Random consistent parameters supported on every subsplit: root and conditional
// probabilities drawn from a flat Dirichlet over all subsplits of each clade. Only
// practical for small N since every clade is enumerated.
SbnParams RandomDenseParams(const TaxonSetPtr &taxa, Rng &rng);

// Random consistent parameters covering at least the root splits and PCSPs of
// `trees`, with random positive weights; cheap for large N.
SbnParams RandomParamsFor(const std::vector<UnrootedTopology> &trees, Rng &rng);

}  // namespace sbn::testing
