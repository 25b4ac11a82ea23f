// Newick reading and writing.
//
// Branch lengths, internal node labels and bracketed comments are accepted and
// discarded. A root with two children yields a rooted tree, a root with three
// children an unrooted one. Writers emit children in decreasing clade order, which
// makes the output a canonical identity for the topology.

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sbn/topology.hpp"

namespace sbn {

// Syntax tree of a Newick string before taxa are resolved.
struct NewickNode {
  std::string name;
  std::vector<NewickNode> children;
  size_t line = 0;
  size_t column = 0;
};

// Positions in errors are reported relative to (first_line, first_column).
NewickNode ParseNewickSyntax(std::string_view text, size_t first_line = 1,
                             size_t first_column = 1);

// Leaf names in order of appearance.
std::vector<std::string> LeafNames(const NewickNode &root);

using ParsedTree = std::variant<RootedTopology, UnrootedTopology>;

// Resolves leaves against `taxa`. Throws ParseError for unknown or duplicate taxa and
// for multifurcations, ValidationError if some taxon is missing.
ParsedTree ToTopology(const NewickNode &root, const TaxonSetPtr &taxa);
ParsedTree ParseNewick(std::string_view text, const TaxonSetPtr &taxa);

// Rooted input is unrooted; unrooted input is returned as is.
UnrootedTopology AsUnrooted(const ParsedTree &tree);

std::string WriteNewick(const RootedTopology &tree);
// Trifurcating at the neighbour of taxon 0, which is written first.
std::string WriteNewick(const UnrootedTopology &tree);
std::string WriteNewick(const ParsedTree &tree);

TreeId TreeIdOf(const RootedTopology &tree);
TreeId TreeIdOf(const UnrootedTopology &tree);

// Quotes a label if it contains Newick punctuation or whitespace.
std::string QuoteLabel(const std::string &label);

}  // namespace sbn
