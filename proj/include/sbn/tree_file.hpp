// Tree sample files: one tree per line, either "<newick>" or
// "<count><TAB><newick>" with a positive integer count. Blank lines and lines starting
// with '#' are skipped.

#pragma once

#include <istream>
#include <string>
#include <vector>

#include "sbn/newick.hpp"

namespace sbn {

struct TreeRecord {
  double weight = 1.0;
  std::string newick;
  size_t line = 0;
  size_t column = 1;  // column where the Newick text starts
};

std::vector<TreeRecord> ReadTreeRecords(std::istream &in);

struct TreeSample {
  TaxonSetPtr taxa;
  std::vector<Weighted<ParsedTree>> trees;
  std::vector<std::string> texts;  // Newick text of each record, as given
};

// When `taxa` is null the taxon set is taken from the first tree, in order of leaf
// appearance.
TreeSample LoadTreeSample(std::istream &in, TaxonSetPtr taxa = nullptr);
TreeSample LoadTreeSampleFile(const std::string &path, TaxonSetPtr taxa = nullptr);

// Rooted records are unrooted.
UnrootedSample ToUnrootedSample(const TreeSample &sample);
// Throws ValidationError if any record is unrooted.
RootedSample ToRootedSample(const TreeSample &sample);

}  // namespace sbn
