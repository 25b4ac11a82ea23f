#include "sbn/tree_file.hpp"

#include <charconv>
#include <fstream>

#include "sbn/errors.hpp"

namespace sbn {

std::vector<TreeRecord> ReadTreeRecords(std::istream &in) {
  std::vector<TreeRecord> records;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    TreeRecord record;
    record.line = line_number;
    const size_t tab = line.find('\t');
    if (tab != std::string::npos && line.find('(') > tab) {
      const std::string count = line.substr(0, tab);
      uint64_t value = 0;
      auto [end, ec] = std::from_chars(count.data(), count.data() + count.size(), value);
      if (count.empty() || ec != std::errc() || end != count.data() + count.size() || value == 0) {
        throw ParseError("tree count must be a positive integer, got '" + count + "'",
                         line_number, 1);
      }
      record.weight = static_cast<double>(value);
      record.newick = line.substr(tab + 1);
      record.column = tab + 2;
    } else {
      record.newick = line;
    }
    records.push_back(std::move(record));
  }
  return records;
}

TreeSample LoadTreeSample(std::istream &in, TaxonSetPtr taxa) {
  TreeSample sample;
  for (const auto &record : ReadTreeRecords(in)) {
    NewickNode syntax = ParseNewickSyntax(record.newick, record.line, record.column);
    if (!taxa) taxa = MakeTaxa(LeafNames(syntax));
    try {
      sample.trees.push_back({ToTopology(syntax, taxa), record.weight});
    } catch (const ValidationError &e) {
      throw ValidationError("line " + std::to_string(record.line) + ": " + e.what());
    }
    sample.texts.push_back(record.newick);
  }
  sample.taxa = std::move(taxa);
  return sample;
}

TreeSample LoadTreeSampleFile(const std::string &path, TaxonSetPtr taxa) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return LoadTreeSample(in, std::move(taxa));
}

UnrootedSample ToUnrootedSample(const TreeSample &sample) {
  UnrootedSample out;
  out.reserve(sample.trees.size());
  for (const auto &[tree, weight] : sample.trees) out.push_back({AsUnrooted(tree), weight});
  return out;
}

RootedSample ToRootedSample(const TreeSample &sample) {
  RootedSample out;
  out.reserve(sample.trees.size());
  for (size_t i = 0; i < sample.trees.size(); ++i) {
    const auto *rooted = std::get_if<RootedTopology>(&sample.trees[i].tree);
    if (!rooted) {
      throw ValidationError("tree " + std::to_string(i + 1) +
                            " is unrooted; rooted estimation needs binary roots");
    }
    out.push_back({*rooted, sample.trees[i].weight});
  }
  return out;
}

}  // namespace sbn
