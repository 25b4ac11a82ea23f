#include "sbn/taxon_set.hpp"

#include "sbn/clade.hpp"
#include "sbn/errors.hpp"

namespace sbn {

TaxonSet::TaxonSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > Clade::kMaxTaxa) {
    throw ValidationError("at most " + std::to_string(Clade::kMaxTaxa) +
                          " taxa are supported, got " + std::to_string(names_.size()));
  }
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw ValidationError("empty taxon name");
    if (!index_.emplace(names_[i], i).second) {
      throw ValidationError("duplicate taxon name '" + names_[i] + "'");
    }
  }
}

std::optional<size_t> TaxonSet::Find(const std::string &name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

size_t TaxonSet::IndexOf(const std::string &name) const {
  auto found = Find(name);
  if (!found) throw ValidationError("unknown taxon '" + name + "'");
  return *found;
}

TaxonSet TaxonSet::Numbered(size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (size_t i = 1; i <= count; ++i) names.push_back("t" + std::to_string(i));
  return TaxonSet(std::move(names));
}

}  // namespace sbn
