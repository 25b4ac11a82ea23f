// An ordered set of taxon names. The order fixes the meaning of every clade bit, so
// it must not change during a run.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace sbn {

class TaxonSet {
 public:
  explicit TaxonSet(std::vector<std::string> names);

  size_t Size() const { return names_.size(); }
  const std::string &Name(size_t index) const { return names_.at(index); }
  const std::vector<std::string> &Names() const { return names_; }

  std::optional<size_t> Find(const std::string &name) const;
  // Throws ValidationError for unknown names.
  size_t IndexOf(const std::string &name) const;

  friend bool operator==(const TaxonSet &a, const TaxonSet &b) {
    return a.names_ == b.names_;
  }

  // Default names t1..tn, used by the enumerate subcommand.
  static TaxonSet Numbered(size_t count);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, size_t> index_;
};

using TaxonSetPtr = std::shared_ptr<const TaxonSet>;

inline TaxonSetPtr MakeTaxa(std::vector<std::string> names) {
  return std::make_shared<const TaxonSet>(std::move(names));
}

// True if both pointers denote the same ordered names.
inline bool SameTaxa(const TaxonSetPtr &a, const TaxonSetPtr &b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace sbn
