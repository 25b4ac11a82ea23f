// Subsplits and parent-child subsplit pairs (PCSPs).
//
// A subsplit (Y,Z) divides the clade Y|Z into two disjoint nonempty parts with
// Y > Z in the clade order. A PCSP names one conditional parameter: the child
// subsplit that refines the `focal` part of a parent subsplit. Keys are plain values,
// so the same parent-child pair seen at different places in different trees maps to
// the same parameter.

#pragma once

#include <string>

#include "sbn/clade.hpp"
#include "sbn/taxon_set.hpp"

namespace sbn {

struct Subsplit {
  Clade y;
  Clade z;

  Clade UnionClade() const { return y | z; }
  size_t Hash() const { return HashCombine(y.Hash(), z.Hash()); }

  friend bool operator==(const Subsplit &, const Subsplit &) = default;
  friend auto operator<=>(const Subsplit &, const Subsplit &) = default;
};

// Orients the pair so the greater clade comes first. Throws InvalidSubsplitError if
// either part is empty or they overlap.
Subsplit MakeSubsplit(const Clade &a, const Clade &b);

// The (parent subsplit, focal clade) pair that a conditional distribution is defined
// on. Each parent subsplit carries two independent contexts, one per part.
struct ParentContext {
  Subsplit parent;
  Clade focal;

  size_t Hash() const { return HashCombine(parent.Hash(), focal.Hash()); }

  friend bool operator==(const ParentContext &, const ParentContext &) = default;
  friend auto operator<=>(const ParentContext &, const ParentContext &) = default;
};

struct PcspKey {
  Subsplit parent;
  Clade focal;
  Subsplit child;

  ParentContext Context() const { return {parent, focal}; }
  size_t Hash() const {
    return HashCombine(HashCombine(parent.Hash(), focal.Hash()), child.Hash());
  }

  friend bool operator==(const PcspKey &, const PcspKey &) = default;
  friend auto operator<=>(const PcspKey &, const PcspKey &) = default;
};

// Throws IncompatibleError unless the child's clade equals one part of the parent.
PcspKey MakePcsp(const Subsplit &parent, const Subsplit &child);

// Text forms: a clade is its taxon names joined by ",", a subsplit is "Y|Z" and a
// PCSP is "parentY|parentZ→childY|childZ".
std::string CladeToString(const Clade &clade, const TaxonSet &taxa);
std::string SubsplitToString(const Subsplit &subsplit, const TaxonSet &taxa);
std::string PcspToString(const PcspKey &pcsp, const TaxonSet &taxa);

// Inverses of the above; throw ParseError on malformed text (line/column unknown).
Clade CladeFromString(const std::string &text, const TaxonSet &taxa);
Subsplit SubsplitFromString(const std::string &text, const TaxonSet &taxa);

}  // namespace sbn

template <>
struct std::hash<sbn::Subsplit> {
  size_t operator()(const sbn::Subsplit &s) const { return s.Hash(); }
};
template <>
struct std::hash<sbn::ParentContext> {
  size_t operator()(const sbn::ParentContext &c) const { return c.Hash(); }
};
template <>
struct std::hash<sbn::PcspKey> {
  size_t operator()(const sbn::PcspKey &p) const { return p.Hash(); }
};
