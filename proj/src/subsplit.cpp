#include "sbn/subsplit.hpp"

#include "sbn/errors.hpp"

namespace sbn {

Subsplit MakeSubsplit(const Clade &a, const Clade &b) {
  if (a.Width() != b.Width()) throw UsageError("subsplit parts have different widths");
  if (a.Empty() || b.Empty()) throw InvalidSubsplitError("subsplit part is empty");
  if (!a.IsDisjoint(b)) throw InvalidSubsplitError("subsplit parts overlap");
  if (a > b) return {a, b};
  return {b, a};
}

PcspKey MakePcsp(const Subsplit &parent, const Subsplit &child) {
  const Clade child_clade = child.UnionClade();
  if (child_clade == parent.y) return {parent, parent.y, child};
  if (child_clade == parent.z) return {parent, parent.z, child};
  throw IncompatibleError("child subsplit does not refine either part of its parent");
}

std::string CladeToString(const Clade &clade, const TaxonSet &taxa) {
  if (clade.Width() != taxa.Size()) throw UsageError("clade width does not match taxa");
  std::string out;
  for (size_t i = 0; i < clade.Width(); ++i) {
    if (!clade.Test(i)) continue;
    if (!out.empty()) out += ',';
    out += taxa.Name(i);
  }
  return out;
}

std::string SubsplitToString(const Subsplit &subsplit, const TaxonSet &taxa) {
  return CladeToString(subsplit.y, taxa) + "|" + CladeToString(subsplit.z, taxa);
}

std::string PcspToString(const PcspKey &pcsp, const TaxonSet &taxa) {
  return SubsplitToString(pcsp.parent, taxa) + "→" + SubsplitToString(pcsp.child, taxa);
}

Clade CladeFromString(const std::string &text, const TaxonSet &taxa) {
  Clade clade(taxa.Size());
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string name = text.substr(start, end - start);
    auto index = taxa.Find(name);
    if (!index) throw ParseError("unknown taxon '" + name + "' in clade '" + text + "'", 0, 0);
    if (clade.Test(*index)) {
      throw ParseError("taxon '" + name + "' repeated in clade '" + text + "'", 0, 0);
    }
    clade.Set(*index);
    start = end + 1;
  }
  return clade;
}

Subsplit SubsplitFromString(const std::string &text, const TaxonSet &taxa) {
  const size_t bar = text.find('|');
  if (bar == std::string::npos || text.find('|', bar + 1) != std::string::npos) {
    throw ParseError("subsplit must have the form 'Y|Z': '" + text + "'", 0, 0);
  }
  const Clade y = CladeFromString(text.substr(0, bar), taxa);
  const Clade z = CladeFromString(text.substr(bar + 1), taxa);
  Subsplit subsplit = MakeSubsplit(y, z);
  if (subsplit.y != y) {
    throw ParseError("subsplit '" + text + "' is not in canonical order", 0, 0);
  }
  return subsplit;
}

}  // namespace sbn
