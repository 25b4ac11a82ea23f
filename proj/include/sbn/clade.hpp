// A clade is a subset of the taxon set stored as a fixed-width bit vector.
//
// Bits are packed so that taxon 0 is the most significant bit of the first word.
// Comparing the words in order therefore compares clades lexicographically as bit
// strings, e.g. over (A,B,C,D) the clade {A,B} = 1100 is greater than {A,C} = 1010.
// This is the total order used to orient subsplits.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sbn {

class Clade {
 public:
  static constexpr size_t kWordBits = 64;
  static constexpr size_t kWords = 4;
  static constexpr size_t kMaxTaxa = kWordBits * kWords;

  Clade() = default;
  // Empty clade over `width` taxa.
  explicit Clade(size_t width);
  // Clade from a string of '0'/'1' characters, taxon 0 first.
  static Clade FromBitString(const std::string &bits);
  static Clade Singleton(size_t width, size_t taxon);
  static Clade Full(size_t width);

  size_t Width() const { return width_; }
  bool Test(size_t taxon) const {
    return (words_[taxon / kWordBits] >> (kWordBits - 1 - taxon % kWordBits)) & 1U;
  }
  void Set(size_t taxon);
  void Reset(size_t taxon);

  size_t Count() const;
  bool Empty() const;
  bool IsDisjoint(const Clade &other) const;
  bool IsSubsetOf(const Clade &other) const;
  // Index of the lowest-numbered member; Width() if empty.
  size_t First() const;
  std::vector<size_t> Members() const;
  std::string ToBitString() const;

  Clade operator|(const Clade &other) const;
  Clade operator&(const Clade &other) const;
  // Complement within the taxon set.
  Clade operator~() const;

  size_t Hash() const;

  friend bool operator==(const Clade &a, const Clade &b) = default;
  // Lexicographic bit-string order. Throws UsageError on width mismatch.
  friend std::strong_ordering operator<=>(const Clade &a, const Clade &b);

 private:
  void CheckWidth(const Clade &other) const;

  std::array<uint64_t, kWords> words_{};
  uint16_t width_ = 0;
};

// The clade order: greater, equal or less.
inline std::strong_ordering CladeCompare(const Clade &a, const Clade &b) { return a <=> b; }

inline size_t HashCombine(size_t seed, size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace sbn

template <>
struct std::hash<sbn::Clade> {
  size_t operator()(const sbn::Clade &clade) const { return clade.Hash(); }
};
