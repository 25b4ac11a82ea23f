#include "sbn/clade.hpp"

#include <bit>

#include "sbn/errors.hpp"

namespace sbn {

namespace {

uint64_t Mask(size_t taxon) {
  return uint64_t{1} << (Clade::kWordBits - 1 - taxon % Clade::kWordBits);
}

}  // namespace

Clade::Clade(size_t width) : width_(static_cast<uint16_t>(width)) {
  if (width > kMaxTaxa) {
    throw UsageError("clade width " + std::to_string(width) + " exceeds " +
                     std::to_string(kMaxTaxa));
  }
}

Clade Clade::FromBitString(const std::string &bits) {
  Clade clade(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      clade.Set(i);
    } else if (bits[i] != '0') {
      throw UsageError("bit string may only contain '0' and '1': " + bits);
    }
  }
  return clade;
}

Clade Clade::Singleton(size_t width, size_t taxon) {
  Clade clade(width);
  clade.Set(taxon);
  return clade;
}

Clade Clade::Full(size_t width) { return ~Clade(width); }

void Clade::Set(size_t taxon) {
  if (taxon >= width_) throw UsageError("taxon index out of range");
  words_[taxon / kWordBits] |= Mask(taxon);
}

void Clade::Reset(size_t taxon) {
  if (taxon >= width_) throw UsageError("taxon index out of range");
  words_[taxon / kWordBits] &= ~Mask(taxon);
}

size_t Clade::Count() const {
  size_t count = 0;
  for (auto word : words_) count += static_cast<size_t>(std::popcount(word));
  return count;
}

bool Clade::Empty() const {
  for (auto word : words_) {
    if (word != 0) return false;
  }
  return true;
}

bool Clade::IsDisjoint(const Clade &other) const {
  CheckWidth(other);
  for (size_t i = 0; i < kWords; ++i) {
    if ((words_[i] & other.words_[i]) != 0) return false;
  }
  return true;
}

bool Clade::IsSubsetOf(const Clade &other) const {
  CheckWidth(other);
  for (size_t i = 0; i < kWords; ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

size_t Clade::First() const {
  for (size_t i = 0; i < kWords; ++i) {
    if (words_[i] != 0) {
      return i * kWordBits + static_cast<size_t>(std::countl_zero(words_[i]));
    }
  }
  return width_;
}

std::vector<size_t> Clade::Members() const {
  std::vector<size_t> members;
  for (size_t i = 0; i < width_; ++i) {
    if (Test(i)) members.push_back(i);
  }
  return members;
}

std::string Clade::ToBitString() const {
  std::string bits(width_, '0');
  for (size_t i = 0; i < width_; ++i) {
    if (Test(i)) bits[i] = '1';
  }
  return bits;
}

Clade Clade::operator|(const Clade &other) const {
  CheckWidth(other);
  Clade result(*this);
  for (size_t i = 0; i < kWords; ++i) result.words_[i] |= other.words_[i];
  return result;
}

Clade Clade::operator&(const Clade &other) const {
  CheckWidth(other);
  Clade result(*this);
  for (size_t i = 0; i < kWords; ++i) result.words_[i] &= other.words_[i];
  return result;
}

Clade Clade::operator~() const {
  Clade result(*this);
  size_t remaining = width_;
  for (size_t i = 0; i < kWords; ++i) {
    uint64_t valid = 0;
    if (remaining >= kWordBits) {
      valid = ~uint64_t{0};
      remaining -= kWordBits;
    } else if (remaining > 0) {
      valid = ~uint64_t{0} << (kWordBits - remaining);
      remaining = 0;
    }
    result.words_[i] = ~words_[i] & valid;
  }
  return result;
}

size_t Clade::Hash() const {
  size_t seed = width_;
  for (auto word : words_) seed = HashCombine(seed, std::hash<uint64_t>{}(word));
  return seed;
}

std::strong_ordering operator<=>(const Clade &a, const Clade &b) {
  a.CheckWidth(b);
  for (size_t i = 0; i < Clade::kWords; ++i) {
    if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
  }
  return std::strong_ordering::equal;
}

void Clade::CheckWidth(const Clade &other) const {
  if (width_ != other.width_) {
    throw UsageError("clade width mismatch: " + std::to_string(width_) + " vs " +
                     std::to_string(other.width_));
  }
}

}  // namespace sbn
