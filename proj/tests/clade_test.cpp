#include <doctest.h>

#include "sbn/errors.hpp"
#include "sbn/subsplit.hpp"
#include "test_support.hpp"

using namespace sbn;
using namespace sbn::testing;

TEST_CASE("Clade: bit-lexicographic order with taxon 0 most significant") {
  auto taxa = Abcd();
  CHECK(C(taxa, "A,B") > C(taxa, "A,C"));
  CHECK(Clade::FromBitString("1100") > Clade::FromBitString("1010"));
  CHECK((C(taxa, "B,C") <=> C(taxa, "B,C")) == std::strong_ordering::equal);

  auto eight = EightTaxa();
  const Clade c2 = C(eight, "O1,O2,O3,O4,O5");
  const Clade c3 = C(eight, "O6,O7,O8");
  CHECK(c2 > c3);
  const Subsplit root = MakeSubsplit(c3, c2);
  CHECK(root.y == c2);
  CHECK(root.z == c3);
}

TEST_CASE("Clade: comparing different widths is a usage error") {
  CHECK_THROWS_AS((void)(Clade::FromBitString("110") < Clade::FromBitString("1100")),
                  UsageError);
}

TEST_CASE("Clade: order is a strict total order on every clade up to five taxa") {
  for (size_t n = 1; n <= 5; ++n) {
    std::vector<Clade> all;
    for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
      Clade c(n);
      for (size_t i = 0; i < n; ++i) {
        if ((bits >> (n - 1 - i)) & 1U) c.Set(i);
      }
      all.push_back(c);
    }
    // Enumerated in increasing binary value, so the order must match the index.
    for (size_t i = 0; i < all.size(); ++i) {
      for (size_t j = 0; j < all.size(); ++j) {
        CHECK(((all[i] <=> all[j]) == (i <=> j)));
      }
    }
  }
}

TEST_CASE("Clade: set operations and rendering") {
  Clade a = Clade::FromBitString("10110");
  CHECK(a.Count() == 3);
  CHECK(a.First() == 0);
  CHECK(a.Members() == std::vector<size_t>{0, 2, 3});
  CHECK((~a).ToBitString() == "01001");
  CHECK((a & Clade::FromBitString("00111")).ToBitString() == "00110");
  CHECK((a | Clade::FromBitString("01000")).ToBitString() == "11110");
  CHECK(a.IsDisjoint(Clade::FromBitString("01001")));
  CHECK(Clade::FromBitString("00110").IsSubsetOf(a));
  CHECK(Clade(5).Empty());
  CHECK(Clade::Full(5).Count() == 5);
}

TEST_CASE("Clade: clades wider than one machine word") {
  const size_t n = 130;
  Clade a(n), b(n);
  a.Set(0);
  a.Set(129);
  b.Set(1);
  b.Set(64);
  CHECK(a > b);
  CHECK(a.Count() == 2);
  CHECK((~a).Count() == 128);
  CHECK((a | b).Members() == std::vector<size_t>{0, 1, 64, 129});
  CHECK(a.Hash() != b.Hash());
}

TEST_CASE("Subsplit: construction normalizes the order of the parts") {
  auto taxa = Taxa({"O1", "O2", "O3"});
  const Subsplit s = MakeSubsplit(C(taxa, "O2,O3"), C(taxa, "O1"));
  CHECK(s.y == C(taxa, "O1"));
  CHECK(s.z == C(taxa, "O2,O3"));
  CHECK(MakeSubsplit(C(taxa, "O1"), C(taxa, "O2,O3")) == s);
  CHECK(SubsplitToString(s, *taxa) == "O1|O2,O3");
}

TEST_CASE("Subsplit: overlapping or empty parts are rejected") {
  auto taxa = Abcd();
  CHECK_THROWS_AS(MakeSubsplit(C(taxa, "A"), C(taxa, "A,B")), InvalidSubsplitError);
  CHECK_THROWS_AS(MakeSubsplit(Clade(4), C(taxa, "A,B")), InvalidSubsplitError);
}

TEST_CASE("Subsplit: re-splitting the union by one part gives the subsplit back") {
  const size_t n = 5;
  for (uint64_t bits = 1; bits < (uint64_t{1} << n); ++bits) {
    for (uint64_t sub = (bits - 1) & bits; sub > 0; sub = (sub - 1) & bits) {
      Clade y(n), z(n);
      for (size_t i = 0; i < n; ++i) {
        if ((sub >> i) & 1U) y.Set(i);
        if (((bits & ~sub) >> i) & 1U) z.Set(i);
      }
      const Subsplit s = MakeSubsplit(y, z);
      const Clade whole = s.UnionClade();
      CHECK(MakeSubsplit(s.y, whole & ~s.y) == s);
      CHECK(MakeSubsplit(whole & ~s.z, s.z) == s);
    }
  }
}

TEST_CASE("PcspKey: focal clade is the matching part of the parent") {
  auto eight = EightTaxa();
  const Subsplit parent = S(eight, "O1,O2,O3,O4,O5|O6,O7,O8");
  const Subsplit child = S(eight, "O1,O2|O3,O4,O5");
  const PcspKey key = MakePcsp(parent, child);
  CHECK(key.focal == C(eight, "O1,O2,O3,O4,O5"));
  CHECK(PcspToString(key, *eight) == "O1,O2,O3,O4,O5|O6,O7,O8→O1,O2|O3,O4,O5");

  auto taxa = Abcd();
  CHECK_THROWS_AS(MakePcsp(S(taxa, "A,B|C,D"), S(taxa, "A|B,C")), IncompatibleError);
  const PcspKey small = MakePcsp(S(taxa, "A,B,C|D"), S(taxa, "A|B,C"));
  CHECK(small.focal == C(taxa, "A,B,C"));
}

TEST_CASE("PcspKey: equality and hashing are structural") {
  auto taxa = Abcd();
  const PcspKey a = MakePcsp(S(taxa, "A,B,C|D"), S(taxa, "A|B,C"));
  const PcspKey b = MakePcsp(S(taxa, "A,B,C|D"), S(taxa, "A|B,C"));
  CHECK(a == b);
  CHECK(std::hash<PcspKey>{}(a) == std::hash<PcspKey>{}(b));
  CHECK_FALSE(a == MakePcsp(S(taxa, "A,B,C|D"), S(taxa, "A,B|C")));
}

TEST_CASE("Subsplit: text parsing rejects malformed or non-canonical input") {
  auto taxa = Abcd();
  CHECK(SubsplitFromString("A,B|C,D", *taxa) == MakeSubsplit(C(taxa, "A,B"), C(taxa, "C,D")));
  CHECK_THROWS_AS(SubsplitFromString("C,D|A,B", *taxa), ParseError);
  CHECK_THROWS_AS(SubsplitFromString("A,B", *taxa), ParseError);
  CHECK_THROWS_AS(SubsplitFromString("A,E|C", *taxa), ParseError);
}
