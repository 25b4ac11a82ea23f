#include <doctest.h>

#include <set>
#include <sstream>

#include "sbn/errors.hpp"
#include "sbn/tree_file.hpp"
#include "test_support.hpp"

using namespace sbn;
using namespace sbn::testing;

TEST_CASE("Newick: a binary root gives a rooted tree") {
  auto taxa = Abcd();
  auto parsed = ParseNewick("(((A,B),C),D);", taxa);
  REQUIRE(std::holds_alternative<RootedTopology>(parsed));
  CHECK(std::get<RootedTopology>(parsed).Nodes().size() == 7);
}

TEST_CASE("Newick: a trifurcating root gives an unrooted tree") {
  auto taxa = Taxa({"A", "B", "C", "D", "E"});
  auto parsed = ParseNewick("((A,B),(C,D),E);", taxa);
  REQUIRE(std::holds_alternative<UnrootedTopology>(parsed));
  CHECK(std::get<UnrootedTopology>(parsed).EdgeCount() == 7);
}

TEST_CASE("Newick: branch lengths, labels, comments and quotes are accepted") {
  auto taxa = Taxa({"A", "B", "C", "my taxon"});
  auto a = Unrooted(taxa, "((A:0.1,B:2e-3)0.95:1,[comment]C:0.5,'my taxon':1.0);");
  auto b = Unrooted(taxa, "(C,'my taxon',(B,A));");
  CHECK(a == b);
}

TEST_CASE("Newick: errors carry positions") {
  auto taxa = Abcd();
  CHECK_THROWS_AS(ParseNewick("((A,B),(A,C));", taxa), ParseError);
  CHECK_THROWS_AS(ParseNewick("((A,B),(C,E));", taxa), ParseError);
  CHECK_THROWS_AS(ParseNewick("((A,B,C),D);", taxa), ParseError);
  CHECK_THROWS_AS(ParseNewick("((A,B),(C,D))", taxa), ParseError);
  CHECK_THROWS_AS(ParseNewick("((A,B),C);", taxa), ValidationError);
  try {
    ParseNewick("((A,B),\n(C,X));", taxa);
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.Line() == 2);
    CHECK(e.Column() == 4);
  }
}

TEST_CASE("Newick: writing and reading back preserves the tree") {
  auto taxa = Abcd();
  auto rooted = Rooted(taxa, "(((A,B),C),D);");
  CHECK(TreeIdOf(Rooted(taxa, WriteNewick(rooted))) == TreeIdOf(rooted));
  CHECK(TreeIdOf(Rooted(taxa, "(D,(C,(B,A)));")) == TreeIdOf(rooted));

  auto six = Numbered(6);
  for (const auto &tree : EnumerateUnrooted(six)) {
    CHECK(Unrooted(six, WriteNewick(tree)) == tree);
    CHECK(TreeIdOf(Unrooted(six, WriteNewick(tree))) == TreeIdOf(tree));
  }
}

TEST_CASE("Newick: the running example's decomposition appears in the written tree") {
  auto eight = EightTaxa();
  auto tree = Rooted(eight, "(((O1,O2),(O3,(O4,O5))),((O6,O7),O8));");
  CHECK(WriteNewick(tree) == "(((O1,O2),(O3,(O4,O5))),((O6,O7),O8));");
}

TEST_CASE("UnrootedTopology: shape invariants") {
  auto taxa = Numbered(9);
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    auto tree = RandomUnrooted(taxa, rng);
    CHECK(tree.EdgeCount() == 2 * 9 - 3);
    for (int v = 9; v < 2 * 9 - 2; ++v) CHECK(tree.Neighbors(v).degree == 3);
    for (int v = 0; v < 9; ++v) CHECK(tree.Neighbors(v).degree == 1);
    // Pendant edge i belongs to taxon i.
    for (size_t e = 0; e < 9; ++e) {
      CHECK(tree.AwayClade(e).Count() == (e == 0 ? 8U : 1U));
    }
  }
}

TEST_CASE("RootAtEdge: the four-taxon example") {
  auto taxa = Abcd();
  auto tree = Unrooted(taxa, "((A,B),C,D);");
  // Edges 0..3 are the pendant edges of A..D and edge 4 is the internal edge.
  CHECK(WriteNewick(RootAtEdge(tree, 0)) == "(A,(B,(C,D)));");
  CHECK(WriteNewick(RootAtEdge(tree, 4)) == "((A,B),(C,D));");
  CHECK(WriteNewick(RootAtEdge(tree, 3)) == "(((A,B),C),D);");
  CHECK_THROWS_AS(RootAtEdge(tree, 5), UsageError);
}

TEST_CASE("RootAtEdge and Unroot are inverse") {
  auto taxa = Numbered(8);
  Rng rng(11);
  for (int i = 0; i < 10; ++i) {
    auto tree = RandomUnrooted(taxa, rng);
    std::set<TreeId> rooted_ids;
    for (size_t e = 0; e < tree.EdgeCount(); ++e) {
      auto rooted = RootAtEdge(tree, e);
      CHECK(rooted.Nodes()[static_cast<size_t>(rooted.Root())].left >= 0);
      auto back = Unroot(rooted);
      CHECK(back.tree == tree);
      CHECK(back.edge == e);
      CHECK(TreeIdOf(back.tree) == TreeIdOf(tree));
      rooted_ids.insert(TreeIdOf(rooted));
    }
    CHECK(rooted_ids.size() == tree.EdgeCount());
  }
}

TEST_CASE("Enumeration: counts and distinctness") {
  const uint64_t unrooted[] = {1, 3, 15, 105, 945, 10395, 135135};
  for (size_t n = 3; n <= 8; ++n) {
    CHECK(UnrootedTreeCount(n) == unrooted[n - 3]);
    CHECK(RootedTreeCount(n) == (n == 3 ? 3 : unrooted[n - 2]));
  }
  CHECK(EnumerateUnrooted(Numbered(4)).size() == 3);
  CHECK(EnumerateRooted(Numbered(3)).size() == 3);
  CHECK(EnumerateRooted(Numbered(4)).size() == 15);
  CHECK(EnumerateRooted(Numbered(5)).size() == 105);

  std::set<TreeId> ids;
  for (const auto &tree : EnumerateUnrooted(Numbered(6))) ids.insert(TreeIdOf(tree));
  CHECK(ids.size() == 105);
  std::set<TreeId> rooted_ids;
  for (const auto &tree : EnumerateRooted(Numbered(5))) rooted_ids.insert(TreeIdOf(tree));
  CHECK(rooted_ids.size() == 105);
}

TEST_CASE("Enumeration: the cap is enforced") {
  CHECK_THROWS_AS(EnumerateUnrooted(Numbered(12)), CapExceededError);
  CHECK_THROWS_AS(EnumerateUnrooted(Numbered(6), 5), CapExceededError);
  CHECK_NOTHROW(CheckEnumerable(10, 10));
}

TEST_CASE("Enumeration: order is deterministic") {
  auto a = EnumerateUnrooted(Numbered(6));
  auto b = EnumerateUnrooted(Numbered(6));
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  CHECK(WriteNewick(EnumerateUnrooted(Numbered(4))[0]) == "(t1,(t2,t3),t4);");
}

TEST_CASE("TreeFile: counts, comments and inferred taxa") {
  std::istringstream in("# sample\n\n3\t((A,B),(C,D));\n(((A,C),B),D);\n");
  auto sample = LoadTreeSample(in);
  REQUIRE(sample.trees.size() == 2);
  CHECK(sample.trees[0].weight == 3.0);
  CHECK(sample.taxa->Names() == std::vector<std::string>{"A", "B", "C", "D"});
  auto unrooted = ToUnrootedSample(sample);
  CHECK(unrooted[1].tree.EdgeCount() == 5);
  CHECK_NOTHROW(ToRootedSample(sample));

  std::istringstream bad("0\t((A,B),(C,D));\n");
  CHECK_THROWS_AS(LoadTreeSample(bad), ParseError);
  std::istringstream mixed("((A,B),(C,D));\n((A,B),C,D);\n");
  CHECK_THROWS_AS(ToRootedSample(LoadTreeSample(mixed)), ValidationError);
}
