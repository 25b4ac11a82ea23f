#include <doctest.h>

#include <map>
#include <set>

#include "sbn/counting.hpp"
#include "sbn/errors.hpp"
#include "sbn/estimators.hpp"
#include "test_support.hpp"

using namespace sbn;
using namespace sbn::testing;

namespace {

// Sorted copy of a table's entries with counts rendered to text for comparison.
std::map<std::string, double> Flatten(const CountsTable &counts) {
  std::map<std::string, double> out;
  for (const auto &[split, m] : counts.root_counts) {
    out["root " + SubsplitToString(split, *counts.taxa)] += m;
  }
  for (const auto &[pcsp, m] : counts.pcsp_counts) {
    out["pcsp " + PcspToString(pcsp, *counts.taxa)] += m;
  }
  return out;
}

void CheckSameCounts(const CountsTable &a, const CountsTable &b, double tolerance = 1e-12) {
  const auto fa = Flatten(a);
  const auto fb = Flatten(b);
  REQUIRE(fa.size() == fb.size());
  for (const auto &[key, m] : fa) {
    REQUIRE(fb.count(key) == 1);
    CHECK(fb.at(key) == doctest::Approx(m).epsilon(tolerance));
  }
}

}  // namespace

TEST_CASE("DecomposeRooted: the running example") {
  auto taxa = EightTaxa();
  auto tree = Rooted(taxa, "(((O1,O2),(O3,(O4,O5))),((O6,O7),O8));");
  const auto decomposition = DecomposeRooted(tree);
  CHECK(decomposition.root_split == S(taxa, "O1,O2,O3,O4,O5|O6,O7,O8"));
  REQUIRE(decomposition.pcsps.size() == 3);
  std::set<std::string> rendered;
  for (const auto &pcsp : decomposition.pcsps) rendered.insert(PcspToString(pcsp, *taxa));
  CHECK(rendered == std::set<std::string>{
                        "O1,O2,O3,O4,O5|O6,O7,O8→O1,O2|O3,O4,O5",
                        "O1,O2|O3,O4,O5→O3|O4,O5",
                        "O1,O2,O3,O4,O5|O6,O7,O8→O6,O7|O8",
                    });
}

TEST_CASE("DecomposeRooted: trees without nontrivial conditionals") {
  auto three = Taxa({"A", "B", "C"});
  auto small = DecomposeRooted(Rooted(three, "((A,B),C);"));
  CHECK(small.root_split == S(three, "A,B|C"));
  CHECK(small.pcsps.empty());

  auto taxa = Abcd();
  auto balanced = DecomposeRooted(Rooted(taxa, "((A,B),(C,D));"));
  CHECK(balanced.root_split == S(taxa, "A,B|C,D"));
  CHECK(balanced.pcsps.empty());
}

TEST_CASE("DecomposeRooted: distinct rooted trees have distinct decompositions") {
  for (size_t n = 3; n <= 6; ++n) {
    auto taxa = Numbered(n);
    std::set<std::pair<Subsplit, std::vector<PcspKey>>> seen;
    size_t count = 0;
    ForEachRooted(taxa, [&](const RootedTopology &tree) {
      auto d = DecomposeRooted(tree);
      std::sort(d.pcsps.begin(), d.pcsps.end(), [](const PcspKey &a, const PcspKey &b) {
        return std::tie(a.parent, a.focal, a.child) < std::tie(b.parent, b.focal, b.child);
      });
      seen.insert({d.root_split, d.pcsps});
      ++count;
    });
    CHECK(seen.size() == count);
    CHECK(count == RootedTreeCount(n));
  }
}

TEST_CASE("CollectRootedCounts: copies and shared pairs") {
  auto eight = EightTaxa();
  auto fig = Rooted(eight, "(((O1,O2),(O3,(O4,O5))),((O6,O7),O8));");
  auto counts = CollectRootedCounts({{fig, 4.0}});
  CHECK(counts.total_trees == 4.0);
  CHECK(counts.root_counts.size() == 1);
  CHECK(counts.root_counts.at(S(eight, "O1,O2,O3,O4,O5|O6,O7,O8")) == 4.0);
  auto once = CollectRootedCounts({{fig, 1.0}});
  CHECK(once.pcsp_counts.size() == 3);
  for (const auto &[pcsp, m] : once.pcsp_counts) CHECK(m == 1.0);

  // The pair (A|B,C,D -> B,C|D) sits at depth one in the first tree and depth two in
  // the second; both occurrences land on one parameter.
  auto six = Taxa({"A", "B", "C", "D", "E", "F"});
  auto shallow = Rooted(six, "((A,((B,C),D)),(E,F));");
  auto deep = Rooted(six, "(((A,((B,C),D)),E),F);");
  auto shared = CollectRootedCounts({{shallow, 1.0}, {deep, 1.0}});
  const PcspKey key = MakePcsp(S(six, "A|B,C,D"), S(six, "B,C|D"));
  CHECK(shared.pcsp_counts.at(key) == 2.0);
}

TEST_CASE("CollectSaCounts: four taxa") {
  auto taxa = Abcd();
  auto counts = CollectSaCounts({{Unrooted(taxa, "((A,B),C,D);"), 1.0}});
  REQUIRE(counts.root_counts.size() == 5);
  for (const auto &[split, m] : counts.root_counts) CHECK(m == doctest::Approx(0.2));
  CHECK(counts.RootTotal() == doctest::Approx(1.0));
}

TEST_CASE("CollectSaCounts: equals the average over all rootings") {
  auto taxa = Numbered(8);
  Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    auto tree = RandomUnrooted(taxa, rng);
    RootedSample rootings;
    for (size_t e = 0; e < tree.EdgeCount(); ++e) {
      rootings.push_back({RootAtEdge(tree, e), 1.0 / 13.0});
    }
    auto brute = CollectRootedCounts(rootings);
    auto sa = CollectSaCounts({{tree, 1.0}});
    CheckSameCounts(sa, brute);

    double total_pcsp = 0.0;
    for (const auto &[pcsp, m] : sa.pcsp_counts) total_pcsp += m;
    double expected = 0.0;
    for (const auto &[rooted, w] : rootings) expected += w * DecomposeRooted(rooted).pcsps.size();
    CHECK(total_pcsp == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("CollectSaCounts: root total equals the sample weight and groups add up") {
  auto taxa = Numbered(7);
  Rng rng(8);
  UnrootedSample trees;
  double total = 0.0;
  for (int i = 0; i < 12; ++i) {
    const double w = 1.0 + static_cast<double>(rng.UniformInt(5));
    trees.push_back({RandomUnrooted(taxa, rng), w});
    total += w;
  }
  auto counts = CollectSaCounts(trees);
  CHECK(counts.RootTotal() == doctest::Approx(total));
  CHECK(counts.total_trees == doctest::Approx(total));

  // A context's child counts add up to the weight of rootings in which the
  // parent subsplit occurs with that focal clade as a child clade.
  std::unordered_map<ParentContext, double> occurrences;
  for (const auto &[tree, w] : trees) {
    for (size_t e = 0; e < tree.EdgeCount(); ++e) {
      for (const auto &pcsp : DecomposeRooted(RootAtEdge(tree, e)).pcsps) {
        occurrences[pcsp.Context()] += w / static_cast<double>(tree.EdgeCount());
      }
    }
  }
  const auto totals = counts.ContextTotals();
  CHECK(totals.size() == occurrences.size());
  for (const auto &[context, m] : occurrences) {
    CHECK(totals.at(context) == doctest::Approx(m).epsilon(1e-12));
  }
}

TEST_CASE("CountsTable: partial tables merge by addition") {
  auto taxa = Numbered(6);
  Rng rng(2);
  UnrootedSample all, first, second;
  for (int i = 0; i < 10; ++i) {
    Weighted<UnrootedTopology> item{RandomUnrooted(taxa, rng), 1.0 + i};
    all.push_back(item);
    (i < 4 ? first : second).push_back(item);
  }
  auto merged = CollectSaCounts(first);
  merged += CollectSaCounts(second);
  CheckSameCounts(merged, CollectSaCounts(all));
  CHECK(merged.total_trees == doctest::Approx(55.0));
}

TEST_CASE("CollectEmCounts: SA parameters of one tree reproduce the SA counts") {
  auto taxa = Abcd();
  UnrootedSample trees = {{Unrooted(taxa, "((A,B),C,D);"), 1.0}};
  auto sa = CollectSaCounts(trees);
  auto em = CollectEmCounts(trees, FitFromCounts(sa));
  CHECK(em.zero_support_trees == 0);
  CHECK(em.log_likelihood == doctest::Approx(0.0));
  CheckSameCounts(em.counts, sa);
}

TEST_CASE("CollectEmCounts: a point-mass root concentrates the rooting posterior") {
  auto taxa = Abcd();
  auto tree = Unrooted(taxa, "((A,B),C,D);");
  SbnParams params(taxa);
  params.SetRoot(S(taxa, "A,B|C,D"), 1.0);
  auto em = CollectEmCounts({{tree, 2.0}}, params);
  REQUIRE(em.counts.root_counts.size() == 1);
  CHECK(em.counts.root_counts.at(S(taxa, "A,B|C,D")) == doctest::Approx(2.0));
  CHECK(em.counts.pcsp_counts.empty());

  // A tree the parameters cannot produce is reported and skipped.
  auto other = Unrooted(taxa, "((A,C),B,D);");
  auto skipped = CollectEmCounts({{tree, 1.0}, {other, 1.0}}, params);
  CHECK(skipped.zero_support_trees == 1);
  CHECK(skipped.counts.RootTotal() == doctest::Approx(1.0));
}

TEST_CASE("CollectEmCounts: posterior rows sum to one per tree") {
  auto taxa = Numbered(7);
  Rng rng(21);
  UnrootedSample trees;
  for (int i = 0; i < 6; ++i) trees.push_back({RandomUnrooted(taxa, rng), 1.5});
  auto params = RandomDenseParams(taxa, rng);
  auto em = CollectEmCounts(trees, params);
  CHECK(em.counts.RootTotal() == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("CheckSample: invalid samples") {
  CHECK_THROWS_AS(CollectSaCounts({}), ValidationError);
  auto taxa = Abcd();
  auto tree = Unrooted(taxa, "((A,B),C,D);");
  CHECK_THROWS_AS(CollectSaCounts({{tree, 0.0}}), ValidationError);
  auto other = Unrooted(Taxa({"A", "B", "C", "E"}), "((A,B),C,E);");
  CHECK_THROWS_AS(CollectSaCounts({{tree, 1.0}, {other, 1.0}}), ValidationError);
}
