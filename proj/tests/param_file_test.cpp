#include <doctest.h>

#include <sstream>

#include "sbn/errors.hpp"
#include "sbn/estimators.hpp"
#include "sbn/param_file.hpp"
#include "test_support.hpp"

using namespace sbn;
using namespace sbn::testing;

namespace {

AnyParams RoundTrip(const AnyParams &params) {
  std::stringstream text;
  WriteParams(text, params);
  return ReadParams(text);
}

UnrootedSample Sample(size_t n, uint64_t seed) {
  auto taxa = Numbered(n);
  Rng rng(seed);
  UnrootedSample trees;
  for (int i = 0; i < 20; ++i) trees.push_back({RandomUnrooted(taxa, rng), 1.0 + i % 4});
  return trees;
}

}  // namespace

TEST_CASE("ParamFile: SBN parameters round trip exactly") {
  auto params = FitSa(Sample(7, 1));
  auto loaded = std::get<SbnParams>(RoundTrip(params));
  CHECK(loaded.Taxa()->Names() == params.Taxa()->Names());
  CHECK(loaded.RootDistribution().size() == params.RootDistribution().size());
  for (const auto &[split, p] : params.RootDistribution()) CHECK(loaded.Root(split) == p);
  CHECK(loaded.Conditionals().size() == params.Conditionals().size());
  for (const auto &[pcsp, p] : params.Conditionals()) CHECK(loaded.Conditional(pcsp) == p);

  std::ostringstream once, twice;
  WriteParams(once, params);
  WriteParams(twice, loaded);
  CHECK(once.str() == twice.str());
}

TEST_CASE("ParamFile: CCD and SRF round trip exactly") {
  auto sample = Sample(6, 2);
  auto ccd = FitCcd(sample);
  auto ccd_loaded = std::get<CcdParams>(RoundTrip(ccd));
  for (const auto &[clade, splits] : ccd.Distributions()) {
    for (const auto &[split, p] : splits) CHECK(ccd_loaded.Probability(split) == p);
  }
  auto srf = FitSrf(sample);
  auto srf_loaded = std::get<SrfParams>(RoundTrip(srf));
  CHECK(srf_loaded.Frequencies().size() == srf.Frequencies().size());
  for (const auto &[id, p] : srf.Frequencies()) CHECK(srf_loaded.Probability(id) == p);
}

TEST_CASE("ParamFile: the header's taxon order is authoritative") {
  std::istringstream in(
      "sbn-params v1\ntaxa\tD,C,B,A\nroot\tD,C|B,A\t1\n");
  auto params = std::get<SbnParams>(ReadParams(in));
  auto taxa = params.Taxa();
  CHECK(taxa->Name(0) == "D");
  CHECK(SbnProbUnrooted(params, Unrooted(taxa, "((A,B),C,D);")) == doctest::Approx(1.0));
}

TEST_CASE("ParamFile: malformed and unnormalized files") {
  auto read = [](const std::string &text) {
    std::istringstream in(text);
    return ReadParams(in);
  };
  CHECK_THROWS_AS(read(""), ParseError);
  CHECK_THROWS_AS(read("sbn-params v2\ntaxa\tA,B,C,D\n"), ParseError);
  CHECK_THROWS_AS(read("sbn-params v1\nroot\tA,B|C,D\t1\n"), ParseError);
  CHECK_THROWS_AS(read("sbn-params v1\ntaxa\tA,B,C,D\nroot\tA,B|C,D\tx\n"), ParseError);
  CHECK_THROWS_AS(read("sbn-params v1\ntaxa\tA,B,C,D\nroot\tA,B|C,D\n"), ParseError);
  CHECK_THROWS_AS(read("sbn-params v1\ntaxa\tA,B,C,D\nleaf\tA\t1\n"), ParseError);
  CHECK_THROWS_AS(read("sbn-params v1\ntaxa\tA,B,C,D\nroot\tA,B|C,D\t0.9\n"), ValidationError);
  CHECK_THROWS_AS(read("sbn-params v1\ntaxa\tA,B,C,D\nroot\tA,B|C,D\t0.5\nroot\tA|B,C,D\t0.5\n"
                       "pcsp\tA|B,C,D\tB,C,D\tB|C,D\t0.5\n"),
                  ValidationError);
  CHECK_THROWS_AS(read("sbn-params v1\ntaxa\tA,B,C,D\nroot\tA,B|C,D\t0.5\nroot\tA|B,C,D\t0.5\n"
                       "pcsp\tA|B,C,D\tA,B,C\tB|C,D\t1\n"),
                  ValidationError);
  try {
    read("sbn-params v1\ntaxa\tA,B,C,D\n\nroot\tA,B|C,Q\t1\n");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.Line() == 4);
  }
  // Sums within the load tolerance are accepted.
  CHECK_NOTHROW(read("sbn-params v1\ntaxa\tA,B,C,D\nroot\tA,B|C,D\t0.9999999999\n"));
}
