// Text persistence for fitted parameters.
//
//   sbn-params v1
//   taxa<TAB>A,B,C,D
//   root<TAB>A,B|C,D<TAB>0.5
//   pcsp<TAB>A,B,C|D,E<TAB>A,B,C<TAB>A,B|C<TAB>1
//
// CCD files use the header "ccd-params v1" and "split<TAB>Y|Z<TAB>p" records; SRF
// files use "srf-params v1" and "tree<TAB>p<TAB>newick". Probabilities are written
// with 17 significant digits, so a store/load round trip is exact. The taxa line fixes
// the meaning of every clade and is authoritative on load.

#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <variant>

#include "sbn/evaluation.hpp"
#include "sbn/params.hpp"

namespace sbn {

constexpr double kLoadTolerance = 1e-9;

using AnyParams = std::variant<SbnParams, CcdParams, SrfParams>;

void WriteParams(std::ostream &out, const SbnParams &params);
void WriteParams(std::ostream &out, const CcdParams &params);
void WriteParams(std::ostream &out, const SrfParams &params);
void WriteParams(std::ostream &out, const AnyParams &params);

// Throws ParseError for malformed text and ValidationError when a distribution does
// not sum to one within kLoadTolerance.
AnyParams ReadParams(std::istream &in);
AnyParams ReadParamsFile(const std::string &path);
void WriteParamsFile(const std::string &path, const AnyParams &params);

const TaxonSetPtr &TaxaOf(const AnyParams &params);
Evaluator MakeEvaluator(const AnyParams &params);

}  // namespace sbn
