// Closed-form estimators: rooted maximum likelihood, simple average (SA), the
// conditional clade distribution (CCD) and sample relative frequencies (SRF).

#pragma once

#include "sbn/counting.hpp"
#include "sbn/params.hpp"

namespace sbn {

// Normalizes m + alpha * m~ within the root group and within every (parent, focal)
// context. `equivalent` may be null when alpha is zero. Throws ValidationError when
// the table is empty.
SbnParams FitFromCounts(const CountsTable &counts, double alpha = 0.0,
                        const CountsTable *equivalent = nullptr);

SbnParams FitMlRooted(const CountsTable &counts);
SbnParams FitMlRooted(const RootedSample &trees);

SbnParams FitSa(const UnrootedSample &trees);

// Each tree is rooted on the pendant edge of taxon 0 before tallying clade splits.
CcdParams FitCcd(const UnrootedSample &trees);

SrfParams FitSrf(const UnrootedSample &trees);

}  // namespace sbn
