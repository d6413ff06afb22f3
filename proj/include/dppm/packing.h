//
// Copyright 2026 The dppm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Packing families: sets of pairwise-distant texts, each with one planted
// near-occurrence in its own even-indexed block of length m. Any accurate
// private existence matcher must tell the members apart, which is what forces
// the logarithmic additive error.

#ifndef DPPM_PACKING_H_
#define DPPM_PACKING_H_

#include <cstddef>
#include <vector>

#include "dppm/text.h"

namespace dppm {

struct PackingFamily {
  std::vector<Text> members;
  std::size_t pairwise_distance = 0;
  std::vector<std::size_t> planted_positions;  // member i plants at [p, p+m-1]
  Symbol filler = 0;                           // the '$' symbol
};

// Smallest byte value absent from P; throws std::invalid_argument when P uses
// all 256 values.
Symbol choose_filler(SymbolView pattern);

// Member j (j even, jm + m <= n): P at block j, filler elsewhere. Pairwise
// distance 2m. A remainder n mod m is filled and never indexed as a block.
PackingFamily packing_family_planted(SymbolView pattern, std::size_t n);

// Member j: filler^k P[k, m-1] at block j and filler^(k+alpha+1)
// P[k+alpha+1, m-1] at every other even block. Pairwise distance 2 alpha + 2.
// Requires k + alpha + 1 <= m.
PackingFamily packing_family_mismatch(SymbolView pattern, std::size_t n,
                                      std::size_t k, std::size_t alpha);

// dist_H(S[pos, pos+m-1], P).
std::size_t witness_error(SymbolView text, SymbolView pattern,
                          std::size_t pos);

}  // namespace dppm

#endif  // DPPM_PACKING_H_
