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

#include "dppm/packing.h"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace dppm {

Symbol choose_filler(SymbolView pattern) {
  std::array<bool, 256> used{};
  for (Symbol s : pattern) used[s] = true;
  for (std::size_t v = 0; v < used.size(); ++v) {
    if (!used[v]) return static_cast<Symbol>(v);
  }
  throw std::invalid_argument("pattern uses every byte value; no filler");
}

namespace {

void check_packing_args(SymbolView pattern, std::size_t n) {
  if (pattern.empty()) throw std::invalid_argument("packing: empty pattern");
  if (n < pattern.size()) throw std::invalid_argument("packing: n < m");
}

// Writes filler^prefix P[prefix, m-1] at block `block`.
void plant(std::vector<Symbol>& bytes, SymbolView pattern, std::size_t block,
           std::size_t prefix) {
  const std::size_t m = pattern.size();
  const std::size_t start = block * m;
  for (std::size_t i = prefix; i < m; ++i) bytes[start + i] = pattern[i];
}

}  // namespace

PackingFamily packing_family_planted(SymbolView pattern, std::size_t n) {
  check_packing_args(pattern, n);
  const std::size_t m = pattern.size();
  PackingFamily family;
  family.filler = choose_filler(pattern);
  family.pairwise_distance = 2 * m;
  for (std::size_t j = 0; j < n / m; j += 2) {
    std::vector<Symbol> bytes(n, family.filler);
    plant(bytes, pattern, j, 0);
    family.members.emplace_back(std::move(bytes));
    family.planted_positions.push_back(j * m);
  }
  return family;
}

PackingFamily packing_family_mismatch(SymbolView pattern, std::size_t n,
                                      std::size_t k, std::size_t alpha) {
  check_packing_args(pattern, n);
  const std::size_t m = pattern.size();
  if (k + alpha + 1 > m) {
    throw std::invalid_argument("packing: requires k + alpha + 1 <= m");
  }
  PackingFamily family;
  family.filler = choose_filler(pattern);
  family.pairwise_distance = 2 * alpha + 2;
  const std::size_t blocks = n / m;
  for (std::size_t j = 0; j < blocks; j += 2) {
    std::vector<Symbol> bytes(n, family.filler);
    for (std::size_t i = 0; i < blocks; i += 2) {
      plant(bytes, pattern, i, i == j ? k : k + alpha + 1);
    }
    family.members.emplace_back(std::move(bytes));
    family.planted_positions.push_back(j * m);
  }
  return family;
}

std::size_t witness_error(SymbolView text, SymbolView pattern,
                          std::size_t pos) {
  if (pattern.empty() || pattern.size() > text.size() ||
      pos > text.size() - pattern.size()) {
    throw std::invalid_argument("witness_error: position outside [0, n-m]");
  }
  return hamming_distance(text.subspan(pos, pattern.size()), pattern);
}

}  // namespace dppm
