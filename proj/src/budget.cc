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

#include "dppm/budget.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dppm {

double to_double(Share s) {
  return static_cast<double>(s.numerator()) /
         static_cast<double>(s.denominator());
}

BudgetLedger::BudgetLedger(std::size_t n, double epsilon)
    : cap_(epsilon), diff_(n + 1, Share(0)) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("BudgetLedger: epsilon must be positive");
  }
}

void BudgetLedger::charge(const Charge& c) {
  if (c.span.first > c.span.last || c.span.last >= size()) {
    throw std::out_of_range("BudgetLedger: charge outside the text");
  }
  if (c.share < Share(0)) {
    throw std::invalid_argument("BudgetLedger: negative charge");
  }
  diff_[c.span.first] += c.share;
  diff_[c.span.last + 1] -= c.share;
  ++charges_;
}

Share BudgetLedger::share_at(std::size_t pos) const {
  if (pos >= size()) throw std::out_of_range("BudgetLedger: position");
  Share acc(0);
  for (std::size_t i = 0; i <= pos; ++i) acc += diff_[i];
  return acc;
}

double BudgetLedger::epsilon_at(std::size_t pos) const {
  return cap_ * to_double(share_at(pos));
}

std::vector<Share> BudgetLedger::shares() const {
  std::vector<Share> out(size());
  Share acc(0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    acc += diff_[i];
    out[i] = acc;
  }
  return out;
}

Share BudgetLedger::max_share() const {
  const auto all = shares();
  if (all.empty()) return Share(0);
  return *std::max_element(all.begin(), all.end());
}

double BudgetLedger::max_epsilon() const {
  return cap_ * to_double(max_share());
}

}  // namespace dppm
