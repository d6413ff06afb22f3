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

#ifndef DPPM_BUDGET_H_
#define DPPM_BUDGET_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "dppm/text.h"

namespace dppm {

// Exact fraction of a query's epsilon.
using Share = boost::rational<std::int64_t>;

// A pending charge: `share` of the query epsilon spent on every position of
// `span`.
struct Charge {
  Interval span;
  Share share;
};

// Per-position privacy accounting for one query over a text of length n.
//
// Sequential composition adds the shares of every mechanism that reads a
// position; mechanisms on disjoint spans do not interact. A query is within
// budget when no position has accumulated more than the whole query epsilon
// (share 1). Shares are kept as exact rationals in a difference array, so
// charge() is O(1).
class BudgetLedger {
 public:
  BudgetLedger(std::size_t n, double epsilon);

  void charge(const Charge& c);
  void charge(Interval span, Share share) { charge(Charge{span, share}); }

  std::size_t size() const { return diff_.size() - 1; }
  double cap() const { return cap_; }
  std::size_t charges() const { return charges_; }

  Share share_at(std::size_t pos) const;
  double epsilon_at(std::size_t pos) const;
  std::vector<Share> shares() const;
  Share max_share() const;
  double max_epsilon() const;
  bool within_cap() const { return max_share() <= Share(1); }

 private:
  double cap_;
  std::vector<Share> diff_;
  std::size_t charges_ = 0;
};

double to_double(Share s);

}  // namespace dppm

#endif  // DPPM_BUDGET_H_
