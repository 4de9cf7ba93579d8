// Copyright 2023 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independence systems given by membership oracles, and brute-force
// structural checks on small grounds.

#ifndef ADASUB_CONSTRAINTS_H_
#define ADASUB_CONSTRAINTS_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adasub/model.h"

namespace adasub {

inline constexpr int kMaxDownwardClosedGround = 20;
inline constexpr int kMaxEstimatePGround = 12;

using Membership = std::function<bool(const ItemSet&)>;

enum class SystemKind {
  kUniform,
  kPartition,
  kIntersection,
  kExplicit,  // an enumerated family of sets
  kCustom,
};

class IndependenceSystem {
 public:
  // |S| <= k.
  static IndependenceSystem Uniform(int ground_size, int k);
  // At most capacities[b] items from blocks[b]. Blocks must be disjoint;
  // items outside every block are unconstrained.
  static IndependenceSystem Partition(int ground_size,
                                      std::vector<ItemSet> blocks,
                                      std::vector<int> capacities);
  // Exactly the listed sets are independent. Not necessarily downward closed.
  static IndependenceSystem Explicit(int ground_size,
                                     std::vector<ItemSet> family);
  static IndependenceSystem Custom(int ground_size, std::string name,
                                   Membership membership);

  int ground_size() const { return ground_size_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  SystemKind kind() const { return kind_; }

  int k() const { return k_; }
  const std::vector<ItemSet>& blocks() const { return blocks_; }
  const std::vector<int>& capacities() const { return capacities_; }
  const std::vector<IndependenceSystem>& members() const { return members_; }
  const std::vector<ItemSet>& family() const { return family_; }

  // Unchecked membership; `s` must be sorted and within the ground set.
  bool Contains(const ItemSet& s) const;

 private:
  friend IndependenceSystem Intersect(std::vector<IndependenceSystem> systems);
  IndependenceSystem() = default;

  int ground_size_ = 0;
  std::string name_;
  SystemKind kind_ = SystemKind::kCustom;
  int k_ = 0;
  std::vector<ItemSet> blocks_;
  std::vector<int> capacities_;
  std::vector<int> block_of_;  // -1 for unconstrained items
  std::vector<IndependenceSystem> members_;
  std::vector<ItemSet> family_;
  Membership membership_;
};

// Throws kInvalidArgument on out-of-range, unsorted or repeated indices.
bool IsIndependent(const IndependenceSystem& system, const ItemSet& s);

// Conjunction of memberships. Throws kInvalidArgument on an empty list or
// mismatched ground sizes.
IndependenceSystem Intersect(std::vector<IndependenceSystem> systems);

// Bitmask helpers for grounds of at most 63 items.
ItemSet MaskToSet(uint64_t mask);
uint64_t SetToMask(const ItemSet& s);

struct DownwardClosureReport {
  bool closed = true;
  // On failure: an independent set and a subset of it that is rejected. When
  // the empty set itself is rejected, `superset` is absent.
  std::optional<ItemSet> superset;
  std::optional<ItemSet> rejected_subset;
};

// Exhaustive over the first `ground_size` items. Throws kTooLarge above
// kMaxDownwardClosedGround.
DownwardClosureReport CheckDownwardClosed(const IndependenceSystem& system,
                                          int ground_size);

struct Rational {
  int64_t num = 1;
  int64_t den = 1;

  static Rational Of(int64_t num, int64_t den);  // reduced, den > 0
  double value() const { return static_cast<double>(num) / den; }
  std::string ToString() const;  // "2" or "3/2"

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num * b.den == b.num * a.den;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    return a.num * b.den <=> b.num * a.den;
  }
};

// Parses "2", "3/2" or a decimal integer string. Throws kInvalidArgument.
Rational ParseRational(const std::string& text);

struct PReport {
  Rational p_value;
  ItemSet witness_set;
  ItemSet larger_basis;   // a largest maximal independent subset
  ItemSet smaller_basis;  // a smallest maximal independent subset
};

// Exact p: the maximum over subsets S of the ground of
// (largest maximal independent subset of S) / (smallest one), with 0/0 read
// as 1. Ties go to the lexicographically smallest S, then bases. Throws
// kTooLarge above kMaxEstimatePGround and kValidation if the system is not
// downward closed.
PReport EstimateP(const IndependenceSystem& system, int ground_size);

}  // namespace adasub

#endif  // ADASUB_CONSTRAINTS_H_
