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

#include "adasub/constraints.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace adasub {
namespace {

void RequireGround(int ground_size) {
  if (ground_size < 0) {
    throw Error(ErrorKind::kInvalidArgument, "negative ground size");
  }
}

void RequireSubsetOfGround(const ItemSet& s, int ground_size) {
  for (size_t k = 0; k < s.size(); ++k) {
    if (s[k] < 0 || s[k] >= ground_size) {
      throw Error(ErrorKind::kInvalidArgument,
                  "item index " + std::to_string(s[k]) + " out of range");
    }
    if (k > 0 && s[k - 1] >= s[k]) {
      throw Error(ErrorKind::kInvalidArgument,
                  "item set must be sorted and duplicate-free");
    }
  }
}

ItemSet Normalized(ItemSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// Independence of every subset of the first n items, by mask.
std::vector<char> MembershipTable(const IndependenceSystem& system, int n) {
  std::vector<char> table(size_t{1} << n);
  for (uint64_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = system.Contains(MaskToSet(mask)) ? 1 : 0;
  }
  return table;
}

}  // namespace

IndependenceSystem IndependenceSystem::Uniform(int ground_size, int k) {
  RequireGround(ground_size);
  if (k < 0) {
    throw Error(ErrorKind::kInvalidArgument, "uniform matroid needs k >= 0");
  }
  IndependenceSystem system;
  system.ground_size_ = ground_size;
  system.kind_ = SystemKind::kUniform;
  system.k_ = k;
  system.name_ = "uniform(k=" + std::to_string(k) + ")";
  return system;
}

IndependenceSystem IndependenceSystem::Partition(int ground_size,
                                                 std::vector<ItemSet> blocks,
                                                 std::vector<int> capacities) {
  RequireGround(ground_size);
  if (blocks.size() != capacities.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "partition matroid needs one capacity per block");
  }
  IndependenceSystem system;
  system.block_of_.assign(ground_size, -1);
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (capacities[b] < 0) {
      throw Error(ErrorKind::kInvalidArgument, "negative block capacity");
    }
    blocks[b] = Normalized(std::move(blocks[b]));
    for (ItemIndex item : blocks[b]) {
      if (item < 0 || item >= ground_size) {
        throw Error(ErrorKind::kInvalidArgument,
                    "partition block item " + std::to_string(item) +
                        " out of range");
      }
      if (system.block_of_[item] != -1) {
        throw Error(ErrorKind::kInvalidArgument,
                    "item " + std::to_string(item) +
                        " appears in more than one block");
      }
      system.block_of_[item] = static_cast<int>(b);
    }
  }
  system.ground_size_ = ground_size;
  system.kind_ = SystemKind::kPartition;
  system.name_ = "partition(blocks=" + std::to_string(blocks.size()) + ")";
  system.blocks_ = std::move(blocks);
  system.capacities_ = std::move(capacities);
  return system;
}

IndependenceSystem IndependenceSystem::Explicit(int ground_size,
                                                std::vector<ItemSet> family) {
  RequireGround(ground_size);
  std::set<ItemSet> unique;
  for (auto& s : family) {
    s = Normalized(std::move(s));
    RequireSubsetOfGround(s, ground_size);
    unique.insert(s);
  }
  IndependenceSystem system;
  system.ground_size_ = ground_size;
  system.kind_ = SystemKind::kExplicit;
  system.family_.assign(unique.begin(), unique.end());
  system.name_ = "explicit(" + std::to_string(unique.size()) + " sets)";
  return system;
}

IndependenceSystem IndependenceSystem::Custom(int ground_size, std::string name,
                                              Membership membership) {
  RequireGround(ground_size);
  IndependenceSystem system;
  system.ground_size_ = ground_size;
  system.kind_ = SystemKind::kCustom;
  system.name_ = std::move(name);
  system.membership_ = std::move(membership);
  return system;
}

bool IndependenceSystem::Contains(const ItemSet& s) const {
  switch (kind_) {
    case SystemKind::kUniform:
      return static_cast<int>(s.size()) <= k_;
    case SystemKind::kPartition: {
      std::vector<int> used(capacities_.size(), 0);
      for (ItemIndex item : s) {
        const int b = block_of_[item];
        if (b >= 0 && ++used[b] > capacities_[b]) return false;
      }
      return true;
    }
    case SystemKind::kIntersection:
      return std::all_of(members_.begin(), members_.end(),
                         [&](const IndependenceSystem& m) {
                           return m.Contains(s);
                         });
    case SystemKind::kExplicit:
      return std::binary_search(family_.begin(), family_.end(), s);
    case SystemKind::kCustom:
      return membership_(s);
  }
  return false;
}

bool IsIndependent(const IndependenceSystem& system, const ItemSet& s) {
  RequireSubsetOfGround(s, system.ground_size());
  return system.Contains(s);
}

IndependenceSystem Intersect(std::vector<IndependenceSystem> systems) {
  if (systems.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "intersection needs at least one system");
  }
  const int ground = systems.front().ground_size();
  std::string name;
  for (const auto& s : systems) {
    if (s.ground_size() != ground) {
      throw Error(ErrorKind::kInvalidArgument,
                  "mismatched ground sizes in intersection: " +
                      std::to_string(ground) + " vs " +
                      std::to_string(s.ground_size()));
    }
    if (!name.empty()) name += " & ";
    name += s.name();
  }
  IndependenceSystem system;
  system.ground_size_ = ground;
  system.kind_ = SystemKind::kIntersection;
  system.name_ = std::move(name);
  system.members_ = std::move(systems);
  return system;
}

ItemSet MaskToSet(uint64_t mask) {
  ItemSet s;
  while (mask != 0) {
    s.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return s;
}

uint64_t SetToMask(const ItemSet& s) {
  uint64_t mask = 0;
  for (ItemIndex item : s) mask |= uint64_t{1} << item;
  return mask;
}

DownwardClosureReport CheckDownwardClosed(const IndependenceSystem& system,
                                          int ground_size) {
  if (ground_size > kMaxDownwardClosedGround) {
    throw Error(ErrorKind::kTooLarge,
                "ground too large for downward-closure check: " +
                    std::to_string(ground_size) + " > " +
                    std::to_string(kMaxDownwardClosedGround));
  }
  if (ground_size < 0 || ground_size > system.ground_size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "ground size outside the system's ground");
  }
  const std::vector<char> table = MembershipTable(system, ground_size);
  if (!table[0]) return {false, std::nullopt, ItemSet{}};
  // Closure under single-element removal implies closure under all subsets.
  for (uint64_t mask = 1; mask < table.size(); ++mask) {
    if (!table[mask]) continue;
    // Removing the highest items first yields the smallest rejected subset.
    for (int bit = 63 - std::countl_zero(mask); bit >= 0; --bit) {
      const uint64_t sub = mask & ~(uint64_t{1} << bit);
      if (sub == mask) continue;
      if (!table[sub]) return {false, MaskToSet(mask), MaskToSet(sub)};
    }
  }
  return {};
}

Rational Rational::Of(int64_t num, int64_t den) {
  if (den == 0) {
    throw Error(ErrorKind::kInvalidArgument, "zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int64_t g = std::gcd(num < 0 ? -num : num, den);
  return {num / g, den / g};
}

std::string Rational::ToString() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational ParseRational(const std::string& text) {
  auto parse_int = [&](const std::string& part) -> int64_t {
    size_t used = 0;
    int64_t value = 0;
    try {
      value = std::stoll(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (part.empty() || used != part.size()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "not a rational number: '" + text + "'");
    }
    return value;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational::Of(parse_int(text), 1);
  return Rational::Of(parse_int(text.substr(0, slash)),
                      parse_int(text.substr(slash + 1)));
}

PReport EstimateP(const IndependenceSystem& system, int ground_size) {
  if (ground_size > kMaxEstimatePGround) {
    throw Error(ErrorKind::kTooLarge,
                "ground too large for p estimation: " +
                    std::to_string(ground_size) + " > " +
                    std::to_string(kMaxEstimatePGround));
  }
  if (!CheckDownwardClosed(system, ground_size).closed) {
    throw Error(ErrorKind::kValidation, "system not downward-closed");
  }
  const std::vector<char> table = MembershipTable(system, ground_size);
  const uint64_t full = (uint64_t{1} << ground_size) - 1;

  PReport best{Rational::Of(1, 1), {}, {}, {}};
  bool have_best = false;
  for (uint64_t s_mask = 0; s_mask <= full; ++s_mask) {
    // Maximal independent subsets of S, tracking the extremes by size and
    // the lexicographically smallest set at each extreme.
    int max_size = -1;
    int min_size = ground_size + 1;
    ItemSet max_basis;
    ItemSet min_basis;
    for (uint64_t t = s_mask;; t = (t - 1) & s_mask) {
      if (table[t]) {
        bool maximal = true;
        for (uint64_t rest = s_mask & ~t; rest != 0; rest &= rest - 1) {
          if (table[t | (rest & -rest)]) {
            maximal = false;
            break;
          }
        }
        if (maximal) {
          const int size = std::popcount(t);
          const ItemSet basis = MaskToSet(t);
          if (size > max_size || (size == max_size && basis < max_basis)) {
            max_size = size;
            max_basis = basis;
          }
          if (size < min_size || (size == min_size && basis < min_basis)) {
            min_size = size;
            min_basis = basis;
          }
        }
      }
      if (t == 0) break;
    }
    const Rational ratio =
        min_size == 0 ? Rational::Of(1, 1) : Rational::Of(max_size, min_size);
    const ItemSet s_set = MaskToSet(s_mask);
    if (!have_best || ratio > best.p_value ||
        (ratio == best.p_value && s_set < best.witness_set)) {
      best = {ratio, s_set, max_basis, min_basis};
      have_best = true;
    }
  }
  return best;
}

}  // namespace adasub
