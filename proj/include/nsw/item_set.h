// Copyright 2026 The nsw-forge Authors
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

#ifndef NSW_ITEM_SET_H_
#define NSW_ITEM_SET_H_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace nsw {

// A subset of a dense item universe {0, ..., 63}, stored as a bitmask.
class ItemSet {
 public:
  static constexpr int kMaxItems = 64;

  constexpr ItemSet() = default;
  constexpr explicit ItemSet(uint64_t bits) : bits_(bits) {}
  ItemSet(std::initializer_list<int> items) {
    for (int j : items) Insert(j);
  }

  static ItemSet FromIndices(const std::vector<int>& items) {
    ItemSet s;
    for (int j : items) s.Insert(j);
    return s;
  }
  static constexpr ItemSet Full(int num_items) {
    return ItemSet(num_items >= 64 ? ~uint64_t{0}
                                   : (uint64_t{1} << num_items) - 1);
  }
  static constexpr ItemSet Singleton(int j) {
    return ItemSet(uint64_t{1} << j);
  }

  constexpr uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool Contains(int j) const { return (bits_ >> j) & 1u; }
  constexpr bool IsSubsetOf(ItemSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool Intersects(ItemSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  void Insert(int j) { bits_ |= uint64_t{1} << j; }
  void Erase(int j) { bits_ &= ~(uint64_t{1} << j); }

  // Lowest member, or -1 when empty.
  constexpr int First() const {
    return bits_ == 0 ? -1 : std::countr_zero(bits_);
  }

  std::vector<int> ToVector() const {
    std::vector<int> out;
    out.reserve(size());
    for (int j : *this) out.push_back(j);
    return out;
  }
  // "0,2,5" style; the empty set renders as "".
  std::string ToString() const;

  friend constexpr ItemSet operator|(ItemSet a, ItemSet b) {
    return ItemSet(a.bits_ | b.bits_);
  }
  friend constexpr ItemSet operator&(ItemSet a, ItemSet b) {
    return ItemSet(a.bits_ & b.bits_);
  }
  friend constexpr ItemSet operator-(ItemSet a, ItemSet b) {
    return ItemSet(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(ItemSet a, ItemSet b) = default;

  class Iterator {
   public:
    constexpr explicit Iterator(uint64_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr Iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr bool operator!=(const Iterator& o) const {
      return rest_ != o.rest_;
    }

   private:
    uint64_t rest_;
  };
  constexpr Iterator begin() const { return Iterator(bits_); }
  constexpr Iterator end() const { return Iterator(0); }

 private:
  uint64_t bits_ = 0;
};

// Lexicographic order on the sorted member lists; a proper prefix sorts
// first, so {0} < {0,1} < {0,2} < {1}.
bool LexLess(ItemSet a, ItemSet b);

}  // namespace nsw

#endif  // NSW_ITEM_SET_H_
