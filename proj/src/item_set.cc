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

#include "nsw/item_set.h"

namespace nsw {

std::string ItemSet::ToString() const {
  std::string out;
  for (int j : *this) {
    if (!out.empty()) out += ',';
    out += std::to_string(j);
  }
  return out;
}

bool LexLess(ItemSet a, ItemSet b) {
  const uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  const int d = std::countr_zero(diff);
  // Both sets agree below d. Bits strictly above d:
  const uint64_t above = d == 63 ? 0 : (~uint64_t{0} << (d + 1));
  if (a.Contains(d)) return (b.bits() & above) != 0;
  return (a.bits() & above) == 0;
}

}  // namespace nsw
