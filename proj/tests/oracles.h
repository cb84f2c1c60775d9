// Copyright 2026 The SCPOS Toolkit Authors.
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

#ifndef SCPOS_TESTS_ORACLES_H_
#define SCPOS_TESTS_ORACLES_H_

// Slow reference implementations used to check the library. None of them
// calls into the code under test.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace scpos::oracle {

// Leftmost-longest, non-overlapping scan: at each position try every
// pattern, keep the longest that fits, jump past it.
inline std::vector<std::pair<size_t, size_t>> BruteForceMatch(
    const std::u32string& text, const std::vector<std::u32string>& patterns) {
  std::vector<std::pair<size_t, size_t>> spans;
  size_t i = 0;
  while (i < text.size()) {
    size_t best = 0;
    for (const std::u32string& p : patterns) {
      if (p.empty() || p.size() <= best || i + p.size() > text.size()) continue;
      bool equal = true;
      for (size_t k = 0; k < p.size(); ++k) {
        if (text[i + k] != p[k]) {
          equal = false;
          break;
        }
      }
      if (equal) best = p.size();
    }
    if (best == 0) {
      ++i;
    } else {
      spans.emplace_back(i, i + best);
      i += best;
    }
  }
  return spans;
}

inline std::string TrimSpaces(const std::string& s) {
  const char* ws = " \t\n\r\f\v";
  size_t b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Multiset intersection size by repeated removal: every gold item consumes
// at most one equal generated item.
template <typename Pair>
size_t MultisetMatched(const std::vector<Pair>& gold,
                       const std::vector<Pair>& generated) {
  std::vector<std::pair<int, std::string>> pool;
  for (const Pair& g : generated) {
    pool.emplace_back(static_cast<int>(g.polarity), TrimSpaces(g.span));
  }
  size_t matched = 0;
  for (const Pair& g : gold) {
    std::pair<int, std::string> key(static_cast<int>(g.polarity),
                                    TrimSpaces(g.span));
    auto it = std::find(pool.begin(), pool.end(), key);
    if (it != pool.end()) {
      pool.erase(it);
      ++matched;
    }
  }
  return matched;
}

// One row of a score sheet.
struct SheetRow {
  bool sc = false;
  size_t matched = 0;
  size_t total = 0;
  double ratio = 1.0;
  bool scpos = false;
};

struct SheetTotals {
  double acc_sc = 0;
  double acc_pos_micro = 0;
  double acc_pos_macro = 0;
  double acc_scpos = 0;
};

// Column sums, the way one would fill them in by hand.
inline SheetTotals ComputeSheet(const std::vector<SheetRow>& rows) {
  SheetTotals t;
  double sc_col = 0, scpos_col = 0, ratio_col = 0;
  double matched_col = 0, total_col = 0;
  for (const SheetRow& r : rows) {
    sc_col += r.sc ? 1.0 : 0.0;
    scpos_col += r.scpos ? 1.0 : 0.0;
    ratio_col += r.ratio;
    if (r.total != 0) {
      matched_col += static_cast<double>(r.matched);
      total_col += static_cast<double>(r.total);
    }
  }
  const double n = static_cast<double>(rows.size());
  t.acc_sc = sc_col / n;
  t.acc_scpos = scpos_col / n;
  t.acc_pos_macro = ratio_col / n;
  t.acc_pos_micro = total_col == 0 ? 1.0 : matched_col / total_col;
  return t;
}

}  // namespace scpos::oracle

#endif  // SCPOS_TESTS_ORACLES_H_
