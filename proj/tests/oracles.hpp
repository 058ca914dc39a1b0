#pragma once

// Oracles shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <climits>
#include <map>
#include <vector>

#include "rbss/ssengine.hpp"

namespace rbss_test {

using namespace rbss;

inline bool free_last(int64_t x, int64_t y) { return (x ? x : INT64_MAX) < (y ? y : INT64_MAX); }

// Summed invariants over all filtrations and weights at (twist, stem).
inline std::vector<int64_t> stem_total(const Page& p, int64_t q, int64_t stem) {
  std::vector<int64_t> out;
  for (const auto& [k, c] : p.cells) {
    if (k.q != q || k.p != stem || !c.in_window) continue;
    auto g = c.group().orders;
    out.insert(out.end(), g.begin(), g.end());
  }
  std::sort(out.begin(), out.end(), free_last);
  return out;
}

// Independent oracle for the vbar_1-localized page in twist 0 with s >= 0:
// classes vbar^k u^j a^l (j, l >= 0), Z when l = 0 and Z/2 otherwise, and
// d3(u^j) = j u^{j-1} vbar a^3 by Leibniz. Returns invariants at each stem.
inline std::map<int64_t, std::vector<int64_t>> kr_oracle(int64_t stem_lo, int64_t stem_hi, int64_t s_max) {
  std::map<int64_t, std::vector<int64_t>> out;
  for (int64_t p = stem_lo; p <= stem_hi; ++p) {
    auto& v = out[p];
    for (int64_t l = 0; l <= s_max; ++l) {
      // k + 2j = p and k - 2j - l = 0.
      if ((p + l) % 2 != 0) continue;
      int64_t k = (p + l) / 2;
      if ((p - k) % 2 != 0) continue;
      int64_t j = (p - k) / 2;
      if (j < 0) continue;
      bool supports = j % 2 == 1;             // d3 nonzero on this class
      bool hit = l >= 3 && (j + 1) % 2 == 1;  // image of u^{j+1} a^{l-3}
      if (l == 0) {
        v.push_back(0);  // Z, or 2Z when it supports d3
      } else if (!supports && !hit) {
        v.push_back(2);
      }
    }
    std::sort(v.begin(), v.end(), free_last);
  }
  return out;
}

}  // namespace rbss_test
