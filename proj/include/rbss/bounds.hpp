#pragma once

// Closed-form vanishing lines, the norm-differential length rule, Sylow
// reduction, comparison regions and the orientation-order bound.

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rbss/repring.hpp"

namespace rbss {

using BigInt = boost::multiprecision::cpp_int;

struct HeightGroupPair {
  int64_t h = 1;
  Group group = Group::cyclic(1);
  std::optional<int64_t> ambient_order;
};

// Empty when admissible, otherwise the violated condition.
inline std::string admissibility_error(int64_t h, const Group& g) {
  if (h < 1) return "height must be >= 1";
  if (g.is_q8()) {
    if (h % 4 != 2) return "Q8 needs h = 2 mod 4, got h = " + std::to_string(h);
    return "";
  }
  int64_t need = int64_t{1} << (g.m - 1);
  if (h % need != 0) return g.name() + " needs 2^" + std::to_string(g.m - 1) + " = " + std::to_string(need) + " | h, got h = " + std::to_string(h);
  return "";
}

inline bool admissible(int64_t h, const Group& g) { return admissibility_error(h, g).empty(); }

inline int64_t pow2(int64_t e) {
  if (e < 0 || e > 62) throw Error("2^" + std::to_string(e) + " does not fit in 64 bits");
  return int64_t{1} << e;
}

// N_{h,C_{2^m}} = 2^{h+m} - 2^m + 1 ; N_{h,Q8} = 2^{h+3} - 7
inline int64_t vanishing_bound(int64_t h, const Group& g) {
  auto err = admissibility_error(h, g);
  if (!err.empty()) throw Error("inadmissible pair: " + err);
  if (g.is_q8()) return pow2(h + 3) - 7;
  return pow2(h + g.m) - pow2(g.m) + 1;
}

inline int64_t vanishing_bound(const HeightGroupPair& p) { return vanishing_bound(p.h, p.group); }

inline int64_t norm_diff_bound(int64_t r, int64_t index) {
  if (r < 2) throw Error("differential length must be >= 2");
  if (index < 1) throw Error("index must be >= 1");
  return detail::checked_add(detail::checked_mul(index, r - 1), 1);
}

struct SylowInfo {
  Group maximal = Group::cyclic(1);
  std::vector<Group> admissible;  // C_{2^k}, k <= m, plus Q8 when it is maximal
};

inline SylowInfo sylow_pairs(int64_t h) {
  if (h < 1) throw Error("height must be >= 1");
  int m = 1;
  while (h % (int64_t{1} << m) == 0) ++m;  // h = 2^{m-1} * odd
  SylowInfo out;
  out.maximal = m == 2 ? Group::q8() : Group::cyclic(m);
  for (int k = 1; k <= m && k <= 8; ++k) out.admissible.push_back(Group::cyclic(k));
  if (m == 2) out.admissible.push_back(Group::q8());
  return out;
}

// The bound only depends on the Sylow 2-subgroup H.
inline int64_t group_bound(int64_t h, int64_t g_order, const Group& sylow) {
  if (g_order < 1 || g_order % sylow.order() != 0)
    throw Error("|G| = " + std::to_string(g_order) + " is not a multiple of |H| = " + std::to_string(sylow.order()));
  if ((g_order / sylow.order()) % 2 == 0)
    throw Error("|G|/|H| = " + std::to_string(g_order / sylow.order()) + " is even; H is not a Sylow 2-subgroup");
  return vanishing_bound(h, sylow);
}

// Theta = 2 |G| |H|^{(N-1)/2}
inline BigInt theta_bound(int64_t h, int64_t g_order, const Group& sylow) {
  int64_t n = group_bound(h, g_order, sylow);
  if (n % 2 == 0) throw Error("internal: even vanishing bound");
  BigInt out = 2;
  out *= g_order;
  // |H| is a power of two.
  int64_t log_h = 0;
  while ((int64_t{1} << log_h) < sylow.order()) ++log_h;
  out <<= static_cast<unsigned>(log_h * ((n - 1) / 2));
  return out;
}

// log2 of Theta when |G| is a power of two, else nullopt.
inline std::optional<int64_t> theta_log2(int64_t h, int64_t g_order, const Group& sylow) {
  int64_t n = group_bound(h, g_order, sylow);
  if ((g_order & (g_order - 1)) != 0) return std::nullopt;
  int64_t lg = 0, lh = 0;
  while ((int64_t{1} << lg) < g_order) ++lg;
  while ((int64_t{1} << lh) < sylow.order()) ++lh;
  return 1 + lg + lh * ((n - 1) / 2);
}

inline bool iso_region_slice_hfpss(const VirtualRep& v, int64_t s) {
  VirtualRep shifted = v - VirtualRep::trivial(v.group(), s + 1);
  return tau(shifted) > dim(v);
}

enum class TateRegion { Iso, Surjection, None };

inline TateRegion hfpss_tate_region(int64_t s) {
  if (s > 0) return TateRegion::Iso;
  if (s == 0) return TateRegion::Surjection;
  return TateRegion::None;
}

inline std::string tate_region_name(TateRegion r) {
  switch (r) {
    case TateRegion::Iso: return "iso";
    case TateRegion::Surjection: return "surjection";
    case TateRegion::None: return "none";
  }
  return "?";
}

struct SharpRow {
  int64_t h = 1;
  Group group = Group::cyclic(1);
  int64_t bound = 0;
  std::optional<int64_t> actual;  // known vanishing line, if known
  bool sharp = false;
  std::string provenance;
};

// Known sharpness data. The C2 row is generic in h.
inline std::vector<SharpRow> known_sharp_table(int64_t h_max = 8) {
  std::vector<SharpRow> out;
  for (int64_t h = 1; h <= h_max; ++h) {
    SharpRow r{h, Group::cyclic(1), vanishing_bound(h, Group::cyclic(1)), std::nullopt, true, "vbar_h^2 a^(2^(h+1)-2) survives"};
    r.actual = r.bound;
    out.push_back(r);
  }
  out.push_back({2, Group::cyclic(2), 13, 13, true, "C4 height 2 computation"});
  out.push_back({4, Group::cyclic(2), 61, 61, true, "C4 height 4 computation"});
  out.push_back({2, Group::q8(), 25, 23, false, "Bauer"});
  return out;
}

inline std::optional<SharpRow> sharp_row(int64_t h, const Group& g) {
  for (const auto& r : known_sharp_table(std::max<int64_t>(h, 1)))
    if (r.h == h && r.group == g) return r;
  return std::nullopt;
}

// Markdown table of N, Theta (for |G| = |H|) and sharpness for h <= h_max.
inline std::string bounds_report(int64_t h_max = 16) {
  std::string out = "| h | H | N | Theta (G = H) | status |\n|---|---|---|---|---|\n";
  for (int64_t h = 1; h <= h_max; ++h) {
    std::vector<Group> groups;
    for (int m = 1; m <= 4; ++m) groups.push_back(Group::cyclic(m));
    groups.push_back(Group::q8());
    for (const auto& g : groups) {
      if (!admissible(h, g)) continue;
      int64_t n = vanishing_bound(h, g);
      std::string status = "bound";
      if (auto row = sharp_row(h, g)) {
        if (row->sharp)
          status = "sharp";
        else
          status = "actual " + std::to_string(*row->actual) + " (" + row->provenance + ")";
      }
      int64_t e = *theta_log2(h, g.order(), g);
      std::string theta = "2^" + std::to_string(e);
      if (e < 64) theta += " = " + theta_bound(h, g.order(), g).str();
      out += "| " + std::to_string(h) + " | " + g.name() + " | " + std::to_string(n) + " | " + theta + " | " + status + " |\n";
    }
  }
  return out;
}

}  // namespace rbss
