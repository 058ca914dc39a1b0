#pragma once

// RO(C2)-graded homotopy of H\underline{Z} from cellular chains of
// representation spheres, at both levels C2/C2 and C2/e.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rbss/classalg.hpp"
#include "rbss/intmath.hpp"

namespace rbss {

// A finitely generated abelian group given by named generators and integer
// relations (rows are relations in generator coordinates).
struct GradedAbelianGroup {
  std::vector<std::string> generators;
  Mat relations;

  // Invariant factors != 1, torsion in divisibility order then free (0).
  std::vector<int64_t> invariants() const {
    Lattice all = Lattice::full(generators.size());
    Mat rel = relations;
    Lattice r = Lattice::span(generators.size(), std::move(rel));
    return quotient(all, r).orders;
  }
  int64_t free_rank() const {
    int64_t n = 0;
    for (auto d : invariants()) n += d == 0;
    return n;
  }
  bool is_zero() const { return invariants().empty(); }
};

// "Z^r + Z/2 + Z/2^{2}" with the free part first; "0" for the zero group.
inline std::string group_string(const std::vector<int64_t>& invariants) {
  int64_t free = 0;
  std::vector<int64_t> tors;
  for (auto d : invariants) {
    if (d == 0)
      ++free;
    else
      tors.push_back(d);
  }
  std::string out;
  if (free == 1) out = "Z";
  if (free > 1) out = "Z^" + std::to_string(free);
  for (auto d : tors) {
    if (!out.empty()) out += " + ";
    int a = 0;
    int64_t x = d;
    while (x % 2 == 0) {
      x /= 2;
      ++a;
    }
    if (x != 1)
      out += "Z/" + std::to_string(d);
    else if (a == 1)
      out += "Z/2";
    else
      out += "Z/2^{" + std::to_string(a) + "}";
  }
  return out.empty() ? "0" : out;
}

// Cellular chains at the two levels of the constant Mackey functor.
// Degree k runs over [lo, hi]. boundary[k] maps C_k -> C_{k-1} (rows =
// target basis). The underlying level carries the C2 action and the
// restriction from the fixed level.
struct ChainComplex {
  int lo = 0;
  int hi = 0;
  std::map<int, size_t> fixed_rank;
  std::map<int, size_t> under_rank;
  std::map<int, Mat> fixed_boundary;
  std::map<int, Mat> under_boundary;
  std::map<int, Mat> involution;   // on C_k(C2/e)
  std::map<int, Mat> restriction;  // C_k(C2/C2) -> C_k(C2/e)

  size_t rank(int k, bool fixed) const {
    const auto& r = fixed ? fixed_rank : under_rank;
    auto it = r.find(k);
    return it == r.end() ? 0 : it->second;
  }
  Mat boundary(int k, bool fixed) const {
    const auto& b = fixed ? fixed_boundary : under_boundary;
    auto it = b.find(k);
    if (it != b.end()) return it->second;
    return Mat(rank(k - 1, fixed), Vec(rank(k, fixed), 0));
  }
};

inline Mat mat_mul(const Mat& a, const Mat& b, size_t a_rows, size_t inner, size_t b_cols) {
  Mat out(a_rows, Vec(b_cols, 0));
  for (size_t i = 0; i < a_rows; ++i)
    for (size_t k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (size_t j = 0; j < b_cols; ++j)
          out[i][j] = detail::checked_add(out[i][j], detail::checked_mul(a[i][k], b[k][j]));
  return out;
}

// Standard C2-CW structure on S^{n sigma}, n >= 0: the fixed 0-cell and free
// cells C2 x e^i for 1 <= i <= n (reduced, basepoint at infinity).
// Underlying boundaries: d e^1 = e^0, d e^i = (1 - (-1)^i g) e^{i-1}.
// Fixed level takes the transfer (x2) for free-to-fixed and the augmentation
// for free-to-free. For n < 0 the dual cochain complex is placed in degrees
// -i. `shift` suspends by a trivial sphere.
inline ChainComplex rep_sphere_complex(int shift, int n) {
  ChainComplex c;
  int top = n >= 0 ? n : -n;
  bool dual = n < 0;
  auto deg = [&](int i) { return shift + (dual ? -i : i); };
  c.lo = dual ? shift - top : shift;
  c.hi = dual ? shift : shift + top;

  for (int i = 0; i <= top; ++i) {
    int d = deg(i);
    c.fixed_rank[d] = 1;
    c.under_rank[d] = i == 0 ? 1 : 2;
    if (i == 0) {
      c.involution[d] = {{1}};
      c.restriction[d] = {{1}};
    } else {
      c.involution[d] = {{0, 1}, {1, 0}};
      c.restriction[d] = {{1}, {1}};  // 1 -> 1 + g
    }
  }
  // Chain-level boundary coefficients in Z[C2] written as (coef of 1, coef of g).
  auto ring_elt = [](int i) -> std::pair<int64_t, int64_t> {
    int64_t sgn = (i % 2 == 0) ? -1 : 1;  // 1 - (-1)^i g
    return {1, sgn};
  };
  for (int i = 1; i <= top; ++i) {
    if (!dual) {
      int d = deg(i);
      if (i == 1) {
        c.fixed_boundary[d] = {{2}};
        c.under_boundary[d] = {{1, 1}};
      } else {
        auto [a, b] = ring_elt(i);
        c.fixed_boundary[d] = {{a + b}};
        // x * e: basis (e, g e); multiplication by a + b g.
        c.under_boundary[d] = {{a, b}, {b, a}};
      }
    } else {
      // Coboundary delta^{i-1}: C^{i-1} -> C^i sits in degree -(i-1) -> -i.
      int d = deg(i - 1);
      if (i == 1) {
        c.fixed_boundary[d] = {{1}};
        c.under_boundary[d] = {{1}, {1}};
      } else {
        auto [a, b] = ring_elt(i);
        c.fixed_boundary[d] = {{a + b}};
        c.under_boundary[d] = {{a, b}, {b, a}};
      }
    }
  }
  return c;
}

// H_k at one level: ker d_k / im d_{k+1}.
inline QuotientGroup chain_homology(const ChainComplex& c, int k, bool fixed) {
  size_t n = c.rank(k, fixed);
  if (n == 0) return {};
  Mat dk = c.boundary(k, fixed);
  size_t tgt = c.rank(k - 1, fixed);
  // Columns of dk as rows, to take integer relations.
  Mat cols(n, Vec(tgt, 0));
  for (size_t r = 0; r < tgt; ++r)
    for (size_t j = 0; j < n; ++j) cols[j][r] = dk[r][j];
  Lattice ker = tgt == 0 ? Lattice::full(n) : relations(cols, tgt);
  Mat dk1 = c.boundary(k + 1, fixed);
  size_t src = c.rank(k + 1, fixed);
  Mat img;
  for (size_t j = 0; j < src; ++j) {
    Vec v(n, 0);
    for (size_t r = 0; r < n; ++r) v[r] = dk1[r][j];
    img.push_back(v);
  }
  Lattice im = Lattice::span(n, std::move(img));
  return quotient(ker, im);
}

// One cyclic generator of pi_{a + b sigma}^{C2} HZ, named in the positive
// cone (u_2s^j a_s^k) or the negative cone (2/u_2s^j, theta/(u_2s^j a_s^k)).
enum class Cone { Positive, TwoOverU, Theta };

struct HZClass {
  Cone cone = Cone::Positive;
  int64_t u = 0;
  int64_t a = 0;
  int64_t order = 0;  // 0 = Z
};

inline std::optional<HZClass> classify_hz(int64_t a, int64_t b) {
  if (b <= 0) {
    if (a >= 0 && a % 2 == 0 && a + b <= 0) {
      int64_t k = -a - b;
      return HZClass{Cone::Positive, a / 2, k, k == 0 ? 0 : 2};
    }
    return std::nullopt;
  }
  int64_t i = -a;
  if (i >= 2 && i % 2 == 0 && i == b) return HZClass{Cone::TwoOverU, i / 2, 0, 0};
  if (i >= 3 && i % 2 == 1 && i <= b) return HZClass{Cone::Theta, (i - 3) / 2, b - i, 2};
  return std::nullopt;
}

inline std::string hz_class_name(const HZClass& c) {
  auto up = [](const char* s, int64_t e) {
    std::string out = s;
    if (e != 1) out += "^" + std::to_string(e);
    return out;
  };
  switch (c.cone) {
    case Cone::Positive: {
      std::string out;
      if (c.u != 0) out = up("u2s", c.u);
      if (c.a != 0) out += (out.empty() ? "" : " * ") + up("as", c.a);
      return out.empty() ? "1" : out;
    }
    case Cone::TwoOverU:
      return "2/" + up("u2s", c.u);
    case Cone::Theta: {
      std::string den;
      if (c.u != 0) den = up("u2s", c.u);
      if (c.a != 0) den += (den.empty() ? "" : "*") + up("as", c.a);
      return den.empty() ? "theta" : "theta/(" + den + ")";
    }
  }
  return "?";
}

// pi_{a + b sigma}^{C2} HZ = H_a of the complex of S^{-b sigma}, fixed level.
inline QuotientGroup hz_homotopy(int64_t a, int64_t b) {
  static std::mutex mu;
  static std::map<std::pair<int64_t, int64_t>, QuotientGroup> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({a, b});
    if (it != cache.end()) return it->second;
  }
  ChainComplex c = rep_sphere_complex(0, static_cast<int>(-b));
  QuotientGroup g = chain_homology(c, static_cast<int>(a), true);
  for (auto d : g.orders)
    if (d != 0 && (d & (d - 1)) != 0) throw Error("odd torsion in HZ homotopy; not expected");
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(a, b), g);
  return g;
}

// pi_V^{C2}(HZ) for V = a + b sigma, with its generator named.
inline GradedAbelianGroup pi_HZ(const VirtualRep& v) {
  if (v.group() != Group::cyclic(1)) throw Error("pi_HZ is implemented for C2 only");
  int64_t a = v[0], b = v[1];
  QuotientGroup g = hz_homotopy(a, b);
  auto cls = classify_hz(a, b);
  GradedAbelianGroup out;
  if (g.orders.empty()) {
    if (cls) throw Error("internal: named class " + hz_class_name(*cls) + " in a zero group");
    return out;
  }
  if (g.orders.size() != 1 || !cls || cls->order != g.orders[0])
    throw Error("internal: HZ homotopy in degree " + v.to_string() + " disagrees with cone naming");
  out.generators.push_back(hz_class_name(*cls));
  if (g.orders[0] != 0) out.relations.push_back({g.orders[0]});
  return out;
}

}  // namespace rbss
