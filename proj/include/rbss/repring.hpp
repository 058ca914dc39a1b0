#pragma once

// Real representation rings RO(C_{2^m}) and RO(Q8) over the 2-local
// irreducible basis, with fixed points, induction and restriction.
//
// Basis for C_{2^m}: (1, s, l2, ..., lm). The rotation representations by
// odd multiples of 2pi/2^i are merged into l_i (they agree 2-locally), and
// l1 = 2s. Basis for Q8: (1, si, sj, sk, H).

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "rbss/intmath.hpp"

namespace rbss {

struct Group {
  enum class Kind { Cyclic2Power, Quaternion8 };
  Kind kind = Kind::Cyclic2Power;
  int m = 1;  // exponent for C_{2^m}; unused for Q8

  static Group cyclic(int m) {
    if (m < 1 || m > 8) throw Error("C_{2^m} supported for 1 <= m <= 8, got m = " + std::to_string(m));
    return Group{Kind::Cyclic2Power, m};
  }
  static Group q8() { return Group{Kind::Quaternion8, 3}; }

  bool is_q8() const { return kind == Kind::Quaternion8; }
  int64_t order() const { return is_q8() ? 8 : (int64_t{1} << m); }
  size_t rank() const { return is_q8() ? 5 : static_cast<size_t>(m) + 1; }

  std::string name() const { return is_q8() ? "Q8" : "C" + std::to_string(order()); }

  static Group parse(const std::string& s) {
    if (s == "Q8" || s == "q8") return q8();
    if (s.size() >= 2 && (s[0] == 'C' || s[0] == 'c')) {
      int64_t n = std::stoll(s.substr(1));
      for (int m = 1; m <= 8; ++m)
        if ((int64_t{1} << m) == n) return cyclic(m);
    }
    throw Error("unknown group '" + s + "' (expected C2, C4, ..., C256 or Q8)");
  }

  bool operator==(const Group& o) const { return kind == o.kind && (is_q8() || m == o.m); }
  bool operator!=(const Group& o) const { return !(*this == o); }
};

// Subgroups: for C_{2^m} index k is C_{2^k} (0 <= k <= m); for Q8 the list
// is {e, Z, <i>, <j>, <k>, Q8}.
struct SubgroupId {
  size_t index = 0;
  int64_t order = 1;
  bool trivial() const { return order == 1; }
};

inline std::vector<SubgroupId> subgroups(const Group& g) {
  std::vector<SubgroupId> out;
  if (g.is_q8()) {
    for (auto [i, o] : {std::pair<size_t, int64_t>{0, 1}, {1, 2}, {2, 4}, {3, 4}, {4, 4}, {5, 8}})
      out.push_back({i, o});
  } else {
    for (int k = 0; k <= g.m; ++k) out.push_back({static_cast<size_t>(k), int64_t{1} << k});
  }
  return out;
}

inline SubgroupId subgroup(const Group& g, size_t index) {
  auto all = subgroups(g);
  if (index >= all.size()) throw Error("subgroup index " + std::to_string(index) + " not in lattice of " + g.name());
  return all[index];
}

// Group structure of a cyclic subgroup, when it is one.
inline Group subgroup_as_group(const Group& g, const SubgroupId& h) {
  if (h.trivial()) throw Error("trivial subgroup has no representation ring here");
  if (g.is_q8()) {
    if (h.index == 1) return Group::cyclic(1);
    throw Error("restriction to non-cyclic or order-4 subgroups of Q8 is not supported");
  }
  return Group::cyclic(static_cast<int>(h.index));
}

class VirtualRep {
 public:
  VirtualRep() = default;
  explicit VirtualRep(Group g) : group_(g), coeffs_(g.rank(), 0) {}
  VirtualRep(Group g, std::vector<int64_t> c) : group_(g), coeffs_(std::move(c)) {
    if (coeffs_.size() != g.rank()) throw Error("coefficient vector does not match basis of " + g.name());
  }

  static VirtualRep trivial(Group g, int64_t n) {
    VirtualRep v(g);
    v.coeffs_[0] = n;
    return v;
  }
  static VirtualRep basis(Group g, size_t i) {
    VirtualRep v(g);
    v.coeffs_.at(i) = 1;
    return v;
  }
  // C_{2^m} helpers
  static VirtualRep sigma(Group g) { return basis(g, 1); }
  static VirtualRep lambda(Group g, int i) {
    if (g.is_q8() || i < 1 || i > g.m) throw Error("lambda_" + std::to_string(i) + " not defined for " + g.name());
    if (i == 1) return sigma(g) * 2;
    return basis(g, static_cast<size_t>(i));
  }

  const Group& group() const { return group_; }
  const std::vector<int64_t>& coeffs() const { return coeffs_; }
  int64_t operator[](size_t i) const { return coeffs_[i]; }

  VirtualRep& operator+=(const VirtualRep& o) {
    check_same(o);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = detail::checked_add(coeffs_[i], o.coeffs_[i]);
    return *this;
  }
  VirtualRep& operator-=(const VirtualRep& o) {
    check_same(o);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = detail::checked_sub(coeffs_[i], o.coeffs_[i]);
    return *this;
  }
  friend VirtualRep operator+(VirtualRep a, const VirtualRep& b) { return a += b; }
  friend VirtualRep operator-(VirtualRep a, const VirtualRep& b) { return a -= b; }
  friend VirtualRep operator*(VirtualRep a, int64_t k) {
    for (auto& c : a.coeffs_) c = detail::checked_mul(c, k);
    return a;
  }
  friend VirtualRep operator*(int64_t k, VirtualRep a) { return std::move(a) * k; }
  VirtualRep operator-() const { return *this * -1; }

  bool operator==(const VirtualRep& o) const { return group_ == o.group_ && coeffs_ == o.coeffs_; }
  bool operator!=(const VirtualRep& o) const { return !(*this == o); }

  bool is_actual() const {
    for (auto c : coeffs_)
      if (c < 0) return false;
    return true;
  }

  std::string to_string() const;
  static VirtualRep parse(const Group& g, const std::string& text);

 private:
  void check_same(const VirtualRep& o) const {
    if (group_ != o.group_) throw Error("mixing representations of " + group_.name() + " and " + o.group_.name());
  }

  Group group_;
  std::vector<int64_t> coeffs_;
};

inline std::string basis_symbol(const Group& g, size_t i) {
  if (g.is_q8()) {
    static const char* names[] = {"1", "si", "sj", "sk", "H"};
    return names[i];
  }
  if (i == 0) return "1";
  if (i == 1) return "s";
  return "l" + std::to_string(i);
}

inline int64_t basis_dim(const Group& g, size_t i) {
  if (g.is_q8()) return i == 4 ? 4 : 1;
  return i <= 1 ? 1 : 2;
}

inline std::string VirtualRep::to_string() const {
  std::string out;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    int64_t c = coeffs_[i];
    if (c == 0) continue;
    if (c < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    int64_t a = c < 0 ? -c : c;
    if (i == 0) {
      out += std::to_string(a);
    } else {
      if (a != 1) out += std::to_string(a);
      out += basis_symbol(group_, i);
    }
  }
  return out.empty() ? "0" : out;
}

inline VirtualRep VirtualRep::parse(const Group& g, const std::string& text) {
  VirtualRep v(g);
  size_t pos = 0;
  auto fail = [&](const std::string& why) { throw Error("cannot parse representation '" + text + "': " + why); };
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) fail("empty");
  if (s == "0") return v;
  while (pos < s.size()) {
    int64_t sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected + or -");
    }
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    bool has_num = pos > start;
    int64_t num = has_num ? std::stoll(s.substr(start, pos - start)) : 1;
    size_t sym_start = pos;
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') ++pos;
    std::string sym = s.substr(sym_start, pos - sym_start);
    if (sym.empty()) {
      if (!has_num) fail("dangling sign");
      v.coeffs_[0] += sign * num;
      continue;
    }
    if (sym.size() > 1 && sym[0] == '*') sym = sym.substr(1);
    bool found = false;
    if (!g.is_q8() && sym == "l1") {
      v.coeffs_[1] += 2 * sign * num;
      found = true;
    }
    for (size_t i = 1; i < g.rank() && !found; ++i)
      if (sym == basis_symbol(g, i)) {
        v.coeffs_[i] += sign * num;
        found = true;
      }
    if (!found) fail("unknown symbol '" + sym + "' for " + g.name());
  }
  return v;
}

inline int64_t dim(const VirtualRep& v) {
  int64_t d = 0;
  for (size_t i = 0; i < v.coeffs().size(); ++i) d = detail::checked_add(d, detail::checked_mul(v[i], basis_dim(v.group(), i)));
  return d;
}

// dim of H-fixed points of each basis element.
inline int64_t basis_fixed_dim(const Group& g, size_t i, const SubgroupId& h) {
  if (g.is_q8()) {
    if (i == 0) return 1;
    if (i == 4) return h.trivial() ? 4 : 0;
    // si is trivial exactly on <i> (index 2), likewise j (3), k (4).
    if (h.index == 0 || h.index == 1) return 1;
    return h.index == i + 1 ? 1 : 0;
  }
  int k = static_cast<int>(h.index);
  if (i == 0) return 1;
  if (i == 1) return k <= g.m - 1 ? 1 : 0;
  return k <= g.m - static_cast<int>(i) ? 2 : 0;
}

inline int64_t fixed_dim(const VirtualRep& v, const SubgroupId& h) {
  const Group& g = v.group();
  auto subs = subgroups(g);
  if (h.index >= subs.size() || subs[h.index].order != h.order)
    throw Error("subgroup not in the lattice of " + g.name());
  int64_t d = 0;
  for (size_t i = 0; i < v.coeffs().size(); ++i)
    d = detail::checked_add(d, detail::checked_mul(v[i], basis_fixed_dim(g, i, h)));
  return d;
}

// min over nontrivial H of |H| dim V^H
inline int64_t tau(const VirtualRep& v) {
  bool first = true;
  int64_t best = 0;
  for (const auto& h : subgroups(v.group())) {
    if (h.trivial()) continue;
    int64_t val = detail::checked_mul(h.order, fixed_dim(v, h));
    if (first || val < best) best = val;
    first = false;
  }
  return best;
}

namespace detail {

// Complex characters of C_{2^m} are psi_b, b mod 2^m. A real basis element
// is 1 <-> {0}, s <-> {2^{m-1}}, l_i <-> {b, -b} with b = 2^{m-i}.
using CharCounts = std::vector<int64_t>;  // multiplicity of psi_b, indexed by b

inline size_t real_class_of(int m, int64_t b) {
  int64_t n = int64_t{1} << m;
  b = mod_floor(b, n);
  if (b == 0) return 0;
  if (b == n / 2) return 1;
  int v = 0;
  while ((b & 1) == 0) {
    b >>= 1;
    ++v;
  }
  return static_cast<size_t>(m - v);
}

inline CharCounts to_complex(int m, const std::vector<int64_t>& real) {
  int64_t n = int64_t{1} << m;
  CharCounts c(static_cast<size_t>(n), 0);
  c[0] += real[0];
  if (m >= 1) c[static_cast<size_t>(n / 2)] += real[1];
  for (int i = 2; i <= m; ++i) {
    int64_t b = int64_t{1} << (m - i);
    c[static_cast<size_t>(b)] += real[static_cast<size_t>(i)];
    c[static_cast<size_t>(n - b)] += real[static_cast<size_t>(i)];
  }
  return c;
}

inline std::vector<int64_t> to_real(int m, const CharCounts& c) {
  int64_t n = int64_t{1} << m;
  std::vector<int64_t> out(static_cast<size_t>(m) + 1, 0);
  for (int64_t b = 0; b < n; ++b) {
    if (c[static_cast<size_t>(b)] != c[static_cast<size_t>(mod_floor(-b, n))])
      throw Error("internal: character is not real");
    if (b == 0 || b == n / 2 || b < n - b) out[real_class_of(m, b)] += c[static_cast<size_t>(b)];
  }
  return out;
}

}  // namespace detail

// Ind_H^G for cyclic H = C_{2^k} in C_{2^m}, and C2 = Z in Q8.
inline VirtualRep induce(const Group& g, const SubgroupId& h, const VirtualRep& v) {
  if (h.trivial()) throw Error("induction from the trivial subgroup is not supported");
  if (g.is_q8()) {
    if (h.index != 1) throw Error("unsupported subgroup pair for induction into Q8");
    if (v.group() != Group::cyclic(1)) throw Error("representation is not over C2");
    // Ind(1) = 1 + si + sj + sk, Ind(s) = H
    return VirtualRep(g, {v[0], v[0], v[0], v[0], v[1]});
  }
  int m = g.m;
  int k = static_cast<int>(h.index);
  if (k < 1 || k > m) throw Error("unsupported subgroup pair for induction");
  Group hg = Group::cyclic(k);
  if (v.group() != hg) throw Error("representation is not over " + hg.name());
  int64_t hk = int64_t{1} << k;
  int64_t n = int64_t{1} << m;
  // Ind psi_c = sum of psi_b with b = c mod 2^k.
  auto hc = detail::to_complex(k, v.coeffs());
  detail::CharCounts gc(static_cast<size_t>(n), 0);
  for (int64_t b = 0; b < n; ++b) gc[static_cast<size_t>(b)] = hc[static_cast<size_t>(b % hk)];
  return VirtualRep(g, detail::to_real(m, gc));
}

inline VirtualRep restrict(const VirtualRep& v, const SubgroupId& h) {
  const Group& g = v.group();
  Group hg = subgroup_as_group(g, h);
  if (g.is_q8()) {
    // Restriction to the center: si -> 1, H -> 4s.
    return VirtualRep(hg, {v[0] + v[1] + v[2] + v[3], 4 * v[4]});
  }
  int64_t hk = int64_t{1} << hg.m;
  auto gc = detail::to_complex(g.m, v.coeffs());
  detail::CharCounts hc(static_cast<size_t>(hk), 0);
  for (size_t b = 0; b < gc.size(); ++b) hc[b % static_cast<size_t>(hk)] += gc[b];
  return VirtualRep(hg, detail::to_real(hg.m, hc));
}

inline bool is_orientable(const VirtualRep& v) {
  if (!v.is_actual()) throw Error("orientability is only defined for actual representations");
  // i acts by -1 on sj and sk, and so on; H and rotations have det 1.
  if (v.group().is_q8()) return (v[1] + v[2]) % 2 == 0 && (v[2] + v[3]) % 2 == 0;
  return v[1] % 2 == 0;
}

// Ind_{C2}^G(rho_2) for the norm degree of formal generators.
inline VirtualRep induced_regular(const Group& g) {
  Group c2 = Group::cyclic(1);
  VirtualRep rho(c2, {1, 1});
  if (!g.is_q8() && g.m == 1) return rho;
  return induce(g, SubgroupId{1, 2}, rho);
}

}  // namespace rbss
