#pragma once

// Laurent monomials in Euler classes a_V, orientation classes u_V, the C2
// generators vbar_h and the formal norms N(vbar_h), graded by RO(G).

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rbss/repring.hpp"

namespace rbss {

// Euler slots are the nontrivial basis irreducibles (basis index 1..rank-1).
// Orientation slots are the orientable blocks over the same irreducibles:
// 2s, l_i (C_{2^m}) and 2si, 2sj, 2sk, H (Q8).
inline VirtualRep euler_rep(const Group& g, size_t slot) { return VirtualRep::basis(g, slot + 1); }

inline VirtualRep orient_rep(const Group& g, size_t slot) {
  size_t i = slot + 1;
  if (g.is_q8()) return i == 4 ? VirtualRep::basis(g, 4) : VirtualRep::basis(g, i) * 2;
  return i == 1 ? VirtualRep::basis(g, 1) * 2 : VirtualRep::basis(g, i);
}

inline std::string euler_symbol(const Group& g, size_t slot) {
  if (g.is_q8()) {
    static const char* n[] = {"asi", "asj", "ask", "aH"};
    return n[slot];
  }
  return slot == 0 ? "as" : "al" + std::to_string(slot + 1);
}

inline std::string orient_symbol(const Group& g, size_t slot) {
  if (g.is_q8()) {
    static const char* n[] = {"u2si", "u2sj", "u2sk", "uH"};
    return n[slot];
  }
  return slot == 0 ? "u2s" : "ul" + std::to_string(slot + 1);
}

class ClassMonomial {
 public:
  ClassMonomial() : ClassMonomial(Group::cyclic(1)) {}
  explicit ClassMonomial(Group g) : group_(g), euler_(g.rank() - 1, 0), orient_(g.rank() - 1, 0) {}

  static ClassMonomial unit(Group g) { return ClassMonomial(g); }
  static ClassMonomial euler(Group g, size_t slot, int64_t e = 1) {
    ClassMonomial m(g);
    m.euler_.at(slot) = e;
    return m;
  }
  static ClassMonomial orient(Group g, size_t slot, int64_t e = 1) {
    ClassMonomial m(g);
    m.orient_.at(slot) = e;
    return m;
  }
  static ClassMonomial vbar(int h, int64_t e = 1) {
    if (h < 1) throw Error("vbar_h needs h >= 1");
    ClassMonomial m(Group::cyclic(1));
    m.vbar_[h] = e;
    return m;
  }
  static ClassMonomial norm_vbar(Group g, int h, int64_t e = 1) {
    if (h < 1) throw Error("N(vbar_h) needs h >= 1");
    ClassMonomial m(g);
    m.norm_[h] = e;
    return m;
  }

  const Group& group() const { return group_; }
  int64_t coefficient() const { return coeff_; }
  const std::vector<int64_t>& euler_exponents() const { return euler_; }
  const std::vector<int64_t>& orient_exponents() const { return orient_; }
  const std::map<int, int64_t>& vbar_exponents() const { return vbar_; }
  const std::map<int, int64_t>& norm_exponents() const { return norm_; }

  ClassMonomial& set_coefficient(int64_t c) {
    coeff_ = c;
    return *this;
  }

  bool has_negative_exponent() const {
    for (auto e : euler_)
      if (e < 0) return true;
    for (auto e : orient_)
      if (e < 0) return true;
    for (auto& [h, e] : vbar_)
      if (e < 0) return true;
    for (auto& [h, e] : norm_)
      if (e < 0) return true;
    return false;
  }

  friend ClassMonomial operator*(const ClassMonomial& x, const ClassMonomial& y) {
    if (x.group_ != y.group_) throw Error("cannot multiply classes over " + x.group_.name() + " and " + y.group_.name());
    ClassMonomial r = x;
    r.coeff_ = detail::checked_mul(x.coeff_, y.coeff_);
    for (size_t i = 0; i < r.euler_.size(); ++i) r.euler_[i] += y.euler_[i];
    for (size_t i = 0; i < r.orient_.size(); ++i) r.orient_[i] += y.orient_[i];
    for (auto& [h, e] : y.vbar_) r.vbar_[h] += e;
    for (auto& [h, e] : y.norm_) r.norm_[h] += e;
    r.prune();
    return r;
  }

  ClassMonomial pow(int64_t k) const {
    ClassMonomial r = *this;
    int64_t c = 1;
    if (k < 0 && coeff_ != 1 && coeff_ != -1) throw Error("negative power of a non-unit coefficient");
    for (int64_t i = 0; i < (k < 0 ? -k : k); ++i) c = detail::checked_mul(c, coeff_);
    r.coeff_ = c;
    for (auto& e : r.euler_) e *= k;
    for (auto& e : r.orient_) e *= k;
    for (auto& [h, e] : r.vbar_) e *= k;
    for (auto& [h, e] : r.norm_) e *= k;
    r.prune();
    return r;
  }

  // Same monomial ignoring the coefficient.
  bool same_support(const ClassMonomial& o) const {
    return group_ == o.group_ && euler_ == o.euler_ && orient_ == o.orient_ && vbar_ == o.vbar_ && norm_ == o.norm_;
  }
  bool operator==(const ClassMonomial& o) const { return coeff_ == o.coeff_ && same_support(o); }
  bool operator!=(const ClassMonomial& o) const { return !(*this == o); }

  std::string to_string() const;
  static ClassMonomial parse(const Group& g, const std::string& text);

 private:
  void prune() {
    for (auto it = vbar_.begin(); it != vbar_.end();) it = it->second == 0 ? vbar_.erase(it) : std::next(it);
    for (auto it = norm_.begin(); it != norm_.end();) it = it->second == 0 ? norm_.erase(it) : std::next(it);
  }

  Group group_;
  int64_t coeff_ = 1;
  std::vector<int64_t> euler_;
  std::vector<int64_t> orient_;
  std::map<int, int64_t> vbar_;
  std::map<int, int64_t> norm_;
};

namespace detail {
inline void append_factor(std::string& out, const std::string& sym, int64_t e) {
  if (e == 0) return;
  if (!out.empty()) out += " * ";
  out += sym;
  if (e != 1) out += "^" + std::to_string(e);
}
}  // namespace detail

// Canonical order: coefficient, N-generators, vbar's, u's, a's.
inline std::string ClassMonomial::to_string() const {
  std::string out;
  if (coeff_ != 1) out = std::to_string(coeff_);
  for (auto& [h, e] : norm_) detail::append_factor(out, "Nv" + std::to_string(h), e);
  for (auto& [h, e] : vbar_) detail::append_factor(out, "v" + std::to_string(h), e);
  for (size_t i = 0; i < orient_.size(); ++i) detail::append_factor(out, orient_symbol(group_, i), orient_[i]);
  for (size_t i = 0; i < euler_.size(); ++i) detail::append_factor(out, euler_symbol(group_, i), euler_[i]);
  return out.empty() ? "1" : out;
}

inline ClassMonomial ClassMonomial::parse(const Group& g, const std::string& text) {
  ClassMonomial m(g);
  auto fail = [&](const std::string& why) { throw Error("cannot parse class '" + text + "': " + why); };
  std::stringstream ss(text);
  std::string tok;
  bool any = false;
  while (std::getline(ss, tok, '*')) {
    std::string t;
    for (char c : tok)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) fail("empty factor");
    any = true;
    if (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '-') {
      m.coeff_ = detail::checked_mul(m.coeff_, std::stoll(t));
      continue;
    }
    std::string sym = t;
    int64_t e = 1;
    if (auto caret = t.find('^'); caret != std::string::npos) {
      sym = t.substr(0, caret);
      e = std::stoll(t.substr(caret + 1));
    }
    bool found = false;
    for (size_t i = 0; i + 1 < g.rank() && !found; ++i) {
      if (sym == euler_symbol(g, i)) {
        m.euler_[i] += e;
        found = true;
      } else if (sym == orient_symbol(g, i)) {
        m.orient_[i] += e;
        found = true;
      }
    }
    if (!found && sym.size() > 1 && sym[0] == 'v' && std::isdigit(static_cast<unsigned char>(sym[1]))) {
      if (g != Group::cyclic(1)) fail("vbar generators live over C2; use Nv<h> over " + g.name());
      m.vbar_[std::stoi(sym.substr(1))] += e;
      found = true;
    }
    if (!found && sym.size() > 2 && sym[0] == 'N' && sym[1] == 'v') {
      m.norm_[std::stoi(sym.substr(2))] += e;
      found = true;
    }
    if (!found && sym == "1") found = true;
    if (!found) fail("unknown symbol '" + sym + "'");
  }
  if (!any) fail("empty");
  m.prune();
  return m;
}

inline VirtualRep degree(const ClassMonomial& x) {
  const Group& g = x.group();
  VirtualRep d(g);
  for (size_t i = 0; i < x.euler_exponents().size(); ++i) d -= euler_rep(g, i) * x.euler_exponents()[i];
  for (size_t i = 0; i < x.orient_exponents().size(); ++i) {
    VirtualRep block = orient_rep(g, i);
    d += (VirtualRep::trivial(g, dim(block)) - block) * x.orient_exponents()[i];
  }
  if (!x.vbar_exponents().empty()) {
    VirtualRep rho(g, {1, 1});
    for (auto& [h, e] : x.vbar_exponents()) d += rho * (((int64_t{1} << h) - 1) * e);
  }
  if (!x.norm_exponents().empty()) {
    VirtualRep ind = induced_regular(g);
    for (auto& [h, e] : x.norm_exponents()) d += ind * (((int64_t{1} << h) - 1) * e);
  }
  return d;
}

inline int64_t filtration(const ClassMonomial& x) {
  int64_t f = 0;
  for (size_t i = 0; i < x.euler_exponents().size(); ++i)
    f += dim(euler_rep(x.group(), i)) * x.euler_exponents()[i];
  return f;
}

struct ChartPoint {
  int64_t stem = 0;
  int64_t filtration = 0;
  bool operator==(const ChartPoint& o) const { return stem == o.stem && filtration == o.filtration; }
};

// x = coefficient of the trivial representation in the degree (the t of a
// t + V' grading), y = filtration.
inline ChartPoint chart_coords(const ClassMonomial& x, std::optional<int64_t> s_override = std::nullopt) {
  return ChartPoint{degree(x)[0], s_override ? *s_override : filtration(x)};
}

// Multiplicative norm from C2 to G of a C2-monomial with unit coefficient.
inline ClassMonomial norm(const Group& target, const ClassMonomial& x) {
  if (x.group() != Group::cyclic(1)) throw Error("norm is only implemented from C2");
  if (x.coefficient() != 1) throw Error("norm of a monomial with coefficient " + std::to_string(x.coefficient()) +
                                        " is not a monomial; pass unit-coefficient monomials only");
  if (!x.norm_exponents().empty()) throw Error("C2 monomial carries formal norm generators");
  if (!target.is_q8() && target.m == 1) return x;

  int64_t ae = x.euler_exponents()[0];
  int64_t ue = x.orient_exponents()[0];
  ClassMonomial r(target);
  if (target.is_q8()) {
    // N(a_s) = a_H ; N(u_2s) = u_H^2 / (u_2si u_2sj u_2sk)
    r = r * ClassMonomial::euler(target, 3, ae);
    r = r * ClassMonomial::orient(target, 3, 2 * ue);
    for (size_t i = 0; i < 3; ++i) r = r * ClassMonomial::orient(target, i, -ue);
  } else {
    int m = target.m;
    // N(a_s) = a_{l_m}^{2^{m-2}} ; N(u_2s) = u_{l_m}^{2^{m-1}} / (u_2s prod_{i=2}^{m-1} u_{l_i}^{2^{i-1}})
    r = r * ClassMonomial::euler(target, static_cast<size_t>(m - 1), ae * (int64_t{1} << (m - 2)));
    r = r * ClassMonomial::orient(target, static_cast<size_t>(m - 1), ue * (int64_t{1} << (m - 1)));
    r = r * ClassMonomial::orient(target, 0, -ue);
    for (int i = 2; i <= m - 1; ++i)
      r = r * ClassMonomial::orient(target, static_cast<size_t>(i - 1), -ue * (int64_t{1} << (i - 1)));
  }
  for (auto& [h, e] : x.vbar_exponents()) r = r * ClassMonomial::norm_vbar(target, h, e);
  return r;
}

// Euler classes of representations with trivial summands vanish; reject them.
inline ClassMonomial euler_class(const VirtualRep& v) {
  if (!v.is_actual()) throw Error("Euler class of a virtual representation");
  if (v[0] != 0) throw Error("a_V = 0 since " + v.to_string() + " has nontrivial fixed points");
  ClassMonomial m(v.group());
  for (size_t i = 1; i < v.coeffs().size(); ++i) m = m * ClassMonomial::euler(v.group(), i - 1, v[i]);
  return m;
}

// u_V for orientable V; trivial summands are dropped (u_{V+1} = u_V).
inline ClassMonomial orientation_class(const VirtualRep& v) {
  if (!is_orientable(v)) throw Error(v.to_string() + " is not orientable");
  const Group& g = v.group();
  ClassMonomial m(g);
  for (size_t i = 1; i < v.coeffs().size(); ++i) {
    int64_t c = v[i];
    bool doubled = g.is_q8() ? i < 4 : i == 1;
    if (doubled && c % 2 != 0)
      throw Error("u_V for " + v.to_string() + " is not a monomial in the u-basis");
    m = m * ClassMonomial::orient(g, i - 1, doubled ? c / 2 : c);
  }
  return m;
}

}  // namespace rbss
