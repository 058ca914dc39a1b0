#pragma once

// Exact integer linear algebra: Hermite and Smith normal forms, lattice
// membership, relation modules. Everything is int64 with overflow traps.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rbss {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in multiplication");
  return r;
}

inline int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in addition");
  return r;
}

inline int64_t checked_sub(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error("integer overflow in subtraction");
  return r;
}

// Floor division for possibly negative numerators.
inline int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline int64_t mod_floor(int64_t a, int64_t b) { return a - floor_div(a, b) * b; }

}  // namespace detail

using Vec = std::vector<int64_t>;
using Mat = std::vector<Vec>;  // row-major, list of rows

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](int64_t x) { return x == 0; });
}

// row_a <- row_a + c * row_b
inline void axpy(Vec& a, int64_t c, const Vec& b) {
  if (c == 0) return;
  for (size_t i = 0; i < a.size(); ++i)
    a[i] = detail::checked_add(a[i], detail::checked_mul(c, b[i]));
}

inline Vec mat_vec(const Mat& m, const Vec& v) {
  Vec out(m.size(), 0);
  for (size_t r = 0; r < m.size(); ++r)
    for (size_t c = 0; c < v.size(); ++c)
      if (m[r][c] != 0 && v[c] != 0)
        out[r] = detail::checked_add(out[r], detail::checked_mul(m[r][c], v[c]));
  return out;
}

// Row-style Hermite normal form restricted to the first `ncols` columns.
// Row operations act on whole rows, so trailing columns carry a transform.
// Returns the number of pivot rows; rows past that are zero in [0, ncols).
inline size_t echelon(Mat& rows, size_t ncols, std::vector<size_t>* pivots = nullptr) {
  size_t rank = 0;
  if (pivots) pivots->clear();
  for (size_t c = 0; c < ncols && rank < rows.size(); ++c) {
    // Euclid among rows[rank..] on column c.
    while (true) {
      size_t best = rows.size();
      for (size_t r = rank; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        if (best == rows.size() || std::llabs(rows[r][c]) < std::llabs(rows[best][c])) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[rank], rows[best]);
      bool done = true;
      for (size_t r = rank + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        int64_t q = rows[r][c] / rows[rank][c];
        axpy(rows[r], -q, rows[rank]);
        if (rows[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[rank][c] == 0) continue;
    if (rows[rank][c] < 0)
      for (auto& x : rows[rank]) x = -x;
    for (size_t r = 0; r < rank; ++r) {
      int64_t q = detail::floor_div(rows[r][c], rows[rank][c]);
      axpy(rows[r], -q, rows[rank]);
    }
    if (pivots) pivots->push_back(c);
    ++rank;
  }
  return rank;
}

// A sublattice of Z^n stored as its reduced Hermite basis; equality of
// lattices is equality of `basis`.
struct Lattice {
  size_t dim = 0;
  Mat basis;
  std::vector<size_t> pivots;

  Lattice() = default;
  explicit Lattice(size_t n) : dim(n) {}

  static Lattice span(size_t n, Mat gens) {
    Lattice l(n);
    for (auto& g : gens)
      if (g.size() != n) throw Error("lattice generator has wrong length");
    size_t rank = echelon(gens, n, &l.pivots);
    gens.resize(rank);
    l.basis = std::move(gens);
    return l;
  }

  static Lattice full(size_t n) {
    Mat id(n, Vec(n, 0));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    return span(n, std::move(id));
  }

  size_t rank() const { return basis.size(); }

  // Canonical representative of v modulo the lattice.
  Vec reduce(Vec v) const {
    for (size_t i = 0; i < basis.size(); ++i) {
      size_t c = pivots[i];
      int64_t q = detail::floor_div(v[c], basis[i][c]);
      axpy(v, -q, basis[i]);
    }
    return v;
  }

  bool contains(const Vec& v) const { return is_zero(reduce(v)); }

  bool contains(const Lattice& other) const {
    return std::all_of(other.basis.begin(), other.basis.end(),
                       [&](const Vec& v) { return contains(v); });
  }

  Lattice plus(const Mat& extra) const {
    Mat g = basis;
    g.insert(g.end(), extra.begin(), extra.end());
    return span(dim, std::move(g));
  }

  // Coordinates of v (assumed in the lattice) in the Hermite basis.
  Vec coordinates(Vec v) const {
    Vec c(basis.size(), 0);
    for (size_t i = 0; i < basis.size(); ++i) {
      size_t col = pivots[i];
      if (v[col] % basis[i][col] != 0) throw Error("vector not in lattice");
      c[i] = v[col] / basis[i][col];
      axpy(v, -c[i], basis[i]);
    }
    if (!is_zero(v)) throw Error("vector not in lattice");
    return c;
  }

  bool operator==(const Lattice& o) const { return dim == o.dim && basis == o.basis; }
};

// Integer relations among the given rows: all c with sum c_i rows_i = 0,
// returned as a Hermite basis of the relation lattice.
inline Lattice relations(const Mat& rows, size_t ncols) {
  size_t k = rows.size();
  Mat aug(k, Vec(ncols + k, 0));
  for (size_t i = 0; i < k; ++i) {
    std::copy(rows[i].begin(), rows[i].end(), aug[i].begin());
    aug[i][ncols + i] = 1;
  }
  size_t rank = echelon(aug, ncols);
  Mat rel;
  for (size_t i = rank; i < k; ++i) rel.emplace_back(aug[i].begin() + ncols, aug[i].end());
  return Lattice::span(k, std::move(rel));
}

// Smith normal form D = U * A * V of an (m x n) matrix. Only V and V^{-1}
// are tracked; diag holds the nonzero invariant factors in divisibility order.
struct SmithForm {
  std::vector<int64_t> diag;
  Mat v;
  Mat v_inv;
};

inline SmithForm smith(Mat a, size_t ncols) {
  size_t m = a.size();
  size_t n = ncols;
  SmithForm out;
  out.v.assign(n, Vec(n, 0));
  out.v_inv.assign(n, Vec(n, 0));
  for (size_t i = 0; i < n; ++i) out.v[i][i] = out.v_inv[i][i] = 1;

  // Column op: col_j += c * col_i  (V <- V E, V^{-1} <- E^{-1} V^{-1}).
  auto col_add = [&](size_t j, int64_t c, size_t i) {
    if (c == 0) return;
    for (auto& row : a) row[j] = detail::checked_add(row[j], detail::checked_mul(c, row[i]));
    for (auto& row : out.v) row[j] = detail::checked_add(row[j], detail::checked_mul(c, row[i]));
    axpy(out.v_inv[i], -c, out.v_inv[j]);
  };
  auto col_swap = [&](size_t i, size_t j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : out.v) std::swap(row[i], row[j]);
    std::swap(out.v_inv[i], out.v_inv[j]);
  };
  auto col_neg = [&](size_t i) {
    for (auto& row : a) row[i] = -row[i];
    for (auto& row : out.v) row[i] = -row[i];
    for (auto& x : out.v_inv[i]) x = -x;
  };

  size_t t = 0;
  while (t < m && t < n) {
    // Pick the smallest nonzero entry in the trailing block.
    size_t pr = m, pc = n;
    for (size_t r = t; r < m; ++r)
      for (size_t c = t; c < n; ++c)
        if (a[r][c] != 0 && (pr == m || std::llabs(a[r][c]) < std::llabs(a[pr][pc]))) {
          pr = r;
          pc = c;
        }
    if (pr == m) break;
    std::swap(a[t], a[pr]);
    col_swap(t, pc);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t r = t + 1; r < m; ++r) {
        if (a[r][t] == 0) continue;
        int64_t q = a[r][t] / a[t][t];
        axpy(a[r], -q, a[t]);
        if (a[r][t] != 0) {
          std::swap(a[t], a[r]);
          clean = false;
        }
      }
      for (size_t c = t + 1; c < n; ++c) {
        if (a[t][c] == 0) continue;
        int64_t q = a[t][c] / a[t][t];
        col_add(c, -q, t);
        if (a[t][c] != 0) {
          col_swap(t, c);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility: fold a row with a non-multiple into row t.
      for (size_t r = t + 1; r < m && clean; ++r)
        for (size_t c = t + 1; c < n; ++c)
          if (a[r][c] % a[t][t] != 0) {
            axpy(a[t], 1, a[r]);
            clean = false;
            break;
          }
    }
    if (a[t][t] < 0) col_neg(t);
    out.diag.push_back(a[t][t]);
    ++t;
  }
  return out;
}

// Presentation of a quotient lattice Z/B (B contained in Z) as an abelian
// group: invariant factors != 1 (0 meaning a free summand) and generator
// vectors in the ambient Z^n.
struct QuotientGroup {
  std::vector<int64_t> orders;  // 0 = infinite cyclic
  Mat generators;
};

inline QuotientGroup quotient(const Lattice& z, const Lattice& b) {
  size_t a = z.rank();
  Mat coords;
  coords.reserve(b.rank());
  for (const auto& row : b.basis) coords.push_back(z.coordinates(row));
  SmithForm s = smith(coords, a);
  QuotientGroup q;
  for (size_t i = 0; i < a; ++i) {
    int64_t d = i < s.diag.size() ? s.diag[i] : 0;
    if (d == 1) continue;
    Vec g(z.dim, 0);
    for (size_t k = 0; k < a; ++k) axpy(g, s.v_inv[i][k], z.basis[k]);
    q.orders.push_back(d);
    q.generators.push_back(b.reduce(std::move(g)));
  }
  // Torsion in divisibility order, free summands last.
  std::vector<size_t> idx(q.orders.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](size_t x, size_t y) {
    int64_t ox = q.orders[x] == 0 ? INT64_MAX : q.orders[x];
    int64_t oy = q.orders[y] == 0 ? INT64_MAX : q.orders[y];
    return ox < oy;
  });
  QuotientGroup sorted;
  for (size_t i : idx) {
    sorted.orders.push_back(q.orders[i]);
    sorted.generators.push_back(std::move(q.generators[i]));
  }
  return sorted;
}

}  // namespace rbss
