#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "rbss/intmath.hpp"

using namespace rbss;

namespace {

// Determinantal divisors: d_k = gcd of all k x k minors. Invariant factors
// are d_k / d_{k-1}. Brute force over minors, small matrices only.
int64_t det(Mat m) {
  size_t n = m.size();
  // Bareiss fraction-free elimination.
  int64_t sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n + 1 && k < n; ++k) {
    if (m[k][k] == 0) {
      size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

void subsets(size_t n, size_t k, size_t start, std::vector<size_t>& cur, std::vector<std::vector<size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<int64_t> oracle_invariants(const Mat& a, size_t rows, size_t cols) {
  std::vector<int64_t> out;
  int64_t prev = 1;
  for (size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<size_t>> rs, cs;
    std::vector<size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    int64_t g = 0;
    for (auto& r : rs)
      for (auto& c : cs) {
        Mat minor(k, Vec(k));
        for (size_t i = 0; i < k; ++i)
          for (size_t j = 0; j < k; ++j) minor[i][j] = a[r[i]][c[j]];
        g = std::gcd(g, std::llabs(det(minor)));
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

}  // namespace

TEST(IntMath, SmithKnownMatrices) {
  EXPECT_EQ(smith({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, 3).diag, (std::vector<int64_t>{2, 6, 12}));
  EXPECT_EQ(smith({{2}}, 1).diag, (std::vector<int64_t>{2}));
  EXPECT_TRUE(smith({{0, 0}}, 2).diag.empty());
}

TEST(IntMath, SmithMatchesDeterminantalDivisors) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> small(-6, 6), sz(1, 4);
  for (int trial = 0; trial < 400; ++trial) {
    size_t r = sz(rng), c = sz(rng);
    Mat a(r, Vec(c));
    for (auto& row : a)
      for (auto& x : row) x = small(rng);
    SmithForm s = smith(a, c);
    EXPECT_EQ(s.diag, oracle_invariants(a, r, c)) << "trial " << trial;
    // V * V^{-1} = I
    for (size_t i = 0; i < c; ++i)
      for (size_t j = 0; j < c; ++j) {
        int64_t acc = 0;
        for (size_t k = 0; k < c; ++k) acc += s.v[i][k] * s.v_inv[k][j];
        EXPECT_EQ(acc, i == j ? 1 : 0);
      }
  }
}

TEST(IntMath, LatticeMembershipAndCoordinates) {
  Lattice l = Lattice::span(3, {{2, 0, 0}, {0, 3, 1}, {2, 3, 1}});
  EXPECT_EQ(l.rank(), 2u);
  EXPECT_TRUE(l.contains(Vec{4, -3, -1}));
  EXPECT_FALSE(l.contains(Vec{1, 0, 0}));
  Vec c = l.coordinates({4, 6, 2});
  Vec back(3, 0);
  for (size_t i = 0; i < c.size(); ++i) axpy(back, c[i], l.basis[i]);
  EXPECT_EQ(back, (Vec{4, 6, 2}));
  EXPECT_THROW(l.coordinates({1, 0, 0}), Error);
}

TEST(IntMath, RelationsAreKernel) {
  Mat rows = {{1, 2}, {2, 4}, {0, 1}, {3, 7}};
  Lattice rel = relations(rows, 2);
  EXPECT_EQ(rel.rank(), 2u);
  for (const auto& r : rel.basis) {
    Vec sum(2, 0);
    for (size_t i = 0; i < rows.size(); ++i) axpy(sum, r[i], rows[i]);
    EXPECT_TRUE(is_zero(sum));
  }
}

TEST(IntMath, QuotientOrdersSorted) {
  Lattice z = Lattice::full(3);
  Lattice b = Lattice::span(3, {{4, 0, 0}, {0, 2, 0}});
  QuotientGroup q = quotient(z, b);
  EXPECT_EQ(q.orders, (std::vector<int64_t>{2, 4, 0}));
  for (auto& g : q.generators) EXPECT_FALSE(b.contains(g));
}

TEST(IntMath, OverflowTraps) {
  EXPECT_THROW(detail::checked_mul(INT64_MAX, 2), Error);
  EXPECT_EQ(detail::floor_div(-7, 2), -4);
  EXPECT_EQ(detail::mod_floor(-7, 4), 1);
}
