#include <gtest/gtest.h>

#include "rbss/bounds.hpp"

using namespace rbss;

TEST(Bounds, KnownValues) {
  EXPECT_EQ(vanishing_bound(1, Group::cyclic(1)), 3);
  for (int64_t h = 1; h <= 8; ++h) EXPECT_EQ(vanishing_bound(h, Group::cyclic(1)), (int64_t{1} << (h + 1)) - 1);
  EXPECT_EQ(vanishing_bound(2, Group::cyclic(2)), 13);
  EXPECT_EQ(vanishing_bound(4, Group::cyclic(2)), 61);
  EXPECT_EQ(vanishing_bound(2, Group::q8()), 25);
  EXPECT_EQ(vanishing_bound(4, Group::cyclic(3)), 121);
}

TEST(Bounds, Admissibility) {
  EXPECT_THROW(vanishing_bound(1, Group::cyclic(2)), Error);
  EXPECT_THROW(vanishing_bound(2, Group::cyclic(3)), Error);
  EXPECT_THROW(vanishing_bound(3, Group::q8()), Error);
  EXPECT_THROW(vanishing_bound(4, Group::q8()), Error);
  EXPECT_THROW(vanishing_bound(0, Group::cyclic(1)), Error);
  EXPECT_NO_THROW(vanishing_bound(6, Group::q8()));
  EXPECT_NE(admissibility_error(3, Group::q8()).find("mod 4"), std::string::npos);
}

// Each bound is the C2 (or C4) bound pushed through the norm at the right index.
TEST(Bounds, NormRecursionIdentity) {
  for (int m = 1; m <= 4; ++m)
    for (int64_t h = 1; h <= 16; ++h) {
      Group g = Group::cyclic(m);
      if (!admissible(h, g)) continue;
      int64_t n = vanishing_bound(h, g);
      EXPECT_EQ(n, norm_diff_bound(vanishing_bound(h, Group::cyclic(1)), int64_t{1} << (m - 1))) << h << " " << m;
      EXPECT_EQ(n % 2, 1);
    }
  for (int64_t h = 2; h <= 14; h += 4) {
    int64_t n = vanishing_bound(h, Group::q8());
    EXPECT_EQ(n, (int64_t{1} << (h + 3)) - 7);
    EXPECT_EQ(n, norm_diff_bound(vanishing_bound(h, Group::cyclic(2)), 2));
    EXPECT_EQ(n % 2, 1);
  }
}

TEST(Bounds, NormDiffBound) {
  EXPECT_EQ(norm_diff_bound(3, 1), 3);
  EXPECT_EQ(norm_diff_bound(3, 2), 5);
  EXPECT_EQ(norm_diff_bound(7, 4), 25);
  EXPECT_THROW(norm_diff_bound(1, 2), Error);
  EXPECT_THROW(norm_diff_bound(3, 0), Error);
}

TEST(Bounds, SylowReduction) {
  for (int64_t odd : {1, 3, 5, 15, 21}) {
    EXPECT_EQ(group_bound(2, 4 * odd, Group::cyclic(2)), 13);
    EXPECT_EQ(group_bound(2, 8 * odd, Group::q8()), 25);
  }
  EXPECT_THROW(group_bound(2, 8, Group::cyclic(2)), Error);  // index 2
  EXPECT_THROW(group_bound(2, 6, Group::cyclic(2)), Error);  // not a multiple
  auto s = sylow_pairs(6);
  EXPECT_TRUE(s.maximal.is_q8());
  EXPECT_EQ(s.admissible.size(), 3u);
  auto t = sylow_pairs(12);
  EXPECT_EQ(t.maximal, Group::cyclic(3));
  for (const auto& g : t.admissible) EXPECT_TRUE(admissible(12, g)) << g.name();
  for (int64_t h = 1; h <= 16; ++h)
    for (const auto& g : sylow_pairs(h).admissible) EXPECT_TRUE(admissible(h, g));
}

TEST(Bounds, Theta) {
  for (int64_t h = 1; h <= 4; ++h) {
    BigInt want = BigInt(1) << static_cast<unsigned>((int64_t{1} << h) + 1);
    EXPECT_EQ(theta_bound(h, 2, Group::cyclic(1)), want) << h;
    EXPECT_EQ(*theta_log2(h, 2, Group::cyclic(1)), (int64_t{1} << h) + 1);
  }
  EXPECT_EQ(theta_bound(1, 2, Group::cyclic(1)), 8);
  EXPECT_EQ(theta_bound(2, 4, Group::cyclic(2)), 32768);
  EXPECT_EQ(theta_bound(1, 6, Group::cyclic(1)), 24);
  EXPECT_FALSE(theta_log2(1, 6, Group::cyclic(1)).has_value());
  // Large exponents stay exact.
  EXPECT_EQ(msb(theta_bound(16, 2, Group::cyclic(1))), static_cast<unsigned>((1 << 16) + 1));
}

TEST(Bounds, IsoRegion) {
  Group c2 = Group::cyclic(1);
  for (int64_t t = 0; t <= 12; ++t) EXPECT_EQ(tau(VirtualRep::trivial(c2, t)), 2 * t);
  for (int64_t t = 0; t <= 12; ++t)
    for (int64_t s = -4; s <= 12; ++s)
      EXPECT_EQ(iso_region_slice_hfpss(VirtualRep::trivial(c2, t), s), 2 * (t - s - 1) > t) << t << " " << s;
  // Monotone: smaller s stays inside.
  VirtualRep v = VirtualRep::parse(c2, "3+2s");
  for (int64_t s = 10; s > -6; --s)
    if (iso_region_slice_hfpss(v, s)) {
      EXPECT_TRUE(iso_region_slice_hfpss(v, s - 1));
    }
  EXPECT_EQ(hfpss_tate_region(3), TateRegion::Iso);
  EXPECT_EQ(hfpss_tate_region(0), TateRegion::Surjection);
  EXPECT_EQ(hfpss_tate_region(-1), TateRegion::None);
  EXPECT_EQ(tate_region_name(TateRegion::Surjection), "surjection");
}

TEST(Bounds, SharpnessTable) {
  auto q8 = sharp_row(2, Group::q8());
  ASSERT_TRUE(q8.has_value());
  EXPECT_FALSE(q8->sharp);
  EXPECT_EQ(*q8->actual, 23);
  EXPECT_EQ(q8->bound, 25);
  EXPECT_TRUE(sharp_row(4, Group::cyclic(2))->sharp);
  EXPECT_FALSE(sharp_row(6, Group::q8()).has_value());
  for (const auto& r : known_sharp_table()) EXPECT_EQ(r.bound, vanishing_bound(r.h, r.group));
  auto rep = bounds_report(6);
  EXPECT_NE(rep.find("| 2 | Q8 | 25 |"), std::string::npos);
  EXPECT_NE(rep.find("actual 23"), std::string::npos);
  EXPECT_NE(rep.find("| 1 | C2 | 3 | 2^3 = 8 | sharp |"), std::string::npos);
}
