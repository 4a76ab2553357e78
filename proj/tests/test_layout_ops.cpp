#include <gtest/gtest.h>

#include <random>

#include "layrel/error.hpp"
#include "layrel/layout_ops.hpp"
#include "oracles.hpp"

using namespace layrel;

namespace {

CuteLayout L(const char *text) { return parse_cute_layout(text); }

} // namespace

TEST(Compose, ReferenceRows) {
  EXPECT_EQ(compose(L("(2,2):(1,80)"), L("(2,2):(2,1)")), L("(2,2):(80,1)"));
  EXPECT_EQ(compose(L("(4,6,8,10):(2,3,5,7)"), L("6:12")), L("(2,3):(9,5)"));
  EXPECT_EQ(compose(L("(4,2,2):(2,1,8)"), L("16:1")), L("(4,2,2):(2,1,8)"));
  EXPECT_EQ(compose(L("(4,2,8):(3,12,97)"), L("3:3")), L("3:9"));
  EXPECT_EQ(compose(L("((4,2),(2,4)):((2,16),(1,8))"), L("((4,8),2):((16,1),8)")),
            L("((4,(4,2)),2):((8,(2,16)),1)"));
}

TEST(Compose, PromotionCoversMoreThanRelationalComposition) {
  const auto g = L("(2,1):(1,80)");
  const auto f = L("(2,2):(2,1)");
  EXPECT_EQ(compose(layout_mapping(f), layout_mapping(g)),
            Relation::from_pairs(1, 1, {{{0}, {0}}, {{2}, {1}}}));
  EXPECT_EQ(layout_mapping(compose(g, f)),
            Relation::from_pairs(1, 1, {{{0}, {0}}, {{1}, {80}}, {{2}, {1}}, {{3}, {81}}}));
}

TEST(Compose, InvalidWhenImageIsNotAProduct) {
  // 3:2 lands on coordinates (0,0),(2,0),(1,1) of (3,2):(1,10).
  try {
    compose(L("(3,2):(1,10)"), L("3:2"));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidComposition);
  }
}

TEST(Compose, RejectsModesThatDoNotDistribute) {
  // Each mode composes on its own, but index 6 = 2 + 4 lands on (1,1,0).
  try {
    compose(L("(5,2,7):(1,3,6)"), L("(2,2):(2,4)"));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidComposition);
  }
}

TEST(Compose, MatchesRelationalCompositionWithoutPromotion) {
  std::mt19937_64 rng(303);
  oracle::LayoutGen gen_g;
  gen_g.nested = false;
  gen_g.max_stride = 8;
  int checked = 0;
  for (int trial = 0; checked < 100 && trial < 5000; ++trial) {
    const auto g = gen_g(rng);
    const std::int64_t n = size(g);
    // A rank-1 or rank-2 F that stays inside G's domain.
    const std::int64_t s0 = 1 + static_cast<std::int64_t>(rng() % 4);
    const std::int64_t d0 = static_cast<std::int64_t>(rng() % 4);
    const auto f = (rng() % 2) ? CuteLayout(IntTuple(s0), IntTuple(d0))
                               : CuteLayout(IntTuple{s0, 2}, IntTuple{d0, static_cast<std::int64_t>(rng() % 6)});
    if (cosize(f) > n)
      continue;
    CuteLayout h = f;
    try {
      h = compose(g, f);
    } catch (const Error &e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidComposition);
      continue;
    }
    ++checked;
    EXPECT_EQ(layout_mapping(h), oracle::brute_compose(oracle::layout_graph(f), oracle::layout_graph(g)))
        << to_string(g) << " o " << to_string(f) << " = " << to_string(h);
  }
  EXPECT_EQ(checked, 100);
}

TEST(ExtractShape, Progressions) {
  const BoundedSet hole(4, {{0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 2, 0},
                            {0, 3, 0, 0}, {0, 3, 1, 0}, {0, 3, 2, 0}});
  const auto e = extract_shape(hole);
  ASSERT_EQ(e.size(), 4u);
  EXPECT_EQ(e[0].first, 1);
  EXPECT_EQ(e[1], (std::pair<std::int64_t, std::int64_t>{2, 3}));
  EXPECT_EQ(e[2], (std::pair<std::int64_t, std::int64_t>{3, 1}));
  EXPECT_EQ(e[3].first, 1);
  const auto box = extract_shape(box_set({2, 3}));
  EXPECT_EQ(box, (std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 1}, {3, 1}}));
  EXPECT_EQ(extract_shape(BoundedSet(1, {{0}, {2}})),
            (std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}}));
  EXPECT_THROW(extract_shape(BoundedSet(1, {{0}, {1}, {3}})), Error);
  EXPECT_THROW(extract_shape(BoundedSet(1, {{1}, {2}})), Error);
  EXPECT_THROW(extract_shape(BoundedSet(2, {{0, 0}, {1, 1}})), Error);
}

TEST(Complement, ReferenceRows) {
  EXPECT_EQ(complement(L("(2,2):(1,5)"), 20), L("(2,3):(2,9)"));
  EXPECT_EQ(complement(L("(4,2):(1,16)"), 32), L("4:4"));
  EXPECT_TRUE(flat_equal(complement(L("(2,2):(2,10)"), 20), L("((2,2),2):((1,4),18)")));
  EXPECT_EQ(complement(L("(2,2):(1,4)"), 20), L("(2,3):(2,8)"));
}

TEST(Complement, EdgeCases) {
  EXPECT_EQ(complement(L("8:1"), 8), L("1:0"));
  EXPECT_EQ(complement(L("8:1"), 32), L("4:8"));
  try {
    complement(L("(2,2):(1,1)"), 8);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::ComplementUndefined);
  }
}

TEST(Complement, RejectsUnfillableGaps) {
  // The first factor 3:1 would cover 1, but 1 + 3 = 4 is already taken.
  try {
    complement(L("(3,4):(4,3)"), 22);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::ComplementUndefined);
  }
}

TEST(Complement, ConcatenationStaysInjective) {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = oracle::random_with_gaps(rng);
    const std::int64_t target = cosize(h) + static_cast<std::int64_t>(rng() % 16);
    const auto c = complement(h, target);
    const auto hh = layout_mapping(concat(h, c));
    EXPECT_TRUE(is_injective(hh)) << to_string(h) << " " << target << " -> " << to_string(c);
    // Every index below the target is reached.
    EXPECT_EQ(subtract(interval_set(0, target), range(hh)).size(), 0u) << to_string(h);
  }
}

TEST(Complement, InjectiveOrRejected) {
  std::mt19937_64 rng(405);
  oracle::LayoutGen gen;
  gen.nested = false;
  gen.max_rank = 3;
  gen.max_leaf = 4;
  for (int trial = 0; trial < 300; ++trial) {
    const auto h = gen(rng);
    const std::int64_t target = 1 + static_cast<std::int64_t>(rng() % 64);
    try {
      const auto c = complement(h, target);
      EXPECT_TRUE(is_injective(layout_mapping(concat(h, c)))) << to_string(h);
    } catch (const Error &e) {
      EXPECT_EQ(e.kind(), ErrorKind::ComplementUndefined) << to_string(h);
    }
  }
}

TEST(Inverse, ReferenceRows) {
  EXPECT_EQ(inverse(L("(4,2,2):(2,1,8)")), L("(2,4,2):(4,1,8)"));
  EXPECT_EQ(inverse(L("8:1")), L("8:1"));
  try {
    inverse(L("(2,2):(1,5)"));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInvertible);
  }
}

TEST(Inverse, GraphIsTheFlippedMapping) {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = oracle::random_bijective(rng);
    const auto hi = inverse(h);
    EXPECT_EQ(layout_mapping(hi), inverse(layout_mapping(h))) << to_string(h);
    EXPECT_EQ(layout_mapping(inverse(hi)), layout_mapping(h));
  }
}

TEST(RightInverse, ReferenceRows) {
  EXPECT_EQ(right_inverse(L("(4,8,2):(8,1,33)")), L("(8,4):(4,1)"));
  EXPECT_EQ(right_inverse(L("(2,2):(1,8)")), L("2:1"));
  EXPECT_EQ(right_inverse(L("(2,2):(4,1)")), L("2:2"));
  EXPECT_EQ(right_inverse(L("(2,2):(5,2)")), L("1:0"));
}

TEST(RightInverse, IsARightInverse) {
  std::mt19937_64 rng(606);
  const oracle::LayoutGen gen;
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = gen(rng);
    const auto r = right_inverse(h);
    const auto back = compose(layout_mapping(r), layout_mapping(h));
    EXPECT_EQ(back, oracle::identity_graph(size(r))) << to_string(h) << " -> " << to_string(r);
  }
}

TEST(LeftInverse, ReferenceRows) {
  EXPECT_EQ(left_inverse(L("(4,2,2):(4,2,32)")), L("(2,2,4,2,2):(16,4,1,32,8)"));
  EXPECT_EQ(left_inverse(L("8:1")), L("8:1"));
}

TEST(LeftInverse, UndoesInjectiveLayouts) {
  std::mt19937_64 rng(707);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = oracle::random_with_gaps(rng);
    const auto li = left_inverse(h);
    const auto round = compose(layout_mapping(h), layout_mapping(li));
    EXPECT_EQ(round, oracle::identity_graph(size(h))) << to_string(h) << " -> " << to_string(li);
  }
}
