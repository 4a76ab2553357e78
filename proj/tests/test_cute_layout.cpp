#include <gtest/gtest.h>

#include <random>

#include "layrel/cute_layout.hpp"
#include "layrel/error.hpp"
#include "layrel/relation_text.hpp"
#include "oracles.hpp"

using namespace layrel;

namespace {

CuteLayout L(const char *text) { return parse_cute_layout(text); }

} // namespace

TEST(IntTuple, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_int_tuple("( 4 , ( 2,2 ) )")), "(4,(2,2))");
  EXPECT_EQ(parse_int_tuple("(4)"), IntTuple(4));
  EXPECT_EQ(product(parse_int_tuple("(4,(2,2))")), 16);
  EXPECT_EQ(parse_int_tuple("((4,2),(2,4))").leaves(), (std::vector<std::int64_t>{4, 2, 2, 4}));
  EXPECT_THROW(parse_int_tuple("(4,"), ParseError);
  EXPECT_THROW(parse_int_tuple("()"), ParseError);
}

TEST(CuteLayout, Validation) {
  EXPECT_THROW(L("(4,2):(1)"), ParseError);
  EXPECT_THROW(L("(0,2):(1,1)"), Error);
  EXPECT_THROW(L("(4,2):(1,-1)"), Error);
  EXPECT_EQ(to_string(L("(4,(2,2)):(2,(1,8))")), "(4,(2,2)):(2,(1,8))");
}

TEST(CuteLayout, Flatten) {
  EXPECT_EQ(flatten(L("(4,(2,2)):(2,(1,8))")), L("(4,2,2):(2,1,8)"));
  EXPECT_EQ(flatten(L("(4,2,2):(2,1,8)")), L("(4,2,2):(2,1,8)"));
  EXPECT_EQ(flatten(L("((4,2),(2,4)):((2,16),(1,8))")), L("(4,2,2,4):(2,16,1,8)"));
}

TEST(CuteLayout, CoordMapping) {
  const auto shape = parse_int_tuple("(4,2,2)");
  EXPECT_EQ(coord_mapping(shape).images({13}), std::vector<Point>{(Point{1, 1, 1})});
  EXPECT_EQ(coord_mapping(IntTuple(16)), oracle::identity_graph(16));
  EXPECT_EQ(coord_mapping(parse_int_tuple("(4,4)")).images({5}), std::vector<Point>{(Point{1, 1})});
}

TEST(CuteLayout, IndexMapping) {
  EXPECT_EQ(index_mapping(L("(4,2,2):(2,1,8)")).images({3, 1, 1}), std::vector<Point>{Point{15}});
  EXPECT_EQ(index_mapping(L("(2,2):(1,5)")).images({1, 1}), std::vector<Point>{Point{6}});
  const auto zero = index_mapping(L("(3,2):(0,0)"));
  for (const auto &[in, out] : zero.pairs())
    EXPECT_EQ(out, Point{0});
}

TEST(CuteLayout, LayoutMapping) {
  const auto m = layout_mapping(L("(4,(2,2)):(2,(1,8))"));
  EXPECT_EQ(m.images({0}), std::vector<Point>{Point{0}});
  EXPECT_EQ(m.images({4}), std::vector<Point>{Point{1}});
  EXPECT_EQ(m.images({8}), std::vector<Point>{Point{8}});
  EXPECT_EQ(layout_mapping(L("16:1")), oracle::identity_graph(16));
  EXPECT_EQ(layout_mapping(L("(2,2):(1,80)")),
            Relation::from_pairs(1, 1, {{{0}, {0}}, {{1}, {1}}, {{2}, {80}}, {{3}, {81}}}));
}

TEST(CuteLayout, SizeCosize) {
  EXPECT_EQ(size(L("(2,2):(1,5)")), 4);
  EXPECT_EQ(cosize(L("(2,2):(1,5)")), 7);
  EXPECT_EQ(size(L("(4,2,2):(2,1,8)")), 16);
  EXPECT_EQ(cosize(L("(4,2,2):(2,1,8)")), 16);
  EXPECT_EQ(size(L("1:0")), 1);
  EXPECT_EQ(cosize(L("1:0")), 1);
}

TEST(CuteLayout, Concat) {
  EXPECT_EQ(concat(L("(4,2):(1,16)"), L("4:4")), L("(4,2,4):(1,16,4)"));
  EXPECT_EQ(concat(L("(2,2):(1,5)"), L("2:2")), L("(2,2,2):(1,5,2)"));
  const auto h = L("(4,2):(1,16)");
  EXPECT_EQ(layout_mapping(concat(h, L("1:0"))), layout_mapping(h));
  EXPECT_EQ(concat(L("(4,(2,2)):(2,(1,8))"), L("3:1")), L("(4,(2,2),3):(2,(1,8),1)"));
}

TEST(CuteLayout, Compatibility) {
  EXPECT_TRUE(is_compatible(IntTuple(16), parse_int_tuple("(4,2,2)")));
  EXPECT_TRUE(is_compatible(parse_int_tuple("(4,4)"), parse_int_tuple("(4,2,2)")));
  EXPECT_FALSE(is_compatible(parse_int_tuple("(3,5)"), parse_int_tuple("(5,3)")));
  EXPECT_FALSE(is_compatible(parse_int_tuple("(2,8)"), parse_int_tuple("(4,4)")));
  EXPECT_TRUE(is_compatible(parse_int_tuple("(4,1,4)"), parse_int_tuple("(4,4)")));
}

TEST(CuteLayout, LayoutFromAffine) {
  const auto h = L("(4,2,2):(2,1,8)");
  EXPECT_EQ(layout_from_affine(index_mapping(h), h.shape()), h);
  EXPECT_EQ(layout_from_affine(index_mapping(L("8:1")), IntTuple(8)), L("8:1"));
  const auto nested = L("(4,(2,2)):(2,(1,8))");
  EXPECT_EQ(layout_from_affine(index_mapping(nested), nested.shape()), nested);
  EXPECT_EQ(layout_from_affine(index_mapping(L("(4,1):(3,7)")), parse_int_tuple("(4,1)")),
            L("(4,1):(3,0)"));
  const auto quasi = index_mapping_for_shape(nested, parse_int_tuple("(4,4)"));
  try {
    layout_from_affine(quasi, parse_int_tuple("(4,4)"));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotStrictlyAffine);
  }
  const auto shifted = parse_relation("{ [c] -> [c + 1] : 0 <= c <= 3 }");
  try {
    layout_from_affine(shifted, IntTuple(4));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidMapping);
  }
}

TEST(CuteLayout, LayoutFromStrides) {
  const std::vector<std::int64_t> d = {2, 1, 8};
  const auto found = layout_from_strides(layout_mapping(L("(4,2,2):(2,1,8)")), d);
  ASSERT_TRUE(found);
  EXPECT_EQ(*found, L("(4,2,2):(2,1,8)"));

  const std::vector<std::int64_t> one = {1};
  EXPECT_EQ(layout_from_strides(layout_mapping(L("1:0")), one), L("1:1"));

  const std::vector<std::int64_t> d2 = {9, 5};
  EXPECT_EQ(layout_from_strides(layout_mapping(L("(2,3):(9,5)")), d2), L("(2,3):(9,5)"));

  const std::vector<std::int64_t> bad = {1, 0};
  try {
    layout_from_strides(layout_mapping(L("4:1")), bad);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedStrides);
  }
  const std::vector<std::int64_t> seven = {7};
  EXPECT_FALSE(layout_from_strides(layout_mapping(L("(2,2):(1,5)")), seven).has_value());
}

TEST(CuteLayout, IndexMappingForShape) {
  const auto h = L("(4,(2,2)):(2,(1,8))");
  const auto m = index_mapping_for_shape(h, parse_int_tuple("(4,4)"));
  EXPECT_EQ(m.images({0, 2}), std::vector<Point>{Point{8}});
  EXPECT_EQ(index_mapping_for_shape(h, parse_int_tuple("(4,2,2)")), index_mapping(h));
  EXPECT_EQ(index_mapping_for_shape(h, IntTuple(16)), layout_mapping(h));
  try {
    index_mapping_for_shape(h, parse_int_tuple("(2,8)"));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::IncompatibleShape);
  }
}

TEST(CuteLayoutProperty, MappingMatchesOracle) {
  std::mt19937_64 rng(101);
  const oracle::LayoutGen gen;
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = gen(rng);
    const auto m = layout_mapping(h);
    EXPECT_EQ(m, oracle::layout_graph(h)) << to_string(h);
    EXPECT_EQ(layout_mapping(flatten(h)), m);
    const auto c = coord_mapping(h.shape());
    EXPECT_TRUE(is_bijective(c));
    EXPECT_EQ(compose(c, inverse(c)), oracle::identity_graph(size(h)));
    EXPECT_EQ(cosize(h), range(m).points().back()[0] + 1);
  }
}

TEST(CuteLayoutProperty, InferenceRoundTrips) {
  std::mt19937_64 rng(202);
  oracle::LayoutGen gen;
  gen.min_leaf = 2;
  gen.max_leaf = 6;
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = gen(rng);
    EXPECT_EQ(layout_from_affine(index_mapping(h), h.shape()), h) << to_string(h);
  }
  gen.min_stride = 1;
  gen.max_stride = 12;
  gen.max_rank = 3;
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = gen(rng);
    const auto d = h.strides().leaves();
    const auto found = layout_from_strides(layout_mapping(h), d);
    ASSERT_TRUE(found) << to_string(h);
    EXPECT_EQ(layout_mapping(*found), layout_mapping(h)) << to_string(h);
  }
}
