#include <gtest/gtest.h>

#include <vector>

#include "hardy/tree.hpp"
#include "test_support.hpp"

using namespace hardy;
using hardy::testing::bfs_level_sizes;

namespace {

std::vector<std::uint64_t> sizes_of(const RootedTree& t) {
  return {t.level_sizes().begin(), t.level_sizes().end()};
}

}  // namespace

TEST(BuildHomogeneous, TwoHomogeneousHasOneChildBelowLevelOne) {
  EXPECT_EQ(sizes_of(build_homogeneous(2, 3)), (std::vector<std::uint64_t>{1, 2, 2, 2}));
}

TEST(BuildHomogeneous, ThreeHomogeneousMatchesBfs) {
  // Frozen from the breadth-first oracle.
  ASSERT_EQ(bfs_level_sizes(3, 3), (std::vector<std::uint64_t>{1, 3, 6, 12}));
  EXPECT_EQ(sizes_of(build_homogeneous(3, 3)), bfs_level_sizes(3, 3));
}

TEST(BuildHomogeneous, RootOnly) {
  auto t = build_homogeneous(2, 0);
  EXPECT_EQ(sizes_of(t), (std::vector<std::uint64_t>{1}));
  EXPECT_EQ(t.depth(), 0u);
  EXPECT_EQ(t.vertex_count(), 1u);
}

TEST(BuildHomogeneous, MatchesBfsAcrossDegrees) {
  for (std::uint64_t k = 2; k <= 6; ++k) {
    for (std::size_t d = 0; d <= 6; ++d) {
      auto t = build_homogeneous(k, d);
      EXPECT_EQ(sizes_of(t), bfs_level_sizes(k, d)) << "k=" << k << " d=" << d;
      EXPECT_TRUE(validate(t).empty());
      if (d >= 1) {
        EXPECT_EQ(t.level_size(1), k * t.level_size(0));
      }
      for (std::size_t n = 1; n < d; ++n) EXPECT_EQ(t.level_size(n + 1), (k - 1) * t.level_size(n));
    }
  }
}

TEST(BuildHomogeneous, TotalVertexCountClosedForm) {
  // 1 + k((k-1)^d - 1)/(k-2) for k > 2.
  for (std::uint64_t k = 3; k <= 5; ++k) {
    for (std::size_t d = 1; d <= 7; ++d) {
      std::uint64_t pow = 1;
      for (std::size_t i = 0; i < d; ++i) pow *= (k - 1);
      EXPECT_EQ(build_homogeneous(k, d).vertex_count(), 1 + k * (pow - 1) / (k - 2));
    }
  }
}

TEST(BuildHomogeneous, ChildrenAreContiguous) {
  auto t = build_homogeneous(3, 3);
  auto lv2 = t.parents(2);
  EXPECT_EQ(std::vector<std::uint64_t>(lv2.begin(), lv2.end()), (std::vector<std::uint64_t>{0, 0, 1, 1, 2, 2}));
  auto lv1 = t.parents(1);
  EXPECT_EQ(std::vector<std::uint64_t>(lv1.begin(), lv1.end()), (std::vector<std::uint64_t>{0, 0, 0}));
  EXPECT_EQ(t.parent({3, 5}), (VertexId{2, 2}));
  EXPECT_FALSE(t.parent({0, 0}).has_value());
}

TEST(BuildHomogeneous, RejectsDegreeBelowTwo) {
  try {
    build_homogeneous(1, 2);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::invalid_degree);
  }
}

TEST(BuildHomogeneous, OverflowNamesFirstLevel) {
  // 3 * 2^(n-1) first exceeds 2^64 - 1 at n = 64.
  try {
    build_homogeneous(3, 100);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::overflow);
    EXPECT_NE(std::string(e.what()).find("level 64"), std::string::npos) << e.what();
  }
}

TEST(BuildFromParentLists, CountsLevels) {
  auto t = build_from_parent_lists({{0, 0}, {0, 1, 1}});
  EXPECT_EQ(sizes_of(t), (std::vector<std::uint64_t>{1, 2, 3}));
}

TEST(BuildFromParentLists, EmptyIsRootOnly) {
  EXPECT_EQ(sizes_of(build_from_parent_lists({})), (std::vector<std::uint64_t>{1}));
}

TEST(BuildFromParentLists, DanglingParentIsStructureError) {
  try {
    build_from_parent_lists({{0}, {1}});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::structure);
    EXPECT_NE(std::string(e.what()).find("level 2, index 0"), std::string::npos) << e.what();
  }
}

TEST(BuildFromParentLists, EmptyLevelFollowedByNonEmptyIsError) {
  EXPECT_THROW(build_from_parent_lists({{0}, {}, {0}}), error);
}

TEST(BuildFromParentLists, ExportRoundTrip) {
  for (std::uint64_t k = 2; k <= 4; ++k) {
    auto t = build_homogeneous(k, 4);
    EXPECT_EQ(build_from_parent_lists(t.parent_lists()), t);
  }
  auto irregular = build_from_parent_lists({{0, 0, 0, 0}, {3, 3, 0}, {2}, {0, 0, 0, 0, 0}});
  EXPECT_EQ(build_from_parent_lists(irregular.parent_lists()), irregular);
}

TEST(Validate, ValidTreeHasNoViolations) { EXPECT_TRUE(validate(build_homogeneous(3, 2)).empty()); }

TEST(Validate, RootLevelSizeMustBeOne) {
  auto t = RootedTree::unchecked({2, 2}, {{}, {0, 1}});
  auto report = validate(t);
  ASSERT_FALSE(report.empty());
  EXPECT_EQ(report.front().level, 0u);
  EXPECT_EQ(report.front().message, "root level size != 1");
}

TEST(Validate, ShortParentListNamesLevel) {
  auto t = RootedTree::unchecked({1, 3, 4}, {{}, {0, 0, 0}, {0, 1, 2}});
  auto report = validate(t);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report.front().level, 2u);
}

TEST(Validate, EverySingleCorruptionIsReported) {
  const auto good = build_homogeneous(3, 3);
  auto sizes = std::vector<std::uint64_t>(good.level_sizes().begin(), good.level_sizes().end());
  std::vector<std::vector<std::uint64_t>> parents{{}};
  for (auto& l : good.parent_lists()) parents.push_back(l);

  int mutations = 0;
  for (std::size_t n = 0; n < sizes.size(); ++n) {
    auto s = sizes;
    s[n] += 1;  // declared size disagrees with parent list (or root != 1)
    EXPECT_FALSE(validate(RootedTree::unchecked(s, parents)).empty()) << "size bump at " << n;
    ++mutations;
  }
  for (std::size_t n = 1; n < parents.size(); ++n) {
    for (std::size_t i = 0; i < parents[n].size(); ++i) {
      auto p = parents;
      p[n][i] = sizes[n - 1];  // dangling
      auto report = validate(RootedTree::unchecked(sizes, p));
      ASSERT_FALSE(report.empty());
      EXPECT_EQ(report.front().level, n);
      EXPECT_EQ(report.front().index, i);
      ++mutations;
    }
    auto p = parents;
    p[n].pop_back();
    EXPECT_FALSE(validate(RootedTree::unchecked(sizes, p)).empty());
    ++mutations;
  }
  EXPECT_GT(mutations, 20);
}

TEST(LevelGrowth, StrictGrowthIsEvidenceOfUnboundedness) {
  EXPECT_TRUE(level_sizes_growing(build_homogeneous(3, 6)));
  EXPECT_FALSE(level_sizes_growing(build_homogeneous(2, 6)));
  EXPECT_FALSE(level_sizes_growing(build_homogeneous(3, 0)));
  EXPECT_TRUE(level_sizes_growing(build_homogeneous(3, 1)));
}

TEST(RootedTree, FlatIndexing) {
  auto t = build_homogeneous(3, 2);
  EXPECT_EQ(t.flat_index({0, 0}), 0u);
  EXPECT_EQ(t.flat_index({1, 2}), 3u);
  EXPECT_EQ(t.flat_index({2, 0}), 4u);
  EXPECT_EQ(t.vertex_at(5), (VertexId{2, 1}));
  EXPECT_THROW(t.flat_index({2, 6}), error);
  EXPECT_THROW(t.level_size(3), error);
}
