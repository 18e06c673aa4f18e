#include <gtest/gtest.h>

#include <set>

#include "polycat/extend.hpp"
#include "polycat/gen.hpp"
#include "polycat/oracle.hpp"
#include "support.hpp"

namespace polycat {
namespace {

using Counts = std::vector<std::uint64_t>;

TEST(BruteCount, Examples) {
  EXPECT_EQ(brute_labeled_count(0, 2).total, 1u);
  EXPECT_EQ(brute_labeled_count(2, 2).total, 14u);
  EXPECT_EQ(brute_labeled_count(4, 2).total, 2040u);
  EXPECT_EQ(brute_labeled_count(3, 2).by_rank, (Counts{1, 7, 29, 41, 29, 7, 1}));
}

TEST(BruteCount, MatchesNaiveEnumeration) {
  for (int k = 1; k <= 2; ++k) {
    for (int n = 0; n <= 3; ++n) {
      std::vector<RankTable> visited;
      for_each_labeled(n, k, [&](const RankTable& t) { visited.push_back(t); });
      const std::vector<RankTable> naive = test::naive_all_tables(n, k);
      EXPECT_EQ(std::set<RankTable>(visited.begin(), visited.end()), std::set<RankTable>(naive.begin(), naive.end()));
      EXPECT_EQ(visited.size(), naive.size());
      EXPECT_EQ(brute_labeled_count(n, k).total, naive.size());
    }
  }
}

TEST(BruteCount, ReverseOrderInvariance) {
  OracleOptions reversed;
  reversed.reverse_order = true;
  for (int k = 1; k <= 2; ++k) {
    for (int n = 0; n <= 4; ++n) {
      const LabeledCounts a = brute_labeled_count(n, k);
      const LabeledCounts b = brute_labeled_count(n, k, reversed);
      EXPECT_EQ(a.total, b.total);
      EXPECT_EQ(a.by_rank, b.by_rank);
    }
  }
}

TEST(BruteCount, ParallelSplitInvariance) {
  OracleOptions parallel;
  parallel.jobs = 3;
  const LabeledCounts a = brute_labeled_count(4, 2);
  const LabeledCounts b = brute_labeled_count(4, 2, parallel);
  EXPECT_EQ(a.total, b.total);
  EXPECT_EQ(a.by_rank, b.by_rank);
}

TEST(BruteCount, MatroidLabeledCounts) {
  Counts totals;
  for (int n = 0; n <= 4; ++n) totals.push_back(brute_labeled_count(n, 1).total);
  // Labeled matroids on 0..4 elements.
  EXPECT_EQ(totals, (Counts{1, 2, 5, 16, 68}));
}

TEST(BruteCount, Budget) {
  OracleOptions tight;
  tight.node_budget = 10;
  EXPECT_THROW(brute_labeled_count(4, 2, tight), BudgetExceeded);
}

TEST(BruteExtensions, Examples) {
  EXPECT_EQ(brute_extensions(test::single_line()).size(), 6u);
  EXPECT_EQ(brute_extensions(empty_polymatroid(2)).size(), 3u);
  const RankTable t = test::two_free_lines();
  std::vector<RankTable> via_partitions;
  for (const ExtensiblePartition& p : enumerate_extensible_partitions(t)) via_partitions.push_back(extend(t, p));
  std::sort(via_partitions.begin(), via_partitions.end());
  EXPECT_EQ(brute_extensions(t), via_partitions);
}

TEST(BruteExtensions, MatchesNaive) {
  for (int k = 1; k <= 2; ++k) {
    for (int n = 0; n <= 3; ++n) {
      for (const RankTable& t : test::naive_all_tables(n, k)) {
        const std::vector<RankTable> brute = brute_extensions(t);
        ASSERT_TRUE(std::is_sorted(brute.begin(), brute.end()));
        const std::set<RankTable> naive = test::naive_extensions(t);
        ASSERT_EQ(std::set<RankTable>(brute.begin(), brute.end()), naive);
        ASSERT_EQ(brute.size(), naive.size());
      }
    }
  }
}

TEST(CrossCheck, Vacuous) {
  const CrossCheckReport r = cross_check({base_catalog(2)}, 0);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.first_failure(), nullptr);
}

TEST(CrossCheck, UpToFour) {
  for (int k = 1; k <= 2; ++k) {
    const CrossCheckReport r = cross_check(enumerate_all(4, k), 4);
    EXPECT_TRUE(r.ok()) << r.text();
    EXPECT_EQ(r.lines.size(), 5u * 3 - 1);
  }
  const CrossCheckReport r = cross_check(enumerate_all(3, 2), 3);
  EXPECT_NE(r.text().find("115"), std::string::npos);
  EXPECT_NE(r.csv().find("n,check,ok\n"), std::string::npos);
}

TEST(CrossCheck, DetectsMissingClass) {
  std::vector<Catalog> cs = enumerate_all(3, 2);
  std::vector<CatalogEntry> entries = cs[3].entries();
  entries.pop_back();
  cs[3] = Catalog(3, 2, entries);
  const CrossCheckReport r = cross_check(cs, 3);
  EXPECT_FALSE(r.ok());
  ASSERT_NE(r.first_failure(), nullptr);
  EXPECT_EQ(r.first_failure()->n, 3);
  EXPECT_FALSE(r.first_failure()->detail.empty());
}

TEST(CrossCheck, DetectsWrongGroupOrder) {
  std::vector<Catalog> cs = enumerate_all(2, 2);
  std::vector<CatalogEntry> entries = cs[2].entries();
  entries.back().aut_order = 1;
  cs[2] = Catalog(2, 2, entries);
  EXPECT_FALSE(cross_check(cs, 2).ok());
}

}  // namespace
}  // namespace polycat
