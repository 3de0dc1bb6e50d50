#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "roadstress/errors.hpp"
#include "roadstress/statistics.hpp"

using namespace roadstress;

TEST(Spearman, HandCases) {
  const std::vector<double> x{1, 2, 3, 4};
  EXPECT_EQ(spearman_rho(x, std::vector<double>{1, 2, 3, 4}), 1.0);
  EXPECT_EQ(spearman_rho(x, std::vector<double>{4, 3, 2, 1}), -1.0);
  EXPECT_NEAR(spearman_rho(x, std::vector<double>{1, 3, 2, 4}), 0.8, 1e-15);
}

TEST(Spearman, KeyedInputs) {
  const std::map<std::string, double> x{{"a", 1}, {"b", 2}, {"c", 3}, {"d", 4}};
  const std::map<std::string, double> y{{"a", 1}, {"b", 3}, {"c", 2}, {"d", 4}};
  EXPECT_NEAR(spearman_rho(x, y), 0.8, 1e-15);
  const std::map<std::string, double> other{{"a", 1}, {"b", 3}, {"c", 2}, {"e", 4}};
  EXPECT_THROW(spearman_rho(x, other), InputError);
  EXPECT_THROW(spearman_rho(std::map<std::string, double>{{"a", 1}}, std::map<std::string, double>{{"a", 1}}),
               InputError);
}

TEST(Spearman, TiesGetAverageRanks) {
  EXPECT_EQ(average_ranks(std::vector<double>{10, 20, 20, 5}), (std::vector<double>{2, 3.5, 3.5, 1}));
  EXPECT_TRUE(std::isnan(spearman_rho(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3})));
}

TEST(Spearman, InvariantUnderMonotoneMaps) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> x(30);
    for (auto& v : x) v = u(rng);
    std::vector<double> up;
    std::vector<double> down;
    for (const double v : x) {
      up.push_back(3.0 * v + 7.0);
      down.push_back(-0.5 * v + 1.0);
    }
    EXPECT_NEAR(spearman_rho(x, up), 1.0, 1e-12);
    EXPECT_NEAR(spearman_rho(x, down), -1.0, 1e-12);
  }
}

TEST(Spearman, RejectsBadSizes) {
  EXPECT_THROW(spearman_rho(std::vector<double>{1, 2}, std::vector<double>{1}), InputError);
  EXPECT_THROW(spearman_rho(std::vector<double>{1}, std::vector<double>{1}), InputError);
}

TEST(RankTable, OrdersByScoreThenIndex) {
  const auto t = make_rank_table("m", {1.0, 5.0, 5.0, 0.0});
  EXPECT_EQ(t.order, (std::vector<CorridorIndex>{1, 2, 0, 3}));
  EXPECT_EQ(t.rank_of(2), 2u);
  EXPECT_EQ(t.ranks(), (std::vector<std::size_t>{3, 1, 2, 4}));
}

TEST(TopkOverlap, Examples) {
  const auto a = make_rank_table("a", {6, 5, 4, 3, 2, 1});
  EXPECT_EQ(topk_overlap(a, a, 3).fraction, 1.0);
  const auto b = make_rank_table("b", {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(topk_overlap(a, b, 3).fraction, 0.0);
  const auto c = make_rank_table("c", {6, 0, 0, 5, 4, 0});  // top 3: 0, 3, 4
  EXPECT_DOUBLE_EQ(topk_overlap(a, c, 3).fraction, 1.0 / 3.0);
}

TEST(TopkOverlap, ClampsK) {
  const auto a = make_rank_table("a", {3, 2, 1});
  const auto r = topk_overlap(a, a, 100);
  EXPECT_TRUE(r.clamped());
  EXPECT_EQ(r.k_requested, 100u);
  EXPECT_EQ(r.k_effective, 3u);
  EXPECT_EQ(r.fraction, 1.0);
  EXPECT_THROW(topk_overlap(a, a, 0), InputError);
  EXPECT_THROW(topk_overlap(a, make_rank_table("b", {1, 2}), 1), InputError);
}

TEST(Ccdf, Examples) {
  EXPECT_EQ(ccdf_points(std::vector<double>{5}), (std::vector<CcdfPoint>{{5, 1.0}}));
  EXPECT_EQ(ccdf_points(std::vector<double>{1, 1, 2, 4}), (std::vector<CcdfPoint>{{1, 1.0}, {2, 0.5}, {4, 0.25}}));
  EXPECT_THROW(ccdf_points(std::vector<double>{}), InputError);
}

TEST(Ccdf, Properties) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> s(1 + rng() % 200);
    for (auto& v : s) v = static_cast<double>(rng() % 20);
    const auto pts = ccdf_points(s);
    EXPECT_EQ(pts.front().fraction, 1.0);
    const double n = static_cast<double>(s.size());
    for (std::size_t i = 1; i < pts.size(); ++i) {
      EXPECT_LT(pts[i - 1].value, pts[i].value);
      EXPECT_GT(pts[i - 1].fraction, pts[i].fraction);
    }
    const double max = *std::max_element(s.begin(), s.end());
    EXPECT_EQ(pts.back().value, max);
    EXPECT_DOUBLE_EQ(pts.back().fraction, static_cast<double>(std::count(s.begin(), s.end(), max)) / n);
    EXPECT_GE(pts.back().fraction, 1.0 / n);
  }
}

TEST(Percentile, NearestRank) {
  std::vector<double> v(100);
  for (int i = 0; i < 100; ++i) v[i] = 100 - i;  // 1..100 reversed
  EXPECT_EQ(percentile_nearest_rank(v, 0.9), 90.0);
  EXPECT_EQ(percentile_nearest_rank({7.0}, 0.9), 7.0);
  EXPECT_EQ(percentile_nearest_rank({1, 2, 3}, 0.9), 3.0);
  EXPECT_EQ(percentile_nearest_rank({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 0.9), 9.0);
  EXPECT_THROW(percentile_nearest_rank({}, 0.9), InputError);
  EXPECT_THROW(percentile_nearest_rank({1}, 0.0), InputError);
}
