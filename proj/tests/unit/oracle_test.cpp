#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "oracles/oracles.hpp"

using namespace testing_helpers;

TEST(Oracle, AllPairsOnT1) {
  const auto net = t1();
  const auto d = oracle::all_pairs_distances(oracle::graph_of(net));
  const auto A = net.municipality_index("A");
  const auto B = net.municipality_index("B");
  const auto C = net.municipality_index("C");
  const auto D = net.municipality_index("D");
  EXPECT_EQ(d[A][D], 30.0);
  EXPECT_EQ(d[B][C], 10.0);
  EXPECT_EQ(d[A][C], 20.0);
}

TEST(Oracle, DisconnectedAndSingleNode) {
  oracle::Graph g;
  g.n = 3;
  g.hospital = {true, false, false};
  g.population = {1, 1, 1};
  g.edges = {{0, 1, 2.0, 0}};
  g.corridor_count = 1;
  const auto d = oracle::all_pairs_distances(g);
  EXPECT_TRUE(std::isinf(d[0][2]));
  EXPECT_EQ(d[2][2], 0.0);
  oracle::Graph one;
  one.n = 1;
  EXPECT_EQ(oracle::all_pairs_distances(one)[0][0], 0.0);
}

TEST(Oracle, SizeCaps) {
  oracle::Graph big;
  big.n = oracle::kMaxAllPairsNodes + 1;
  EXPECT_THROW(oracle::all_pairs_distances(big), std::length_error);
  oracle::Graph medium;
  medium.n = oracle::kMaxEnumerationNodes + 1;
  medium.hospital.assign(medium.n, false);
  EXPECT_THROW(oracle::betweenness(medium, 100), std::length_error);
}

TEST(Oracle, BetweennessOnTree) {
  // star: hospital 0 at the centre, leaves 1..3, and 4 hanging off leaf 1
  oracle::Graph g;
  g.n = 5;
  g.hospital = {true, false, false, false, false};
  g.population.assign(5, 1);
  g.edges = {{0, 1, 1, 0}, {0, 2, 1, 1}, {0, 3, 1, 2}, {1, 4, 1, 3}};
  g.corridor_count = 4;
  // corridor 0 carries pairs (1,0) and (4,0)
  EXPECT_EQ(oracle::betweenness(g, 100), (std::vector<double>{2, 1, 1, 1}));
}

TEST(Oracle, BetweennessOnCompleteGraph) {
  oracle::Graph g;
  g.n = 4;
  g.hospital = {true, false, false, true};
  g.population.assign(4, 1);
  std::size_t c = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) g.edges.push_back({i, j, 1.0, c++});
  g.corridor_count = c;
  const auto cb = oracle::betweenness(g, 100);
  // edges 0-1, 0-2, 1-3, 2-3 serve one pair each; 0-3 serves (0,3) and (3,0); 1-2 none
  EXPECT_EQ(cb, (std::vector<double>{1, 1, 2, 0, 1, 1}));
}

TEST(Oracle, StepIntegral) {
  const auto net = t1();
  const std::vector<double> d{0, 10, 20, 30};
  EXPECT_EQ(oracle::step_integral(d, net.populations(), 30), 4300.0);
  EXPECT_EQ(oracle::step_integral({0.0}, {70}, 12.5), 70 * 12.5);
  EXPECT_EQ(oracle::step_integral({}, {}, 30), 0.0);
}

TEST(Oracle, TrapezoidAgreesWithHandArithmetic) {
  const std::vector<std::int64_t> pops{100, 50, 30, 20};
  EXPECT_EQ(oracle::trapezoid_area({0, 10, 20, 30}, pops, 30), 4800.0);
  EXPECT_EQ(oracle::trapezoid_area({0, 10, 25, 35}, pops, 30), 4625.0);
  EXPECT_EQ(oracle::trapezoid_area({0, 10, 20, INFINITY}, pops, 30), 4700.0);
}

TEST(Oracle, ReportFields) {
  const auto r = oracle::compare("x", 100.0, 101.0);
  EXPECT_EQ(r.abs_dev, 1.0);
  EXPECT_DOUBLE_EQ(r.rel_dev, 1.0 / 101.0);
  EXPECT_FALSE(r.within(1e-9));
  EXPECT_TRUE(oracle::compare("y", INFINITY, INFINITY).within(1e-9));
  EXPECT_FALSE(oracle::compare("z", INFINITY, 3.0).within(1e-9));
  EXPECT_TRUE(oracle::compare("w", 1e-12, 0.0, 4800.0).within(1e-9));
}
