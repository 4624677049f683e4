#include <algorithm>
#include <array>
#include <vector>

#include <gtest/gtest.h>

#include "aoi/analytic.hpp"
#include "aoi/error.hpp"
#include "test_support.hpp"

namespace aoi {
namespace {

template <class F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

TEST(Analytic, ThreeLawChainInEveryOrder) {
  std::array<int, 3> order{0, 1, 2};
  const std::array<InterUpdateDistribution, 3> laws{Rayleigh(1.0), ChiSquare(1), Beta(2.0, 3.0)};
  std::size_t perms = 0;
  double first = 0.0;
  do {
    const std::vector<InterUpdateDistribution> hops{laws[order[0]], laws[order[1]], laws[order[2]]};
    const auto p = node_expected_age(linear_chain(hops), 3);
    EXPECT_NEAR(p.expected_age, 2.5479, 5e-5);
    if (perms == 0) first = p.expected_age;
    EXPECT_NEAR(p.expected_age, first, 1e-12);
    ASSERT_EQ(p.contributions.size(), 3u);
    EXPECT_EQ(p.contributions[0].link, 0u);
    ++perms;
  } while (std::next_permutation(order.begin(), order.end()));
  EXPECT_EQ(perms, 6u);
}

TEST(Analytic, UniformChainIsLinear) {
  for (std::size_t n = 1; n <= 10; ++n) {
    const std::vector<InterUpdateDistribution> hops(n, Uniform(0.0, 2.0));
    EXPECT_NEAR(node_expected_age(linear_chain(hops), static_cast<NodeId>(n)).expected_age, 2.0 * n / 3.0, 1e-12);
  }
}

TEST(Analytic, PoissonChainSumsInverseRates) {
  const std::vector<InterUpdateDistribution> hops{Exponential(0.5), Exponential(1.0), Exponential(2.0)};
  EXPECT_DOUBLE_EQ(node_expected_age(linear_chain(hops), 3).expected_age, 2.0 + 1.0 + 0.5);
}

TEST(Analytic, SourceHasZeroAge) {
  const std::vector<InterUpdateDistribution> hops{Exponential(1.0)};
  const auto p = node_expected_age(linear_chain(hops), 0);
  EXPECT_EQ(p.expected_age, 0.0);
  EXPECT_TRUE(p.contributions.empty());
}

TEST(Analytic, Errors) {
  NetworkDesc diamond{4, {}};
  diamond.links.push_back(Link{0, 1, Exponential(1.0), 0});
  diamond.links.push_back(Link{0, 2, Exponential(1.0), 0});
  diamond.links.push_back(Link{1, 3, Exponential(1.0), 0});
  diamond.links.push_back(Link{2, 3, Exponential(1.0), 1});
  expect_error(ErrorKind::kNotATree, [&] { node_expected_age(Network(diamond), 3); });
  const std::vector<InterUpdateDistribution> hops{Exponential(1.0), Constant(1.0)};
  expect_error(ErrorKind::kArithmeticLimitUndefined, [&] { node_expected_age(linear_chain(hops), 2); });
  EXPECT_NO_THROW(node_expected_age(linear_chain(hops), 1));
  expect_error(ErrorKind::kArithmeticLimitUndefined, [] { hop_sweep_prediction(Constant(1.0), 3); });
}

TEST(Analytic, HopSweep) {
  const auto u = hop_sweep_prediction(Uniform(0.0, 2.0), 3);
  ASSERT_EQ(u.size(), 3u);
  EXPECT_EQ(u[0].first, 1u);
  EXPECT_NEAR(u[0].second, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(u[1].second, 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(u[2].second, 2.0, 1e-15);
  const auto e = hop_sweep_prediction(Exponential(1.0), 5);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_DOUBLE_EQ(e[k].second, static_cast<double>(k + 1));
  EXPECT_DOUBLE_EQ(hop_sweep_prediction(Rayleigh(2.0), 1)[0].second, age_contribution(Rayleigh(2.0)));
}

TEST(Analytic, VarianceSweep) {
  EXPECT_NEAR(variance_sweep_prediction(1.0 / 3.0, 4), 8.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(variance_sweep_prediction(0.0, 4), 2.0);
  EXPECT_NEAR(variance_sweep_prediction(0.1, 4), 2.2, 1e-15);
  EXPECT_NEAR(variance_sweep_prediction(1e-3, 4), 2.002, 1e-15);
  expect_error(ErrorKind::kVarianceOutOfRange, [] { variance_sweep_prediction(-0.01, 4); });
  expect_error(ErrorKind::kVarianceOutOfRange, [] { variance_sweep_prediction(0.34, 4); });
  // Agrees with the path sum over the actual laws.
  for (double v : {0.05, 0.15, 0.3}) {
    const std::vector<InterUpdateDistribution> hops(4, unit_mean_uniform(v));
    EXPECT_NEAR(node_expected_age(linear_chain(hops), 4).expected_age, variance_sweep_prediction(v, 4), 1e-12);
  }
}

TEST(AnalyticProperties, MonotoneInVariance) {
  double prev = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double v = i / 300.0;
    const std::vector<InterUpdateDistribution> hops(3, unit_mean_uniform(v));
    const double age = node_expected_age(linear_chain(hops), 3).expected_age;
    ASSERT_GT(age, prev);
    prev = age;
  }
}

TEST(AnalyticProperties, PermutationInvariance) {
  RngStream gen(91);
  for (int i = 0; i < 200; ++i) {
    std::vector<InterUpdateDistribution> hops;
    const std::size_t n = 1 + testing::pick(gen, 7);
    for (std::size_t h = 0; h < n; ++h) hops.push_back(testing::random_law(gen));
    const double base = node_expected_age(linear_chain(hops), static_cast<NodeId>(n)).expected_age;
    for (int s = 0; s < 5; ++s) {
      for (std::size_t k = n; k > 1; --k) std::swap(hops[k - 1], hops[testing::pick(gen, k)]);
      ASSERT_NEAR(node_expected_age(linear_chain(hops), static_cast<NodeId>(n)).expected_age, base, 1e-12);
    }
  }
}

TEST(AnalyticProperties, AdditivityOnTrees) {
  RngStream gen(92);
  for (int i = 0; i < 200; ++i) {
    const Network net(testing::random_tree(gen, 2 + testing::pick(gen, 12)));
    for (NodeId j = 1; j < net.node_count(); ++j) {
      const std::size_t last = net.incoming(j)[0];
      const Link& l = net.link(last);
      const auto p = node_expected_age(net, j);
      ASSERT_NEAR(p.expected_age, node_expected_age(net, l.from).expected_age + age_contribution(l.dist), 1e-12);
      double sum = 0.0;
      for (const auto& c : p.contributions) {
        ASSERT_EQ(c.contribution, age_contribution(net.link(c.link).dist));
        sum += c.contribution;
      }
      ASSERT_NEAR(p.expected_age, sum, 1e-12);
    }
  }
}

}  // namespace
}  // namespace aoi
