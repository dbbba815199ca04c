#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "swipt/fading.hpp"
#include "swipt/simulation.hpp"

namespace swipt {
namespace {

TEST(Topology, RejectsOddOrTooSmall) {
  EXPECT_THROW(NetworkTopology(0), InputError);
  EXPECT_THROW(NetworkTopology(3), InputError);
  EXPECT_NO_THROW(NetworkTopology(2));
}

TEST(Topology, PairingIsAnInvolution) {
  const NetworkTopology topo(50);
  for (std::size_t m = 0; m < 25; ++m) EXPECT_EQ(topo.pair_of(m), m + 25);
  for (std::size_t m = 0; m < 50; ++m) EXPECT_EQ(topo.pair_of(topo.pair_of(m)), m);
  EXPECT_THROW(topo.pair_of(50), InputError);
}

TEST(ChannelRealization, GainIsSquaredMagnitude) {
  const NetworkTopology topo(2);
  ChannelRealization ch(topo);
  EXPECT_EQ(ch.gain(Node::secondary(0), Node::pt()), 0.0);
  ch.set(Node::secondary(0), Node::pt(), {3.0, 4.0});
  EXPECT_EQ(gain(ch, Node::secondary(0), Node::pt()), 25.0);
  EXPECT_EQ(gain(ch, Node::pt(), Node::secondary(0)), 25.0);
}

TEST(ChannelRealization, RejectsSelfAndUnknownNodes) {
  const NetworkTopology topo(2);
  const ChannelRealization ch(topo);
  EXPECT_THROW(ch.gain(Node::pt(), Node::pt()), InputError);
  EXPECT_THROW(ch.gain(Node::secondary(1), Node::secondary(1)), InputError);
  EXPECT_THROW(ch.gain(Node::pt(), Node::secondary(2)), InputError);
}

TEST(DrawRealization, ReciprocityIsExact) {
  auto rng = make_rng(3);
  const NetworkTopology topo(10);
  const auto ch = draw_realization(rng, topo, FadingParams{});
  EXPECT_EQ(ch.n_links(), 12u * 11u / 2u);
  for (std::size_t a = 0; a < 10; ++a) {
    EXPECT_EQ(ch.coefficient(Node::secondary(a), Node::pt()), ch.coefficient(Node::pt(), Node::secondary(a)));
    for (std::size_t b = 0; b < 10; ++b) {
      if (a == b) continue;
      EXPECT_EQ(ch.gain(Node::secondary(a), Node::secondary(b)),
                ch.gain(Node::secondary(b), Node::secondary(a)));
    }
  }
}

TEST(DrawRealization, SameSeedIsBitIdentical) {
  const NetworkTopology topo(8);
  auto a = make_rng(42);
  auto b = make_rng(42);
  for (int t = 0; t < 5; ++t) EXPECT_EQ(draw_realization(a, topo, {}), draw_realization(b, topo, {}));
}

TEST(DrawRealization, RejectsNonPositiveMeanGain) {
  auto rng = make_rng(1);
  EXPECT_THROW(draw_realization(rng, NetworkTopology(2), FadingParams{0.0, 1}), InputError);
}

// theta ~ Exponential(mean_gain): mean mu, variance mu^2, fourth central moment 9 mu^4.
class GainDistribution : public ::testing::TestWithParam<double> {};

TEST_P(GainDistribution, MatchesExponentialMoments) {
  const double mu = GetParam();
  auto rng = make_rng(11);
  const NetworkTopology topo(2);
  const std::size_t n = 1'000'000;
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const auto ch = draw_realization(rng, topo, FadingParams{mu, 11});
    const double th = ch.gain(Node::secondary(0), Node::pt());
    sum += th;
    sum2 += th * th;
  }
  const double mean = sum / n;
  const double var = (sum2 - n * mean * mean) / (n - 1);
  EXPECT_NEAR(mean, mu, 0.01 * mu);
  EXPECT_NEAR(mean, mu, 3.0 * mu / std::sqrt(double(n)));
  EXPECT_NEAR(var, mu * mu, 3.0 * std::sqrt(8.0) * mu * mu / std::sqrt(double(n)));
}

INSTANTIATE_TEST_SUITE_P(MeanGains, GainDistribution, ::testing::Values(1.0, 2.5));

TEST(DrawRealization, ConsecutiveSlotsAreUncorrelated) {
  auto rng = make_rng(5);
  const NetworkTopology topo(4);
  cplx cross{};
  double e0 = 0.0, e1 = 0.0;
  auto prev = draw_realization(rng, topo, {});
  for (int t = 0; t < 10000; ++t) {
    const auto next = draw_realization(rng, topo, {});
    for (std::size_t i = 0; i < prev.packed().size(); ++i) {
      cross += prev.packed()[i] * std::conj(next.packed()[i]);
      e0 += std::norm(prev.packed()[i]);
      e1 += std::norm(next.packed()[i]);
    }
    prev = next;
  }
  EXPECT_LT(std::abs(cross) / std::sqrt(e0 * e1), 0.05);
}

}  // namespace
}  // namespace swipt
