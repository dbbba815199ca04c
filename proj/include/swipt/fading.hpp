#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "swipt/errors.hpp"
#include "swipt/topology.hpp"

namespace swipt {

using cplx = std::complex<double>;

struct FadingParams {
  double mean_gain = 1.0;
  std::uint64_t seed = 1;

  void validate() const {
    if (!(mean_gain > 0.0)) throw InputError("fading: mean_gain must be positive");
  }
};

/// One slot of quasi-static fading between every unordered pair of nodes.
/// Coefficients are stored once per pair, so h(a,b) == h(b,a) holds exactly.
class ChannelRealization {
 public:
  explicit ChannelRealization(const NetworkTopology& topology)
      : topology_(topology),
        coeffs_(topology.n_nodes() * (topology.n_nodes() - 1) / 2, cplx{}) {}

  const NetworkTopology& topology() const noexcept { return topology_; }
  std::size_t n_links() const noexcept { return coeffs_.size(); }

  cplx coefficient(Node a, Node b) const { return coeffs_[slot(a, b)]; }

  /// theta(a,b) = |h(a,b)|^2
  double gain(Node a, Node b) const { return std::norm(coeffs_[slot(a, b)]); }

  void set(Node a, Node b, cplx value) { coeffs_[slot(a, b)] = value; }

  /// Packed storage in pair order (0,1),(0,2),...,(1,2),...
  const std::vector<cplx>& packed() const noexcept { return coeffs_; }
  std::vector<cplx>& packed() noexcept { return coeffs_; }

  bool operator==(const ChannelRealization&) const = default;

 private:
  std::size_t slot(Node a, Node b) const {
    const std::size_t n = topology_.n_nodes();
    if (!topology_.contains(a) || !topology_.contains(b))
      throw InputError("channel: unknown node " + (topology_.contains(a) ? b : a).name());
    if (a == b) throw InputError("channel: self-channel " + a.name() + " is undefined");
    std::size_t lo = a.flat(), hi = b.flat();
    if (lo > hi) std::swap(lo, hi);
    return lo * n - lo * (lo + 1) / 2 + (hi - lo - 1);
  }

  NetworkTopology topology_;
  std::vector<cplx> coeffs_;
};

/// Draws CN(0, mean_gain) for every unordered pair, advancing rng by a fixed
/// number of variates per call.
template <std::uniform_random_bit_generator Rng>
ChannelRealization draw_realization(Rng& rng, const NetworkTopology& topology,
                                    const FadingParams& params) {
  params.validate();
  ChannelRealization ch(topology);
  std::normal_distribution<double> component(0.0, std::sqrt(params.mean_gain / 2.0));
  for (cplx& h : ch.packed()) {
    const double re = component(rng);
    const double im = component(rng);
    h = cplx(re, im);
  }
  return ch;
}

inline double gain(const ChannelRealization& ch, Node a, Node b) { return ch.gain(a, b); }

}  // namespace swipt
