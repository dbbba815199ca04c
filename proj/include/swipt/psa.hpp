#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "swipt/config.hpp"
#include "swipt/errors.hpp"
#include "swipt/fading.hpp"
#include "swipt/scheme.hpp"

namespace swipt {

/// Distributed matched-filter beamformer towards the PT.
struct BeamformWeights {
  std::vector<std::size_t> nodes;  // secondary indices in Omega
  std::vector<cplx> weights;       // beta_j, unit total power
};

/// Result of stage one for one slot.
struct SchemeOutcome {
  SchemeId scheme = SchemeId::First;
  double e_h1 = 0.0;                          // J/Hz harvested at the PT
  std::vector<double> secondary_rates;        // bits/s/Hz per transmitter
  std::vector<std::size_t> scheduled_transmitters;
  /// Nodes powering the PT alongside data; one set per transmission phase
  /// (Fifth-PSA has N/2 phases, the other schemes at most one).
  std::vector<std::vector<std::size_t>> powering_sets;
  /// Requested k_beam exceeded N - 2 and was clamped.
  bool beam_clamped = false;

  double sum_rate() const {
    return std::accumulate(secondary_rates.begin(), secondary_rates.end(), 0.0);
  }
};

/// beta_j = h(s_j,p) / sqrt(sum_{j in Omega} |h(s_j,p)|^2)
inline BeamformWeights beamform_weights(const ChannelRealization& ch,
                                        std::span<const std::size_t> omega) {
  if (omega.empty()) throw InputError("beamform_weights: empty node set");
  double total = 0.0;
  for (std::size_t j : omega) {
    ch.topology().check_secondary(j);
    total += ch.gain(Node::secondary(j), Node::pt());
  }
  if (total == 0.0) throw NumericalError("beamform_weights: all channels to the PT are zero");
  const double scale = 1.0 / std::sqrt(total);
  BeamformWeights bw;
  bw.nodes.assign(omega.begin(), omega.end());
  for (std::size_t j : omega) bw.weights.push_back(ch.coefficient(Node::secondary(j), Node::pt()) * scale);
  return bw;
}

/// |sum_j beta_j^* h(s_j,p)|^2, the power gain of the beamformed signal at the PT.
inline double beamformed_gain(const ChannelRealization& ch, const BeamformWeights& bw) {
  cplx s{};
  for (std::size_t i = 0; i < bw.nodes.size(); ++i)
    s += std::conj(bw.weights[i]) * ch.coefficient(Node::secondary(bw.nodes[i]), Node::pt());
  return std::norm(s);
}

namespace psa_detail {

inline double theta_to_pt(const ChannelRealization& ch, std::size_t i) {
  return ch.gain(Node::secondary(i), Node::pt());
}

inline double theta_data(const ChannelRealization& ch, std::size_t i) {
  return ch.gain(Node::secondary(i), Node::secondary(ch.topology().pair_of(i)));
}

inline double link_rate(const ChannelRealization& ch, const SimConfig& cfg, std::size_t i,
                        double time_share) {
  return time_share * std::log2(1.0 + cfg.p_s * theta_data(ch, i) / cfg.kappa);
}

/// The transmitter with the strongest data link; ties go to the lowest index.
inline std::size_t best_data_link(const ChannelRealization& ch) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < ch.topology().n_pairs(); ++i)
    if (theta_data(ch, i) > theta_data(ch, best)) best = i;
  return best;
}

/// The `count` secondary nodes with the largest gain to the PT, excluding the
/// data pair of transmitter k, strongest first (ties: lowest index first).
inline std::vector<std::size_t> strongest_to_pt(const ChannelRealization& ch, std::size_t k,
                                                std::size_t count) {
  const auto& topo = ch.topology();
  const std::size_t partner = topo.pair_of(k);
  std::vector<std::size_t> cand;
  for (std::size_t j = 0; j < topo.n_secondary(); ++j)
    if (j != k && j != partner) cand.push_back(j);
  std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
    return theta_to_pt(ch, a) > theta_to_pt(ch, b);
  });
  cand.resize(std::min(count, cand.size()));
  return cand;
}

inline double beam_term(const ChannelRealization& ch, std::span<const std::size_t> omega) {
  if (omega.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t j : omega) total += theta_to_pt(ch, j);
  if (total == 0.0) return 0.0;
  return beamformed_gain(ch, beamform_weights(ch, omega));
}

inline void check_alpha(const SimConfig& cfg) {
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) throw InputError("psa: alpha must lie in [0, 1]");
}

}  // namespace psa_detail

/// STs transmit one at a time, each for alpha/(N/2) of the slot; destinations
/// do not power the PT.
inline SchemeOutcome eval_first_psa(const ChannelRealization& ch, const SimConfig& cfg) {
  using namespace psa_detail;
  check_alpha(cfg);
  const std::size_t pairs = ch.topology().n_pairs();
  const double share = cfg.alpha / static_cast<double>(pairs);
  SchemeOutcome out;
  out.scheme = SchemeId::First;
  double sum_theta = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    sum_theta += theta_to_pt(ch, i);
    out.secondary_rates.push_back(link_rate(ch, cfg, i, share));
    out.scheduled_transmitters.push_back(i);
  }
  out.e_h1 = cfg.p_s * share * cfg.slot_duration * cfg.eta * sum_theta;
  return out;
}

/// All STs transmit simultaneously over the whole first stage and interfere.
inline SchemeOutcome eval_second_psa(const ChannelRealization& ch, const SimConfig& cfg) {
  using namespace psa_detail;
  check_alpha(cfg);
  const auto& topo = ch.topology();
  const std::size_t pairs = topo.n_pairs();
  SchemeOutcome out;
  out.scheme = SchemeId::Second;
  double sum_theta = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    sum_theta += theta_to_pt(ch, i);
    const Node victim = Node::secondary(topo.pair_of(i));
    double interference = 0.0;
    for (std::size_t j = 0; j < pairs; ++j) {
      if (j == i) continue;
      interference += cfg.p_s * (cfg.interference_own_link_gain ? theta_data(ch, j)
                                                                : ch.gain(Node::secondary(j), victim));
    }
    const double sinr = cfg.p_s * theta_data(ch, i) / (cfg.kappa + interference);
    out.secondary_rates.push_back(cfg.alpha * std::log2(1.0 + sinr));
    out.scheduled_transmitters.push_back(i);
  }
  out.e_h1 = cfg.p_s * cfg.alpha * cfg.slot_duration * cfg.eta * sum_theta;
  return out;
}

/// Only the strongest data link transmits; the strongest remaining node to the
/// PT powers it with a known signal.
inline SchemeOutcome eval_third_psa(const ChannelRealization& ch, const SimConfig& cfg) {
  using namespace psa_detail;
  check_alpha(cfg);
  const auto& topo = ch.topology();
  const std::size_t k = best_data_link(ch);
  auto powering = strongest_to_pt(ch, k, 1);
  if (powering.empty()) powering.push_back(topo.pair_of(k));  // N = 2: only the destination is left
  const std::size_t r = powering.front();

  SchemeOutcome out;
  out.scheme = SchemeId::Third;
  out.secondary_rates.assign(topo.n_pairs(), 0.0);
  out.secondary_rates[k] = link_rate(ch, cfg, k, cfg.alpha);
  out.scheduled_transmitters = {k};
  out.powering_sets = {{r}};
  out.e_h1 = cfg.alpha * cfg.slot_duration * cfg.eta *
             (cfg.p_s * theta_to_pt(ch, k) + cfg.cooperation_power() * theta_to_pt(ch, r));
  return out;
}

/// Strongest data link transmits while K other nodes beamform energy to the PT.
inline SchemeOutcome eval_fourth_psa(const ChannelRealization& ch, const SimConfig& cfg) {
  using namespace psa_detail;
  check_alpha(cfg);
  const auto& topo = ch.topology();
  const std::size_t k = best_data_link(ch);
  auto omega = strongest_to_pt(ch, k, cfg.beam_size());

  SchemeOutcome out;
  out.scheme = SchemeId::Fourth;
  out.beam_clamped = cfg.beam_clamped();
  out.secondary_rates.assign(topo.n_pairs(), 0.0);
  out.secondary_rates[k] = link_rate(ch, cfg, k, cfg.alpha);
  out.scheduled_transmitters = {k};
  out.e_h1 = cfg.alpha * cfg.slot_duration * cfg.eta *
             (cfg.p_s * theta_to_pt(ch, k) + cfg.cooperation_power() * beam_term(ch, omega));
  out.powering_sets.push_back(std::move(omega));
  return out;
}

/// Time-shared like First-PSA, with K non-scheduled nodes beamforming to the
/// PT during every transmission.
inline SchemeOutcome eval_fifth_psa(const ChannelRealization& ch, const SimConfig& cfg) {
  using namespace psa_detail;
  check_alpha(cfg);
  const std::size_t pairs = ch.topology().n_pairs();
  const double share = cfg.alpha / static_cast<double>(pairs);
  SchemeOutcome out;
  out.scheme = SchemeId::Fifth;
  out.beam_clamped = cfg.beam_clamped();
  double received = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    auto omega = strongest_to_pt(ch, i, cfg.beam_size());
    received += cfg.p_s * theta_to_pt(ch, i) + cfg.cooperation_power() * beam_term(ch, omega);
    out.secondary_rates.push_back(link_rate(ch, cfg, i, share));
    out.scheduled_transmitters.push_back(i);
    out.powering_sets.push_back(std::move(omega));
  }
  out.e_h1 = share * cfg.slot_duration * cfg.eta * received;
  return out;
}

inline SchemeOutcome eval_scheme(SchemeId id, const ChannelRealization& ch, const SimConfig& cfg) {
  switch (id) {
    case SchemeId::First: return eval_first_psa(ch, cfg);
    case SchemeId::Second: return eval_second_psa(ch, cfg);
    case SchemeId::Third: return eval_third_psa(ch, cfg);
    case SchemeId::Fourth: return eval_fourth_psa(ch, cfg);
    case SchemeId::Fifth: return eval_fifth_psa(ch, cfg);
  }
  throw InputError("eval_scheme: unknown scheme");
}

}  // namespace swipt
