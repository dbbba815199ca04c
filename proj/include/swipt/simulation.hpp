#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "swipt/config.hpp"
#include "swipt/fading.hpp"
#include "swipt/psa.hpp"
#include "swipt/relay.hpp"

namespace swipt {

/// Stages two and three of one slot.
struct SlotResult {
  double p_p = 0.0;           // W/Hz
  double primary_rate = 0.0;  // bits/s/Hz
  double e_h2 = 0.0;          // J/Hz, spendable next slot
  // MSE of the OMP gains before rho-scaling; mse_total = mse_min + mse_excess.
  double mse_min = 0.0;
  double mse_excess = 0.0;
  double mse_total = 0.0;
  double mse_total_scaled = 0.0;  // after rho-scaling
  GainVector gain;
  /// Relays were silenced because the system could not be formed.
  bool degenerate = false;
};

struct SlotOutcome {
  SlotResult slot;
  SchemeOutcome scheme;
  double next_carry = 0.0;
  double pt_alone_rate = 0.0;
};

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

/// Seed of sweep cell `index`, shared by every scheme of that cell.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[1]) << 32) | words[0];
}

/// Runs the three stages on a given realization. Only the previous slot's
/// third-stage harvest (carry) enters this slot's PT power.
inline SlotOutcome evaluate_slot(const ChannelRealization& ch, double carry, const SimConfig& cfg) {
  if (!(carry >= 0.0)) throw InputError("evaluate_slot: carried energy must be non-negative");
  const std::size_t n = ch.topology().n_secondary();
  SlotOutcome out;
  out.scheme = eval_scheme(cfg.scheme, ch, cfg);
  out.pt_alone_rate = pt_alone_rate(ch, cfg.e_p_joule_per_hz(), cfg.slot_duration, cfg.kappa);

  SlotResult& slot = out.slot;
  slot.p_p = pt_power({cfg.e_p_joule_per_hz(), out.scheme.e_h1, carry}, cfg.alpha, cfg.slot_duration);
  slot.gain.g.assign(n, cplx{});

  auto silence = [&](bool degenerate) {
    slot.gain = GainVector{};
    slot.gain.g.assign(n, cplx{});
    slot.degenerate = degenerate;
    slot.e_h2 = 0.0;
    slot.primary_rate = direct_only_rate(ch, slot.p_p, cfg.alpha, cfg.kappa);
  };

  if (cfg.k_r == 0 || slot.p_p == 0.0) {
    silence(slot.p_p == 0.0);
    return out;
  }

  try {
    const MmseSystem sys = build_mmse_system(ch, slot.p_p, cfg.kappa, cfg.relay_cov_sqrt_power);
    linalg::OmpOptions opt;
    opt.normalized = cfg.omp_normalized;
    opt.relative_tolerance = cfg.omp_tolerance;
    GainVector gain = sparse_relay_select(sys, cfg.k_r, opt);

    const auto pre = mse(std::span<const cplx>(gain.g), sys);
    slot.mse_min = pre.min;
    slot.mse_excess = pre.excess;
    slot.mse_total = pre.total;

    if (gain.silent()) {
      // h~ = 0: nothing to forward.
      silence(false);
      slot.mse_total_scaled = slot.mse_total;
      return out;
    }
    slot.gain = normalize_gains(std::move(gain), ch, slot.p_p, cfg.cooperation_power(), cfg.kappa);
    slot.mse_total_scaled = mse(std::span<const cplx>(slot.gain.g), sys).total;
    slot.e_h2 = harvest_third_stage(slot.gain, ch, slot.p_p, cfg.alpha, cfg.slot_duration, cfg.eta,
                                    cfg.kappa);
    slot.primary_rate = primary_rate(ch, slot.gain, sys, cfg.alpha, cfg.relay_snr_omit_power);
  } catch (const FactorizationError&) {
    silence(true);
  }
  out.next_carry = slot.e_h2;
  return out;
}

/// Draws this slot's realization from rng and evaluates it.
template <std::uniform_random_bit_generator Rng>
SlotOutcome run_slot(double carry, const SimConfig& cfg, Rng& rng) {
  const NetworkTopology topo(cfg.n_secondary);
  const auto ch = draw_realization(rng, topo, FadingParams{cfg.mean_gain, cfg.seed});
  return evaluate_slot(ch, carry, cfg);
}

/// Streaming mean / variance (Welford).
class RunningStats {
 public:
  void push(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double standard_error() const noexcept {
    return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }
  /// Normal-approximation 95% half-width.
  double ci95() const noexcept { return 1.96 * standard_error(); }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// One (alpha, scheme) cell; scheme is empty for the PT-alone baseline row.
struct ReportRow {
  double alpha = 0.0;
  std::optional<SchemeId> scheme;
  std::size_t slots = 0;
  double primary_rate_mean = 0.0;
  double primary_rate_ci95 = 0.0;
  double secondary_sum_rate_mean = 0.0;
  double secondary_sum_rate_ci95 = 0.0;
  double e_h1_mean = 0.0;
  double e_h2_mean = 0.0;
  double p_p_mean = 0.0;
  double pt_alone_rate_mean = 0.0;
  double pt_alone_rate_ci95 = 0.0;
  // Standard errors, kept for statistical comparisons between rows.
  double primary_rate_se = 0.0;
  double secondary_sum_rate_se = 0.0;
  double pt_alone_rate_se = 0.0;
};

struct ThroughputReport {
  std::vector<ReportRow> rows;

  const ReportRow* find(double alpha, std::optional<SchemeId> scheme) const {
    for (const auto& r : rows)
      if (r.alpha == alpha && r.scheme == scheme) return &r;
    return nullptr;
  }
};

/// Chains cfg.slots slots from a zero carry and averages per-slot rates.
/// The CI treats slots as independent; the one-slot energy memory is ignored.
inline ReportRow run_simulation(const SimConfig& cfg) {
  cfg.validate();
  auto rng = make_rng(cfg.seed);
  RunningStats primary, secondary, e_h1, e_h2, p_p, alone;
  double carry = 0.0;
  for (std::size_t t = 0; t < cfg.slots; ++t) {
    const SlotOutcome o = run_slot(carry, cfg, rng);
    primary.push(o.slot.primary_rate);
    secondary.push(o.scheme.sum_rate());
    e_h1.push(o.scheme.e_h1);
    e_h2.push(o.slot.e_h2);
    p_p.push(o.slot.p_p);
    alone.push(o.pt_alone_rate);
    carry = o.next_carry;
  }
  ReportRow row;
  row.alpha = cfg.alpha;
  row.scheme = cfg.scheme;
  row.slots = cfg.slots;
  row.primary_rate_mean = primary.mean();
  row.primary_rate_ci95 = primary.ci95();
  row.primary_rate_se = primary.standard_error();
  row.secondary_sum_rate_mean = secondary.mean();
  row.secondary_sum_rate_ci95 = secondary.ci95();
  row.secondary_sum_rate_se = secondary.standard_error();
  row.e_h1_mean = e_h1.mean();
  row.e_h2_mean = e_h2.mean();
  row.p_p_mean = p_p.mean();
  row.pt_alone_rate_mean = alone.mean();
  row.pt_alone_rate_ci95 = alone.ci95();
  row.pt_alone_rate_se = alone.standard_error();
  return row;
}

/// PT-alone row: the PT keeps the whole slot and spends only e_p.
inline ReportRow baseline_row(const ReportRow& any_cell, const SimConfig& cfg) {
  ReportRow b;
  b.p_p_mean = cfg.e_p_joule_per_hz() / cfg.slot_duration;
  b.alpha = any_cell.alpha;
  b.slots = any_cell.slots;
  b.primary_rate_mean = any_cell.pt_alone_rate_mean;
  b.primary_rate_ci95 = any_cell.pt_alone_rate_ci95;
  b.primary_rate_se = any_cell.pt_alone_rate_se;
  b.pt_alone_rate_mean = any_cell.pt_alone_rate_mean;
  b.pt_alone_rate_ci95 = any_cell.pt_alone_rate_ci95;
  b.pt_alone_rate_se = any_cell.pt_alone_rate_se;
  return b;
}

inline ReportRow run_baseline(const SimConfig& cfg) {
  cfg.validate();
  auto rng = make_rng(cfg.seed);
  const NetworkTopology topo(cfg.n_secondary);
  RunningStats alone;
  for (std::size_t t = 0; t < cfg.slots; ++t) {
    const auto ch = draw_realization(rng, topo, FadingParams{cfg.mean_gain, cfg.seed});
    alone.push(pt_alone_rate(ch, cfg.e_p_joule_per_hz(), cfg.slot_duration, cfg.kappa));
  }
  ReportRow r;
  r.alpha = cfg.alpha;
  r.slots = cfg.slots;
  r.pt_alone_rate_mean = alone.mean();
  r.pt_alone_rate_ci95 = alone.ci95();
  r.pt_alone_rate_se = alone.standard_error();
  return baseline_row(r, cfg);
}

/// Runs every (alpha, scheme) cell plus one PT-alone row per alpha. All cells
/// of one alpha share a derived seed, so schemes see the same realizations.
/// Rows come out ordered by alpha grid position, scheme order, baseline last.
inline ThroughputReport sweep(const SimConfig& base, const std::vector<double>& alpha_grid,
                              const std::vector<SchemeId>& schemes, unsigned threads = 0) {
  for (double a : alpha_grid)
    if (!(a >= 0.0 && a < 1.0)) throw ConfigError("alpha", "grid values must lie in [0, 1)");
  base.validate();

  struct Task {
    std::size_t alpha_index;
    std::optional<SchemeId> scheme;
  };
  std::vector<Task> tasks;
  for (std::size_t ai = 0; ai < alpha_grid.size(); ++ai) {
    for (SchemeId s : schemes) tasks.push_back({ai, s});
    if (schemes.empty()) tasks.push_back({ai, std::nullopt});
  }

  std::vector<ReportRow> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        SimConfig cell = base;
        cell.alpha = alpha_grid[tasks[i].alpha_index];
        cell.seed = derive_seed(base.seed, tasks[i].alpha_index);
        if (tasks[i].scheme) {
          cell.scheme = *tasks[i].scheme;
          results[i] = run_simulation(cell);
        } else {
          results[i] = run_baseline(cell);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  ThroughputReport report;
  std::size_t i = 0;
  for (std::size_t ai = 0; ai < alpha_grid.size(); ++ai) {
    if (schemes.empty()) {
      report.rows.push_back(results[i++]);
      continue;
    }
    const ReportRow& first_cell = results[i];
    for (std::size_t s = 0; s < schemes.size(); ++s) report.rows.push_back(results[i++]);
    report.rows.push_back(baseline_row(first_cell, base));
  }
  return report;
}

}  // namespace swipt
