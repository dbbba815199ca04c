#pragma once

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "swipt/config.hpp"
#include "swipt/fading.hpp"
#include "swipt/linalg.hpp"
#include "swipt/omp.hpp"
#include "swipt/psa.hpp"
#include "swipt/relay.hpp"
#include "swipt/simulation.hpp"

namespace swipt {

struct CheckResult {
  std::string name;
  bool passed = true;
  /// The configuration is known to break this invariant; a violation is
  /// reported but does not fail the run.
  bool expected_divergent = false;
  double worst = 0.0;  // largest observed error measure
  std::string detail;
};

struct ValidationReport {
  std::size_t n_secondary = 0;
  std::size_t slots = 0;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed || c.expected_divergent; });
  }

  void print(std::ostream& os) const {
    os << "validate: N=" << n_secondary << ", slots=" << slots << '\n';
    for (const auto& c : checks) {
      const char* status = c.passed ? "ok" : (c.expected_divergent ? "DIVERGES (expected)" : "FAILED");
      os << "  [" << status << "] " << c.name << "  worst=" << c.worst;
      if (!c.detail.empty()) os << "  " << c.detail;
      os << '\n';
    }
    os << (passed() ? "all checks passed\n" : "validation FAILED\n");
  }
};

namespace validate_detail {

inline double relative(double err, double scale) { return scale > 0.0 ? err / scale : err; }

class Check {
 public:
  Check(std::string name, double tolerance) : tol_(tolerance) { r_.name = std::move(name); }
  void observe(double err, const std::string& where = {}) {
    if (!std::isfinite(err)) err = INFINITY;
    r_.worst = std::max(r_.worst, err);
    if (!(err <= tol_)) {
      if (r_.passed) r_.detail = where;
      r_.passed = false;
    }
  }
  void fail(const std::string& why) {
    r_.passed = false;
    if (r_.detail.empty()) r_.detail = why;
  }
  CheckResult done(bool expected_divergent = false) {
    r_.expected_divergent = expected_divergent;
    return r_;
  }

 private:
  double tol_;
  CheckResult r_;
};

}  // namespace validate_detail

/// Runs the invariant suite at reduced scale (N <= 12, <= 200 slots) on the
/// configured scheme and flags. cfg must already be valid.
inline ValidationReport run_validate(const SimConfig& cfg) {
  using namespace validate_detail;
  cfg.validate();
  SimConfig small = cfg;
  small.n_secondary = std::min<std::size_t>(cfg.n_secondary, 12);
  small.slots = std::min<std::size_t>(cfg.slots, 200);
  small.k_r = std::min(cfg.k_r, small.n_secondary);
  const std::size_t n = small.n_secondary;

  ValidationReport report;
  report.n_secondary = n;
  report.slots = small.slots;

  Check reciprocity("channel reciprocity (exact)", 0.0);
  Check chol("cholesky reconstruction (1e-10 rel)", 1e-10);
  Check dense_vs_omp("OMP with K_R=N matches dense MMSE gains (1e-8 rel)", 1e-8);
  Check decomposition("MSE decomposition total = min + excess (1e-9 rel)", 1e-9);
  Check minimality("mse(g*) minimal under perturbation", 0.0);
  Check power("relay power constraint after scaling (1e-9 rel)", 1e-9);
  Check omp_monotone("OMP residual non-increasing", 0.0);
  Check first_fifth("First/Fifth secondary rates identical", 0.0);
  Check third_fourth("Third/Fourth scheduled rate identical", 0.0);
  Check causality("energy causality, e_h2 >= 0, slot-1 carry = 0", 0.0);

  auto rng = make_rng(small.seed);
  std::mt19937_64 probe_rng(small.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  const NetworkTopology topo(n);
  double carry = 0.0;

  try {
    for (std::size_t t = 0; t < small.slots; ++t) {
      const std::string where = "slot " + std::to_string(t);
      const auto ch = draw_realization(rng, topo, FadingParams{small.mean_gain, small.seed});

      for (std::size_t a = 0; a < topo.n_nodes(); ++a)
        for (std::size_t b = 0; b < topo.n_nodes(); ++b) {
          if (a == b) continue;
          const Node na = a == 0 ? Node::pt() : a == 1 ? Node::pd() : Node::secondary(a - 2);
          const Node nb = b == 0 ? Node::pt() : b == 1 ? Node::pd() : Node::secondary(b - 2);
          reciprocity.observe(std::abs(ch.coefficient(na, nb) - ch.coefficient(nb, na)), where);
        }

      const auto o1 = eval_first_psa(ch, small);
      const auto o5 = eval_fifth_psa(ch, small);
      first_fifth.observe(o1.secondary_rates == o5.secondary_rates ? 0.0 : 1.0, where);
      const auto o3 = eval_third_psa(ch, small);
      const auto o4 = eval_fourth_psa(ch, small);
      third_fourth.observe(o3.secondary_rates == o4.secondary_rates ? 0.0 : 1.0, where);

      if (t == 0 && carry != 0.0) causality.fail("slot-1 carry is not zero");
      const SlotOutcome slot = evaluate_slot(ch, carry, small);
      const double expected_pp =
          pt_power({small.e_p_joule_per_hz(), slot.scheme.e_h1, carry}, small.alpha, small.slot_duration);
      causality.observe(std::abs(slot.slot.p_p - expected_pp) / expected_pp, where);
      if (!(slot.slot.e_h2 >= 0.0)) causality.fail(where + ": negative e_h2");

      const MmseSystem sys = build_mmse_system(ch, slot.slot.p_p, small.kappa, small.relay_cov_sqrt_power);
      const auto llh = linalg::multiply(sys.l, sys.l.adjoint());
      double diff = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) diff += std::norm(llh(i, j) - sys.r(i, j));
      chol.observe(relative(std::sqrt(diff), linalg::frobenius_norm(sys.r)), where);

      const CVector g_star = dense_mmse_gains(sys);
      const GainVector g_full = sparse_relay_select(sys, n);
      double num = 0.0;
      for (std::size_t i = 0; i < n; ++i) num += std::norm(g_full.g[i] - g_star[i]);
      dense_vs_omp.observe(relative(std::sqrt(num), linalg::norm2(std::span<const cplx>(g_star))), where);

      const auto omp_sol = linalg::omp(sys.l.adjoint(), std::span<const cplx>(sys.whitened_target), n);
      for (std::size_t i = 1; i < omp_sol.residual_norm_history.size(); ++i)
        if (omp_sol.residual_norm_history[i] > omp_sol.residual_norm_history[i - 1])
          omp_monotone.observe(omp_sol.residual_norm_history[i] - omp_sol.residual_norm_history[i - 1], where);

      const double g_scale = linalg::norm2(std::span<const cplx>(g_star));
      const double mse_star = mse(std::span<const cplx>(g_star), sys).total;
      for (int trial = 0; trial < 5; ++trial) {
        CVector g(n);
        for (auto& v : g) v = cplx(normal(probe_rng), normal(probe_rng)) * g_scale;
        const auto m = mse(std::span<const cplx>(g), sys);
        decomposition.observe(relative(std::abs(m.total - (m.min + m.excess)), std::abs(m.total)), where);

        CVector gp = g_star;
        for (auto& v : gp) v += cplx(normal(probe_rng), normal(probe_rng)) * (0.01 * g_scale / std::sqrt(2.0 * n));
        const double mp = mse(std::span<const cplx>(gp), sys).total;
        minimality.observe(std::max(0.0, mse_star - mp) / (sys.p_p + sys.kappa), where);
      }

      if (small.k_r > 0) {
        const GainVector sparse = sparse_relay_select(sys, small.k_r);
        if (!sparse.silent()) {
          const auto scaled = normalize_gains(sparse, ch, sys.p_p, small.cooperation_power(), small.kappa);
          const double p = relay_power(std::span<const cplx>(scaled.g), ch, sys.p_p, small.kappa);
          power.observe(relative(std::abs(p - small.cooperation_power()), small.cooperation_power()), where);
        }
      }
      carry = slot.next_carry;
    }
  } catch (const std::exception& e) {
    Check numerical("numerical failure", 0.0);
    numerical.fail(e.what());
    report.checks.push_back(numerical.done());
  }

  report.checks.push_back(reciprocity.done());
  report.checks.push_back(chol.done());
  report.checks.push_back(dense_vs_omp.done());
  report.checks.push_back(decomposition.done(small.relay_cov_sqrt_power));
  report.checks.push_back(minimality.done(small.relay_cov_sqrt_power));
  report.checks.push_back(power.done());
  report.checks.push_back(omp_monotone.done());
  report.checks.push_back(first_fifth.done());
  report.checks.push_back(third_fourth.done());
  report.checks.push_back(causality.done());
  return report;
}

}  // namespace swipt
