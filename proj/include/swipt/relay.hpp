#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "swipt/errors.hpp"
#include "swipt/fading.hpp"
#include "swipt/linalg.hpp"
#include "swipt/omp.hpp"

namespace swipt {

using linalg::CMatrix;
using linalg::CVector;

/// Energy available to the PT in one slot, all J/Hz.
struct EnergyLedger {
  double e_p = 0.0;
  double e_h1 = 0.0;
  double e_h2_carry = 0.0;  // third-stage harvest of the previous slot

  void validate() const {
    if (!(e_p >= 0.0 && e_h1 >= 0.0 && e_h2_carry >= 0.0))
      throw InputError("energy ledger: entries must be non-negative");
  }
};

/// PT transmit power (W/Hz) when the whole budget is spent in stage two,
/// which lasts (1 - alpha) T / 2.
inline double pt_power(const EnergyLedger& ledger, double alpha, double slot_duration) {
  ledger.validate();
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InputError("pt_power: alpha must lie in [0, 1)");
  if (!(slot_duration > 0.0)) throw InputError("pt_power: slot duration must be positive");
  return 2.0 * (ledger.e_p + ledger.e_h1 + ledger.e_h2_carry) / ((1.0 - alpha) * slot_duration);
}

/// Destination MSE model for AF relaying by all N secondary nodes:
/// MSE(g) = P_p - g^H h~ - h~^H g + g^H R g + kappa.
struct MmseSystem {
  double p_p = 0.0;
  double kappa = 0.0;
  CVector h;                   // h(s_n,pd) h(p,s_n)
  CVector h_tilde;             // P_p h
  CVector h_ps;                // h(p,s_n)
  std::vector<double> r_vv;    // relayed noise variances theta(p,s_n) kappa
  CMatrix r;                   // P_p h h^H + diag(r_vv)
  CMatrix l;                   // Cholesky factor of r
  CVector whitened_target;     // L^{-1} h~

  std::size_t size() const noexcept { return h.size(); }
};

/// Builds the system from the PT->relay coefficients h(p,s_n) and the
/// relay->PD coefficients h(s_n,pd). With cov_sqrt_power the rank-one part of
/// R uses sqrt(P_p) instead of P_p; g* is then no longer the minimiser of the
/// physical MSE.
inline MmseSystem build_mmse_system(std::span<const cplx> h_ps, std::span<const cplx> h_spd,
                                    double p_p, double kappa, bool cov_sqrt_power = false) {
  if (!(p_p > 0.0)) throw InputError("build_mmse_system: P_p must be positive");
  if (!(kappa > 0.0)) throw InputError("build_mmse_system: kappa must be positive");
  if (h_ps.size() != h_spd.size() || h_ps.empty())
    throw InputError("build_mmse_system: channel vectors must be non-empty and equally sized");
  const std::size_t n = h_ps.size();
  MmseSystem sys;
  sys.p_p = p_p;
  sys.kappa = kappa;
  sys.h_ps.assign(h_ps.begin(), h_ps.end());
  sys.h.resize(n);
  sys.h_tilde.resize(n);
  sys.r_vv.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sys.h[i] = h_spd[i] * h_ps[i];
    sys.h_tilde[i] = p_p * sys.h[i];
    sys.r_vv[i] = std::norm(h_ps[i]) * kappa;
  }
  const double rank_one = cov_sqrt_power ? std::sqrt(p_p) : p_p;
  sys.r = CMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sys.r(i, j) = rank_one * sys.h[i] * std::conj(sys.h[j]);
  for (std::size_t i = 0; i < n; ++i) sys.r(i, i) += sys.r_vv[i];
  sys.l = linalg::cholesky(sys.r);
  sys.whitened_target = linalg::forward_substitute(sys.l, std::span<const cplx>(sys.h_tilde));
  return sys;
}

/// PT -> s_n coefficients for every secondary node.
inline CVector pt_to_relays(const ChannelRealization& ch) {
  CVector v(ch.topology().n_secondary());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = ch.coefficient(Node::pt(), Node::secondary(i));
  return v;
}

/// s_n -> PD coefficients for every secondary node.
inline CVector relays_to_pd(const ChannelRealization& ch) {
  CVector v(ch.topology().n_secondary());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = ch.coefficient(Node::secondary(i), Node::pd());
  return v;
}

inline MmseSystem build_mmse_system(const ChannelRealization& ch, double p_p, double kappa,
                                    bool cov_sqrt_power = false) {
  const CVector h_ps = pt_to_relays(ch);
  const CVector h_spd = relays_to_pd(ch);
  return build_mmse_system(std::span<const cplx>(h_ps), std::span<const cplx>(h_spd), p_p, kappa,
                           cov_sqrt_power);
}

/// g* = R^{-1} h~
inline CVector dense_mmse_gains(const MmseSystem& sys) {
  return linalg::cholesky_solve(sys.l, std::span<const cplx>(sys.h_tilde));
}

struct MseBreakdown {
  double total = 0.0;   // from the signal model
  double min = 0.0;     // P_p - h~^H R^{-1} h~ + kappa
  double excess = 0.0;  // ||L^H g - L^{-1} h~||^2
};

inline MseBreakdown mse(std::span<const cplx> g, const MmseSystem& sys) {
  const std::size_t n = sys.size();
  if (g.size() != n) throw InputError("mse: gain vector size mismatch");
  MseBreakdown out;

  const cplx gh = linalg::dot(g, std::span<const cplx>(sys.h));
  double noise = 0.0;
  for (std::size_t i = 0; i < n; ++i) noise += std::norm(g[i]) * sys.r_vv[i];
  out.total = sys.p_p - 2.0 * sys.p_p * gh.real() + sys.p_p * std::norm(gh) + noise + sys.kappa;

  double excess = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx lhg{};
    for (std::size_t k = i; k < n; ++k) lhg += std::conj(sys.l(k, i)) * g[k];
    excess += std::norm(lhg - sys.whitened_target[i]);
  }
  out.excess = excess;
  out.min = sys.p_p - linalg::squared_norm(std::span<const cplx>(sys.whitened_target)) + sys.kappa;
  return out;
}

/// Relay gains with their selected support.
struct GainVector {
  CVector g;
  std::vector<std::size_t> support;
  double rho = 1.0;
  double omp_residual = 0.0;  // ||L^H g_omp - L^{-1} h~|| before scaling
  bool rank_deficient = false;

  bool silent() const {
    for (const cplx& v : g)
      if (v != cplx{}) return false;
    return true;
  }
};

/// Sparse MMSE gains: OMP on the whitened problem min ||L^H g - L^{-1} h~||
/// with k_r nonzeros.
inline GainVector sparse_relay_select(const MmseSystem& sys, std::size_t k_r,
                                      const linalg::OmpOptions& opt = {}) {
  const CMatrix a = sys.l.adjoint();
  const auto sol = linalg::omp(a, std::span<const cplx>(sys.whitened_target), k_r, opt);
  GainVector out;
  out.g = sol.dense(sys.size());
  out.support = sol.support;
  out.omp_residual = sol.residual_norm();
  out.rank_deficient = sol.rank_deficient;
  return out;
}

/// g^H (P_p H_pS H_pS^H + kappa I) g, the aggregate relay transmit power.
inline double relay_power(std::span<const cplx> g, std::span<const cplx> h_ps, double p_p,
                          double kappa) {
  if (g.size() != h_ps.size()) throw InputError("relay_power: gain vector size mismatch");
  const cplx proj = linalg::dot(g, h_ps);
  return p_p * std::norm(proj) + kappa * linalg::squared_norm(g);
}

inline double relay_power(std::span<const cplx> g, const ChannelRealization& ch, double p_p,
                          double kappa) {
  const CVector h_ps = pt_to_relays(ch);
  return relay_power(g, std::span<const cplx>(h_ps), p_p, kappa);
}

/// Scales g so the aggregate relay power equals p_relay.
inline GainVector normalize_gains(GainVector gain, std::span<const cplx> h_ps, double p_p,
                                  double p_relay, double kappa) {
  const double power = relay_power(std::span<const cplx>(gain.g), h_ps, p_p, kappa);
  if (!(power > 0.0)) throw NumericalError("normalize_gains: zero gain vector cannot be scaled");
  gain.rho = std::sqrt(p_relay / power);
  for (cplx& v : gain.g) v *= gain.rho;
  return gain;
}

inline GainVector normalize_gains(GainVector gain, const ChannelRealization& ch, double p_p,
                                  double p_relay, double kappa) {
  const CVector h_ps = pt_to_relays(ch);
  return normalize_gains(std::move(gain), std::span<const cplx>(h_ps), p_p, p_relay, kappa);
}

/// Energy (J/Hz) the silent PT re-harvests from the relays in stage three.
inline double harvest_third_stage(const GainVector& gain, const ChannelRealization& ch, double p_p,
                                  double alpha, double slot_duration, double eta, double kappa) {
  const std::size_t n = ch.topology().n_secondary();
  if (gain.g.size() != n) throw InputError("harvest_third_stage: gain vector size mismatch");
  cplx ghp{};
  double noise = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Node s = Node::secondary(i);
    const cplx hp = ch.coefficient(s, Node::pt()) * ch.coefficient(Node::pt(), s);
    ghp += std::conj(gain.g[i]) * hp;
    noise += std::norm(gain.g[i]) * ch.gain(s, Node::pt()) * kappa;
  }
  const double received = std::norm(ghp) * p_p + noise;
  return received * (1.0 - alpha) / 2.0 * slot_duration * eta;
}

/// MRC of the direct stage-two branch (gain theta_direct = theta(p,pd)) and
/// the relayed stage-three branch; the combined SNR is the sum of branch SNRs.
inline double primary_rate(double theta_direct, const GainVector& gain, const MmseSystem& sys,
                           double alpha, bool omit_power = false) {
  if (gain.g.size() != sys.size()) throw InputError("primary_rate: gain vector size mismatch");
  const double direct = sys.p_p * theta_direct / sys.kappa;
  const cplx gh = linalg::dot(std::span<const cplx>(gain.g), std::span<const cplx>(sys.h));
  double noise = 0.0;
  for (std::size_t i = 0; i < sys.size(); ++i) noise += std::norm(gain.g[i]) * sys.r_vv[i];
  const double relayed = (omit_power ? 1.0 : sys.p_p) * std::norm(gh) / (sys.kappa + noise);
  return (1.0 - alpha) / 2.0 * std::log2(1.0 + direct + relayed);
}

inline double primary_rate(const ChannelRealization& ch, const GainVector& gain,
                           const MmseSystem& sys, double alpha, bool omit_power = false) {
  return primary_rate(ch.gain(Node::pt(), Node::pd()), gain, sys, alpha, omit_power);
}

/// Primary rate with silent relays: the stage-two direct branch only.
inline double direct_only_rate(const ChannelRealization& ch, double p_p, double alpha,
                               double kappa) {
  return (1.0 - alpha) / 2.0 * std::log2(1.0 + p_p * ch.gain(Node::pt(), Node::pd()) / kappa);
}

/// Baseline without cooperation: the PT transmits for the whole slot with power e_p / T.
inline double pt_alone_rate(const ChannelRealization& ch, double e_p, double slot_duration,
                            double kappa) {
  return std::log2(1.0 + (e_p / slot_duration) * ch.gain(Node::pt(), Node::pd()) / kappa);
}

}  // namespace swipt
