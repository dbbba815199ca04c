#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <ostream>
#include <string>
#include <vector>

#include "swipt/errors.hpp"
#include "swipt/simulation.hpp"

namespace swipt {

inline constexpr std::array<const char*, 10> kCsvColumns = {
    "alpha",
    "scheme",
    "primary_rate_mean",
    "primary_rate_ci95",
    "secondary_sum_rate_mean",
    "secondary_sum_rate_ci95",
    "e_h1_mean_j_per_hz",
    "e_h2_mean_j_per_hz",
    "p_p_mean_w_per_hz",
    "pt_alone_rate_mean"};

/// Shortest round-trip scientific form; independent of the C locale.
inline std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific);
  return std::string(buf.data(), res.ptr);
}

inline std::string row_scheme_name(const ReportRow& row) {
  return row.scheme ? std::string(scheme_name(*row.scheme)) : std::string("pt_alone");
}

/// Header plus one row per cell, ordered by alpha, then scheme, with the
/// PT-alone row last for each alpha. Lines end in '\n'.
inline void emit_csv(const ThroughputReport& report, std::ostream& sink) {
  if (report.rows.empty()) throw InputError("emit_csv: empty report");
  std::vector<ReportRow> rows = report.rows;
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    const int ka = a.scheme ? static_cast<int>(*a.scheme) : 100;
    const int kb = b.scheme ? static_cast<int>(*b.scheme) : 100;
    return ka < kb;
  });

  std::string out;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i) out += ',';
    out += kCsvColumns[i];
  }
  out += '\n';
  for (const auto& r : rows) {
    out += format_number(r.alpha);
    out += ',' + row_scheme_name(r);
    for (double v : {r.primary_rate_mean, r.primary_rate_ci95, r.secondary_sum_rate_mean,
                     r.secondary_sum_rate_ci95, r.e_h1_mean, r.e_h2_mean, r.p_p_mean,
                     r.pt_alone_rate_mean})
      out += ',' + format_number(v);
    out += '\n';
  }
  sink.write(out.data(), static_cast<std::streamsize>(out.size()));
  sink.flush();
  if (!sink) throw IoError("emit_csv: write failed");
}

}  // namespace swipt
