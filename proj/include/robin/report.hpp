#pragma once

// CSV and JSON serialization of RobinReport and BoundReport.
//
// CSV layout: one "# precision_bits=N" comment line, a header row, then one
// row per record ordered as produced.  Enclosure endpoints are written with
// outward rounding so the decimal interval still contains the value.

#include "robin/asymptotics.hpp"
#include "robin/certified_real.hpp"
#include "robin/factorization.hpp"
#include "robin/robin_functional.hpp"

#include <json.hpp>

#include <algorithm>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace robin {

inline constexpr std::string_view kRobinCsvHeader =
    "n_or_factorization,m,log_n,loglog_n,sigma_over_n_lo,sigma_over_n_hi,l_lo,l_hi,d_sign,epsilon_m";
inline constexpr std::string_view kBoundCsvHeader = "claim,domain_lo,domain_hi,margin_lo,margin_hi,pass";
inline constexpr int kCsvDigits = 20;

inline int sign_value(Sign s) { return static_cast<int>(s); }

inline std::string robin_csv_row(const RobinReport& r, int digits = kCsvDigits) {
  std::string row = r.factorization.to_string();
  row += ',' + std::to_string(r.factorization.size());
  row += ',' + r.log_n.midpoint_string(digits);
  row += ',' + r.loglog_n.midpoint_string(digits);
  row += ',' + r.sigma_over_n.lower_string(digits);
  row += ',' + r.sigma_over_n.upper_string(digits);
  row += ',' + r.little_l.lower_string(digits);
  row += ',' + r.little_l.upper_string(digits);
  row += ',' + std::to_string(sign_value(r.d_sign));
  row += ',';
  if (r.epsilon_m) row += r.epsilon_m->midpoint_string(digits);
  return row;
}

inline std::string bound_csv_row(const BoundReport& b, int digits = kCsvDigits) {
  std::string row = b.claim;
  row += ',' + std::to_string(b.domain_lo);
  row += ',' + std::to_string(b.domain_hi);
  row += ',' + (b.vacuous ? std::string{} : b.margin.lower_string(digits));
  row += ',' + (b.vacuous ? std::string{} : b.margin.upper_string(digits));
  row += ',' + std::string(b.pass ? "true" : "false");
  return row;
}

inline Precision report_precision(std::span<const RobinReport> reports) {
  Precision bits = kBasePrecision;
  for (const auto& r : reports) bits = std::max(bits, r.precision);
  return bits;
}

inline void write_robin_csv(std::ostream& os, std::span<const RobinReport> reports) {
  os << "# precision_bits=" << report_precision(reports) << '\n' << kRobinCsvHeader << '\n';
  for (const auto& r : reports) os << robin_csv_row(r) << '\n';
}

inline void write_bound_csv(std::ostream& os, std::span<const BoundReport> reports) {
  Precision bits = kBasePrecision;
  for (const auto& b : reports) bits = std::max(bits, b.margin.precision());
  os << "# precision_bits=" << bits << '\n' << kBoundCsvHeader << '\n';
  for (const auto& b : reports) os << bound_csv_row(b) << '\n';
}

inline nlohmann::json interval_json(const CertifiedReal& x, int digits = kCsvDigits) {
  return {{"lo", x.lower_string(digits)}, {"hi", x.upper_string(digits)}};
}

inline nlohmann::json to_json(const RobinReport& r) {
  nlohmann::json j = {{"factorization", r.factorization.to_string()},
                      {"m", r.factorization.size()},
                      {"precision_bits", r.precision},
                      {"log_n", interval_json(r.log_n)},
                      {"loglog_n", interval_json(r.loglog_n)},
                      {"sigma_over_n", interval_json(r.sigma_over_n)},
                      {"l", interval_json(r.little_l)},
                      {"d_sign", sign_value(r.d_sign)}};
  j["epsilon_m"] = r.epsilon_m ? interval_json(*r.epsilon_m) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const BoundReport& b) {
  nlohmann::json j = {{"claim", b.claim},
                      {"domain_lo", b.domain_lo},
                      {"domain_hi", b.domain_hi},
                      {"pass", b.pass},
                      {"vacuous", b.vacuous}};
  j["margin"] = b.vacuous ? nlohmann::json(nullptr) : interval_json(b.margin);
  return j;
}

/// Splits one CSV line; fields in these formats never need quoting.
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    out.emplace_back(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace robin
