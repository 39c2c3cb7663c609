#pragma once

// Finite-range checks of the prime-asymptotic ingredients: Chebyshev theta
// brackets, nth-prime lower bound, Rosser-Schoenfeld pi(x) sandwich, Mertens'
// product, and trend probes for statements that only hold in the limit.

#include "robin/certified_real.hpp"
#include "robin/factorization.hpp"
#include "robin/prime_engine.hpp"
#include "robin/robin_functional.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace robin {

/// Knobs for the lab checks that are envelopes rather than theorems.
struct LabConfig {
  double mertens_envelope = 5e-3;
  std::uint64_t theta_threshold = 10'544'111;
  std::string theta_additive_constant = "0.0066788";
};

struct BoundReport {
  std::string claim;
  std::uint64_t domain_lo = 0;
  std::uint64_t domain_hi = 0;
  CertifiedReal margin;  // worst case over the domain; positive means the claim held
  bool pass = false;
  bool vacuous = false;
};

namespace detail {

// Tracks the running minimum of certified margins.
class MarginTracker {
 public:
  void offer(const CertifiedReal& m) {
    if (!worst_) {
      worst_ = m;
    } else {
      *worst_ = min(*worst_, m);
    }
  }
  BoundReport finish(std::string claim, std::uint64_t lo, std::uint64_t hi) const {
    BoundReport r{std::move(claim), lo, hi, CertifiedReal{}, true, true};
    if (worst_) {
      r.margin = *worst_;
      r.vacuous = false;
      r.pass = worst_->sign() == Sign::Positive;
    }
    return r;
  }

 private:
  std::optional<CertifiedReal> worst_;
};

// Calls visit(p, theta(p)) for every prime p in [lo, hi], accumulating theta
// from p = 2.
template <class Visit>
void for_each_theta(const PrimeTable& table, std::uint64_t lo, std::uint64_t hi, double tolerance, Visit&& visit) {
  if (hi > table.limit()) throw std::out_of_range("theta range beyond the prime table");
  const std::size_t count = table.count_up_to(hi);
  LogSumAccumulator acc(theta_precision(count, hi, tolerance));
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t p = table.primes()[i];
    acc.add_log(p);
    if (p >= lo) visit(p, acc.value());
  }
}

}  // namespace detail

/// 0.998684 p < theta(p) < 1.001102 p for every prime p in [lo, hi]; requires
/// lo above the threshold 10544111.  Margin is the smaller absolute slack.
inline BoundReport check_theta_relative(const PrimeTable& table, std::uint64_t lo, std::uint64_t hi,
                                        double tolerance = 1e-20, const LabConfig& config = {}) {
  if (lo <= config.theta_threshold) throw std::invalid_argument("theta brackets need p > 10544111");
  detail::MarginTracker tracker;
  const Precision prec = precision_for(tolerance);
  const auto lower = CertifiedReal::from_decimal("0.998684", prec);
  const auto upper = CertifiedReal::from_decimal("1.001102", prec);
  detail::for_each_theta(table, lo, hi, tolerance, [&](std::uint64_t p, const CertifiedReal& th) {
    tracker.offer(min(th - lower * p, upper * p - th));
  });
  return tracker.finish("theta_relative", lo, hi);
}

/// p - c p / ln p < theta(p) < p + c p / ln p for primes in [lo, hi] above the
/// threshold; c comes from the config (default 0.0066788).
inline BoundReport check_theta_additive(const PrimeTable& table, std::uint64_t lo, std::uint64_t hi,
                                        double tolerance = 1e-20, const LabConfig& config = {}) {
  if (lo <= config.theta_threshold) throw std::invalid_argument("theta brackets need p > 10544111");
  detail::MarginTracker tracker;
  const Precision prec = precision_for(tolerance);
  const auto c = CertifiedReal::from_decimal(config.theta_additive_constant, prec);
  detail::for_each_theta(table, lo, hi, tolerance, [&](std::uint64_t p, const CertifiedReal& th) {
    const auto pp = CertifiedReal::from_uint(p, prec);
    const auto band = c * p / CertifiedReal::log_of(p, prec);
    tracker.offer(min(th - (pp - band), (pp + band) - th));
  });
  return tracker.finish("theta_additive", lo, hi);
}

struct NthPrimeError {
  std::uint64_t k = 0;
  std::uint64_t p_k = 0;
  /// (p_k / k - (ln k + ln ln k - 1)) * ln k / ln ln k
  CertifiedReal normalized_error;
  /// p_k - k (ln k + ln ln k - 1)
  CertifiedReal dusart_margin;
  bool dusart_holds = false;
};

inline NthPrimeError nth_prime_asymptotic_error(const PrimeTable& table, std::uint64_t k, double tolerance = 1e-20) {
  if (k < 2) throw std::invalid_argument("nth-prime asymptotic needs k >= 2");
  const Precision prec = precision_for(tolerance);
  const std::uint64_t p = table.nth(k);
  const auto lk = CertifiedReal::log_of(k, prec);
  const auto llk = log(lk);
  const auto main = lk + llk - CertifiedReal::from_int(1, prec);
  const auto pk = CertifiedReal::from_uint(p, prec);
  NthPrimeError out{k, p, (pk / k - main) * lk / llk, pk - main * k, false};
  out.dusart_holds = out.dusart_margin.sign() == Sign::Positive;
  return out;
}

/// p_k > k (ln k + ln ln k - 1) for 2 <= k <= k_max.
inline BoundReport check_dusart(const PrimeTable& table, std::uint64_t k_max, double tolerance = 1e-20) {
  detail::MarginTracker tracker;
  for (std::uint64_t k = 2; k <= k_max; ++k) tracker.offer(nth_prime_asymptotic_error(table, k, tolerance).dusart_margin);
  return tracker.finish("dusart_nth_prime_lower", 2, k_max);
}

struct RosserSchoenfeldReport {
  BoundReport lower;  // x/ln x (1 + 1/(2 ln x)) < pi(x)
  BoundReport upper;  // pi(x) < x/ln x (1 + 3/(2 ln x))
};

/// Checks the pi(x) sandwich for every integer x in [lo, hi], lo >= 59.
/// Both bounding functions increase for x >= 59 while pi(x) is constant
/// between primes, so the lower bound is tightest at x = p - 1 (and hi) and
/// the upper bound at x = p (and lo).
inline RosserSchoenfeldReport check_rosser_schoenfeld(const PrimeTable& table, std::uint64_t lo, std::uint64_t hi,
                                                      double tolerance = 1e-20) {
  if (lo < 59) throw std::invalid_argument("the lower bound is only asserted for x >= 59");
  if (hi > table.limit() || lo > hi) throw std::out_of_range("x range outside the prime table");
  const Precision prec = precision_for(tolerance);
  auto bound = [&](std::uint64_t x, long numerator) {
    const auto lx = CertifiedReal::log_of(x, prec);
    const auto one = CertifiedReal::from_int(1, prec);
    return CertifiedReal::from_uint(x, prec) / lx * (one + CertifiedReal::from_int(numerator, prec) / (lx * 2));
  };
  detail::MarginTracker low, up;
  auto check_lower = [&](std::uint64_t x) {
    low.offer(CertifiedReal::from_uint(table.count_up_to(x), prec) - bound(x, 1));
  };
  auto check_upper = [&](std::uint64_t x) {
    up.offer(bound(x, 3) - CertifiedReal::from_uint(table.count_up_to(x), prec));
  };
  check_lower(hi);
  check_upper(lo);
  for (std::size_t i = table.count_up_to(lo); i < table.size(); ++i) {
    const std::uint64_t p = table.primes()[i];
    if (p > hi) break;
    if (p - 1 >= lo) check_lower(p - 1);
    check_upper(p);
  }
  return {low.finish("rosser_schoenfeld_lower", lo, hi), up.finish("rosser_schoenfeld_upper", lo, hi)};
}

/// e^gamma ln x prod_{p <= x} (1 - 1/p); tends to 1.
inline CertifiedReal mertens_product(const PrimeTable& table, std::uint64_t x, double tolerance = 1e-20) {
  if (x < 2) throw std::invalid_argument("Mertens product needs x >= 2");
  const std::size_t count = table.count_up_to(x);
  const Precision prec = theta_precision(count, x, tolerance);
  CertifiedReal product = CertifiedReal::from_int(1, prec);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t p = table.primes()[i];
    product = product * (p - 1) / p;
  }
  return euler_gamma(prec).exp_gamma * CertifiedReal::log_of(x, prec) * product;
}

inline BoundReport check_mertens(const PrimeTable& table, std::uint64_t x, const LabConfig& config = {},
                                 double tolerance = 1e-20) {
  const Precision prec = precision_for(tolerance);
  const CertifiedReal v = mertens_product(table, x, tolerance);
  const CertifiedReal env = CertifiedReal::from_double(config.mertens_envelope, prec);
  const CertifiedReal one = CertifiedReal::from_int(1, prec);
  detail::MarginTracker t;
  t.offer(min(env - (v - one), env - (one - v)));
  return t.finish("mertens_envelope", x, x);
}

struct DecaySample {
  double ln_x = 0;
  CertifiedReal log_value;  // ln ln x - c (ln x)^{3/5 - eps}
  CertifiedReal value;      // (ln x) exp(-c (ln x)^{3/5 - eps})
};

struct DecayProbe {
  std::vector<DecaySample> samples;
  /// First grid index from which the samples decrease strictly to the end.
  std::optional<std::size_t> onset;
  bool final_below_first = false;
};

/// Samples (ln x) e^{-c (ln x)^{3/5-eps}} on a grid given in ln x, evaluated in
/// the log domain so huge x (e.g. ln x = 10^6) are fine.
inline DecayProbe decay_limit_probe(double c, double eps, std::span<const double> ln_x_grid,
                                    Precision prec = kBasePrecision) {
  if (!(c > 0)) throw std::invalid_argument("c must be positive");
  if (!(eps > 0 && eps < 0.2)) throw std::invalid_argument("eps must lie in the open interval (0, 1/5)");
  DecayProbe probe;
  const auto cc = CertifiedReal::from_double(c, prec);
  const auto power = CertifiedReal::from_int(3, prec) / 5 - CertifiedReal::from_double(eps, prec);
  for (double lx : ln_x_grid) {
    if (!(lx > 1)) throw std::invalid_argument("grid must have ln x > 1");
    const auto L = CertifiedReal::from_double(lx, prec);
    auto lv = log(L) - cc * pow(L, power);
    auto v = exp(lv);
    probe.samples.push_back({lx, std::move(lv), std::move(v)});
  }
  const auto& s = probe.samples;
  if (!s.empty()) {
    std::size_t i = s.size() - 1;
    while (i > 0 && compare(s[i - 1].log_value, s[i].log_value) == Ordering::Greater) --i;
    probe.onset = i;
    probe.final_below_first = compare(s.back().log_value, s.front().log_value) == Ordering::Less;
  }
  return probe;
}

namespace detail {

// prod_{k<=m} (p_k - p_k^{-alpha_k}) / (p_k - 1); nullopt exponent = infinite.
inline CertifiedReal truncated_abundancy(const PrimeTable& table, std::size_t m,
                                         const std::function<std::optional<std::uint32_t>(std::size_t)>& exponent,
                                         Precision prec) {
  CertifiedReal acc = CertifiedReal::from_int(1, prec);
  const auto one = CertifiedReal::from_int(1, prec);
  for (std::size_t k = 0; k < m; ++k) {
    const std::uint64_t p = table.primes()[k];
    const auto a = exponent(k);
    if (!a) {
      acc = acc * p / (p - 1);
      continue;
    }
    // (p^{a+1} - 1) / (p^a (p - 1)) with machine integers when they fit.
    unsigned __int128 pa = 1;
    bool fits = true;
    for (std::uint32_t j = 0; j < *a && fits; ++j) {
      pa *= p;
      fits = pa * p < (unsigned __int128)1 << 63;
    }
    if (fits) {
      acc = acc * static_cast<std::uint64_t>(pa * p - 1) / static_cast<std::uint64_t>(pa) / (p - 1);
    } else {
      const auto tail = exp(-(CertifiedReal::log_of(p, prec) * (static_cast<std::uint64_t>(*a) + 1)));
      acc = acc * ((one - tail) * p) / (p - 1);
    }
  }
  return acc;
}

}  // namespace detail

/// e^gamma ln theta(p_m) - prod (p_k - p_k^{-alpha_k}) / (p_k - 1), m = |exponents|.
inline CertifiedReal lemma24_gap(const PrimeTable& table, std::span<const std::uint32_t> exponents,
                                 double tolerance = 1e-20) {
  const std::size_t m = exponents.size();
  if (m == 0 || m > table.size()) throw std::invalid_argument("need 1 <= m <= table size");
  for (auto a : exponents) {
    if (a == 0) throw std::invalid_argument("exponents must be >= 1");
  }
  const Precision prec = theta_precision(m, table.nth(m), tolerance);
  const auto product = detail::truncated_abundancy(
      table, m, [&](std::size_t k) { return std::optional<std::uint32_t>(exponents[k]); }, prec);
  return euler_gamma(prec).exp_gamma * log(theta(table, table.nth(m), tolerance)) - product;
}

/// The alpha -> infinity surrogate: prod p/(p-1) replaces the finite product.
inline CertifiedReal lemma24_gap_surrogate(const PrimeTable& table, std::size_t m, double tolerance = 1e-20) {
  if (m == 0 || m > table.size()) throw std::invalid_argument("need 1 <= m <= table size");
  const Precision prec = theta_precision(m, table.nth(m), tolerance);
  const auto product = detail::truncated_abundancy(
      table, m, [](std::size_t) { return std::optional<std::uint32_t>{}; }, prec);
  return euler_gamma(prec).exp_gamma * log(theta(table, table.nth(m), tolerance)) - product;
}

struct K0Row {
  std::uint64_t m = 0;
  std::optional<std::uint64_t> k0;  // least i with alpha_i <= i
  double ratio = 0;                 // k0 / m
  CertifiedReal epsilon;            // eps_m of the scheduled exponents
};

using ExponentSchedule = std::function<std::uint32_t(std::uint64_t i, std::uint64_t m)>;

inline std::vector<K0Row> k0_ratio_experiment(const ExponentSchedule& schedule, std::span<const std::uint64_t> m_grid,
                                              const EvalOptions& options = {}) {
  std::vector<K0Row> rows;
  for (std::uint64_t m : m_grid) {
    if (m == 0) throw std::invalid_argument("m must be positive");
    std::vector<std::uint32_t> exps(m);
    for (std::uint64_t i = 1; i <= m; ++i) {
      exps[i - 1] = schedule(i, m);
      if (exps[i - 1] == 0 || (i > 1 && exps[i - 1] > exps[i - 2])) {
        throw std::invalid_argument("schedule must produce nonincreasing exponents >= 1");
      }
    }
    K0Row row{m, std::nullopt, 0.0, CertifiedReal{}};
    for (std::uint64_t i = 1; i <= m; ++i) {
      if (exps[i - 1] <= i) {
        row.k0 = i;
        break;
      }
    }
    if (row.k0) row.ratio = static_cast<double>(*row.k0) / static_cast<double>(m);
    row.epsilon = epsilon_m(Factorization::on_first_primes(exps), options);
    rows.push_back(std::move(row));
  }
  return rows;
}

struct ScaledGapRow {
  std::uint64_t m = 0;
  CertifiedReal r1;
  CertifiedReal r2;
  CertifiedReal difference;  // R(1) - R(2)
};

struct ScaledGapExperiment {
  std::vector<ScaledGapRow> rows;
  std::optional<std::uint64_t> least_certified_m;  // least tested m with R(1) > R(2) certified
  bool any_indeterminate = false;
};

/// R(1) - R(2) on primorials p_1 ... p_m for each m in the grid.
inline ScaledGapExperiment scaled_gap_experiment(std::span<const std::uint64_t> m_grid,
                                                 const EvalOptions& options = {}) {
  ScaledGapExperiment out;
  for (std::uint64_t m : m_grid) {
    const Factorization primorial_m = Factorization::on_first_primes(std::vector<std::uint32_t>(m, 1));
    auto r1 = robin_scaled(primorial_m, 1.0, options);
    auto r2 = robin_scaled(primorial_m, 2.0, options);
    auto diff = r1 - r2;
    if (diff.sign() == Sign::Indeterminate) out.any_indeterminate = true;
    if (diff.sign() == Sign::Positive && (!out.least_certified_m || m < *out.least_certified_m)) {
      out.least_certified_m = m;
    }
    out.rows.push_back({m, std::move(r1), std::move(r2), std::move(diff)});
  }
  return out;
}

}  // namespace robin
