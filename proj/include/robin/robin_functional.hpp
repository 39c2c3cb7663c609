#pragma once

// The Robin gap and its relatives, all evaluated from a factorization:
//
//   l(n)  = e^gamma ln ln n - sigma(n)/n          (D(n) = n l(n))
//   k(n)  = sigma(n) / (e^gamma n ln ln n)
//   eps_m = ln n / ln(p_1 ... p_m) - 1            (canonical support only)
//   R(x)  = e^gamma ln ln prod p^{alpha x} - prod (p - p^{-alpha x}) / (p - 1)
//
// Every value is a CertifiedReal; signs are reported only when certified.

#include "robin/certified_real.hpp"
#include "robin/factorization.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace robin {

struct RobinReport {
  Factorization factorization;
  CertifiedReal log_n;
  CertifiedReal loglog_n;
  CertifiedReal sigma_over_n;
  CertifiedReal little_l;
  Sign d_sign = Sign::Indeterminate;
  std::optional<CertifiedReal> epsilon_m;  // only for canonical support
  Precision precision = kBasePrecision;
};

struct EpsilonTrace {
  std::vector<CertifiedReal> values;

  /// eps_{s+1} <= eps_s at enclosure resolution for every s.
  bool nonincreasing() const {
    for (std::size_t s = 1; s < values.size(); ++s) {
      if (compare(values[s], values[s - 1]) == Ordering::Greater) return false;
    }
    return true;
  }

  bool nonnegative() const {
    for (const auto& v : values) {
      if (mpfr_sgn(v.lo()) < 0) return false;
    }
    return true;
  }
};

namespace detail {

// ln ln n is real for n >= 2 (negative at n = 2); only n = 1 is excluded.
inline void require_robin_domain(const Factorization& f) {
  if (f.empty()) throw DomainError("ln ln n requires n >= 2");
}

/// sigma(n)/n as a rational when n is small enough to materialize.
inline std::optional<mpq_class> exact_abundancy(const Factorization& f) {
  if (f.log2_estimate() > kExactAbundancyBits) return std::nullopt;
  return abundancy(f);
}

inline CertifiedReal abundancy_at(const Factorization& f, const std::optional<mpq_class>& exact, Precision prec) {
  if (exact) return CertifiedReal::from_mpq(*exact, prec);
  return abundancy_product(f, prec + 32);
}

struct GapParts {
  CertifiedReal log_n;
  CertifiedReal loglog_n;
  CertifiedReal sigma_over_n;
  CertifiedReal little_l;
};

inline GapParts gap_parts(const Factorization& f, const std::optional<mpq_class>& exact, Precision prec) {
  const EulerGamma eg = euler_gamma(prec);
  CertifiedReal ln = log_n(f, prec).value;
  CertifiedReal lnln = log(ln);
  CertifiedReal s = abundancy_at(f, exact, prec);
  CertifiedReal l = eg.exp_gamma * lnln - s;
  return {std::move(ln), std::move(lnln), std::move(s), std::move(l)};
}

inline bool settled(const CertifiedReal& r, double tolerance) {
  return r.sign() != Sign::Indeterminate && r.width() <= tolerance;
}

inline void require_canonical_support(const Factorization& f) {
  if (f.empty()) throw DomainError("eps requires at least one prime");
  if (!f.has_canonical_support()) {
    throw DomainError("eps requires canonical support (the first m primes); canonicalize first");
  }
}

// eps_s for each prefix s, computed as (min_s - 1) + (A_s - min_s theta_s) / theta_s
// with A_s = sum alpha_k ln p_k.  A prefix of equal exponents has an exactly
// zero numerator, which keeps primorials at eps = 0 and constant exponents at
// eps = c - 1 exactly.
inline std::vector<CertifiedReal> epsilon_prefixes(const Factorization& f, Precision prec, bool all_prefixes) {
  const Precision acc_prec = prec + 64;
  CertifiedReal theta(acc_prec), weighted(acc_prec);
  std::vector<CertifiedReal> out;
  std::uint32_t prefix_min = f.entries()[0].exponent;
  bool prefix_constant = true;
  const std::size_t m = f.size();
  for (std::size_t s = 0; s < m; ++s) {
    const auto& e = f.entries()[s];
    const CertifiedReal lp = CertifiedReal::log_of(e.prime, prec + 8);
    theta += lp;
    weighted += lp * e.exponent;
    if (e.exponent != prefix_min) prefix_constant = false;
    prefix_min = std::min(prefix_min, e.exponent);
    if (!all_prefixes && s + 1 != m) continue;
    CertifiedReal base = CertifiedReal::from_int(static_cast<long>(prefix_min) - 1, prec);
    if (prefix_constant) {
      out.push_back(std::move(base));
    } else {
      CertifiedReal excess = weighted - theta * prefix_min;
      mpfr_max(excess.lo(), excess.lo(), CertifiedReal(prec).lo(), MPFR_RNDD);  // excess >= 0
      out.push_back(base + excess / theta);
    }
  }
  return out;
}

}  // namespace detail

/// Enclosure of e^gamma ln ln n - sigma(n)/n.  Escalates precision until the
/// sign is certified and the width is within tolerance, or the budget runs out.
inline CertifiedReal little_l(const Factorization& f, const EvalOptions& options = {}) {
  detail::require_robin_domain(f);
  const auto exact = detail::exact_abundancy(f);
  return evaluate_with_escalation([&](Precision p) { return detail::gap_parts(f, exact, p).little_l; },
                                  [&](const CertifiedReal& l) { return detail::settled(l, options.tolerance); },
                                  options);
}

/// Certified sign of D(n); Indeterminate means "not separated after escalation".
inline Sign d_sign(const Factorization& f, const EvalOptions& options = {}) { return little_l(f, options).sign(); }

inline CertifiedReal wojtowicz_k(const Factorization& f, const EvalOptions& options = {}) {
  detail::require_robin_domain(f);
  const auto exact = detail::exact_abundancy(f);
  auto eval = [&](Precision p) {
    const EulerGamma eg = euler_gamma(p);
    const CertifiedReal lnln = log(log_n(f, p).value);
    return detail::abundancy_at(f, exact, p) / (eg.exp_gamma * lnln);
  };
  auto accept = [&](const CertifiedReal& k) {
    const CertifiedReal one_minus = CertifiedReal::from_int(1, k.precision()) - k;
    return detail::settled(one_minus, options.tolerance);
  };
  return evaluate_with_escalation(eval, accept, options);
}

inline CertifiedReal epsilon_m(const Factorization& f, const EvalOptions& options = {}) {
  detail::require_canonical_support(f);
  return detail::epsilon_prefixes(f, precision_for(options.tolerance), false).back();
}

inline EpsilonTrace epsilon_trace(const Factorization& f, const EvalOptions& options = {}) {
  detail::require_canonical_support(f);
  return {detail::epsilon_prefixes(f, precision_for(options.tolerance), true)};
}

/// eps_m of the factorization with every exponent raised by t (t >= 1).
inline CertifiedReal epsilon_shift(const Factorization& f, std::uint32_t t, const EvalOptions& options = {}) {
  if (t == 0) throw std::invalid_argument("shift t must be a positive integer");
  detail::require_canonical_support(f);
  std::vector<std::uint32_t> shifted = f.exponents();
  for (auto& e : shifted) e += t;
  return epsilon_m(Factorization::on_first_primes(shifted), options);
}

inline RobinReport robin_report(const Factorization& f, const EvalOptions& options = {}) {
  detail::require_robin_domain(f);
  const auto exact = detail::exact_abundancy(f);
  Precision final_prec = 0;
  auto parts = evaluate_with_escalation(
      [&](Precision p) {
        final_prec = p;
        return detail::gap_parts(f, exact, p);
      },
      [&](const detail::GapParts& g) { return detail::settled(g.little_l, options.tolerance); }, options);
  RobinReport report{f,
                     std::move(parts.log_n),
                     std::move(parts.loglog_n),
                     std::move(parts.sigma_over_n),
                     std::move(parts.little_l),
                     Sign::Indeterminate,
                     std::nullopt,
                     final_prec};
  report.d_sign = report.little_l.sign();
  if (f.has_canonical_support()) report.epsilon_m = epsilon_m(f, options);
  return report;
}

/// R(x) for x in [1, 2] on canonical support.
inline CertifiedReal robin_scaled(const Factorization& f, double x, const EvalOptions& options = {}) {
  if (!(x >= 1.0 && x <= 2.0)) throw std::invalid_argument("R(x) is defined for x in [1, 2]");
  detail::require_canonical_support(f);
  detail::require_robin_domain(f);
  auto eval = [&](Precision prec) {
    const Precision wp = prec + 32;
    const EulerGamma eg = euler_gamma(wp);
    const CertifiedReal xs = CertifiedReal::from_double(x, wp);
    const CertifiedReal one = CertifiedReal::from_int(1, wp);
    CertifiedReal product = one;
    for (const auto& e : f.entries()) {
      const CertifiedReal lp = CertifiedReal::log_of(e.prime, wp);
      const CertifiedReal tail = exp(-(lp * e.exponent * xs));
      product = product * (CertifiedReal::from_uint(e.prime, wp) - tail) / (e.prime - 1);
    }
    return eg.exp_gamma * log(xs * log_n(f, wp).value) - product;
  };
  return evaluate_with_escalation(eval, [&](const CertifiedReal& r) { return detail::settled(r, options.tolerance); },
                                  options);
}

/// Replaces q_index by `replacement` and reports how f = l(.) moves:
/// Greater means f(with replacement) > f(original), certified.
inline Ordering f_prime_monotonicity(std::span<const std::uint64_t> primes, std::span<const std::uint32_t> exponents,
                                     std::size_t index, std::uint64_t replacement,
                                     const EvalOptions& options = {}) {
  if (primes.size() != exponents.size()) throw std::invalid_argument("primes and exponents differ in length");
  if (index >= primes.size()) throw std::invalid_argument("replacement index out of range");
  if (replacement == primes[index]) return Ordering::Equal;
  if (replacement < primes[index] || (index + 1 < primes.size() && replacement >= primes[index + 1])) {
    throw std::invalid_argument("replacement must keep the primes strictly ascending and increase q_k");
  }
  std::vector<PrimePower> before, after;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    before.push_back({primes[i], exponents[i]});
    after.push_back({i == index ? replacement : primes[i], exponents[i]});
  }
  const Factorization original(std::move(before)), moved(std::move(after));
  detail::require_robin_domain(original);
  const auto exact_a = detail::exact_abundancy(original), exact_b = detail::exact_abundancy(moved);
  auto eval = [&](Precision p) {
    return std::pair{detail::gap_parts(moved, exact_b, p).little_l, detail::gap_parts(original, exact_a, p).little_l};
  };
  const auto result = evaluate_with_escalation(
      eval, [](const auto& r) { return compare(r.first, r.second) != Ordering::Indeterminate; }, options);
  return compare(result.first, result.second);
}

}  // namespace robin
