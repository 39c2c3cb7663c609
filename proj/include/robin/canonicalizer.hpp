#pragma once

// Reduction of an arbitrary factorization to its canonical form (first m
// primes, exponents sorted nonincreasing), together with the rearrangement
// inequalities that make the reduction monotone for l(n).

#include "robin/certified_real.hpp"
#include "robin/factorization.hpp"
#include "robin/robin_functional.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace robin {

/// Exponents beta_1 >= ... >= beta_m >= 1 on the implied primes p_1..p_m.
struct CanonicalForm {
  std::vector<std::uint32_t> exponents;

  std::size_t m() const { return exponents.size(); }
  Factorization to_factorization() const { return Factorization::on_first_primes(exponents); }

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

inline CanonicalForm canonicalize(const Factorization& f) {
  if (f.empty()) throw std::invalid_argument("canonicalize requires a nonempty factorization");
  CanonicalForm form{f.exponents()};
  std::sort(form.exponents.begin(), form.exponents.end(), std::greater<>());
  return form;
}

inline bool is_canonical(const Factorization& f) {
  return f.has_nonincreasing_exponents() && f.has_canonical_support();
}

namespace detail {

inline bool is_small_integer(double x, double bound) { return x == std::floor(x) && x <= bound; }

inline mpq_class one_minus_inverse_power(std::uint64_t base, std::uint64_t exponent) {
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), base, exponent);
  mpq_class q(d - 1, d);
  q.canonicalize();
  return q;
}

inline CertifiedReal one_minus_inverse_power(const CertifiedReal& base, const CertifiedReal& exponent) {
  const CertifiedReal one = CertifiedReal::from_int(1, base.precision());
  return one - exp(-(exponent * log(base)));
}

}  // namespace detail

/// Checks (1 - a^-alpha)(1 - b^-beta) <= (1 - a^-beta)(1 - b^-alpha) after
/// sorting the inputs into 1 <= a <= b, 1 <= alpha <= beta.
inline bool pair_inequality_holds(double a, double b, double alpha, double beta, const EvalOptions& options = {}) {
  if (!(a >= 1 && b >= 1 && alpha >= 1 && beta >= 1) || !std::isfinite(a + b + alpha + beta)) {
    throw std::invalid_argument("pair inequality parameters must be finite and >= 1");
  }
  if (a > b) std::swap(a, b);
  if (alpha > beta) std::swap(alpha, beta);
  // Both sides are the same product when either pair coincides.
  if (a == b || alpha == beta) return true;

  if (detail::is_small_integer(a, 1e6) && detail::is_small_integer(b, 1e6) &&
      detail::is_small_integer(alpha, 64) && detail::is_small_integer(beta, 64)) {
    using detail::one_minus_inverse_power;
    const auto ua = static_cast<std::uint64_t>(a), ub = static_cast<std::uint64_t>(b);
    const auto ualpha = static_cast<std::uint64_t>(alpha), ubeta = static_cast<std::uint64_t>(beta);
    const mpq_class lhs = one_minus_inverse_power(ua, ualpha) * one_minus_inverse_power(ub, ubeta);
    const mpq_class rhs = one_minus_inverse_power(ua, ubeta) * one_minus_inverse_power(ub, ualpha);
    return lhs <= rhs;
  }

  const auto sides = [&](Precision prec) {
    const auto A = CertifiedReal::from_double(a, prec), B = CertifiedReal::from_double(b, prec);
    const auto x = CertifiedReal::from_double(alpha, prec), y = CertifiedReal::from_double(beta, prec);
    using detail::one_minus_inverse_power;
    return std::pair{one_minus_inverse_power(A, x) * one_minus_inverse_power(B, y),
                     one_minus_inverse_power(A, y) * one_minus_inverse_power(B, x)};
  };
  const auto result = evaluate_with_escalation(
      sides, [](const auto& s) { return compare(s.first, s.second) != Ordering::Indeterminate; }, options);
  const Ordering o = compare(result.first, result.second);
  return o == Ordering::Less || o == Ordering::Equal;
}

namespace detail {

inline void check_same_length(std::span<const std::uint64_t> primes, std::span<const std::uint32_t> exponents) {
  if (primes.size() != exponents.size()) throw std::invalid_argument("primes and exponents differ in length");
}

inline bool rational_path_applies(std::span<const std::uint64_t> primes, std::span<const std::uint32_t> exponents) {
  return std::all_of(primes.begin(), primes.end(), [](auto q) { return q <= 1'000'000; }) &&
         std::all_of(exponents.begin(), exponents.end(), [](auto e) { return e <= 64; });
}

}  // namespace detail

/// Exact prod (q_i - q_i^{-alpha_i}).  Primes may repeat but must not decrease.
inline mpq_class rearrangement_product_exact(std::span<const std::uint64_t> primes,
                                             std::span<const std::uint32_t> exponents) {
  detail::check_same_length(primes, exponents);
  mpz_class num = 1, den = 1, t;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (i > 0 && primes[i] < primes[i - 1]) throw std::invalid_argument("primes must be ascending");
    mpz_ui_pow_ui(t.get_mpz_t(), primes[i], exponents[i]);
    den *= t;
    num *= t * primes[i] - 1;
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

/// Enclosure of prod (q_i - q_i^{-alpha_i}); exact rational when primes <= 10^6
/// and exponents <= 64.
inline CertifiedReal rearrangement_product(std::span<const std::uint64_t> primes,
                                           std::span<const std::uint32_t> exponents, double tolerance = 1e-30) {
  detail::check_same_length(primes, exponents);
  const Precision prec = precision_for(tolerance);
  if (detail::rational_path_applies(primes, exponents)) {
    return CertifiedReal::from_mpq(rearrangement_product_exact(primes, exponents), prec);
  }
  CertifiedReal acc = CertifiedReal::from_int(1, prec + 32);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (i > 0 && primes[i] < primes[i - 1]) throw std::invalid_argument("primes must be ascending");
    const CertifiedReal q = CertifiedReal::from_uint(primes[i], prec + 32);
    acc = acc * (q - exp(-(CertifiedReal::log_of(primes[i], prec + 32) * exponents[i])));
  }
  return acc;
}

/// Compares prod q^alpha against prod q^beta with beta = alpha sorted
/// nonincreasing.  Every valid input yields greater or equal.
inline std::strong_ordering power_product_compare(std::span<const std::uint64_t> primes,
                                                  std::span<const std::uint32_t> exponents) {
  detail::check_same_length(primes, exponents);
  for (std::size_t i = 1; i < primes.size(); ++i) {
    if (primes[i] < primes[i - 1]) throw std::invalid_argument("primes must be ascending");
  }
  std::vector<std::uint32_t> sorted(exponents.begin(), exponents.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (std::equal(sorted.begin(), sorted.end(), exponents.begin())) return std::strong_ordering::equal;

  double bits = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) bits += exponents[i] * std::log2(static_cast<double>(primes[i]));
  if (bits <= kMaxMaterializedBits) {
    mpz_class lhs = 1, rhs = 1, t;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      mpz_ui_pow_ui(t.get_mpz_t(), primes[i], exponents[i]);
      lhs *= t;
      mpz_ui_pow_ui(t.get_mpz_t(), primes[i], sorted[i]);
      rhs *= t;
    }
    const int c = cmp(lhs, rhs);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  // Too large to materialize: compare sum_q (alpha-sum - beta-sum) ln q over
  // distinct primes.  Logs of distinct primes are Q-linearly independent, so a
  // nonzero coefficient vector separates under enough precision.
  std::vector<std::pair<std::uint64_t, std::int64_t>> coeffs;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::int64_t d = std::int64_t{exponents[i]} - std::int64_t{sorted[i]};
    if (!coeffs.empty() && coeffs.back().first == primes[i]) {
      coeffs.back().second += d;
    } else {
      coeffs.emplace_back(primes[i], d);
    }
  }
  std::erase_if(coeffs, [](const auto& c) { return c.second == 0; });
  if (coeffs.empty()) return std::strong_ordering::equal;
  for (Precision prec = kBasePrecision;; prec *= 2) {
    CertifiedReal diff(prec);
    for (const auto& [q, c] : coeffs) {
      const auto term = CertifiedReal::log_of(q, prec) * static_cast<std::uint64_t>(c < 0 ? -c : c);
      diff = c < 0 ? diff - term : diff + term;
    }
    if (diff.sign() == Sign::Positive) return std::strong_ordering::greater;
    if (diff.sign() == Sign::Negative) return std::strong_ordering::less;
  }
}

struct Theorem1Gap {
  CertifiedReal l_original;
  CertifiedReal l_canonical;
  /// Greater or Equal when l(original) >= l(canonical) is certified.
  Ordering ordering = Ordering::Indeterminate;

  bool dominance_certified() const { return ordering == Ordering::Greater || ordering == Ordering::Equal; }
};

/// l(n') against l(n) for n' = f and n its canonical form.  Overlapping
/// enclosures are retried twice with the tolerance shrunk by 10^-10.
inline Theorem1Gap theorem1_gap_pair(const Factorization& f, double tolerance = 1e-30) {
  const Factorization canonical = canonicalize(f).to_factorization();
  detail::require_robin_domain(f);
  detail::require_robin_domain(canonical);
  if (canonical == f) {
    auto l = little_l(f, EvalOptions{tolerance, 4});
    return {l, l, Ordering::Equal};
  }
  const auto exact_f = detail::exact_abundancy(f), exact_c = detail::exact_abundancy(canonical);
  Theorem1Gap gap{CertifiedReal{}, CertifiedReal{}, Ordering::Indeterminate};
  double tol = tolerance;
  for (int attempt = 0; attempt < 3; ++attempt, tol *= 1e-10) {
    const Precision prec = precision_for(tol);
    gap.l_original = detail::gap_parts(f, exact_f, prec).little_l;
    gap.l_canonical = detail::gap_parts(canonical, exact_c, prec).little_l;
    gap.ordering = compare(gap.l_original, gap.l_canonical);
    if (gap.ordering != Ordering::Indeterminate) break;
  }
  return gap;
}

}  // namespace robin
