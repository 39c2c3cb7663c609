#pragma once

// Exact factorization arithmetic.  n, sigma(n), sigma(n)/n and log n are all
// derived from the (prime, exponent) list, so n itself never has to fit in a
// machine word.

#include "robin/certified_real.hpp"
#include "robin/prime_engine.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace robin {

using BigN = mpz_class;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrimePower {
  std::uint64_t prime = 0;
  std::uint32_t exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n = prod q_k^{alpha_k} with strictly ascending primes and alpha_k >= 1.
/// The empty factorization is n = 1.
class Factorization {
 public:
  Factorization() = default;

  explicit Factorization(std::vector<PrimePower> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& e = entries_[i];
      if (e.exponent == 0) throw std::invalid_argument("exponent 0 for prime " + std::to_string(e.prime));
      if (i > 0 && entries_[i - 1].prime >= e.prime) {
        throw std::invalid_argument("primes must be strictly ascending");
      }
      if (!is_prime(e.prime)) throw std::invalid_argument("non-prime base " + std::to_string(e.prime));
    }
  }

  /// Builds p_1^{e_1} ... p_m^{e_m} on the first m primes.
  static Factorization on_first_primes(std::span<const std::uint32_t> exponents) {
    for (std::uint32_t e : exponents) {
      if (e == 0) throw std::invalid_argument("exponent 0 on canonical support");
    }
    std::vector<PrimePower> entries;
    entries.reserve(exponents.size());
    if (!exponents.empty()) {
      const PrimeTable table = sieve(nth_prime_upper_bound(exponents.size()));
      for (std::size_t k = 0; k < exponents.size(); ++k) entries.push_back({table.nth(k + 1), exponents[k]});
    }
    Factorization f;
    f.entries_ = std::move(entries);
    return f;
  }

  std::span<const PrimePower> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::vector<std::uint32_t> exponents() const {
    std::vector<std::uint32_t> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.exponent);
    return out;
  }

  std::vector<std::uint64_t> primes() const {
    std::vector<std::uint64_t> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.prime);
    return out;
  }

  /// True when the primes are exactly p_1, ..., p_m.
  bool has_canonical_support() const {
    if (entries_.empty()) return true;
    if (entries_.back().prime > nth_prime_upper_bound(entries_.size())) return false;
    const PrimeTable table = sieve(std::max<std::uint64_t>(entries_.back().prime, 2));
    if (table.size() != entries_.size()) return false;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      if (table.nth(k + 1) != entries_[k].prime) return false;
    }
    return true;
  }

  bool has_nonincreasing_exponents() const {
    for (std::size_t k = 1; k < entries_.size(); ++k) {
      if (entries_[k].exponent > entries_[k - 1].exponent) return false;
    }
    return true;
  }

  /// "2^3*3^2*5"; the empty string for n = 1.
  std::string to_string() const {
    std::string out;
    for (const auto& e : entries_) {
      if (!out.empty()) out += '*';
      out += std::to_string(e.prime);
      if (e.exponent != 1) out += '^' + std::to_string(e.exponent);
    }
    return out;
  }

  /// Upper estimate of log2(n).
  double log2_estimate() const {
    double bits = 0;
    for (const auto& e : entries_) bits += e.exponent * std::log2(static_cast<double>(e.prime));
    return bits;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> entries_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <class T>
T parse_decimal(std::string_view digits, std::string_view what) {
  digits = trim(digits);
  T value{};
  const auto* end = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), end, value);
  if (digits.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError("malformed " + std::string(what) + " '" + std::string(digits) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses `term ("*" term)*` with term = `prime ("^" exponent)?`.
inline Factorization parse_factorization(std::string_view text) {
  text = detail::trim(text);
  std::vector<PrimePower> entries;
  if (text.empty()) return Factorization{};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t star = text.find('*', pos);
    const std::string_view term = text.substr(pos, star == std::string_view::npos ? text.npos : star - pos);
    const std::size_t caret = term.find('^');
    const auto prime = detail::parse_decimal<std::uint64_t>(term.substr(0, caret), "prime");
    std::uint32_t exponent = 1;
    if (caret != std::string_view::npos) {
      exponent = detail::parse_decimal<std::uint32_t>(term.substr(caret + 1), "exponent");
    }
    if (!is_prime(prime)) throw ParseError("non-prime base " + std::to_string(prime));
    if (exponent == 0) throw ParseError("exponent 0 on prime " + std::to_string(prime));
    for (const auto& e : entries) {
      if (e.prime == prime) throw ParseError("duplicate prime " + std::to_string(prime));
    }
    entries.push_back({prime, exponent});
    if (star == std::string_view::npos) break;
    pos = star + 1;
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.prime < b.prime; });
  return Factorization(std::move(entries));
}

inline constexpr std::uint64_t kDefaultFactorBudget = 1'000'000'000'000ULL;

/// Trial division; refuses n above `budget`.
inline Factorization factorize(const BigN& n, std::uint64_t budget = kDefaultFactorBudget) {
  if (n < 1) throw std::invalid_argument("factorize requires n >= 1");
  if (n > BigN(std::to_string(budget))) {
    throw BudgetExceeded("too large to factor by trial division (budget " + std::to_string(budget) +
                         "); supply the factorization directly");
  }
  std::uint64_t m = mpz_get_ui(n.get_mpz_t());
  std::vector<PrimePower> entries;
  auto take = [&](std::uint64_t p) {
    std::uint32_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) entries.push_back({p, e});
  };
  take(2);
  for (std::uint64_t p = 3; p * p <= m; p += 2) take(p);
  if (m > 1) entries.push_back({m, 1});
  return Factorization(std::move(entries));
}

inline constexpr double kMaxMaterializedBits = 1u << 26;

/// Exact prod q^alpha.
inline BigN value(const Factorization& f) {
  if (f.log2_estimate() > kMaxMaterializedBits) throw BudgetExceeded("n too large to materialize");
  BigN n = 1;
  BigN t;
  for (const auto& e : f.entries()) {
    mpz_ui_pow_ui(t.get_mpz_t(), e.prime, e.exponent);
    n *= t;
  }
  return n;
}

/// sigma(p^a) = (p^{a+1} - 1) / (p - 1), exactly.
inline BigN sigma_prime_power(std::uint64_t p, std::uint32_t a) {
  BigN t;
  mpz_ui_pow_ui(t.get_mpz_t(), p, static_cast<unsigned long>(a) + 1);
  t -= 1;
  mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p - 1);
  return t;
}

inline BigN sigma(const Factorization& f) {
  if (f.log2_estimate() > kMaxMaterializedBits) throw BudgetExceeded("sigma(n) too large to materialize");
  BigN s = 1;
  for (const auto& e : f.entries()) s *= sigma_prime_power(e.prime, e.exponent);
  return s;
}

/// Exact abundancy sigma(n)/n.
inline mpq_class abundancy(const Factorization& f) {
  mpq_class q(sigma(f), value(f));
  q.canonicalize();
  return q;
}

/// Factorizations whose n has at most this many bits use the exact rational
/// path; larger ones use the interval product.
inline constexpr double kExactAbundancyBits = 1u << 16;

namespace detail {

// prod (1 - q^{-(a+1)}) / (1 - 1/q) at the given precision.
inline CertifiedReal abundancy_product(const Factorization& f, Precision prec) {
  CertifiedReal acc = CertifiedReal::from_int(1, prec);
  for (const auto& e : f.entries()) {
    const CertifiedReal q = CertifiedReal::from_uint(e.prime, prec);
    const CertifiedReal tail = exp(-(CertifiedReal::log_of(e.prime, prec) *
                                     (static_cast<std::uint64_t>(e.exponent) + 1)));
    const CertifiedReal one = CertifiedReal::from_int(1, prec);
    acc = acc * ((one - tail) * q) / (e.prime - 1);
  }
  return acc;
}

}  // namespace detail

/// Enclosure of sigma(n)/n with width <= tolerance (after escalation).
inline CertifiedReal sigma_over_n(const Factorization& f, double tolerance = 1e-30, int max_escalations = 4) {
  if (f.log2_estimate() <= kExactAbundancyBits) {
    const mpq_class q = abundancy(f);
    return evaluate_with_escalation([&](Precision p) { return CertifiedReal::from_mpq(q, p); },
                                    [&](const CertifiedReal& r) { return r.width() <= tolerance; },
                                    EvalOptions{tolerance, max_escalations});
  }
  return evaluate_with_escalation(
      [&](Precision p) { return detail::abundancy_product(f, p + 32); },
      [&](const CertifiedReal& r) { return r.width() <= tolerance; }, EvalOptions{tolerance, max_escalations});
}

struct LogN {
  CertifiedReal value;
  bool degenerate = false;  // n = 1
};

/// Enclosure of ln n = sum alpha_k ln q_k.
inline LogN log_n(const Factorization& f, Precision prec = kBasePrecision) {
  if (f.empty()) return {CertifiedReal(prec), true};
  LogSumAccumulator acc(prec + 8);
  for (const auto& e : f.entries()) acc.add_log(e.prime, e.exponent);
  return {acc.value(), false};
}

inline constexpr std::uint64_t kSigmaSieveMemoryBudget = std::uint64_t{4} << 30;

/// table[n] = sigma(n) for 1 <= n <= limit (table[0] = 0), by a linear sieve
/// over smallest prime factors.
inline std::vector<std::uint64_t> sigma_sieve(std::uint64_t limit,
                                              std::uint64_t memory_budget = kSigmaSieveMemoryBudget) {
  if (limit >= std::numeric_limits<std::uint32_t>::max() || (limit + 1) * 12 > memory_budget) {
    throw BudgetExceeded("sigma_sieve limit " + std::to_string(limit) + " exceeds the memory budget");
  }
  std::vector<std::uint64_t> sig(limit + 1, 0);
  if (limit == 0) return sig;
  // ppow[n] = largest power of spf(n) dividing n.
  std::vector<std::uint32_t> ppow(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  sig[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (ppow[i] == 0) {
      primes.push_back(static_cast<std::uint32_t>(i));
      ppow[i] = static_cast<std::uint32_t>(i);
      sig[i] = i + 1;
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t composite = p * i;
      if (composite > limit) break;
      if (i % p == 0) {
        ppow[composite] = ppow[i] * p;
        sig[composite] = sig[i / ppow[i]] * (sig[ppow[i]] * p + 1);
        break;
      }
      ppow[composite] = p;
      sig[composite] = sig[i] * (p + 1);
    }
  }
  return sig;
}

}  // namespace robin
