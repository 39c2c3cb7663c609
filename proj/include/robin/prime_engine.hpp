#pragma once

// Prime generation (segmented sieve of Eratosthenes), deterministic
// primality for 64-bit values, and the counting / Chebyshev functions built
// on top of a PrimeTable.

#include "robin/certified_real.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace robin {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for all
/// 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// All primes up to `limit`, ascending.  Immutable after construction.
class PrimeTable {
 public:
  // Odd-only segments of 2^18 bytes cover 2^19 integers each.
  static constexpr std::uint64_t kSegmentBytes = std::uint64_t{1} << 18;

  static PrimeTable sieve(std::uint64_t limit, unsigned threads = 1) {
    if (limit < 2) throw std::invalid_argument("sieve limit must be at least 2");
    PrimeTable table;
    table.limit_ = limit;
    table.primes_ = segmented_sieve(limit, std::max(1u, threads));
    return table;
  }

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint64_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }

  /// p_k, 1-based.
  std::uint64_t nth(std::size_t k) const {
    if (k == 0 || k > primes_.size()) throw std::out_of_range("prime index outside table");
    return primes_[k - 1];
  }

  /// pi(x) for x <= limit.
  std::size_t count_up_to(std::uint64_t x) const {
    if (x > limit_) throw std::out_of_range("count beyond sieve limit");
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
  }

  bool contains(std::uint64_t n) const {
    if (n > limit_) throw std::out_of_range("query beyond sieve limit");
    return std::binary_search(primes_.begin(), primes_.end(), n);
  }

 private:
  static std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
    std::vector<char> composite(limit + 1, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return out;
  }

  // Marks odd composites in [low, high) where low is odd; returns the primes.
  static std::vector<std::uint64_t> sieve_segment(std::uint64_t low, std::uint64_t high,
                                                  std::span<const std::uint64_t> base) {
    const std::uint64_t count = (high - low + 1) / 2;
    std::vector<unsigned char> composite(count, 0);
    for (std::uint64_t p : base) {
      if (p == 2) continue;
      if (p * p >= high) break;
      std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
      if ((start & 1) == 0) start += p;
      for (std::uint64_t j = start; j < high; j += 2 * p) composite[(j - low) / 2] = 1;
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < count; ++i) {
      if (!composite[i]) out.push_back(low + 2 * i);
    }
    return out;
  }

  static std::vector<std::uint64_t> segmented_sieve(std::uint64_t limit, unsigned threads) {
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
    while (root * root > limit) --root;
    while ((root + 1) * (root + 1) <= limit) ++root;
    const std::vector<std::uint64_t> base = small_primes(root);

    std::vector<std::uint64_t> primes{2};
    const std::uint64_t span = 2 * kSegmentBytes;
    const std::uint64_t first = 3;
    const std::uint64_t end = limit + 1;
    const std::uint64_t segments = end > first ? (end - first + span - 1) / span : 0;

    std::vector<std::vector<std::uint64_t>> found(segments);
    auto work = [&](unsigned worker) {
      for (std::uint64_t s = worker; s < segments; s += threads) {
        const std::uint64_t low = first + s * span;
        found[s] = sieve_segment(low, std::min(low + span, end), base);
      }
    };
    if (threads == 1 || segments < 2) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    for (auto& seg : found) primes.insert(primes.end(), seg.begin(), seg.end());
    return primes;
  }

  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
};

inline PrimeTable sieve(std::uint64_t limit, unsigned threads = 1) { return PrimeTable::sieve(limit, threads); }

/// Upper bound for p_k (Rosser: p_k < k(ln k + ln ln k) for k >= 6).
inline std::uint64_t nth_prime_upper_bound(std::uint64_t k) {
  if (k < 6) return 13;
  const double kd = static_cast<double>(k);
  return static_cast<std::uint64_t>(kd * (std::log(kd) + std::log(std::log(kd)))) + 16;
}

inline std::uint64_t nth_prime(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("prime index is 1-based");
  return sieve(nth_prime_upper_bound(k)).nth(k);
}

inline std::uint64_t prime_count(std::uint64_t x) {
  if (x < 2) return 0;
  return sieve(x).size();
}

/// Interval accumulator for sums of ln p.  Each term is a correctly rounded
/// log widened by one ulp; the running sum carries guard bits so rounding in
/// the additions stays far below the per-term budget.
class LogSumAccumulator {
 public:
  static constexpr Precision kGuardBits = 64;

  explicit LogSumAccumulator(Precision term_precision)
      : term_precision_(term_precision), sum_(term_precision + kGuardBits) {}

  void add_log(std::uint64_t p) { sum_ += CertifiedReal::log_of(p, term_precision_); }

  void add_log(std::uint64_t p, std::uint64_t multiplicity) {
    sum_ += CertifiedReal::log_of(p, term_precision_) * multiplicity;
  }

  const CertifiedReal& value() const { return sum_; }

 private:
  Precision term_precision_;
  CertifiedReal sum_;
};

/// Precision that keeps the accumulated width of `terms` logs bounded by
/// ln(max_term)-scaled ulps below `tolerance`.
inline Precision theta_precision(std::size_t terms, std::uint64_t max_term, double tolerance) {
  const double scale = 4.0 * static_cast<double>(std::max<std::size_t>(terms, 1)) *
                       std::max(1.0, std::log(static_cast<double>(std::max<std::uint64_t>(max_term, 2))));
  return std::max(precision_for(tolerance), static_cast<Precision>(std::ceil(std::log2(scale / tolerance))) + 8);
}

/// theta(x) = sum_{p <= x} ln p using a table that reaches x.
inline CertifiedReal theta(const PrimeTable& table, std::uint64_t x, double tolerance = 1e-30) {
  if (x < 2) throw std::invalid_argument("theta requires x >= 2");
  const std::size_t count = table.count_up_to(x);
  LogSumAccumulator acc(theta_precision(count, x, tolerance));
  for (std::size_t i = 0; i < count; ++i) acc.add_log(table.primes()[i]);
  return acc.value();
}

inline CertifiedReal theta(std::uint64_t x, double tolerance = 1e-30) {
  if (x < 2) throw std::invalid_argument("theta requires x >= 2");
  return theta(sieve(x), x, tolerance);
}

}  // namespace robin
