#pragma once

// Exhaustive Robin scan over an integer range: sigma from the linear sieve,
// certified sign of l(n) per n, escalation for anything unresolved.

#include "robin/certified_real.hpp"
#include "robin/factorization.hpp"
#include "robin/robin_functional.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace robin {

struct ScanResult {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<std::uint64_t> violators;      // D(n) < 0 certified
  std::vector<std::uint64_t> indeterminate;  // unresolved after escalation
  std::vector<std::uint64_t> record_holders; // sigma(n)/n exceeds every earlier n in [lo, n)
  double seconds = 0;
  unsigned threads = 1;
};

inline constexpr std::uint64_t kScanBlock = 1 << 15;

namespace detail {

struct ScanBlock {
  std::vector<std::uint64_t> violators;
  std::vector<std::uint64_t> unresolved;
};

inline ScanBlock scan_block(std::span<const std::uint64_t> sigma, std::uint64_t first, std::uint64_t last,
                            const EulerGamma& eg, Precision prec) {
  ScanBlock out;
  for (std::uint64_t n = first; n <= last; ++n) {
    const CertifiedReal lnln = log(CertifiedReal::log_of(n, prec));
    const CertifiedReal ratio = CertifiedReal::from_uint(sigma[n], prec) / n;
    const CertifiedReal l = eg.exp_gamma * lnln - ratio;
    switch (l.sign()) {
      case Sign::Negative: out.violators.push_back(n); break;
      case Sign::Positive: break;
      case Sign::Indeterminate: out.unresolved.push_back(n); break;
    }
  }
  return out;
}

}  // namespace detail

/// Robin violators in [lo, hi] with lo >= 3.  Output order is ascending n and
/// does not depend on the thread count.
inline ScanResult scan(std::uint64_t lo, std::uint64_t hi, unsigned threads = 1, const EvalOptions& options = {}) {
  if (lo < 3 || lo > hi) throw std::invalid_argument("scan needs 3 <= lo <= hi");
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::uint64_t> sigma = sigma_sieve(hi);
  threads = std::max(1u, threads);

  const Precision prec = kBasePrecision;
  const std::uint64_t blocks = (hi - lo) / kScanBlock + 1;
  std::vector<detail::ScanBlock> results(blocks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    const EulerGamma eg = euler_gamma(prec);
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      const std::uint64_t first = lo + b * kScanBlock;
      results[b] = detail::scan_block(sigma, first, std::min(hi, first + kScanBlock - 1), eg, prec);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  ScanResult out;
  out.lo = lo;
  out.hi = hi;
  out.threads = threads;
  for (auto& block : results) {
    out.violators.insert(out.violators.end(), block.violators.begin(), block.violators.end());
    for (std::uint64_t n : block.unresolved) {
      switch (d_sign(factorize(n), options)) {
        case Sign::Negative: out.violators.push_back(n); break;
        case Sign::Positive: break;
        case Sign::Indeterminate: out.indeterminate.push_back(n); break;
      }
    }
  }
  std::sort(out.violators.begin(), out.violators.end());

  std::uint64_t best_n = 0, best_sigma = 0;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if (best_n == 0 || static_cast<unsigned __int128>(sigma[n]) * best_n >
                           static_cast<unsigned __int128>(best_sigma) * n) {
      best_n = n;
      best_sigma = sigma[n];
      out.record_holders.push_back(n);
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace robin
