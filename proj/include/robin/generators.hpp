#pragma once

// Candidate families: primorials, descending-exponent numbers, the factorial
// tower, and colossally abundant (CA) numbers, plus a brute-force
// superabundant scan used to validate the CA generator.

#include "robin/certified_real.hpp"
#include "robin/factorization.hpp"
#include "robin/prime_engine.hpp"
#include "robin/robin_functional.hpp"

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace robin {

inline Factorization primorial(std::size_t m) {
  if (m == 0) throw std::invalid_argument("primorial needs m >= 1");
  return Factorization::on_first_primes(std::vector<std::uint32_t>(m, 1));
}

inline Factorization descending_number(std::span<const std::uint32_t> beta) {
  if (beta.empty()) throw std::invalid_argument("descending_number needs at least one exponent");
  for (std::size_t k = 0; k < beta.size(); ++k) {
    if (beta[k] == 0) throw std::invalid_argument("exponents must be >= 1");
    if (k > 0 && beta[k] > beta[k - 1]) throw std::invalid_argument("exponents must be nonincreasing");
  }
  return Factorization::on_first_primes(beta);
}

/// Largest m whose tower exponent m! fits the 32-bit exponent bound.
inline constexpr std::size_t kMaxMaterializedTower = 12;

/// p_1^{m!} p_2^{(m-1)!} ... p_m^{1!}
inline Factorization factorial_tower(std::size_t m) {
  if (m == 0) throw std::invalid_argument("factorial tower needs m >= 1");
  if (m > kMaxMaterializedTower) {
    throw BudgetExceeded("factorial exponent " + std::to_string(m) +
                         "! exceeds the 32-bit exponent bound; use factorial_tower_log");
  }
  std::vector<std::uint32_t> exps(m);
  std::uint32_t fact = 1;
  for (std::size_t j = 1; j <= m; ++j) {
    fact *= static_cast<std::uint32_t>(j);
    exps[m - j] = fact;
  }
  return Factorization::on_first_primes(exps);
}

/// Log-domain view of the factorial tower for any m; n is never built.
struct TowerLog {
  std::size_t m = 0;
  CertifiedReal log_n;
  EpsilonTrace trace;
};

inline TowerLog factorial_tower_log(std::size_t m, double tolerance = 1e-30) {
  if (m == 0) throw std::invalid_argument("factorial tower needs m >= 1");
  const Precision prec = precision_for(tolerance) + 64;
  const PrimeTable table = sieve(nth_prime_upper_bound(m));
  std::vector<mpz_class> exps(m);
  mpz_class fact = 1;
  for (std::size_t j = 1; j <= m; ++j) {
    fact *= static_cast<unsigned long>(j);
    exps[m - j] = fact;
  }
  TowerLog out{m, CertifiedReal(prec), {}};
  CertifiedReal theta(prec);
  for (std::size_t k = 0; k < m; ++k) {
    const auto lp = CertifiedReal::log_of(table.nth(k + 1), prec);
    theta += lp;
    out.log_n += lp * CertifiedReal::from_mpz(exps[k], prec);
    out.trace.values.push_back(out.log_n / theta - CertifiedReal::from_int(1, prec));
  }
  return out;
}

namespace detail {

/// E(p, j) = ln(1 + 1/(p + p^2 + ... + p^j)) / ln p: the largest eps for
/// which a CA number still carries p^j.
inline CertifiedReal ca_critical_value(std::uint64_t p, std::uint32_t j, Precision prec) {
  mpz_class s = 0, t = 1;
  for (std::uint32_t i = 0; i < j; ++i) {
    t *= static_cast<unsigned long>(p);
    s += t;
  }
  const mpq_class frac(1, s);
  const auto one = CertifiedReal::from_int(1, prec);
  return log(one + CertifiedReal::from_mpq(frac, prec)) / CertifiedReal::log_of(p, prec);
}

// Certified "critical >= eps"; falls back to the midpoint if the enclosures
// never separate (eps equal to a critical value up to 2^-1024).
inline bool at_least(std::uint64_t p, std::uint32_t j, double eps) {
  for (Precision prec = 128; prec <= 1024; prec *= 2) {
    const auto e = ca_critical_value(p, j, prec);
    const auto x = CertifiedReal::from_double(eps, prec);
    const Ordering o = compare(e, x);
    if (o == Ordering::Greater || o == Ordering::Equal) return true;
    if (o == Ordering::Less) return false;
  }
  return ca_critical_value(p, j, 1024).midpoint() >= eps;
}

}  // namespace detail

/// The CA number for parameter eps > 0: exponent of p is
/// floor(log_p((p^{1+eps} - 1)/(p^eps - 1))) - 1, i.e. the number of j >= 1
/// with E(p, j) >= eps.
inline Factorization ca_number(double eps) {
  if (!(eps > 0) || !std::isfinite(eps)) throw std::invalid_argument("CA parameter must be a positive real");
  std::vector<PrimePower> entries;
  std::uint64_t limit = 1024;
  PrimeTable table = sieve(limit);
  for (std::size_t k = 1;; ++k) {
    if (k > table.size()) {
      limit *= 4;
      table = sieve(limit);
    }
    const std::uint64_t p = table.nth(k);
    std::uint32_t a = 0;
    while (detail::at_least(p, a + 1, eps)) ++a;
    if (a == 0) break;
    entries.push_back({p, a});
  }
  return Factorization(std::move(entries));
}

/// Walks the CA numbers in increasing order by sweeping eps downward through
/// the critical values E(p, j).  Critical values that cannot be separated are
/// treated as a tie: all tied steps are taken together.
class CaChainGenerator {
 public:
  CaChainGenerator() : table_(sieve(1 << 16)) { schedule(1, 1); }

  Factorization next() {
    auto top = pending_.begin();
    std::vector<std::pair<std::size_t, std::uint32_t>> steps{top->second};
    const CertifiedReal value = top->first.value;
    pending_.erase(top);
    while (!pending_.empty() && pending_.begin()->first.value.overlaps(value)) {
      steps.push_back(pending_.begin()->second);
      pending_.erase(pending_.begin());
    }
    for (auto [k, j] : steps) {
      if (k > exponents_.size()) exponents_.resize(k, 0);
      exponents_[k - 1] = j;
      schedule(k, j + 1);
      if (j == 1) schedule(k + 1, 1);
    }
    return Factorization::on_first_primes(exponents_);
  }

 private:
  struct Key {
    CertifiedReal value;
    std::size_t k;
    std::uint32_t j;
    // Larger critical values come first.
    bool operator<(const Key& o) const {
      const Ordering c = compare(value, o.value);
      if (c == Ordering::Greater) return true;
      if (c == Ordering::Less) return false;
      const double a = value.midpoint(), b = o.value.midpoint();
      if (a != b) return a > b;
      return std::pair{k, j} < std::pair{o.k, o.j};
    }
  };

  void schedule(std::size_t k, std::uint32_t j) {
    if (k > table_.size()) table_ = sieve(table_.limit() * 4);
    Key key{detail::ca_critical_value(table_.nth(k), j, 256), k, j};
    pending_.emplace(std::move(key), std::pair{k, j});
  }

  PrimeTable table_;
  std::vector<std::uint32_t> exponents_;
  std::map<Key, std::pair<std::size_t, std::uint32_t>> pending_;
};

inline std::vector<Factorization> ca_chain(std::size_t count) {
  if (count == 0) throw std::invalid_argument("ca_chain needs count >= 1");
  CaChainGenerator gen;
  std::vector<Factorization> out;
  out.reserve(count);
  while (out.size() < count) out.push_back(gen.next());
  return out;
}

inline constexpr std::uint64_t kSuperabundantOracleLimit = 10'000'000;

/// Every n <= limit with sigma(n)/n > sigma(k)/k for all k < n.
inline std::vector<std::uint64_t> superabundant_oracle(std::uint64_t limit) {
  if (limit > kSuperabundantOracleLimit) throw BudgetExceeded("superabundant oracle is limited to n <= 10^7");
  std::vector<std::uint64_t> out;
  if (limit == 0) return out;
  const auto sig = sigma_sieve(limit);
  std::uint64_t best_n = 1, best_sigma = 1;
  out.push_back(1);
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (static_cast<unsigned __int128>(sig[n]) * best_n > static_cast<unsigned __int128>(best_sigma) * n) {
      best_n = n;
      best_sigma = sig[n];
      out.push_back(n);
    }
  }
  return out;
}

enum class FamilyTag { Primorial, Descending, Factorial, ColossallyAbundant };

inline FamilyTag parse_family_tag(std::string_view s) {
  if (s == "primorial") return FamilyTag::Primorial;
  if (s == "descending") return FamilyTag::Descending;
  if (s == "factorial") return FamilyTag::Factorial;
  if (s == "ca") return FamilyTag::ColossallyAbundant;
  throw std::invalid_argument("unknown family '" + std::string(s) + "'");
}

inline const char* to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::Primorial: return "primorial";
    case FamilyTag::Descending: return "descending";
    case FamilyTag::Factorial: return "factorial";
    case FamilyTag::ColossallyAbundant: return "ca";
  }
  return "?";
}

/// Iterator over one family in increasing n.
///   primorial:  p_1, p_1 p_2, ...
///   descending: n_t = prod p_k^{beta_k + t} for t = 0, 1, ...
///   factorial:  factorial_tower(1), ..., factorial_tower(12)
///   ca:         the CA chain
class CandidateFamily {
 public:
  explicit CandidateFamily(FamilyTag tag, std::vector<std::uint32_t> beta = {}) : tag_(tag), beta_(std::move(beta)) {
    if (tag_ == FamilyTag::Descending) descending_number(beta_);
  }

  FamilyTag tag() const { return tag_; }

  std::optional<Factorization> next() {
    ++index_;
    switch (tag_) {
      case FamilyTag::Primorial:
        return primorial(index_);
      case FamilyTag::Descending: {
        std::vector<std::uint32_t> shifted = beta_;
        for (auto& b : shifted) b += static_cast<std::uint32_t>(index_ - 1);
        return descending_number(shifted);
      }
      case FamilyTag::Factorial:
        if (index_ > kMaxMaterializedTower) return std::nullopt;
        return factorial_tower(index_);
      case FamilyTag::ColossallyAbundant:
        if (!ca_) ca_.emplace();
        return ca_->next();
    }
    return std::nullopt;
  }

 private:
  FamilyTag tag_;
  std::vector<std::uint32_t> beta_;
  std::size_t index_ = 0;
  std::optional<CaChainGenerator> ca_;
};

}  // namespace robin
