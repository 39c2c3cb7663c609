#pragma once

// Rigorous real enclosures on top of MPFR.
//
// A CertifiedReal is a closed interval [lo, hi] whose endpoints are MPFR
// floats.  Every operation rounds the lower endpoint toward -inf and the upper
// endpoint toward +inf, so the true value of the expression is always
// contained in the result.  Signs and orderings are only reported when the
// enclosures separate.

#include <cstdint>

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace robin {

using Precision = mpfr_prec_t;

inline constexpr Precision kBasePrecision = 128;

/// Thrown when an argument lies outside the mathematical domain of an
/// operation (log of a non-positive enclosure, division by an enclosure
/// containing zero, log log of n <= 2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Sign : int { Negative = -1, Indeterminate = 0, Positive = 1 };

enum class Ordering { Less, Equal, Greater, Indeterminate };

inline const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "less";
    case Ordering::Equal: return "equal";
    case Ordering::Greater: return "greater";
    case Ordering::Indeterminate: return "indeterminate";
  }
  return "?";
}

/// Tolerance and precision-escalation knobs shared by every certified
/// evaluation.
struct EvalOptions {
  double tolerance = 1e-30;
  int max_escalations = 4;
};

/// Working precision whose unit roundoff sits comfortably below `tolerance`.
inline Precision precision_for(double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const double bits = std::ceil(-std::log2(tolerance)) + 32.0;
  return std::max<Precision>(kBasePrecision, static_cast<Precision>(std::min(bits, 1e6)));
}

namespace detail {

class MpfrValue {
 public:
  explicit MpfrValue(Precision prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  MpfrValue(const MpfrValue& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  MpfrValue(MpfrValue&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  MpfrValue& operator=(const MpfrValue& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpfrValue& operator=(MpfrValue&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~MpfrValue() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace detail

class CertifiedReal {
 public:
  /// The point enclosure [0, 0].
  explicit CertifiedReal(Precision prec = kBasePrecision) : lo_(prec), hi_(prec) {}

  static CertifiedReal from_int(long value, Precision prec = kBasePrecision) {
    CertifiedReal r(prec);
    mpfr_set_si(r.lo(), value, MPFR_RNDD);
    mpfr_set_si(r.hi(), value, MPFR_RNDU);
    return r;
  }

  static CertifiedReal from_uint(std::uint64_t value, Precision prec = kBasePrecision) {
    CertifiedReal r(prec);
    mpfr_set_ui(r.lo(), value, MPFR_RNDD);
    mpfr_set_ui(r.hi(), value, MPFR_RNDU);
    return r;
  }

  static CertifiedReal from_mpz(const mpz_class& value, Precision prec = kBasePrecision) {
    CertifiedReal r(prec);
    mpfr_set_z(r.lo(), value.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi(), value.get_mpz_t(), MPFR_RNDU);
    return r;
  }

  static CertifiedReal from_mpq(const mpq_class& value, Precision prec = kBasePrecision) {
    CertifiedReal r(prec);
    mpfr_set_q(r.lo(), value.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi(), value.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  /// Doubles are dyadic rationals, so the enclosure is a point when prec >= 53.
  static CertifiedReal from_double(double value, Precision prec = kBasePrecision) {
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
    CertifiedReal r(prec);
    mpfr_set_d(r.lo(), value, MPFR_RNDD);
    mpfr_set_d(r.hi(), value, MPFR_RNDU);
    return r;
  }

  /// Encloses a decimal literal such as "0.998684".
  static CertifiedReal from_decimal(std::string_view text, Precision prec = kBasePrecision) {
    CertifiedReal r(prec);
    const std::string s(text);
    if (mpfr_set_str(r.lo(), s.c_str(), 10, MPFR_RNDD) != 0 ||
        mpfr_set_str(r.hi(), s.c_str(), 10, MPFR_RNDU) != 0) {
      throw std::invalid_argument("not a decimal literal: " + s);
    }
    return r;
  }

  /// ln(value) for a positive integer, from a single correctly rounded log.
  static CertifiedReal log_of(std::uint64_t value, Precision prec = kBasePrecision) {
    if (value == 0) throw DomainError("log of zero");
    CertifiedReal r(prec);
    if (value == 1) return r;
    mpfr_log_ui(r.lo(), value, MPFR_RNDN);
    mpfr_set(r.hi(), r.lo(), MPFR_RNDN);
    mpfr_nextbelow(r.lo());
    mpfr_nextabove(r.hi());
    return r;
  }

  /// Smallest interval containing both endpoints' enclosures.
  static CertifiedReal hull(const CertifiedReal& a, const CertifiedReal& b) {
    CertifiedReal r(std::max(a.precision(), b.precision()));
    mpfr_min(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
  }

  /// Widens a point literal by +-radius (used for embedded constants).
  static CertifiedReal widened(std::string_view literal, std::string_view radius, Precision prec) {
    CertifiedReal mid = from_decimal(literal, prec);
    CertifiedReal rad = from_decimal(radius, prec);
    CertifiedReal r(prec);
    mpfr_sub(r.lo(), mid.lo(), rad.hi(), MPFR_RNDD);
    mpfr_add(r.hi(), mid.hi(), rad.hi(), MPFR_RNDU);
    return r;
  }

  Precision precision() const { return mpfr_get_prec(lo_.get()); }

  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }
  mpfr_ptr lo() { return lo_.get(); }
  mpfr_ptr hi() { return hi_.get(); }

  double lower() const { return mpfr_get_d(lo(), MPFR_RNDD); }
  double upper() const { return mpfr_get_d(hi(), MPFR_RNDU); }
  double midpoint() const {
    detail::MpfrValue m(precision() + 1);
    mpfr_add(m.get(), lo(), hi(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return mpfr_get_d(m.get(), MPFR_RNDN);
  }

  /// Upper bound on hi - lo.
  double width() const {
    detail::MpfrValue w(precision());
    mpfr_sub(w.get(), hi(), lo(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
  }

  bool is_point() const { return mpfr_equal_p(lo(), hi()) != 0; }

  Sign sign() const {
    if (mpfr_sgn(lo()) > 0) return Sign::Positive;
    if (mpfr_sgn(hi()) < 0) return Sign::Negative;
    return Sign::Indeterminate;
  }

  bool contains(double x) const { return mpfr_cmp_d(lo(), x) <= 0 && mpfr_cmp_d(hi(), x) >= 0; }

  bool contains(const mpq_class& x) const {
    return mpfr_cmp_q(lo(), x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi(), x.get_mpq_t()) >= 0;
  }

  bool overlaps(const CertifiedReal& other) const {
    return mpfr_lessequal_p(lo(), other.hi()) && mpfr_lessequal_p(other.lo(), hi());
  }

  /// Certified ordering; Equal only for identical point enclosures.
  friend Ordering compare(const CertifiedReal& a, const CertifiedReal& b) {
    if (mpfr_less_p(a.hi(), b.lo())) return Ordering::Less;
    if (mpfr_greater_p(a.lo(), b.hi())) return Ordering::Greater;
    if (a.is_point() && b.is_point() && mpfr_equal_p(a.lo(), b.lo())) return Ordering::Equal;
    return Ordering::Indeterminate;
  }

  /// Decimal rendering of the endpoints, rounded outward.
  std::string lower_string(int digits = 20) const { return format(lo(), digits, 'D'); }
  std::string upper_string(int digits = 20) const { return format(hi(), digits, 'U'); }
  std::string midpoint_string(int digits = 20) const {
    detail::MpfrValue m(precision() + 1);
    mpfr_add(m.get(), lo(), hi(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return format(m.get(), digits, 'N');
  }

  // -- arithmetic ---------------------------------------------------------

  friend CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
    CertifiedReal r(std::max(a.precision(), b.precision()));
    mpfr_add(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
  }

  friend CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) {
    CertifiedReal r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.lo(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi(), a.hi(), b.lo(), MPFR_RNDU);
    return r;
  }

  friend CertifiedReal operator-(const CertifiedReal& a) {
    CertifiedReal r(a.precision());
    mpfr_neg(r.lo(), a.hi(), MPFR_RNDD);
    mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
    return r;
  }

  friend CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b) {
    const Precision prec = std::max(a.precision(), b.precision());
    CertifiedReal r(prec);
    if (mpfr_sgn(a.lo()) >= 0 && mpfr_sgn(b.lo()) >= 0) {
      mpfr_mul(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
      mpfr_mul(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
      return r;
    }
    detail::MpfrValue t(prec);
    mpfr_srcptr xs[2] = {a.lo(), a.hi()};
    mpfr_srcptr ys[2] = {b.lo(), b.hi()};
    mpfr_set_inf(r.lo(), 1);
    mpfr_set_inf(r.hi(), -1);
    for (auto x : xs) {
      for (auto y : ys) {
        mpfr_mul(t.get(), x, y, MPFR_RNDD);
        mpfr_min(r.lo(), r.lo(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x, y, MPFR_RNDU);
        mpfr_max(r.hi(), r.hi(), t.get(), MPFR_RNDU);
      }
    }
    return r;
  }

  friend CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b) {
    if (b.sign() == Sign::Indeterminate) throw DomainError("division by an enclosure containing zero");
    const Precision prec = std::max(a.precision(), b.precision());
    CertifiedReal r(prec);
    detail::MpfrValue t(prec);
    mpfr_srcptr xs[2] = {a.lo(), a.hi()};
    mpfr_srcptr ys[2] = {b.lo(), b.hi()};
    mpfr_set_inf(r.lo(), 1);
    mpfr_set_inf(r.hi(), -1);
    for (auto x : xs) {
      for (auto y : ys) {
        mpfr_div(t.get(), x, y, MPFR_RNDD);
        mpfr_min(r.lo(), r.lo(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), x, y, MPFR_RNDU);
        mpfr_max(r.hi(), r.hi(), t.get(), MPFR_RNDU);
      }
    }
    return r;
  }

  /// Multiplication by a non-negative machine integer (monotone, so endpoint-wise).
  friend CertifiedReal operator*(const CertifiedReal& a, std::uint64_t k) {
    CertifiedReal r(a.precision());
    mpfr_mul_ui(r.lo(), a.lo(), k, MPFR_RNDD);
    mpfr_mul_ui(r.hi(), a.hi(), k, MPFR_RNDU);
    return r;
  }

  friend CertifiedReal operator/(const CertifiedReal& a, std::uint64_t k) {
    if (k == 0) throw DomainError("division by zero");
    CertifiedReal r(a.precision());
    mpfr_div_ui(r.lo(), a.lo(), k, MPFR_RNDD);
    mpfr_div_ui(r.hi(), a.hi(), k, MPFR_RNDU);
    return r;
  }

  CertifiedReal& operator+=(const CertifiedReal& b) {
    mpfr_add(lo(), lo(), b.lo(), MPFR_RNDD);
    mpfr_add(hi(), hi(), b.hi(), MPFR_RNDU);
    return *this;
  }

  CertifiedReal& operator*=(const CertifiedReal& b) { return *this = *this * b; }

  friend CertifiedReal log(const CertifiedReal& a) {
    if (mpfr_sgn(a.lo()) <= 0) throw DomainError("log of an enclosure reaching non-positive values");
    CertifiedReal r(a.precision());
    mpfr_log(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_log(r.hi(), a.hi(), MPFR_RNDU);
    return r;
  }

  friend CertifiedReal exp(const CertifiedReal& a) {
    CertifiedReal r(a.precision());
    mpfr_exp(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_exp(r.hi(), a.hi(), MPFR_RNDU);
    return r;
  }

  /// base^exponent for base > 0, via exp(exponent * log(base)).
  friend CertifiedReal pow(const CertifiedReal& base, const CertifiedReal& exponent) {
    return exp(exponent * log(base));
  }

  friend CertifiedReal min(const CertifiedReal& a, const CertifiedReal& b) {
    CertifiedReal r(std::max(a.precision(), b.precision()));
    mpfr_min(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_min(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
  }

 private:
  static std::string format(mpfr_srcptr x, int digits, char rounding) {
    char* buf = nullptr;
    const std::string fmt = std::string("%.*R") + rounding + "e";
    if (mpfr_asprintf(&buf, fmt.c_str(), digits - 1, x) < 0) throw std::runtime_error("mpfr_asprintf failed");
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  detail::MpfrValue lo_;
  detail::MpfrValue hi_;
};

inline CertifiedReal pi_enclosure(Precision prec) {
  CertifiedReal r(prec);
  mpfr_const_pi(r.lo(), MPFR_RNDD);
  mpfr_const_pi(r.hi(), MPFR_RNDU);
  return r;
}

/// Euler's constant and e^gamma as enclosures.
struct EulerGamma {
  CertifiedReal gamma;
  CertifiedReal exp_gamma;
};

/// 60 decimal places of gamma, widened by 1e-55.
inline constexpr std::string_view kEulerGammaLiteral =
    "0.577215664901532860606512090082402431042159335939923598805767";
inline constexpr std::string_view kEulerGammaRadius = "1e-55";

inline EulerGamma euler_gamma(Precision prec = kBasePrecision) {
  CertifiedReal g = CertifiedReal::widened(kEulerGammaLiteral, kEulerGammaRadius, prec);
  CertifiedReal eg = exp(g);
  return {std::move(g), std::move(eg)};
}

/// Re-evaluates `eval(precision)` with doubling precision until `accept`
/// holds or the escalation budget is spent; returns the last evaluation.
template <class Eval, class Accept>
auto evaluate_with_escalation(Eval&& eval, Accept&& accept, const EvalOptions& options) {
  Precision prec = precision_for(options.tolerance);
  auto result = eval(prec);
  for (int step = 0; step < options.max_escalations && !accept(result); ++step) {
    prec *= 2;
    result = eval(prec);
  }
  return result;
}

}  // namespace robin
