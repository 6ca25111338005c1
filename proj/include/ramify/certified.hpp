#pragma once

// Closed real intervals [lo, hi] with MPFR endpoints rounded outward, so
// every operation returns an enclosure of the exact result.

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "ramify/bigcount.hpp"
#include "ramify/errors.hpp"

namespace ramify {

inline constexpr mpfr_prec_t kIntervalPrecision = 256;

class MpfrValue {
public:
  MpfrValue() { mpfr_init2(v_, kIntervalPrecision); mpfr_set_zero(v_, 1); }
  MpfrValue(const MpfrValue &o) { mpfr_init2(v_, kIntervalPrecision); mpfr_set(v_, o.v_, MPFR_RNDN); }
  MpfrValue(MpfrValue &&o) noexcept : MpfrValue() { mpfr_swap(v_, o.v_); }
  MpfrValue &operator=(MpfrValue o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpfrValue() { mpfr_clear(v_); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }

  double to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(v_, rnd); }

private:
  mpfr_t v_;
};

class Interval {
public:
  Interval() = default;

  static Interval exact(std::int64_t v) {
    Interval r;
    mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
    return r;
  }

  static Interval exact_u64(std::uint64_t v) {
    Interval r;
    mpfr_set_ui(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_ui(r.hi_.get(), v, MPFR_RNDU);
    return r;
  }

  /// [a.lo, b.hi]
  static Interval hull(const Interval &a, const Interval &b) {
    Interval r;
    mpfr_set(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }

  static Interval exact(const BigCount &v) {
    Interval r;
    const std::string s = v.str();
    mpfr_set_str(r.lo_.get(), s.c_str(), 10, MPFR_RNDD);
    mpfr_set_str(r.hi_.get(), s.c_str(), 10, MPFR_RNDU);
    return r;
  }

  static Interval ratio(const BigCount &num, const BigCount &den) {
    if (den <= 0)
      throw InvalidInput("interval ratio needs a positive denominator");
    return exact(num) / exact(den);
  }

  /// Enclosure of [lo, hi] given as doubles.
  static Interval between(double lo, double hi) {
    Interval r;
    mpfr_set_d(r.lo_.get(), lo, MPFR_RNDD);
    mpfr_set_d(r.hi_.get(), hi, MPFR_RNDU);
    return r;
  }

  /// log2(e) = 1/ln 2
  static Interval log2_e() {
    Interval two = exact(2);
    Interval ln2;
    mpfr_log(ln2.lo_.get(), two.lo_.get(), MPFR_RNDD);
    mpfr_log(ln2.hi_.get(), two.hi_.get(), MPFR_RNDU);
    return exact(1) / ln2;
  }

  double lo() const { return lo_.to_double(MPFR_RNDD); }
  double hi() const { return hi_.to_double(MPFR_RNDU); }
  double mid() const { return 0.5 * (lo() + hi()); }
  double radius() const { return 0.5 * (hi() - lo()); }

  const MpfrValue &lo_value() const noexcept { return lo_; }
  const MpfrValue &hi_value() const noexcept { return hi_; }

  bool contains(const Interval &o) const {
    return mpfr_lessequal_p(lo_.get(), o.lo_.get()) && mpfr_lessequal_p(o.hi_.get(), hi_.get());
  }
  bool certainly_less(const Interval &o) const { return mpfr_less_p(hi_.get(), o.lo_.get()); }
  bool certainly_greater(const Interval &o) const { return o.certainly_less(*this); }
  bool certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }

  friend Interval operator+(const Interval &a, const Interval &b) {
    Interval r;
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval &a, const Interval &b) {
    Interval r;
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval operator*(const Interval &a, const Interval &b) {
    // Extremes of the four endpoint products, each rounded outward.
    Interval r;
    MpfrValue t;
    bool first = true;
    for (auto *x : {&a.lo_, &a.hi_})
      for (auto *y : {&b.lo_, &b.hi_}) {
        mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), r.lo_.get()))
          mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), r.hi_.get()))
          mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    return r;
  }

  /// Divisor must be certainly positive.
  friend Interval operator/(const Interval &a, const Interval &b) {
    if (!b.certainly_positive())
      throw InvalidInput("interval division needs a positive divisor");
    Interval inv;
    mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
    mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
    return a * inv;
  }

  Interval log2() const {
    if (!certainly_positive())
      throw InvalidInput("log2 of an interval that is not certainly positive");
    Interval r;
    mpfr_log2(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_log2(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
  }

  Interval ln() const {
    if (!certainly_positive())
      throw InvalidInput("ln of an interval that is not certainly positive");
    Interval r;
    mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
  }

  Interval exp2() const {
    Interval r;
    mpfr_exp2(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_exp2(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
  }

  /// this^e for this >= 1 and e >= 0, where x^e is monotone in both.
  Interval pow(const Interval &e) const {
    if (mpfr_cmp_ui(lo_.get(), 1) < 0 || mpfr_sgn(e.lo_.get()) < 0)
      throw InvalidInput("interval pow requires base >= 1 and exponent >= 0");
    Interval r;
    mpfr_pow(r.lo_.get(), lo_.get(), e.lo_.get(), MPFR_RNDD);
    mpfr_pow(r.hi_.get(), hi_.get(), e.hi_.get(), MPFR_RNDU);
    return r;
  }

  Interval sqrt() const {
    if (mpfr_sgn(lo_.get()) < 0)
      throw InvalidInput("sqrt of an interval with negative part");
    Interval r;
    mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
  }

private:
  MpfrValue lo_;
  MpfrValue hi_;
};

enum class Verdict { holds, fails, within_error };

inline const char *to_string(Verdict v) {
  switch (v) {
  case Verdict::holds: return "holds";
  case Verdict::fails: return "fails";
  case Verdict::within_error: return "within-error";
  }
  return "unknown";
}

/// Verdict for lhs > rhs; "within-error" when the enclosures overlap.
inline Verdict compare_greater(const Interval &lhs, const Interval &rhs) {
  if (lhs.certainly_greater(rhs))
    return Verdict::holds;
  if (lhs.certainly_less(rhs))
    return Verdict::fails;
  return Verdict::within_error;
}

} // namespace ramify
