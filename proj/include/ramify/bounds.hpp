#pragma once

// Exact and certified evaluation of the counting bounds for the family
//   h = C(n, m),  n = 2^{l-k} + 1,  m = 2^k - k - 2,  l = (nu + 2) k,
// together with e_k, x_k = chi = e_k / 4 and y_k = K^2 = 2 e_k.
//
// All comparisons are done on log2 values held as outward-rounded
// intervals; a verdict is only "holds" or "fails" when the enclosures are
// separated.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ramify/bigcount.hpp"
#include "ramify/certified.hpp"
#include "ramify/construction.hpp"
#include "ramify/errors.hpp"

namespace ramify {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "2", "3/2" or "0.25" into an exact rational.
inline Rational parse_rational(std::string_view s) {
  auto digits_only = [](std::string_view d) {
    return !d.empty() && d.find_first_not_of("0123456789") == std::string_view::npos;
  };
  // cpp_int reads a leading 0 as octal.
  auto decimal = [](std::string_view d) {
    const auto nz = d.find_first_not_of('0');
    return BigCount(nz == std::string_view::npos ? std::string("0") : std::string(d.substr(nz)));
  };
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!digits_only(a) || !digits_only(b))
      throw InvalidInput("bad rational: " + std::string(s));
    const BigCount den = decimal(b);
    if (den == 0)
      throw InvalidInput("zero denominator: " + std::string(s));
    r = Rational(decimal(a), den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto a = s.substr(0, dot), b = s.substr(dot + 1);
    if ((!a.empty() && !digits_only(a)) || !digits_only(b))
      throw InvalidInput("bad decimal: " + std::string(s));
    BigCount den = 1;
    for (std::size_t i = 0; i < b.size(); ++i)
      den *= 10;
    r = Rational(decimal(std::string(a) + std::string(b)), den);
  } else {
    if (!digits_only(s))
      throw InvalidInput("bad number: " + std::string(s));
    r = Rational(decimal(s));
  }
  return neg ? Rational(-r) : r;
}

inline std::string to_string(const Rational &r) {
  return denominator(r) == 1 ? numerator(r).str() : numerator(r).str() + "/" + denominator(r).str();
}

inline Interval to_interval(const Rational &r) { return Interval::ratio(numerator(r), denominator(r)); }

/// e_k = |G| (-2 + r1/2)(-2 + r2/2); the identity 2 e_k = 2^l (k^2+k-4) is
/// checked on every call.
inline BigCount euler_number(unsigned k, unsigned l) {
  const FamilyParams p(k, l);
  const Rational bracket1 = Rational(-2) + Rational(BigCount(p.r1()), 2);
  const Rational bracket2 = Rational(-2) + Rational(BigCount(p.r2()), 2);
  const Rational e = Rational(BigCount(1) << k) * bracket1 * bracket2;
  if (denominator(e) != 1)
    throw InvariantViolation("e_k is not an integer");
  const BigCount ek = numerator(e);
  const BigCount kk(k);
  if (2 * ek != (BigCount(1) << l) * (kk * kk + kk - 4))
    throw InvariantViolation("identity 2 e_k = 2^l (k^2+k-4) failed at k=" + std::to_string(k) +
                             ", l=" + std::to_string(l));
  return ek;
}

enum class Log2Mode { exact, certified };

inline const char *to_string(Log2Mode m) { return m == Log2Mode::exact ? "exact" : "certified"; }

struct Log2Value {
  Interval value;
  Log2Mode mode = Log2Mode::exact;
  std::optional<BigCount> exact_value; // the binomial itself, exact mode only

  double error_bound() const { return value.radius(); }
};

/// log2 of a positive big integer: from its leading 64 bits, the value lies
/// in [log2 t + s, log2 (t + 1) + s] for N in [t 2^s, (t + 1) 2^s).
inline Interval log2_of(const BigCount &v) {
  if (v <= 0)
    throw InvalidInput("log2 of a non-positive integer");
  const std::size_t bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 64)
    return Interval::exact(v).log2();
  const std::size_t shift = bits - 64;
  const BigCount top = v >> shift;
  const bool exact_top = (top << shift) == v;
  const Interval lo_part = Interval::exact(top).log2();
  const Interval hi_part = exact_top ? lo_part : Interval::exact(BigCount(top + 1)).log2();
  const Interval s = Interval::exact(static_cast<std::int64_t>(shift));
  return Interval::hull(lo_part + s, hi_part + s);
}

/// Exact mode materializes C(n, m); certified mode sums
/// log2(n - i) - log2(i + 1) over i < m with outward rounding.
inline Log2Value log2_binomial(const BigCount &n, const BigCount &m, Log2Mode mode) {
  if (m < 0 || m > n)
    throw InvalidInput("log2_binomial needs 0 <= m <= n");
  Log2Value out;
  out.mode = mode;
  if (mode == Log2Mode::exact) {
    out.exact_value = binomial(n, m);
    out.value = log2_of(*out.exact_value);
    return out;
  }
  BigCount mm = m > n - m ? BigCount(n - m) : m;
  if (mm > BigCount(1) << 40)
    throw Refusal("certified log2_binomial refused: too many terms");
  if (n >= BigCount(1) << 63)
    throw Refusal("certified log2_binomial refused: n exceeds 63 bits");
  const auto terms = static_cast<std::uint64_t>(mm);
  const auto top = static_cast<std::uint64_t>(n);
  Interval sum = Interval::exact(0);
  for (std::uint64_t i = 0; i < terms; ++i)
    sum = sum + Interval::exact_u64(top - i).log2() - Interval::exact_u64(i + 1).log2();
  out.value = sum;
  return out;
}

/// True when 2^lo <= v <= 2^hi is certain, i.e. the interval encloses log2 v.
inline bool log2_encloses(const Interval &log2_value, const BigCount &v) {
  return log2_value.exp2().contains(Interval::exact(v));
}

struct ChainLink {
  std::string name;
  Interval lhs; // log2 of the left side
  Interval rhs; // log2 of the right side
  Verdict verdict = Verdict::within_error;
};

struct BoundReport {
  unsigned k = 0;
  unsigned l = 0;
  Rational nu;
  BigCount n;              // 2^{l-k} + 1
  BigCount m;              // 2^k - k - 2
  Log2Value log2_h;
  BigCount euler;          // e_k
  bool euler_identity = false;
  std::vector<ChainLink> links;

  const ChainLink &link(std::string_view name) const {
    for (const auto &l : links)
      if (l.name == name)
        return l;
    throw InvalidInput("no chain link named " + std::string(name));
  }
};

namespace links {
inline constexpr std::string_view stirling_lower = "binomial>stirling";
inline constexpr std::string_view stirling_middle = "stirling>2^(nu k m)-form";
inline constexpr std::string_view stirling_tail = "2^(nu k m)-form>2^(nu k 2^k)";
inline constexpr std::string_view binomial_vs_power = "binomial>2^(nu k 2^k)";
inline constexpr std::string_view h_vs_euler_form = "h>2^(nu (2e)^(1/(nu+2)) k/(k^2+k-4)^(1/(nu+2)))";
inline constexpr std::string_view euler_form_vs_root = "nu k 2^k>e^(1/(nu+2))";
inline constexpr std::string_view root_vs_log_root = "e^(1/(nu+2))>e^(1/(2nu+2)) ln e/ln 2";
inline constexpr std::string_view final_bound = "h>e^(e^alpha)";
} // namespace links

inline constexpr std::uint64_t kExactTermLimit = 4096;

/// l = (nu + 2) k, which must be an integer.
inline unsigned level_for(unsigned k, const Rational &nu) {
  if (nu <= 0)
    throw InvalidInput("nu must be positive");
  const Rational l = (nu + 2) * k;
  if (denominator(l) != 1)
    throw InvalidInput("l = (nu+2) k = " + to_string(l) + " is not an integer");
  if (numerator(l) > 200)
    throw Refusal("l = " + numerator(l).str() + " is out of range");
  return static_cast<unsigned>(numerator(l));
}

/// Evaluates each inequality of the chain separately; failures at small k
/// are results, not errors.
inline BoundReport check_stirling_chain(unsigned k, const Rational &nu,
                                        std::optional<Log2Mode> mode = std::nullopt) {
  if (k < 3)
    throw InvalidInput("the chain needs k >= 3");
  if (k > 20)
    throw Refusal("k above compute budget (20)");
  BoundReport rep;
  rep.k = k;
  rep.nu = nu;
  rep.l = level_for(k, nu);
  const FamilyParams p(k, rep.l);
  rep.n = BigCount(p.composition_total() - 1);
  rep.m = BigCount(p.composition_parts() - 1);
  const auto terms = static_cast<std::uint64_t>(rep.m);
  const Log2Mode use = mode.value_or(terms <= kExactTermLimit ? Log2Mode::exact : Log2Mode::certified);
  rep.log2_h = log2_binomial(rep.n, rep.m, use);
  rep.euler = euler_number(k, rep.l);
  const BigCount kk(k);
  rep.euler_identity = 2 * rep.euler == (BigCount(1) << rep.l) * (kk * kk + kk - 4);

  const Interval L0 = rep.log2_h.value;
  const Interval M = Interval::exact(rep.m);
  const Interval N = Interval::exact(rep.n);
  const Interval log2e = Interval::log2_e();
  const Interval one = Interval::exact(1);
  const Interval half = Interval::ratio(1, 2);
  const Interval nu_i = to_interval(nu);
  const Interval K = Interval::exact(static_cast<std::int64_t>(k));
  const Interval two_pow_k = Interval::exact(BigCount(1) << k);

  // log2 of (n/m - 1)^m e^m / (e sqrt m)
  const Interval tail = M * log2e - log2e - half * M.log2();
  const Interval L1 = M * ((N - M) / M).log2() + tail;
  // log2 of (2^{nu k})^m e^m / (e sqrt m)
  const Interval L2 = nu_i * K * M + tail;
  // log2 of 2^{nu k 2^k}
  const Interval L3 = nu_i * K * two_pow_k;

  const Interval E = Interval::exact(rep.euler);
  const Interval inv_nu2 = one / (nu_i + Interval::exact(2));
  const Interval inv_2nu2 = one / (Interval::exact(2) * nu_i + Interval::exact(2));
  const Interval quad = Interval::exact(BigCount(kk * kk + kk - 4));
  const Interval euler_form = nu_i * (Interval::exact(2) * E).pow(inv_nu2) * K / quad.pow(inv_nu2);
  const Interval root = E.pow(inv_nu2);
  const Interval log_root = E.pow(inv_2nu2) * E.log2();

  auto add = [&](std::string_view name, const Interval &lhs, const Interval &rhs) {
    rep.links.push_back({std::string(name), lhs, rhs, compare_greater(lhs, rhs)});
  };
  add(links::stirling_lower, L0, L1);
  add(links::stirling_middle, L1, L2);
  add(links::stirling_tail, L2, L3);
  add(links::binomial_vs_power, L0, L3);
  add(links::h_vs_euler_form, L0, euler_form);
  add(links::euler_form_vs_root, euler_form, root);
  add(links::root_vs_log_root, root, log_root);
  return rep;
}

/// First k in [k_min, k_max] where C(n, m) > 2^{nu k 2^k} certainly holds.
inline std::optional<unsigned> stirling_crossover(const Rational &nu, unsigned k_min, unsigned k_max) {
  for (unsigned k = k_min; k <= k_max; ++k)
    if (check_stirling_chain(k, nu).link(links::binomial_vs_power).verdict == Verdict::holds)
      return k;
  return std::nullopt;
}

struct BoundRow {
  BoundReport chain;
  Rational alpha;
  BigCount x_k; // chi = e_k / 4
  BigCount y_k; // K^2 = 2 e_k
  bool is_crossover = false;
  double best_c = 0.0;           // certified lower bound on log2 h / x_k^{1/(2+nu)}
  double log2_catanese = 0.0;    // log2 of y^{77 y^2}, reference only
};

inline std::vector<BoundRow> final_bound_table(const Rational &nu, const Rational &alpha, unsigned k_min,
                                               unsigned k_max) {
  if (alpha >= Rational(1, 2))
    throw InvalidInput("alpha must be < 1/2");
  if (alpha < 0)
    throw InvalidInput("alpha must be non-negative");
  if (k_min < 3 || k_max < k_min)
    throw InvalidInput("need 3 <= k-min <= k-max");
  std::vector<BoundRow> rows;
  std::optional<unsigned> crossover;
  for (unsigned k = k_min; k <= k_max; ++k) {
    BoundRow row;
    row.chain = check_stirling_chain(k, nu);
    row.alpha = alpha;
    row.x_k = row.chain.euler / 4;
    row.y_k = 2 * row.chain.euler;
    if (row.x_k * 4 != row.chain.euler)
      throw InvariantViolation("e_k is not divisible by 4");

    const Interval E = Interval::exact(row.chain.euler);
    const Interval L0 = row.chain.log2_h.value;
    const Interval rhs = E.pow(to_interval(alpha)) * E.log2();
    row.chain.links.push_back({std::string(links::final_bound), L0, rhs, compare_greater(L0, rhs)});

    const Interval xroot = Interval::exact(row.x_k).pow(Interval::exact(1) / (to_interval(nu) + Interval::exact(2)));
    row.best_c = (L0 / xroot).lo();
    const Interval Y = Interval::exact(row.y_k);
    row.log2_catanese = (Interval::exact(77) * Y * Y * Y.log2()).mid();

    if (!crossover && row.chain.link(links::binomial_vs_power).verdict == Verdict::holds) {
      crossover = k;
      row.is_crossover = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace ramify
