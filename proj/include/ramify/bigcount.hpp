#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ramify {

using BigCount = boost::multiprecision::cpp_int;

struct BinomialResult {
  BigCount value;
  bool out_of_range = false; // m > n, value is 0 by convention
};

namespace detail {

// Product of [lo, hi) by splitting, so the big multiplications stay balanced.
inline BigCount range_product(const BigCount &lo, const BigCount &hi) {
  const BigCount span = hi - lo;
  if (span <= 0)
    return 1;
  if (span <= 16) {
    BigCount p = 1;
    for (BigCount i = lo; i < hi; ++i)
      p *= i;
    return p;
  }
  const BigCount mid = lo + span / 2;
  return range_product(lo, mid) * range_product(mid, hi);
}

} // namespace detail

/// Exact C(n, m) = n (n-1) ... (n-m+1) / m!.
inline BinomialResult binomial_checked(const BigCount &n, BigCount m) {
  if (n < 0 || m < 0)
    return {BigCount(0), true};
  if (m > n)
    return {BigCount(0), true};
  if (m > n - m)
    m = n - m;
  return {detail::range_product(n - m + 1, n + 1) / detail::range_product(1, m + 1), false};
}

inline BigCount binomial(const BigCount &n, const BigCount &m) { return binomial_checked(n, m).value; }

inline std::string to_decimal(const BigCount &v) { return v.str(); }

} // namespace ramify
