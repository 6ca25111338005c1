#pragma once

// The explicit family of ramification structures on (Z/2Z)^k:
//
//   T1 = (e1 x2, e2 x4, ..., ek x2k)                        length k(k+1)
//   M  = G \ ({0} u basis), phi: {1..|M|} -> M in encoding order
//   T2 = (phi(1) x2n_1, ..., phi(m) x2n_m)                  length 2 sum n_i
//
// for every composition (n_1..n_m) of 2^{l-k}+2 into m = 2^k-k-1 positive
// parts. The family has C(2^{l-k}+1, 2^k-k-2) members, pairwise inequivalent.

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "ramify/bigcount.hpp"
#include "ramify/errors.hpp"
#include "ramify/group.hpp"
#include "ramify/spherical.hpp"

namespace ramify {

inline constexpr unsigned kMaxFamilyShift = 62;

/// (k, l) and optionally nu with l = (nu + 2) k.
class FamilyParams {
public:
  FamilyParams(unsigned k, unsigned l) : k_(k), l_(l) {
    if (k < 3)
      throw Refusal("family requires k >= 3 (for k = 2 the set M does not generate G), got k = " +
                    std::to_string(k));
    if (k > 20)
      throw Refusal("family requires k <= 20");
    if (l < k || l - k > kMaxFamilyShift)
      throw InvalidInput("family requires k <= l <= k + " + std::to_string(kMaxFamilyShift));
    if (composition_total() < composition_parts())
      throw Refusal("no positive compositions: 2^(l-k)+2 = " + std::to_string(composition_total()) +
                    " < 2^k-k-1 = " + std::to_string(composition_parts()));
  }

  unsigned k() const noexcept { return k_; }
  unsigned l() const noexcept { return l_; }

  std::uint64_t r1() const noexcept { return std::uint64_t{k_} * (k_ + 1); }
  std::uint64_t r2() const noexcept { return (std::uint64_t{1} << (l_ - k_ + 1)) + 4; }

  /// 2^{l-k} + 2
  std::uint64_t composition_total() const noexcept { return (std::uint64_t{1} << (l_ - k_)) + 2; }
  /// 2^k - k - 1 = |M|
  std::uint64_t composition_parts() const noexcept { return (std::uint64_t{1} << k_) - k_ - 1; }

private:
  unsigned k_;
  unsigned l_;
};

/// Tuples of `parts` positive integers summing to `total`, in lexicographic
/// order. Empty when total < parts or parts == 0.
class CompositionRange {
public:
  CompositionRange(std::uint64_t total, std::uint64_t parts) : total_(total), parts_(parts) {}

  class iterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = std::vector<std::uint64_t>;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(std::uint64_t total, std::uint64_t parts) : total_(total) {
      if (parts == 0 || total < parts)
        return;
      parts_.assign(parts, 1);
      parts_.back() = total - (parts - 1);
      done_ = false;
      // Index of the last part greater than one.
      last_big_ = parts_.back() > 1 ? parts - 1 : npos;
    }

    const std::vector<std::uint64_t> &operator*() const noexcept { return parts_; }
    const std::vector<std::uint64_t> *operator->() const noexcept { return &parts_; }

    // Successor: bump the part just before the last part exceeding one, then
    // reset everything after it to the smallest tail.
    iterator &operator++() {
      if (last_big_ == npos || last_big_ == 0) {
        done_ = true;
        return *this;
      }
      const std::size_t i = last_big_ - 1;
      ++parts_[i];
      for (std::size_t j = i + 1; j + 1 < parts_.size(); ++j)
        parts_[j] = 1;
      const std::uint64_t fixed = prefix_sum(i + 1) + (parts_.size() - i - 2);
      parts_.back() = total_ - fixed;
      // parts_[i] >= 2 after the bump.
      last_big_ = parts_.back() > 1 ? parts_.size() - 1 : i;
      return *this;
    }

    void operator++(int) { ++*this; }

    friend bool operator==(const iterator &a, std::default_sentinel_t) noexcept { return a.done_; }

  private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::uint64_t prefix_sum(std::size_t n) const noexcept {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < n; ++j)
        s += parts_[j];
      return s;
    }

    std::uint64_t total_ = 0;
    std::vector<std::uint64_t> parts_;
    std::size_t last_big_ = npos;
    bool done_ = true;
  };

  iterator begin() const { return iterator(total_, parts_); }
  std::default_sentinel_t end() const noexcept { return {}; }

  std::uint64_t count() const {
    std::uint64_t n = 0;
    for (auto it = begin(); it != end(); ++it)
      ++n;
    return n;
  }

  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t parts() const noexcept { return parts_; }

private:
  std::uint64_t total_;
  std::uint64_t parts_;
};

inline CompositionRange compositions(std::uint64_t total, std::uint64_t parts) {
  return CompositionRange(total, parts);
}

/// Tuples of `parts` non-negative integers summing to `total`, lexicographic.
class WeakCompositionRange {
public:
  WeakCompositionRange(std::uint64_t total, std::uint64_t parts) : inner_(total + parts, parts) {}

  class iterator {
  public:
    iterator(CompositionRange::iterator it) : it_(std::move(it)) { load(); }

    const std::vector<std::uint64_t> &operator*() const noexcept { return parts_; }
    iterator &operator++() {
      ++it_;
      load();
      return *this;
    }
    friend bool operator==(const iterator &a, std::default_sentinel_t s) noexcept {
      return a.it_ == s;
    }

  private:
    void load() {
      if (it_ == std::default_sentinel)
        return;
      parts_ = *it_;
      for (auto &p : parts_)
        --p;
    }

    CompositionRange::iterator it_;
    std::vector<std::uint64_t> parts_;
  };

  iterator begin() const { return iterator(inner_.begin()); }
  std::default_sentinel_t end() const noexcept { return {}; }

private:
  CompositionRange inner_;
};

/// M = nonzero non-basis elements of (Z/2Z)^k, sorted by encoding.
class ElementBijection {
public:
  explicit ElementBijection(unsigned k) : k_(k) {
    if (k < 2 || k > 20)
      throw InvalidInput("bijection requires 2 <= k <= 20");
    for (std::uint64_t v = 1; v < (std::uint64_t{1} << k); ++v)
      if (v & (v - 1))
        m_.push_back(GroupElement::from_bits(k, v));
  }

  std::size_t size() const noexcept { return m_.size(); }
  const std::vector<GroupElement> &elements() const noexcept { return m_; }

  /// 1-indexed.
  const GroupElement &operator()(std::uint64_t n) const {
    if (n < 1 || n > m_.size())
      throw InvalidInput("phi argument " + std::to_string(n) + " outside [1, " +
                         std::to_string(m_.size()) + "]");
    return m_[n - 1];
  }

private:
  unsigned k_;
  std::vector<GroupElement> m_;
};

inline GroupElement phi(unsigned k, std::uint64_t n) { return ElementBijection(k)(n); }

/// e_j with multiplicity 2j, all copies of e_1 first.
inline GeneratingTuple build_T1(unsigned k) {
  if (k < 2)
    throw InvalidInput("build_T1 requires k >= 2");
  std::vector<GroupElement> v;
  v.reserve(std::size_t{k} * (k + 1));
  for (unsigned j = 0; j < k; ++j)
    for (unsigned c = 0; c < 2 * (j + 1); ++c)
      v.push_back(GroupElement::basis(k, j));
  return GeneratingTuple(k, std::move(v));
}

/// phi(i) with multiplicity 2 n_i, in index order. Zero parts are allowed
/// here; the relaxed family relies on that.
inline GeneratingTuple build_T2(unsigned k, const std::vector<std::uint64_t> &composition,
                                const ElementBijection &bij) {
  if (k < 3)
    throw Refusal("build_T2 requires k >= 3: for k = 2 the set M does not generate G");
  if (composition.size() != bij.size())
    throw InvalidInput("composition has " + std::to_string(composition.size()) +
                       " parts, expected |M| = " + std::to_string(bij.size()));
  std::vector<GroupElement> v;
  for (std::size_t i = 0; i < composition.size(); ++i)
    for (std::uint64_t c = 0; c < 2 * composition[i]; ++c)
      v.push_back(bij(i + 1));
  return GeneratingTuple(k, std::move(v));
}

inline GeneratingTuple build_T2(unsigned k, const std::vector<std::uint64_t> &composition) {
  if (k < 3)
    throw Refusal("build_T2 requires k >= 3: for k = 2 the set M does not generate G");
  return build_T2(k, composition, ElementBijection(k));
}

struct FamilyOptions {
  /// Allow zero parts; keep only tuples whose support still generates G.
  bool relaxed_positivity = false;
};

/// Stream of validated family members, one per composition.
class FamilyStream {
public:
  explicit FamilyStream(FamilyParams p, FamilyOptions opts = {})
      : params_(p), opts_(opts), ctx_(p.k()), bij_(p.k()), t1_(build_T1(p.k())) {}

  const FamilyParams &params() const noexcept { return params_; }

  /// Builds and validates the member for one composition. A rejection is a
  /// hard error: the construction guarantees validity.
  RamificationStructure member(const std::vector<std::uint64_t> &composition) const {
    auto t2 = build_T2(params_.k(), composition, bij_);
    auto r = validate_ramification(t1_, t2, ctx_);
    if (auto *rej = std::get_if<Rejection>(&r))
      throw InvariantViolation(std::string("family member failed validation: ") +
                               to_string(rej->reason) + " (" + rej->detail + ")");
    return std::get<RamificationStructure>(std::move(r));
  }

  /// Visits (composition, structure) in composition order.
  template <class F> void for_each(F &&f) const {
    if (!opts_.relaxed_positivity) {
      for (const auto &c : compositions(params_.composition_total(), params_.composition_parts()))
        f(c, member(c));
      return;
    }
    const WeakCompositionRange weak(params_.composition_total(), params_.composition_parts());
    std::vector<GroupElement> support;
    for (auto it = weak.begin(); it != weak.end(); ++it) {
      const auto &c = *it;
      support.clear();
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i])
          support.push_back(bij_(i + 1));
      if (span_rank(support) != params_.k())
        continue;
      f(c, member(c));
    }
  }

  std::vector<RamificationStructure> collect() const {
    std::vector<RamificationStructure> out;
    for_each([&](const auto &, RamificationStructure s) { out.push_back(std::move(s)); });
    return out;
  }

private:
  FamilyParams params_;
  FamilyOptions opts_;
  GroupContext ctx_;
  ElementBijection bij_;
  GeneratingTuple t1_;
};

inline FamilyStream build_family(FamilyParams p, FamilyOptions opts = {}) {
  return FamilyStream(p, opts);
}

/// C(2^{l-k}+1, 2^k-k-2), the number of positive compositions of
/// 2^{l-k}+2 into 2^k-k-1 parts.
inline BigCount family_count(const FamilyParams &p) {
  return binomial(BigCount(p.composition_total() - 1), BigCount(p.composition_parts() - 1));
}

} // namespace ramify
