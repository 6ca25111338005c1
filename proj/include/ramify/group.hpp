#pragma once

// Elementary abelian 2-groups (Z/2Z)^k as GF(2)^k, and Aut((Z/2Z)^k) = GL(k,2).
//
// The group is written additively throughout: the identity is the zero
// vector and every nonzero element is an involution (order two).
// Coordinate i (1-based) of an element is bit i-1 of its integer encoding.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ramify/errors.hpp"

namespace ramify {

inline constexpr unsigned kMaxRank = 63;
inline constexpr unsigned kDefaultAutCap = 5;

class GroupContext {
public:
  explicit GroupContext(unsigned rank) : rank_(rank) {
    if (rank < 1 || rank > kMaxRank)
      throw InvalidInput("group rank must be in [1, " + std::to_string(kMaxRank) +
                         "], got " + std::to_string(rank));
  }

  unsigned rank() const noexcept { return rank_; }
  std::uint64_t order() const noexcept { return std::uint64_t{1} << rank_; }

  bool operator==(const GroupContext &) const = default;

private:
  unsigned rank_;
};

class GroupElement {
public:
  GroupElement() = default;

  static GroupElement zero(unsigned rank) { return from_bits(rank, 0); }

  /// Standard basis vector e_{j+1} (j is 0-based).
  static GroupElement basis(unsigned rank, unsigned j) {
    if (j >= rank)
      throw InvalidInput("basis index out of range");
    return from_bits(rank, std::uint64_t{1} << j);
  }

  static GroupElement from_bits(unsigned rank, std::uint64_t bits) {
    if (rank < 1 || rank > kMaxRank)
      throw InvalidInput("group rank out of range: " + std::to_string(rank));
    if (bits >> rank)
      throw InvalidInput("encoding " + std::to_string(bits) + " exceeds rank " +
                         std::to_string(rank));
    GroupElement e;
    e.rank_ = rank;
    e.bits_ = bits;
    return e;
  }

  /// Parses "b1b2...bk", coordinate 1 first.
  static GroupElement parse(std::string_view s) {
    if (s.empty() || s.size() > kMaxRank)
      throw InvalidInput("bad element bit-string length");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        bits |= std::uint64_t{1} << i;
      else if (s[i] != '0')
        throw InvalidInput("element bit-string must contain only 0/1: " + std::string(s));
    }
    return from_bits(static_cast<unsigned>(s.size()), bits);
  }

  unsigned rank() const noexcept { return rank_; }
  std::uint64_t bits() const noexcept { return bits_; }
  bool is_zero() const noexcept { return bits_ == 0; }

  /// Coordinate i+1 (0-based index).
  bool coordinate(unsigned i) const noexcept { return (bits_ >> i) & 1u; }

  std::string to_string() const {
    std::string s(rank_, '0');
    for (unsigned i = 0; i < rank_; ++i)
      if (coordinate(i))
        s[i] = '1';
    return s;
  }

  friend GroupElement operator+(const GroupElement &a, const GroupElement &b) {
    if (a.rank_ != b.rank_)
      throw InvalidInput("rank mismatch in group addition: " + std::to_string(a.rank_) +
                         " vs " + std::to_string(b.rank_));
    return from_bits(a.rank_, a.bits_ ^ b.bits_);
  }

  /// Every element is its own inverse.
  GroupElement inverse() const noexcept { return *this; }

  // Orders by rank, then by integer encoding.
  auto operator<=>(const GroupElement &) const = default;

private:
  std::uint64_t bits_ = 0;
  unsigned rank_ = 0;
};

inline GroupElement add(const GroupElement &a, const GroupElement &b) { return a + b; }

/// GF(2)-dimension of the span. An empty list has rank 0.
inline unsigned span_rank(std::span<const GroupElement> elements) {
  if (elements.empty())
    return 0;
  const unsigned rank = elements.front().rank();
  // basis[b] holds a reduced vector whose highest set bit is b.
  std::vector<std::uint64_t> basis(rank, 0);
  unsigned dim = 0;
  for (const auto &e : elements) {
    if (e.rank() != rank)
      throw InvalidInput("rank mismatch in span_rank");
    std::uint64_t v = e.bits();
    while (v) {
      const unsigned hb = 63u - static_cast<unsigned>(std::countl_zero(v));
      if (!basis[hb]) {
        basis[hb] = v;
        ++dim;
        break;
      }
      v ^= basis[hb];
    }
    if (dim == rank)
      break;
  }
  return dim;
}

/// Ordered tuple of group elements sharing one rank. Zero entries and short
/// tuples are representable; the spherical checks reject them.
class GeneratingTuple {
public:
  GeneratingTuple() = default;

  GeneratingTuple(unsigned rank, std::vector<GroupElement> entries)
      : rank_(rank), entries_(std::move(entries)) {
    GroupContext{rank};
    for (const auto &e : entries_)
      if (e.rank() != rank_)
        throw InvalidInput("tuple entry rank " + std::to_string(e.rank()) +
                           " does not match tuple rank " + std::to_string(rank_));
  }

  static GeneratingTuple from_bits(unsigned rank, std::span<const std::uint64_t> bits) {
    std::vector<GroupElement> v;
    v.reserve(bits.size());
    for (auto b : bits)
      v.push_back(GroupElement::from_bits(rank, b));
    return GeneratingTuple(rank, std::move(v));
  }

  static GeneratingTuple parse(std::span<const std::string> strings) {
    if (strings.empty())
      throw InvalidInput("cannot infer rank of an empty tuple");
    std::vector<GroupElement> v;
    for (const auto &s : strings)
      v.push_back(GroupElement::parse(s));
    const unsigned rank = v.front().rank();
    return GeneratingTuple(rank, std::move(v));
  }

  unsigned rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<GroupElement> &entries() const noexcept { return entries_; }
  const GroupElement &operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  GroupElement sum() const {
    GroupElement s = GroupElement::zero(rank_);
    for (const auto &e : entries_)
      s = s + e;
    return s;
  }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto &e : entries_)
      out.push_back(e.to_string());
    return out;
  }

  bool operator==(const GeneratingTuple &) const = default;
  auto operator<=>(const GeneratingTuple &) const = default;

private:
  unsigned rank_ = 1;
  std::vector<GroupElement> entries_;
};

/// Invertible k x k matrix over GF(2). Row i, bit j is entry (i, j).
class AutMatrix {
public:
  static AutMatrix identity(unsigned rank) {
    std::vector<std::uint64_t> rows(rank);
    for (unsigned i = 0; i < rank; ++i)
      rows[i] = std::uint64_t{1} << i;
    return AutMatrix(rank, std::move(rows));
  }

  static AutMatrix from_rows(unsigned rank, std::vector<std::uint64_t> rows) {
    GroupContext{rank};
    if (rows.size() != rank)
      throw InvalidInput("matrix must have exactly rank rows");
    std::vector<GroupElement> as_elements;
    for (auto r : rows)
      as_elements.push_back(GroupElement::from_bits(rank, r));
    if (span_rank(as_elements) != rank)
      throw InvalidInput("matrix is not invertible over GF(2)");
    return AutMatrix(rank, std::move(rows));
  }

  /// columns[j] is the image of e_{j+1}.
  static AutMatrix from_columns(unsigned rank, std::span<const std::uint64_t> columns) {
    if (columns.size() != rank)
      throw InvalidInput("matrix must have exactly rank columns");
    std::vector<std::uint64_t> rows(rank, 0);
    for (unsigned j = 0; j < rank; ++j)
      for (unsigned i = 0; i < rank; ++i)
        if ((columns[j] >> i) & 1u)
          rows[i] |= std::uint64_t{1} << j;
    return from_rows(rank, std::move(rows));
  }

  static AutMatrix parse(std::span<const std::string> rows) {
    if (rows.empty())
      throw InvalidInput("empty matrix");
    const auto rank = static_cast<unsigned>(rows.size());
    std::vector<std::uint64_t> bits;
    for (const auto &r : rows) {
      auto e = GroupElement::parse(r);
      if (e.rank() != rank)
        throw InvalidInput("matrix rows must have length equal to the row count");
      bits.push_back(e.bits());
    }
    return from_rows(rank, std::move(bits));
  }

  unsigned rank() const noexcept { return rank_; }
  const std::vector<std::uint64_t> &rows() const noexcept { return rows_; }

  std::uint64_t apply_bits(std::uint64_t v) const noexcept {
    std::uint64_t out = 0;
    for (unsigned i = 0; i < rank_; ++i)
      out |= static_cast<std::uint64_t>(std::popcount(rows_[i] & v) & 1) << i;
    return out;
  }

  GroupElement apply(const GroupElement &v) const {
    if (v.rank() != rank_)
      throw InvalidInput("rank mismatch applying automorphism");
    return GroupElement::from_bits(rank_, apply_bits(v.bits()));
  }

  /// (*this * other)(v) = (*this)(other(v)).
  AutMatrix operator*(const AutMatrix &other) const {
    if (other.rank_ != rank_)
      throw InvalidInput("rank mismatch composing automorphisms");
    std::vector<std::uint64_t> rows(rank_, 0);
    for (unsigned i = 0; i < rank_; ++i)
      for (unsigned l = 0; l < rank_; ++l)
        if ((rows_[i] >> l) & 1u)
          rows[i] ^= other.rows_[l];
    return AutMatrix(rank_, std::move(rows));
  }

  bool is_identity() const { return *this == identity(rank_); }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    for (auto r : rows_)
      out.push_back(GroupElement::from_bits(rank_, r).to_string());
    return out;
  }

  bool operator==(const AutMatrix &) const = default;

private:
  AutMatrix(unsigned rank, std::vector<std::uint64_t> rows) : rank_(rank), rows_(std::move(rows)) {}

  unsigned rank_;
  std::vector<std::uint64_t> rows_;
};

inline GeneratingTuple apply_aut(const AutMatrix &phi, const GeneratingTuple &t) {
  if (phi.rank() != t.rank())
    throw InvalidInput("rank mismatch applying automorphism to tuple");
  std::vector<GroupElement> out;
  out.reserve(t.size());
  for (const auto &e : t)
    out.push_back(phi.apply(e));
  return GeneratingTuple(t.rank(), std::move(out));
}

/// Full image table of an automorphism over all 2^k encodings; for k small.
class ElementMap {
public:
  explicit ElementMap(const AutMatrix &phi) : image_(std::size_t{1} << phi.rank()) {
    // Linear: image of v is the XOR of column images of its set bits.
    for (std::uint64_t v = 1; v < image_.size(); ++v) {
      const unsigned low = static_cast<unsigned>(std::countr_zero(v));
      image_[v] = image_[v & (v - 1)] ^ phi.apply_bits(std::uint64_t{1} << low);
    }
  }

  std::uint64_t operator()(std::uint64_t v) const noexcept { return image_[v]; }

private:
  std::vector<std::uint64_t> image_;
};

/// |GL(k,2)| = prod_{i<k} (2^k - 2^i), saturating at UINT64_MAX.
inline std::uint64_t gl_order(unsigned rank) {
  std::uint64_t n = 1;
  const std::uint64_t q = std::uint64_t{1} << rank;
  for (unsigned i = 0; i < rank; ++i) {
    const std::uint64_t f = q - (std::uint64_t{1} << i);
    if (n > UINT64_MAX / f)
      return UINT64_MAX;
    n *= f;
  }
  return n;
}

/// Deterministic stream of GL(k,2). Matrices are ordered by a mixed-radix
/// index over columns: column j is the c_j-th vector (by encoding) outside
/// the span of columns 0..j-1, and c_0 is the most significant digit.
class AutEnumeration {
public:
  explicit AutEnumeration(const GroupContext &ctx, unsigned cap = kDefaultAutCap)
      : rank_(ctx.rank()) {
    if (rank_ > cap)
      throw Refusal("Aut enumeration refused: rank " + std::to_string(rank_) +
                    " exceeds cap " + std::to_string(cap));
  }

  unsigned rank() const noexcept { return rank_; }
  std::uint64_t size() const noexcept { return gl_order(rank_); }

  class iterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = AutMatrix;
    using difference_type = std::ptrdiff_t;

    iterator() = default;

    iterator(unsigned rank, std::uint64_t index)
        : rank_(rank), index_(index), total_(gl_order(rank)), digits_(rank, 0),
          columns_(rank, 0) {
      if (index_ >= total_)
        return;
      std::uint64_t rem = index_;
      for (unsigned j = rank_; j-- > 0;) {
        const std::uint64_t radix = radix_of(j);
        digits_[j] = rem % radix;
        rem /= radix;
      }
      rebuild_from(0);
    }

    AutMatrix operator*() const { return AutMatrix::from_columns(rank_, columns_); }

    /// Column images of the current matrix; cheaper than materializing it.
    const std::vector<std::uint64_t> &columns() const noexcept { return columns_; }
    std::uint64_t index() const noexcept { return index_; }

    iterator &operator++() {
      if (++index_ >= total_)
        return *this;
      unsigned j = rank_;
      while (j-- > 0) {
        if (++digits_[j] < radix_of(j))
          break;
        digits_[j] = 0;
      }
      rebuild_from(j);
      return *this;
    }

    void operator++(int) { ++*this; }

    friend bool operator==(const iterator &a, const iterator &b) {
      return std::min(a.index_, a.total_) == std::min(b.index_, b.total_);
    }

  private:
    std::uint64_t radix_of(unsigned j) const noexcept {
      return (std::uint64_t{1} << rank_) - (std::uint64_t{1} << j);
    }

    void rebuild_from(unsigned first) {
      const std::size_t n = std::size_t{1} << rank_;
      std::vector<char> in_span(n, 0);
      in_span[0] = 1;
      auto extend = [&](std::uint64_t c) {
        for (std::uint64_t v = 0; v < n; ++v)
          if (in_span[v] == 1)
            in_span[v ^ c] = 2;
        for (auto &s : in_span)
          if (s == 2)
            s = 1;
      };
      for (unsigned j = 0; j < first; ++j)
        extend(columns_[j]);
      for (unsigned j = first; j < rank_; ++j) {
        std::uint64_t seen = 0;
        for (std::uint64_t v = 1; v < n; ++v) {
          if (in_span[v])
            continue;
          if (seen++ == digits_[j]) {
            columns_[j] = v;
            break;
          }
        }
        extend(columns_[j]);
      }
    }

    unsigned rank_ = 0;
    std::uint64_t index_ = 0;
    std::uint64_t total_ = 0;
    std::vector<std::uint64_t> digits_;
    std::vector<std::uint64_t> columns_;
  };

  iterator begin() const { return iterator(rank_, 0); }
  iterator end() const { return iterator(rank_, size()); }

  /// Restart the stream at an arbitrary index.
  iterator from(std::uint64_t index) const { return iterator(rank_, index); }

  AutMatrix at(std::uint64_t index) const {
    if (index >= size())
      throw InvalidInput("automorphism index out of range");
    return *from(index);
  }

  std::vector<AutMatrix> materialize() const {
    std::vector<AutMatrix> out;
    out.reserve(size());
    for (auto it = begin(); it != end(); ++it)
      out.push_back(*it);
    return out;
  }

private:
  unsigned rank_;
};

inline AutEnumeration enumerate_aut(const GroupContext &ctx, unsigned cap = kDefaultAutCap) {
  return AutEnumeration(ctx, cap);
}

} // namespace ramify

template <> struct std::hash<ramify::GroupElement> {
  std::size_t operator()(const ramify::GroupElement &e) const noexcept {
    return std::hash<std::uint64_t>{}(e.bits() * 0x9E3779B97F4A7C15ull + e.rank());
  }
};
