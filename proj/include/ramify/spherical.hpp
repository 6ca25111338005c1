#pragma once

// Spherical systems of generators, Sigma-sets, disjointness, and validation
// of ramification structures with the surface invariants they determine.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ramify/errors.hpp"
#include "ramify/group.hpp"

namespace ramify {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Multiset of element orders, kept sorted non-decreasing.
class UnorderedType {
public:
  UnorderedType() = default;

  explicit UnorderedType(std::vector<unsigned> orders) : orders_(std::move(orders)) {
    for (auto m : orders_)
      if (m < 2)
        throw InvalidInput("element orders in a type must be >= 2");
    std::sort(orders_.begin(), orders_.end());
  }

  /// The type (2^r).
  static UnorderedType involutions(std::size_t r) {
    return UnorderedType(std::vector<unsigned>(r, 2));
  }

  /// In (Z/2Z)^k every nonzero element has order two.
  static UnorderedType of(const GeneratingTuple &t) { return involutions(t.size()); }

  const std::vector<unsigned> &orders() const noexcept { return orders_; }
  std::size_t size() const noexcept { return orders_.size(); }

  /// Shorthand such as "(2^4,3^2)".
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < orders_.size();) {
      std::size_t j = i;
      while (j < orders_.size() && orders_[j] == orders_[i])
        ++j;
      if (i)
        s += ',';
      s += std::to_string(orders_[i]) + '^' + std::to_string(j - i);
      i = j;
    }
    return s + ')';
  }

  bool operator==(const UnorderedType &) const = default;

private:
  std::vector<unsigned> orders_;
};

using SigmaSet = std::unordered_set<GroupElement>;

/// Sigma-set in (Z/2Z)^k: conjugation is trivial and the powers of an
/// involution v are {0, v}, so the union collapses to {0} and the entries.
inline SigmaSet sigma_set(const GeneratingTuple &t) {
  SigmaSet s;
  s.insert(GroupElement::zero(t.rank()));
  for (const auto &e : t)
    s.insert(e);
  return s;
}

/// Union over g in G, j >= 0, and entries v of g v^j g^{-1}, evaluated
/// term by term. Costs |G| * r * ord(v); intended for cross-checking.
inline SigmaSet sigma_set_literal(const GeneratingTuple &t) {
  const GroupContext ctx(t.rank());
  SigmaSet s;
  for (std::uint64_t gb = 0; gb < ctx.order(); ++gb) {
    const auto g = GroupElement::from_bits(t.rank(), gb);
    for (const auto &v : t) {
      // Powers v^0, v^1, ... until the first repeat of the identity.
      GroupElement power = GroupElement::zero(t.rank());
      do {
        s.insert(g + power + g.inverse());
        power = power + v;
      } while (!power.is_zero());
    }
  }
  return s;
}

inline bool are_disjoint(const GeneratingTuple &t1, const GeneratingTuple &t2) {
  if (t1.rank() != t2.rank())
    throw InvalidInput("rank mismatch in disjointness test");
  const auto s1 = sigma_set(t1);
  const auto s2 = sigma_set(t2);
  for (const auto &e : s2)
    if (!e.is_zero() && s1.contains(e))
      return false;
  return true;
}

inline void require_nonzero_entries(const GeneratingTuple &t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i].is_zero())
      throw InvalidInput("tuple entry " + std::to_string(i + 1) +
                         " is the identity; entries must have order >= 2");
}

/// Generates the whole group and sums to zero.
inline bool is_spherical_system(const GeneratingTuple &t, const GroupContext &ctx) {
  if (t.rank() != ctx.rank())
    throw InvalidInput("tuple rank does not match group rank");
  require_nonzero_entries(t);
  return t.sum().is_zero() && span_rank(t.entries()) == ctx.rank();
}

/// Riemann-Hurwitz: g = 1 + |G| (-2 + sum (1 - 1/m_i)) / 2, exactly.
inline Rational genus_from_type(const BigInt &group_order, const UnorderedType &tau) {
  Rational bracket(-2);
  for (auto m : tau.orders())
    bracket += Rational(1) - Rational(1, m);
  return Rational(1) + Rational(group_order) * bracket / 2;
}

inline Rational genus_from_type(std::uint64_t group_order, const UnorderedType &tau) {
  return genus_from_type(BigInt(group_order), tau);
}

struct SurfaceInvariants {
  std::int64_t genus_1 = 0;
  std::int64_t genus_2 = 0;
  std::int64_t chi = 0;
  std::int64_t K2 = 0;
  std::int64_t euler = 0;
  std::int64_t irregularity = 0;

  bool operator==(const SurfaceInvariants &) const = default;
};

enum class RejectReason {
  invalid_input,
  not_generating,
  product_nonzero,
  not_disjoint,
  genus_not_integral,
  genus_below_two,
};

inline const char *to_string(RejectReason r) {
  switch (r) {
  case RejectReason::invalid_input: return "invalid-input";
  case RejectReason::not_generating: return "not-generating";
  case RejectReason::product_nonzero: return "product-nonzero";
  case RejectReason::not_disjoint: return "not-disjoint";
  case RejectReason::genus_not_integral: return "genus-not-integral";
  case RejectReason::genus_below_two: return "genus-below-two";
  }
  return "unknown";
}

struct Rejection {
  RejectReason reason;
  int side; // 1 or 2 for per-tuple failures, 0 for the pair
  std::string detail;
};

class RamificationStructure;
inline std::variant<RamificationStructure, Rejection>
validate_ramification(const GeneratingTuple &t1, const GeneratingTuple &t2, const GroupContext &ctx);

class RamificationStructure {
public:
  const GroupContext &context() const noexcept { return ctx_; }
  const GeneratingTuple &T1() const noexcept { return t1_; }
  const GeneratingTuple &T2() const noexcept { return t2_; }
  const UnorderedType &tau1() const noexcept { return tau1_; }
  const UnorderedType &tau2() const noexcept { return tau2_; }
  const SurfaceInvariants &invariants() const noexcept { return inv_; }

private:
  friend std::variant<RamificationStructure, Rejection>
  validate_ramification(const GeneratingTuple &, const GeneratingTuple &, const GroupContext &);

  RamificationStructure(GroupContext ctx, GeneratingTuple t1, GeneratingTuple t2)
      : ctx_(ctx), t1_(std::move(t1)), t2_(std::move(t2)), tau1_(UnorderedType::of(t1_)),
        tau2_(UnorderedType::of(t2_)) {}

  GroupContext ctx_;
  GeneratingTuple t1_;
  GeneratingTuple t2_;
  UnorderedType tau1_;
  UnorderedType tau2_;
  SurfaceInvariants inv_;
};

namespace detail {

inline std::int64_t to_int64(const BigInt &v, const char *what) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN))
    throw Refusal(std::string(what) + " exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

inline std::optional<Rejection> check_genus(const GroupContext &ctx, const GeneratingTuple &t,
                                            int side) {
  const Rational g = genus_from_type(ctx.order(), UnorderedType::of(t));
  if (denominator(g) != 1)
    return Rejection{RejectReason::genus_not_integral, side,
                     "genus " + g.str() + " is not an integer"};
  if (g < 2)
    return Rejection{RejectReason::genus_below_two, side, "genus " + g.str() + " < 2"};
  return std::nullopt;
}

inline std::optional<Rejection> check_tuple(const GroupContext &ctx, const GeneratingTuple &t,
                                            int side) {
  if (t.rank() != ctx.rank())
    return Rejection{RejectReason::invalid_input, side, "tuple rank does not match group rank"};
  if (t.size() < 3)
    return Rejection{RejectReason::invalid_input, side, "tuple length must be > 2"};
  for (const auto &e : t)
    if (e.is_zero())
      return Rejection{RejectReason::invalid_input, side, "tuple contains the identity"};
  if (auto r = check_genus(ctx, t, side))
    return r;
  if (!t.sum().is_zero())
    return Rejection{RejectReason::product_nonzero, side, "entries do not sum to zero"};
  if (span_rank(t.entries()) != ctx.rank())
    return Rejection{RejectReason::not_generating, side, "entries do not generate the group"};
  return std::nullopt;
}

} // namespace detail

/// Invariants of the surface (C1 x C2)/G. Both chi formulas are evaluated
/// and must agree; 4 chi = |G| A1 A2 with A_i = -2 + sum (1 - 1/m).
inline SurfaceInvariants surface_invariants(const RamificationStructure &s) {
  const BigInt order(s.context().order());
  const Rational g1 = genus_from_type(order, s.tau1());
  const Rational g2 = genus_from_type(order, s.tau2());
  auto bracket = [](const UnorderedType &tau) {
    Rational b(-2);
    for (auto m : tau.orders())
      b += Rational(1) - Rational(1, m);
    return b;
  };
  const Rational chi_from_types = Rational(order) * bracket(s.tau1()) * bracket(s.tau2()) / 4;
  const Rational chi_from_genera = (g1 - 1) * (g2 - 1) / Rational(order);
  if (chi_from_types != chi_from_genera)
    throw InvariantViolation("chi formulas disagree: " + chi_from_types.str() + " vs " +
                             chi_from_genera.str());
  if (denominator(chi_from_types) != 1 || denominator(g1) != 1 || denominator(g2) != 1)
    throw InvariantViolation("non-integral invariants for a validated structure");
  SurfaceInvariants inv;
  inv.genus_1 = detail::to_int64(numerator(g1), "genus");
  inv.genus_2 = detail::to_int64(numerator(g2), "genus");
  inv.chi = detail::to_int64(numerator(chi_from_types), "chi");
  inv.euler = 4 * inv.chi;
  inv.K2 = 8 * inv.chi;
  // Both quotient curves are P^1, so q = g(C1/G) + g(C2/G) = 0.
  inv.irregularity = 0;
  if (inv.chi <= 0)
    throw InvariantViolation("chi must be positive");
  return inv;
}

/// Order of checks: each tuple (T1 then T2) for structure, genus, product
/// and generation; then the pair for disjointness.
inline std::variant<RamificationStructure, Rejection>
validate_ramification(const GeneratingTuple &t1, const GeneratingTuple &t2, const GroupContext &ctx) {
  if (auto r = detail::check_tuple(ctx, t1, 1))
    return *r;
  if (auto r = detail::check_tuple(ctx, t2, 2))
    return *r;
  if (!are_disjoint(t1, t2))
    return Rejection{RejectReason::not_disjoint, 0, "Sigma-sets intersect outside the identity"};
  RamificationStructure s(ctx, t1, t2);
  s.inv_ = surface_invariants(s);
  return s;
}

/// Throwing form for callers that require validity.
inline RamificationStructure validate_or_throw(const GeneratingTuple &t1, const GeneratingTuple &t2,
                                               const GroupContext &ctx) {
  auto r = validate_ramification(t1, t2, ctx);
  if (auto *rej = std::get_if<Rejection>(&r))
    throw InvalidInput(std::string("not a ramification structure: ") + to_string(rej->reason) +
                       " (" + rej->detail + ")");
  return std::get<RamificationStructure>(std::move(r));
}

} // namespace ramify
