#pragma once

// Braid (Hurwitz) moves, canonical keys under B_r1 x B_r2 x Aut(G), and
// exhaustive censuses of equivalence classes of ramification structures.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ramify/bigcount.hpp"
#include "ramify/construction.hpp"
#include "ramify/errors.hpp"
#include "ramify/group.hpp"
#include "ramify/spherical.hpp"

namespace ramify {

inline constexpr std::size_t kDefaultOrbitCap = 1'000'000;

/// Artin generator gamma_i, 1-based, acting on positions i and i+1.
struct BraidMoveIndex {
  std::size_t i;
};

namespace detail {
inline void check_braid_index(const GeneratingTuple &t, BraidMoveIndex idx) {
  if (idx.i < 1 || idx.i + 1 > t.size())
    throw InvalidInput("braid index " + std::to_string(idx.i) + " outside [1, " +
                       std::to_string(t.size() > 0 ? t.size() - 1 : 0) + "]");
}
} // namespace detail

/// (.., v_i, v_{i+1}, ..) -> (.., v_{i+1}, v_{i+1}^{-1} v_i v_{i+1}, ..)
inline GeneratingTuple braid_move(const GeneratingTuple &t, BraidMoveIndex idx) {
  detail::check_braid_index(t, idx);
  std::vector<GroupElement> v = t.entries();
  const auto a = v[idx.i - 1];
  const auto b = v[idx.i];
  v[idx.i - 1] = b;
  v[idx.i] = b.inverse() + a + b;
  return GeneratingTuple(t.rank(), std::move(v));
}

/// gamma_i^{-1}: (.., v_i, v_{i+1}, ..) -> (.., v_i v_{i+1} v_i^{-1}, v_i, ..)
inline GeneratingTuple braid_move_inverse(const GeneratingTuple &t, BraidMoveIndex idx) {
  detail::check_braid_index(t, idx);
  std::vector<GroupElement> v = t.entries();
  const auto a = v[idx.i - 1];
  const auto b = v[idx.i];
  v[idx.i - 1] = a + b + a.inverse();
  v[idx.i] = a;
  return GeneratingTuple(t.rank(), std::move(v));
}

/// Over an abelian group braid moves are transpositions, so the sorted
/// tuple represents the orbit.
inline GeneratingTuple braid_canonical_abelian(const GeneratingTuple &t) {
  std::vector<GroupElement> v = t.entries();
  std::sort(v.begin(), v.end());
  return GeneratingTuple(t.rank(), std::move(v));
}

/// Closure of t under all gamma_i and their inverses.
inline std::set<GeneratingTuple> braid_orbit_bfs(const GeneratingTuple &t,
                                                 std::size_t cap = kDefaultOrbitCap) {
  std::set<GeneratingTuple> seen{t};
  std::queue<GeneratingTuple> frontier;
  frontier.push(t);
  while (!frontier.empty()) {
    const GeneratingTuple cur = std::move(frontier.front());
    frontier.pop();
    for (std::size_t i = 1; i < cur.size(); ++i) {
      for (auto next : {braid_move(cur, {i}), braid_move_inverse(cur, {i})}) {
        if (seen.insert(next).second) {
          if (seen.size() > cap)
            throw BudgetExceeded("braid orbit exceeds cap " + std::to_string(cap), seen.size());
          frontier.push(std::move(next));
        }
      }
    }
  }
  return seen;
}

/// Bytes identifying an equivalence class. Layout: rank byte, then for each
/// of the T1 and T2 blocks a 4-byte big-endian length followed by the sorted
/// entries, each ceil(k/8) bytes big-endian.
struct CanonicalClassKey {
  std::vector<std::uint8_t> bytes;

  std::string to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (auto b : bytes) {
      s += digits[b >> 4];
      s += digits[b & 15];
    }
    return s;
  }

  auto operator<=>(const CanonicalClassKey &) const = default;
};

using Multiset = std::vector<std::uint64_t>; // sorted encodings

namespace detail {

inline Multiset sorted_bits(const GeneratingTuple &t) {
  Multiset m;
  m.reserve(t.size());
  for (const auto &e : t)
    m.push_back(e.bits());
  std::sort(m.begin(), m.end());
  return m;
}

inline std::vector<std::uint64_t> image_table(unsigned rank, const std::vector<std::uint64_t> &columns) {
  std::vector<std::uint64_t> image(std::size_t{1} << rank, 0);
  for (std::uint64_t v = 1; v < image.size(); ++v) {
    const unsigned low = static_cast<unsigned>(std::countr_zero(v));
    image[v] = image[v & (v - 1)] ^ columns[low];
  }
  return image;
}

inline Multiset apply_table(const std::vector<std::uint64_t> &image, const Multiset &m) {
  Multiset out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    out[i] = image[m[i]];
  std::sort(out.begin(), out.end());
  return out;
}

inline void append_block(std::vector<std::uint8_t> &out, unsigned rank, const Multiset &m) {
  const auto len = static_cast<std::uint32_t>(m.size());
  for (int s = 24; s >= 0; s -= 8)
    out.push_back(static_cast<std::uint8_t>(len >> s));
  const unsigned width = (rank + 7) / 8;
  for (auto v : m)
    for (unsigned b = width; b-- > 0;)
      out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

} // namespace detail

/// Computes canonical keys by minimizing over GL(k,2). The T1 block is
/// compared first, so only automorphisms minimizing the T1 image are tried on
/// T2; those minimizers are cached per T1 multiset.
class Canonicalizer {
public:
  explicit Canonicalizer(const GroupContext &ctx, unsigned aut_cap = kDefaultAutCap)
      : ctx_(ctx), auts_(ctx, aut_cap) {
    if (ctx.rank() > 20)
      throw Refusal("canonicalization requires rank <= 20");
  }

  const GroupContext &context() const noexcept { return ctx_; }

  struct Minimizers {
    Multiset image;
    std::vector<std::vector<std::uint64_t>> tables;
  };

  /// Lexicographically least pair (sorted phi A, sorted phi B).
  std::pair<Multiset, Multiset> least_image(const Multiset &a, const Multiset &b) {
    const Minimizers &mins = minimizers(a);
    std::optional<Multiset> best;
    for (const auto &table : mins.tables) {
      Multiset img = detail::apply_table(table, b);
      if (!best || img < *best)
        best = std::move(img);
    }
    return {mins.image, *best};
  }

  CanonicalClassKey key(const GeneratingTuple &t1, const GeneratingTuple &t2, bool unordered_pair) {
    if (t1.rank() != ctx_.rank() || t2.rank() != ctx_.rank())
      throw InvalidInput("tuple rank does not match group rank");
    return key_of(detail::sorted_bits(t1), detail::sorted_bits(t2), unordered_pair);
  }

  /// Multisets as sorted encodings. The swap is taken only when both types
  /// match, i.e. equal lengths in (Z/2Z)^k.
  CanonicalClassKey key_of(const Multiset &a, const Multiset &b, bool unordered_pair) {
    auto best = least_image(a, b);
    if (unordered_pair && a.size() == b.size()) {
      auto swapped = least_image(b, a);
      if (swapped < best)
        best = std::move(swapped);
    }
    CanonicalClassKey k;
    k.bytes.push_back(static_cast<std::uint8_t>(ctx_.rank()));
    detail::append_block(k.bytes, ctx_.rank(), best.first);
    detail::append_block(k.bytes, ctx_.rank(), best.second);
    return k;
  }

  /// Automorphisms whose image of `a` is least; cached.
  const Minimizers &minimizers(const Multiset &a) {
    if (auto it = cache_.find(a); it != cache_.end())
      return it->second;
    Minimizers m;
    for (auto it = auts_.begin(); it != auts_.end(); ++it) {
      auto table = detail::image_table(ctx_.rank(), it.columns());
      Multiset img = detail::apply_table(table, a);
      if (m.tables.empty() || img < m.image) {
        m.image = std::move(img);
        m.tables.clear();
        m.tables.push_back(std::move(table));
      } else if (img == m.image) {
        m.tables.push_back(std::move(table));
      }
    }
    if (cache_.size() > kCacheLimit)
      cache_.clear();
    return cache_.emplace(a, std::move(m)).first->second;
  }

private:
  static constexpr std::size_t kCacheLimit = 4096;

  GroupContext ctx_;
  AutEnumeration auts_;
  std::map<Multiset, Minimizers> cache_;
};

inline CanonicalClassKey canonical_class_key(const GeneratingTuple &t1, const GeneratingTuple &t2,
                                             const GroupContext &ctx, bool unordered_pair = true,
                                             unsigned aut_cap = kDefaultAutCap) {
  Canonicalizer c(ctx, aut_cap);
  return c.key(t1, t2, unordered_pair);
}

/// Multisets of size r over {1, ..., n} as non-decreasing sequences, in
/// lexicographic order.
class MultisetRange {
public:
  MultisetRange(std::uint64_t n, std::size_t r) : n_(n), r_(r) {}

  template <class F> void for_each(F &&f) const {
    if (n_ == 0)
      return;
    Multiset cur(r_, 1);
    while (true) {
      f(static_cast<const Multiset &>(cur));
      std::size_t i = r_;
      while (i > 0 && cur[i - 1] == n_)
        --i;
      if (i == 0)
        return;
      const auto v = cur[i - 1] + 1;
      for (std::size_t j = i - 1; j < r_; ++j)
        cur[j] = v;
    }
  }

  BigCount size() const { return binomial(BigCount(n_ + r_ - 1), BigCount(r_)); }

private:
  std::uint64_t n_;
  std::size_t r_;
};

enum class CensusMethod { canonical_key, union_find, both };

inline const char *to_string(CensusMethod m) {
  switch (m) {
  case CensusMethod::canonical_key: return "canonical-key";
  case CensusMethod::union_find: return "union-find";
  case CensusMethod::both: return "both";
  }
  return "unknown";
}

struct Budget {
  double max_seconds = 600.0;
  std::uint64_t max_nodes = 2'000'000'000ull;
};

struct CensusConfig {
  std::size_t r1 = 0;
  std::size_t r2 = 0;
  bool unordered_pair = true;
  CensusMethod method = CensusMethod::both;
  Budget budget{};
  unsigned threads = 1;
  unsigned aut_cap = kDefaultAutCap;
};

struct CensusResult {
  unsigned k = 0;
  UnorderedType tau1;
  UnorderedType tau2;
  bool unordered_pair = true;
  BigCount class_count = 0;
  std::uint64_t valid_pairs = 0;
  std::map<std::string, BigCount> rejected;
  std::chrono::milliseconds elapsed{0};
  CensusMethod method = CensusMethod::canonical_key;
};

/// Partial state when a census runs out of budget.
class CensusBudgetExceeded : public BudgetExceeded {
public:
  CensusBudgetExceeded(const std::string &what, std::uint64_t frontier, std::uint64_t pairs_examined,
                       std::uint64_t partial_keys)
      : BudgetExceeded(what, frontier), pairs_examined_(pairs_examined), partial_keys_(partial_keys) {}

  std::uint64_t pairs_examined() const noexcept { return pairs_examined_; }
  std::uint64_t partial_keys() const noexcept { return partial_keys_; }

private:
  std::uint64_t pairs_examined_;
  std::uint64_t partial_keys_;
};

namespace detail {

struct SideSurvey {
  std::vector<Multiset> valid;
  std::vector<std::uint64_t> support; // bitmask of distinct entries, parallel to valid
  BigCount total = 0;
  std::map<std::string, BigCount> rejected;
};

// Genus first (depends only on r), then product, then generation, matching
// validate_ramification.
inline SideSurvey survey_side(const GroupContext &ctx, std::size_t r) {
  SideSurvey s;
  const std::uint64_t n = ctx.order() - 1;
  const MultisetRange range(n, r);
  s.total = range.size();
  const Rational g = genus_from_type(ctx.order(), UnorderedType::involutions(r));
  if (r < 3) {
    s.rejected[to_string(RejectReason::invalid_input)] = s.total;
    return s;
  }
  if (denominator(g) != 1) {
    s.rejected[to_string(RejectReason::genus_not_integral)] = s.total;
    return s;
  }
  if (g < 2) {
    s.rejected[to_string(RejectReason::genus_below_two)] = s.total;
    return s;
  }
  std::uint64_t product_bad = 0, span_bad = 0;
  std::vector<GroupElement> elems(r);
  range.for_each([&](const Multiset &m) {
    std::uint64_t x = 0, support = 0;
    for (auto v : m) {
      x ^= v;
      support |= std::uint64_t{1} << v;
    }
    if (x != 0) {
      ++product_bad;
      return;
    }
    for (std::size_t i = 0; i < r; ++i)
      elems[i] = GroupElement::from_bits(ctx.rank(), m[i]);
    if (span_rank(elems) != ctx.rank()) {
      ++span_bad;
      return;
    }
    s.valid.push_back(m);
    s.support.push_back(support);
  });
  if (product_bad)
    s.rejected[to_string(RejectReason::product_nonzero)] = product_bad;
  if (span_bad)
    s.rejected[to_string(RejectReason::not_generating)] = span_bad;
  return s;
}

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return;
    if (size_[a] < size_[b])
      std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
  }

  std::size_t components() const noexcept { return components_; }

private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

struct MultisetPairHash {
  std::size_t operator()(const std::pair<Multiset, Multiset> &p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    auto mix = [&](std::uint64_t v) { h = (h ^ v) * 0x100000001b3ull; };
    for (auto v : p.first)
      mix(v);
    mix(0xffff);
    for (auto v : p.second)
      mix(v);
    return h;
  }
};

class BudgetClock {
public:
  explicit BudgetClock(const Budget &b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

  bool exhausted(std::uint64_t nodes) const {
    if (nodes > budget_.max_nodes)
      return true;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    return dt.count() > budget_.max_seconds;
  }

  std::chrono::milliseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start_);
  }

private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
};

} // namespace detail

/// Estimated work for a census: side enumeration, pair tests, and the
/// automorphism sweeps (bounded by pairs x |GL|).
inline BigCount census_node_estimate(const GroupContext &ctx, std::size_t r1, std::size_t r2) {
  const std::uint64_t n = ctx.order() - 1;
  const BigCount a = MultisetRange(n, r1).size();
  const BigCount b = MultisetRange(n, r2).size();
  return a + b + a * b;
}

/// Exhaustive count of classes of ramification structures of type
/// ((2^r1),(2^r2)) on (Z/2Z)^k. Multisets stand in for braid orbits.
inline CensusResult brute_force_census(const GroupContext &ctx, const CensusConfig &cfg) {
  const std::uint64_t gl = gl_order(ctx.rank());
  if (ctx.rank() > cfg.aut_cap)
    throw Refusal("census refused: rank " + std::to_string(ctx.rank()) + " exceeds Aut cap " +
                  std::to_string(cfg.aut_cap));
  const BigCount estimate = census_node_estimate(ctx, cfg.r1, cfg.r2);
  if (estimate > BigCount(cfg.budget.max_nodes))
    throw Refusal("census refused: estimated " + estimate.str() + " nodes exceeds budget " +
                  std::to_string(cfg.budget.max_nodes));

  detail::BudgetClock clock(cfg.budget);
  CensusResult res;
  res.k = ctx.rank();
  res.tau1 = UnorderedType::involutions(cfg.r1);
  res.tau2 = UnorderedType::involutions(cfg.r2);
  res.unordered_pair = cfg.unordered_pair;
  res.method = cfg.method;

  const auto side1 = detail::survey_side(ctx, cfg.r1);
  const auto side2 = cfg.r2 == cfg.r1 ? side1 : detail::survey_side(ctx, cfg.r2);

  // Rejections in pair units: a pair is charged to the first failing check.
  const BigCount ok1 = side1.valid.size(), ok2 = side2.valid.size();
  for (const auto &[cause, c] : side1.rejected)
    res.rejected[cause] += c * side2.total;
  for (const auto &[cause, c] : side2.rejected)
    res.rejected[cause] += ok1 * c;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::uint64_t nodes = 0, examined = 0;
  for (std::uint32_t i = 0; i < side1.valid.size(); ++i) {
    if (clock.exhausted(nodes))
      throw CensusBudgetExceeded("census budget exceeded during pair scan", i, examined, 0);
    for (std::uint32_t j = 0; j < side2.valid.size(); ++j) {
      ++nodes;
      ++examined;
      if ((side1.support[i] & side2.support[j]) == 0)
        pairs.emplace_back(i, j);
    }
  }
  const BigCount not_disjoint = ok1 * ok2 - pairs.size();
  if (not_disjoint > 0)
    res.rejected[to_string(RejectReason::not_disjoint)] = not_disjoint;
  res.valid_pairs = pairs.size();

  std::optional<std::uint64_t> by_key, by_union_find;

  if (cfg.method != CensusMethod::union_find) {
    // Shards are contiguous ranges of the pair list; each builds its own key
    // set and the sets merge by union.
    const unsigned shards = std::max(1u, std::min<unsigned>(cfg.threads, 64));
    std::vector<std::set<CanonicalClassKey>> keys(shards);
    std::vector<std::exception_ptr> errors(shards);
    auto work = [&](unsigned s) {
      try {
        Canonicalizer canon(ctx, cfg.aut_cap);
        const std::size_t lo = pairs.size() * s / shards, hi = pairs.size() * (s + 1) / shards;
        for (std::size_t p = lo; p < hi; ++p) {
          if ((p - lo) % 256 == 0 && clock.exhausted(nodes + (p - lo) * gl))
            throw CensusBudgetExceeded("census budget exceeded during canonicalization", p, examined,
                                       keys[s].size());
          keys[s].insert(canon.key_of(side1.valid[pairs[p].first], side2.valid[pairs[p].second],
                                      cfg.unordered_pair));
        }
      } catch (...) {
        errors[s] = std::current_exception();
      }
    };
    if (shards == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned s = 0; s < shards; ++s)
        pool.emplace_back(work, s);
      for (auto &t : pool)
        t.join();
    }
    for (auto &e : errors)
      if (e)
        std::rethrow_exception(e);
    std::set<CanonicalClassKey> merged;
    for (auto &k : keys)
      merged.merge(k);
    by_key = merged.size();
  }

  if (cfg.method != CensusMethod::canonical_key) {
    std::unordered_map<std::pair<Multiset, Multiset>, std::size_t, detail::MultisetPairHash> index;
    index.reserve(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p)
      index.emplace(std::make_pair(side1.valid[pairs[p].first], side2.valid[pairs[p].second]), p);
    detail::UnionFind uf(pairs.size());
    const bool swap = cfg.unordered_pair && cfg.r1 == cfg.r2;
    const AutEnumeration auts(ctx, cfg.aut_cap);
    for (auto it = auts.begin(); it != auts.end(); ++it) {
      if (clock.exhausted(nodes))
        throw CensusBudgetExceeded("census budget exceeded during union-find sweep", it.index(),
                                   examined, 0);
      const auto table = detail::image_table(ctx.rank(), it.columns());
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const Multiset &a = side1.valid[pairs[p].first];
        const Multiset &b = side2.valid[pairs[p].second];
        auto ia = detail::apply_table(table, a);
        auto ib = detail::apply_table(table, b);
        auto hit = index.find({ia, ib});
        if (hit == index.end())
          throw InvariantViolation("automorphism image of a valid pair is not a valid pair");
        uf.unite(p, hit->second);
        if (swap) {
          auto hs = index.find({ib, ia});
          if (hs == index.end())
            throw InvariantViolation("swapped image of a valid pair is not a valid pair");
          uf.unite(p, hs->second);
        }
      }
      nodes += pairs.size();
    }
    by_union_find = uf.components();
  }

  if (by_key && by_union_find && *by_key != *by_union_find)
    throw InvariantViolation("census methods disagree: canonical-key " + std::to_string(*by_key) +
                             " vs union-find " + std::to_string(*by_union_find));
  res.class_count = by_key ? *by_key : *by_union_find;
  res.elapsed = clock.elapsed();
  return res;
}

/// Slow path over ordered tuples: braid orbits come from breadth-first
/// closure rather than sorting, and Aut acts on orbit pairs through a
/// union-find. Only for tiny instances (n^r ordered tuples per side).
inline BigCount ordered_tuple_census(const GroupContext &ctx, std::size_t r1, std::size_t r2,
                                     bool unordered_pair, std::uint64_t max_tuples = 2'000'000) {
  const std::uint64_t n = ctx.order() - 1;
  auto side = [&](std::size_t r) {
    // Orbit id for every valid ordered tuple, plus one representative each.
    std::map<GeneratingTuple, std::size_t> orbit_of;
    std::vector<GeneratingTuple> reps;
    if (r < 3)
      return std::pair{orbit_of, reps};
    const Rational g = genus_from_type(ctx.order(), UnorderedType::involutions(r));
    if (denominator(g) != 1 || g < 2)
      return std::pair{orbit_of, reps};
    BigCount space = 1;
    for (std::size_t i = 0; i < r; ++i)
      space *= n;
    if (space > BigCount(max_tuples))
      throw Refusal("ordered-tuple census refused: " + space.str() + " tuples");
    std::vector<std::uint64_t> digits(r, 1);
    while (true) {
      auto t = GeneratingTuple::from_bits(ctx.rank(), digits);
      if (is_spherical_system(t, ctx) && !orbit_of.contains(t)) {
        const std::size_t id = reps.size();
        reps.push_back(t);
        for (const auto &member : braid_orbit_bfs(t))
          orbit_of.emplace(member, id);
      }
      std::size_t i = r;
      while (i > 0 && digits[i - 1] == n)
        digits[--i] = 1;
      if (i == 0)
        break;
      ++digits[i - 1];
    }
    return std::pair{orbit_of, reps};
  };
  const auto [orb1, reps1] = side(r1);
  const auto [orb2, reps2] = side(r2);
  if (reps1.empty() || reps2.empty())
    return 0;

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < reps1.size(); ++a)
    for (std::size_t b = 0; b < reps2.size(); ++b)
      if (are_disjoint(reps1[a], reps2[b])) {
        index.emplace(std::pair{a, b}, pairs.size());
        pairs.emplace_back(a, b);
      }
  detail::UnionFind uf(pairs.size());
  const bool swap = unordered_pair && r1 == r2;
  for (const auto &phi : AutEnumeration(ctx).materialize()) {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto ia = orb1.at(apply_aut(phi, reps1[pairs[p].first]));
      const auto ib = orb2.at(apply_aut(phi, reps2[pairs[p].second]));
      uf.unite(p, index.at({ia, ib}));
      if (swap) {
        // With r1 == r2 the orbit tables coincide.
        uf.unite(p, index.at({ib, ia}));
      }
    }
  }
  return uf.components();
}

struct DistinctnessReport {
  BigCount family_count = 0;
  std::uint64_t examined = 0;
  std::uint64_t distinct_keys = 0;
  bool all_distinct = false;
};

/// Canonical keys of the family members (optionally only the first
/// `limit`), and whether they are pairwise distinct.
inline DistinctnessReport family_distinctness_report(const FamilyParams &p,
                                                     std::optional<std::uint64_t> limit = std::nullopt,
                                                     Budget budget = {},
                                                     unsigned aut_cap = kDefaultAutCap) {
  DistinctnessReport rep;
  rep.family_count = family_count(p);
  const GroupContext ctx(p.k());
  Canonicalizer canon(ctx, aut_cap);
  detail::BudgetClock clock(budget);
  std::set<CanonicalClassKey> keys;
  const auto fam = build_family(p);
  for (const auto &c : compositions(p.composition_total(), p.composition_parts())) {
    if (limit && rep.examined >= *limit)
      break;
    if (clock.exhausted(rep.examined))
      throw BudgetExceeded("family distinctness budget exceeded", rep.examined);
    const auto s = fam.member(c);
    keys.insert(canon.key(s.T1(), s.T2(), true));
    ++rep.examined;
  }
  rep.distinct_keys = keys.size();
  rep.all_distinct = rep.distinct_keys == rep.examined;
  return rep;
}

inline bool family_distinctness(const FamilyParams &p) {
  const auto rep = family_distinctness_report(p);
  return rep.all_distinct && BigCount(rep.examined) == rep.family_count;
}

} // namespace ramify
