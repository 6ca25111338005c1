#pragma once

// Runtime property suites behind `ramify verify`. Every randomized check
// draws from one std::mt19937_64 seeded by the caller.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ramify/bounds.hpp"
#include "ramify/construction.hpp"
#include "ramify/group.hpp"
#include "ramify/orbits.hpp"
#include "ramify/spherical.hpp"

namespace ramify::verify {

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  std::vector<std::string> failures;

  bool ok() const noexcept { return passed == total; }
};

class Suite {
public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  void check(const std::string &what, const std::function<bool()> &f) {
    ++result_.total;
    try {
      if (f()) {
        ++result_.passed;
        return;
      }
      result_.failures.push_back(what);
    } catch (const std::exception &e) {
      result_.failures.push_back(what + ": " + e.what());
    }
  }

  SuiteResult result() && { return std::move(result_); }

private:
  SuiteResult result_;
};

namespace gen {

inline GroupElement element(std::mt19937_64 &rng, unsigned k, bool nonzero = true) {
  std::uniform_int_distribution<std::uint64_t> d(nonzero ? 1 : 0, (std::uint64_t{1} << k) - 1);
  return GroupElement::from_bits(k, d(rng));
}

inline GeneratingTuple tuple(std::mt19937_64 &rng, unsigned k, std::size_t r) {
  std::vector<GroupElement> v;
  for (std::size_t i = 0; i < r; ++i)
    v.push_back(element(rng, k));
  return GeneratingTuple(k, std::move(v));
}

/// Random spherical system of length about r >= k + 1: random entries and a
/// closing entry fixing the sum, retried until the tuple generates.
inline GeneratingTuple spherical(std::mt19937_64 &rng, unsigned k, std::size_t r) {
  const GroupContext ctx(k);
  for (unsigned attempts = 0;; ++attempts) {
    // Some (k, r) admit no spherical system at all (k = 1 needs r even).
    if (attempts == 256)
      r = r > k + 1 ? r - 1 : r + 1;
    std::vector<GroupElement> v;
    for (std::size_t i = 0; i + 1 < r; ++i)
      v.push_back(element(rng, k));
    GroupElement s = GroupElement::zero(k);
    for (const auto &e : v)
      s = s + e;
    if (s.is_zero())
      continue;
    v.push_back(s);
    std::shuffle(v.begin(), v.end(), rng);
    GeneratingTuple t(k, std::move(v));
    if (is_spherical_system(t, ctx))
      return t;
  }
}

inline AutMatrix aut(std::mt19937_64 &rng, unsigned k) {
  const AutEnumeration e(GroupContext(k), 8);
  std::uniform_int_distribution<std::uint64_t> d(0, e.size() - 1);
  return e.at(d(rng));
}

} // namespace gen

inline SuiteResult group_suite(std::uint64_t seed) {
  Suite s("group");
  std::mt19937_64 rng(seed);
  s.check("add: involution and identity, k <= 10", [] {
    for (unsigned k = 1; k <= 10; ++k)
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
        const auto a = GroupElement::from_bits(k, v);
        if (!(a + a).is_zero() || a + GroupElement::zero(k) != a)
          return false;
      }
    return true;
  });
  s.check("enumerate_aut: |GL(k,2)| distinct invertible, k <= 4", [] {
    for (unsigned k = 1; k <= 4; ++k) {
      std::set<std::vector<std::uint64_t>> seen;
      for (const auto &m : AutEnumeration(GroupContext(k)).materialize()) {
        std::vector<GroupElement> rows;
        for (auto r : m.rows())
          rows.push_back(GroupElement::from_bits(k, r));
        if (span_rank(rows) != k)
          return false;
        seen.insert(m.rows());
      }
      if (seen.size() != gl_order(k))
        return false;
    }
    return true;
  });
  s.check("apply_aut composes", [&] {
    for (int trial = 0; trial < 200; ++trial) {
      const unsigned k = 1 + rng() % 5;
      const auto p = gen::aut(rng, k), q = gen::aut(rng, k);
      const auto t = gen::tuple(rng, k, 1 + rng() % 8);
      if (apply_aut(p, apply_aut(q, t)) != apply_aut(p * q, t))
        return false;
    }
    return true;
  });
  s.check("span_rank invariant under apply_aut", [&] {
    for (int trial = 0; trial < 200; ++trial) {
      const unsigned k = 1 + rng() % 5;
      const auto t = gen::tuple(rng, k, 1 + rng() % 8);
      if (span_rank(apply_aut(gen::aut(rng, k), t).entries()) != span_rank(t.entries()))
        return false;
    }
    return true;
  });
  return std::move(s).result();
}

inline SuiteResult spherical_suite(std::uint64_t seed) {
  Suite s("spherical");
  std::mt19937_64 rng(seed);
  s.check("sigma_set literal union equals {0} u entries, k <= 8", [&] {
    for (int trial = 0; trial < 100; ++trial) {
      const unsigned k = 1 + rng() % 8;
      const auto t = gen::tuple(rng, k, 1 + rng() % 10);
      if (sigma_set_literal(t) != sigma_set(t))
        return false;
    }
    return true;
  });
  s.check("are_disjoint is symmetric", [&] {
    for (int trial = 0; trial < 300; ++trial) {
      const unsigned k = 2 + rng() % 4;
      const auto a = gen::tuple(rng, k, 1 + rng() % 5), b = gen::tuple(rng, k, 1 + rng() % 5);
      if (are_disjoint(a, b) != are_disjoint(b, a))
        return false;
    }
    return true;
  });
  s.check("is_spherical_system invariant under permutation and Aut", [&] {
    for (int trial = 0; trial < 200; ++trial) {
      const unsigned k = 1 + rng() % 5;
      const GroupContext ctx(k);
      auto t = gen::tuple(rng, k, 3 + rng() % 8);
      auto entries = t.entries();
      std::shuffle(entries.begin(), entries.end(), rng);
      const bool base = is_spherical_system(t, ctx);
      if (base != is_spherical_system(GeneratingTuple(k, entries), ctx))
        return false;
      if (base != is_spherical_system(apply_aut(gen::aut(rng, k), t), ctx))
        return false;
    }
    return true;
  });
  s.check("genus integral for |G| = 2^k, k >= 2, r in [5, 64]", [] {
    for (unsigned k = 2; k <= 20; ++k)
      for (std::size_t r = 5; r <= 64; ++r)
        if (denominator(genus_from_type(std::uint64_t{1} << k, UnorderedType::involutions(r))) != 1)
          return false;
    return true;
  });
  s.check("(g1-1)(g2-1) = |G| chi for family members", [] {
    for (unsigned l = 4; l <= 6; ++l)
      for (const auto &st : build_family(FamilyParams(3, l)).collect()) {
        const auto &inv = st.invariants();
        if ((inv.genus_1 - 1) * (inv.genus_2 - 1) != 8 * inv.chi || inv.euler != 4 * inv.chi ||
            inv.K2 != 8 * inv.chi)
          return false;
      }
    return true;
  });
  return std::move(s).result();
}

inline SuiteResult construction_suite(std::uint64_t) {
  Suite s("construction");
  s.check("family size equals closed form", [] {
    for (unsigned l = 4; l <= 7; ++l) {
      const FamilyParams p(3, l);
      if (BigCount(build_family(p).collect().size()) != family_count(p))
        return false;
    }
    const FamilyParams p(4, 8);
    return BigCount(compositions(p.composition_total(), p.composition_parts()).count()) == family_count(p);
  });
  s.check("T1 multiset stabilizer is trivial, k = 3, 4", [] {
    for (unsigned k : {3u, 4u}) {
      const auto t1 = braid_canonical_abelian(build_T1(k));
      std::size_t fixing = 0;
      for (const auto &m : AutEnumeration(GroupContext(k)).materialize())
        if (braid_canonical_abelian(apply_aut(m, t1)) == t1)
          ++fixing;
      if (fixing != 1)
        return false;
    }
    return true;
  });
  s.check("distinct compositions give distinct T2 multisets", [] {
    std::set<GeneratingTuple> seen;
    const FamilyParams p(3, 6);
    std::size_t n = 0;
    for (const auto &c : compositions(p.composition_total(), p.composition_parts())) {
      seen.insert(braid_canonical_abelian(build_T2(3, c)));
      ++n;
    }
    return seen.size() == n;
  });
  s.check("family members are disjoint", [] {
    for (const auto &st : build_family(FamilyParams(3, 5)).collect())
      if (!are_disjoint(st.T1(), st.T2()))
        return false;
    return true;
  });
  return std::move(s).result();
}

inline SuiteResult orbits_suite(std::uint64_t seed) {
  Suite s("orbits");
  std::mt19937_64 rng(seed);
  s.check("braid_move preserves length, multiset, sum and span", [&] {
    for (int trial = 0; trial < 300; ++trial) {
      const unsigned k = 1 + rng() % 6;
      const auto t = gen::spherical(rng, k, std::max<std::size_t>(k + 1, 3 + rng() % 8));
      const std::size_t i = 1 + rng() % (t.size() - 1);
      const auto u = braid_move(t, {i});
      if (u.size() != t.size() || braid_canonical_abelian(u) != braid_canonical_abelian(t) ||
          u.sum() != t.sum() || span_rank(u.entries()) != span_rank(t.entries()))
        return false;
    }
    return true;
  });
  s.check("Artin braid relation", [&] {
    for (int trial = 0; trial < 300; ++trial) {
      const unsigned k = 1 + rng() % 6;
      const auto t = gen::tuple(rng, k, 3 + rng() % 8);
      const std::size_t i = 1 + rng() % (t.size() - 2);
      const auto lhs = braid_move(braid_move(braid_move(t, {i}), {i + 1}), {i});
      const auto rhs = braid_move(braid_move(braid_move(t, {i + 1}), {i}), {i + 1});
      if (lhs != rhs)
        return false;
    }
    return true;
  });
  s.check("braid orbit equals permutation set, r <= 5", [&] {
    for (int trial = 0; trial < 50; ++trial) {
      const unsigned k = 1 + rng() % 4;
      auto entries = gen::tuple(rng, k, 1 + rng() % 5).entries();
      const GeneratingTuple t(k, entries);
      std::set<GeneratingTuple> perms;
      std::sort(entries.begin(), entries.end());
      do
        perms.insert(GeneratingTuple(k, entries));
      while (std::next_permutation(entries.begin(), entries.end()));
      if (braid_orbit_bfs(t) != perms)
        return false;
    }
    return true;
  });
  s.check("canonical key invariant under Aut, braid and swap", [&] {
    Canonicalizer canon(GroupContext(3));
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = gen::tuple(rng, 3, 6), b = gen::tuple(rng, 3, 6);
      const auto phi = gen::aut(rng, 3);
      auto shuffled = b.entries();
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const auto key = canon.key(a, b, true);
      if (key != canon.key(apply_aut(phi, a), apply_aut(phi, b), true) ||
          key != canon.key(a, GeneratingTuple(3, shuffled), true) || key != canon.key(b, a, true))
        return false;
    }
    return true;
  });
  s.check("census methods agree, k = 3, (6, 6)", [] {
    CensusConfig cfg;
    cfg.r1 = cfg.r2 = 6;
    cfg.method = CensusMethod::both;
    return brute_force_census(GroupContext(3), cfg).class_count == 1;
  });
  return std::move(s).result();
}

inline SuiteResult bounds_suite(std::uint64_t seed) {
  Suite s("bounds");
  std::mt19937_64 rng(seed);
  s.check("binomial symmetry and Pascal recurrence", [&] {
    for (int trial = 0; trial < 200; ++trial) {
      const std::uint64_t n = 1 + rng() % 300, m = rng() % (n + 1);
      if (binomial(n, m) != binomial(n, n - m))
        return false;
      if (m >= 1 && binomial(n, m) != binomial(n - 1, m - 1) + binomial(n - 1, m))
        return false;
    }
    return true;
  });
  s.check("2 e_k = 2^l (k^2+k-4), k in [3, 12], nu in {1, 2}", [] {
    for (unsigned nu = 1; nu <= 2; ++nu)
      for (unsigned k = 3; k <= 12; ++k) {
        const unsigned l = (nu + 2) * k;
        const BigCount kk(k);
        if (2 * euler_number(k, l) != (BigCount(1) << l) * (kk * kk + kk - 4))
          return false;
      }
    return true;
  });
  s.check("certified log2 encloses the exact binomial, k <= 8", [] {
    for (unsigned k = 3; k <= 8; ++k) {
      const FamilyParams p(k, 3 * k);
      const BigCount n(p.composition_total() - 1), m(p.composition_parts() - 1);
      const auto ce = log2_binomial(n, m, Log2Mode::certified);
      if (!log2_encloses(ce.value, binomial(n, m)))
        return false;
    }
    return true;
  });
  return std::move(s).result();
}

inline std::vector<std::string> suite_names() {
  return {"group", "spherical", "construction", "orbits", "bounds"};
}

inline SuiteResult run_suite(const std::string &name, std::uint64_t seed) {
  if (name == "group")
    return group_suite(seed);
  if (name == "spherical")
    return spherical_suite(seed);
  if (name == "construction")
    return construction_suite(seed);
  if (name == "orbits")
    return orbits_suite(seed);
  if (name == "bounds")
    return bounds_suite(seed);
  throw InvalidInput("unknown suite: " + name);
}

} // namespace ramify::verify
