#pragma once

// The ramify command line. run() parses arguments, dispatches to a
// subcommand and maps library errors onto exit codes; it never writes to
// the process streams directly so it can be driven from tests.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ramify/bounds.hpp"
#include "ramify/cache.hpp"
#include "ramify/construction.hpp"
#include "ramify/errors.hpp"
#include "ramify/orbits.hpp"
#include "ramify/serialize.hpp"
#include "ramify/verify.hpp"

namespace ramify::app {

enum ExitCode : int { ok = 0, refused = 1, over_budget = 2, internal = 3 };

struct RunConfig {
  std::string subcommand;
  std::string format = "json";
  std::string out_path;
  std::string cache_dir;
  double budget_seconds = 600.0;
  std::uint64_t budget_nodes = 2'000'000'000ull;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  unsigned k = 0;
  unsigned l = 0;
  bool relaxed_positivity = false;

  std::size_t r1 = 0;
  std::size_t r2 = 0;
  bool ordered_pairs = false;
  std::string method = "both";
  unsigned aut_cap = kDefaultAutCap;

  std::string nu = "1";
  std::string alpha = "0";
  unsigned k_min = 3;
  unsigned k_max = 10;

  std::string suite = "all";

  Budget budget() const { return {budget_seconds, budget_nodes}; }

  /// The fields that determine the output, in a fixed order. Output paths,
  /// the cache location and the thread count do not change the result.
  std::string canonical() const {
    Json j;
    j["subcommand"] = subcommand;
    j["format"] = format;
    if (subcommand == "construct") {
      j["k"] = k;
      j["l"] = l;
      j["relaxed_positivity"] = relaxed_positivity;
    } else if (subcommand == "census") {
      j["k"] = k;
      j["r1"] = r1;
      j["r2"] = r2;
      j["unordered_pair"] = !ordered_pairs;
      j["method"] = method;
      j["aut_cap"] = aut_cap;
    } else if (subcommand == "verify-family") {
      j["k"] = k;
      j["l"] = l;
    } else if (subcommand == "bounds") {
      j["nu"] = to_string(parse_rational(nu));
      j["alpha"] = to_string(parse_rational(alpha));
      j["k_min"] = k_min;
      j["k_max"] = k_max;
    }
    return j.dump();
  }
};

namespace detail {

inline std::string dump(const Json &j) { return j.dump(2) + '\n'; }

inline CensusMethod parse_method(const std::string &m) {
  if (m == "key" || m == "canonical-key")
    return CensusMethod::canonical_key;
  if (m == "union-find")
    return CensusMethod::union_find;
  if (m == "both")
    return CensusMethod::both;
  throw InvalidInput("unknown census method: " + m);
}

inline std::string construct(const RunConfig &c) {
  if (c.format != "json")
    throw InvalidInput("construct only emits json");
  Json arr = Json::array();
  build_family(FamilyParams(c.k, c.l), {c.relaxed_positivity})
      .for_each([&](const auto &, const RamificationStructure &s) { arr.push_back(to_json(s)); });
  return dump(arr);
}

inline std::string census_payload(const RunConfig &c) {
  if (c.format != "json")
    throw InvalidInput("census only emits json");
  CensusConfig cfg;
  cfg.r1 = c.r1;
  cfg.r2 = c.r2;
  cfg.unordered_pair = !c.ordered_pairs;
  cfg.method = parse_method(c.method);
  cfg.budget = c.budget();
  cfg.threads = std::max(1u, c.threads);
  cfg.aut_cap = c.aut_cap;
  return dump(to_json(brute_force_census(GroupContext(c.k), cfg)));
}

inline std::string verify_family(const RunConfig &c) {
  const FamilyParams p(c.k, c.l);
  const auto rep = family_distinctness_report(p, std::nullopt, c.budget(), c.aut_cap);
  if (c.format == "json") {
    Json j;
    j["k"] = c.k;
    j["l"] = c.l;
    j["family_count"] = rep.family_count.str();
    j["distinct_keys"] = std::to_string(rep.distinct_keys);
    j["all_distinct"] = rep.all_distinct && BigCount(rep.examined) == rep.family_count;
    return dump(j);
  }
  return std::to_string(rep.distinct_keys) + ' ' + rep.family_count.str() + '\n';
}

inline std::string bounds(const RunConfig &c) {
  const auto rows = final_bound_table(parse_rational(c.nu), parse_rational(c.alpha), c.k_min, c.k_max);
  if (c.format == "csv")
    return bounds_csv(rows);
  if (c.format != "json")
    throw InvalidInput("unknown format: " + c.format);
  Json arr = Json::array();
  for (const auto &r : rows)
    arr.push_back(to_json(r));
  return dump(arr);
}

/// Human-readable per-suite pass counts; fails with an invariant violation
/// when any property check fails.
inline std::string verify(const RunConfig &c, bool &all_ok) {
  std::vector<std::string> names =
      c.suite == "all" ? verify::suite_names() : std::vector<std::string>{c.suite};
  std::string out;
  all_ok = true;
  for (const auto &n : names) {
    const auto r = verify::run_suite(n, c.seed);
    out += r.name + ": " + std::to_string(r.passed) + "/" + std::to_string(r.total) + " passed\n";
    for (const auto &f : r.failures)
      out += "  FAILED " + f + '\n';
    all_ok = all_ok && r.ok();
  }
  return out;
}

inline void emit(const RunConfig &c, const std::string &payload, std::ostream &out) {
  if (c.out_path.empty()) {
    out << payload;
    out.flush();
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary | std::ios::trunc);
  if (!f)
    throw InvalidInput("cannot open output file " + c.out_path);
  f << payload;
}

} // namespace detail

/// Runs one invocation. `args` excludes the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  RunConfig c;
  CLI::App app{"Ramification structures on elementary abelian 2-groups", "ramify"};
  app.require_subcommand(1);
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", c.out_path, "write the result to FILE instead of stdout");
  app.add_option("--budget-seconds", c.budget_seconds, "wall-clock budget");
  app.add_option("--budget-nodes", c.budget_nodes, "enumeration node budget");
  app.add_option("--cache", c.cache_dir, "result cache directory");
  app.add_option("--seed", c.seed, "seed for randomized checks");
  app.add_option("--threads", c.threads, "worker threads for sharded censuses");

  auto *construct = app.add_subcommand("construct", "emit the family as JSON")->fallthrough();
  construct->add_option("--k", c.k)->required();
  construct->add_option("--l", c.l)->required();
  construct->add_flag("--relaxed-positivity", c.relaxed_positivity,
                      "allow zero multiplicities when the support still generates");

  auto *count = app.add_subcommand("count", "print the family size")->fallthrough();
  count->add_option("--k", c.k)->required();
  count->add_option("--l", c.l)->required();

  auto *census = app.add_subcommand("census", "exhaustive class count")->fallthrough();
  census->add_option("--k", c.k)->required();
  census->add_option("--r1", c.r1)->required();
  census->add_option("--r2", c.r2)->required();
  bool unordered_flag = false;
  auto *unord = census->add_flag("--unordered-pairs", unordered_flag, "identify (T1,T2) with (T2,T1) (default)");
  census->add_flag("--ordered-pairs", c.ordered_pairs, "keep (T1,T2) and (T2,T1) apart")->excludes(unord);
  census->add_option("--method", c.method, "key, union-find or both")
      ->check(CLI::IsMember({"key", "canonical-key", "union-find", "both"}));
  census->add_option("--aut-cap", c.aut_cap, "largest rank for full Aut(G) enumeration");

  auto *vfam = app.add_subcommand("verify-family", "check family members are pairwise inequivalent")
                   ->fallthrough();
  vfam->add_option("--k", c.k)->required();
  vfam->add_option("--l", c.l)->required();
  vfam->add_option("--aut-cap", c.aut_cap);

  auto *bounds = app.add_subcommand("bounds", "inequality chain table")->fallthrough();
  bounds->add_option("--nu", c.nu, "rational nu > 0");
  bounds->add_option("--alpha", c.alpha, "rational 0 <= alpha < 1/2");
  bounds->add_option("--k-min", c.k_min)->required();
  bounds->add_option("--k-max", c.k_max)->required();

  auto *verify = app.add_subcommand("verify", "run the property suites")->fallthrough();
  verify->add_option("--suite", c.suite, "all or one suite name");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return refused;
  }
  for (auto *sub : {construct, count, census, vfam, bounds, verify})
    if (sub->parsed())
      c.subcommand = sub->get_name();

  const auto start = std::chrono::steady_clock::now();
  auto report_elapsed = [&] {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    err << "elapsed " << format_double(dt.count()) << " s\n";
  };

  std::optional<ResultCache> cache;
  std::string fp;
  try {
    const bool cacheable = c.subcommand != "count" && c.subcommand != "verify";
    if (cacheable && !c.cache_dir.empty()) {
      cache.emplace(c.cache_dir);
      fp = ResultCache::fingerprint(c.canonical());
      if (auto rec = cache->load(fp); rec && rec->complete) {
        detail::emit(c, rec->payload, out);
        err << "cache hit " << fp << '\n';
        return ok;
      }
    }

    std::string payload;
    int code = ok;
    if (c.subcommand == "construct") {
      payload = detail::construct(c);
    } else if (c.subcommand == "count") {
      payload = family_count(FamilyParams(c.k, c.l)).str() + '\n';
    } else if (c.subcommand == "census") {
      payload = detail::census_payload(c);
    } else if (c.subcommand == "verify-family") {
      payload = detail::verify_family(c);
    } else if (c.subcommand == "bounds") {
      payload = detail::bounds(c);
    } else {
      bool all_ok = true;
      payload = detail::verify(c, all_ok);
      code = all_ok ? ok : internal;
    }

    if (cache)
      cache->store({fp, kArtifactVersion, "", c.subcommand, true, payload});
    detail::emit(c, payload, out);
    report_elapsed();
    return code;
  } catch (const CensusBudgetExceeded &e) {
    if (cache) {
      Json partial;
      partial["frontier"] = std::to_string(e.frontier());
      partial["pairs_examined"] = std::to_string(e.pairs_examined());
      partial["partial_keys"] = std::to_string(e.partial_keys());
      cache->store({fp, kArtifactVersion, "", c.subcommand, false, detail::dump(partial)});
    }
    err << "budget exceeded: " << e.what() << " (frontier " << e.frontier() << ")\n";
    return over_budget;
  } catch (const BudgetExceeded &e) {
    err << "budget exceeded: " << e.what() << " (frontier " << e.frontier() << ")\n";
    return over_budget;
  } catch (const InvariantViolation &e) {
    err << "internal invariant failure: " << e.what() << '\n';
    return internal;
  } catch (const InvalidInput &e) {
    err << "invalid input: " << e.what() << '\n';
    return refused;
  } catch (const Refusal &e) {
    err << "refused: " << e.what() << '\n';
    return refused;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return internal;
  }
}

} // namespace ramify::app
