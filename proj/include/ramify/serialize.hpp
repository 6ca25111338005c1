#pragma once

// JSON and CSV forms of the library's records. Key order is fixed by
// insertion (ordered_json); values that can exceed 64 bits are decimal
// strings; doubles use the shortest round-trip form, independent of locale.

#include <charconv>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ramify/bounds.hpp"
#include "ramify/group.hpp"
#include "ramify/orbits.hpp"
#include "ramify/spherical.hpp"

namespace ramify {

using Json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline Json to_json(const GeneratingTuple &t) { return Json(t.to_strings()); }

inline Json to_json(const AutMatrix &m) { return Json(m.to_strings()); }

inline Json to_json(const SurfaceInvariants &inv) {
  Json j;
  j["g1"] = inv.genus_1;
  j["g2"] = inv.genus_2;
  j["chi"] = inv.chi;
  j["K2"] = inv.K2;
  j["euler"] = inv.euler;
  j["q"] = inv.irregularity;
  return j;
}

inline Json to_json(const RamificationStructure &s) {
  Json j;
  j["k"] = s.context().rank();
  j["T1"] = to_json(s.T1());
  j["T2"] = to_json(s.T2());
  j["tau1"] = s.tau1().to_string();
  j["tau2"] = s.tau2().to_string();
  j["invariants"] = to_json(s.invariants());
  return j;
}

/// Parses and re-validates a serialized structure; the stored invariants
/// must match the recomputed ones.
inline RamificationStructure structure_from_json(const Json &j) {
  const unsigned k = j.at("k").get<unsigned>();
  auto read = [&](const char *key) {
    const auto strings = j.at(key).get<std::vector<std::string>>();
    auto t = GeneratingTuple::parse(strings);
    if (t.rank() != k)
      throw InvalidInput(std::string(key) + " entries do not have length k");
    return t;
  };
  auto s = validate_or_throw(read("T1"), read("T2"), GroupContext(k));
  if (j.contains("invariants") && j["invariants"] != to_json(s.invariants()))
    throw InvalidInput("stored invariants do not match the structure");
  return s;
}

inline Json to_json(const CensusResult &r) {
  Json j;
  j["k"] = r.k;
  j["r1"] = r.tau1.size();
  j["r2"] = r.tau2.size();
  j["tau1"] = r.tau1.to_string();
  j["tau2"] = r.tau2.to_string();
  j["unordered_pair"] = r.unordered_pair;
  j["method"] = to_string(r.method);
  j["class_count"] = r.class_count.str();
  j["valid_pairs"] = std::to_string(r.valid_pairs);
  Json rej = Json::object();
  for (const auto &[cause, c] : r.rejected)
    rej[cause] = c.str();
  j["rejected"] = rej;
  return j;
}

inline Json interval_json(const Interval &v) {
  Json j;
  j["lo"] = format_double(v.lo());
  j["hi"] = format_double(v.hi());
  return j;
}

inline Json to_json(const BoundReport &r) {
  Json j;
  j["k"] = r.k;
  j["l"] = r.l;
  j["nu"] = to_string(r.nu);
  j["n"] = r.n.str();
  j["m"] = r.m.str();
  j["log2_h"] = interval_json(r.log2_h.value);
  j["log2_mode"] = to_string(r.log2_h.mode);
  j["euler"] = r.euler.str();
  j["euler_identity"] = r.euler_identity;
  Json links = Json::array();
  for (const auto &l : r.links) {
    Json lj;
    lj["name"] = l.name;
    lj["log2_lhs"] = interval_json(l.lhs);
    lj["log2_rhs"] = interval_json(l.rhs);
    lj["verdict"] = to_string(l.verdict);
    links.push_back(lj);
  }
  j["links"] = links;
  return j;
}

inline Json to_json(const BoundRow &row) {
  Json j = to_json(row.chain);
  j["alpha"] = to_string(row.alpha);
  j["x_k"] = row.x_k.str();
  j["y_k"] = row.y_k.str();
  j["k_star"] = row.is_crossover;
  j["best_c"] = format_double(row.best_c);
  j["log2_catanese_upper"] = format_double(row.log2_catanese);
  return j;
}

/// CSV with a header row, '.' decimals and LF line endings.
inline std::string bounds_csv(const std::vector<BoundRow> &rows) {
  std::string out;
  std::vector<std::string> link_names;
  if (!rows.empty())
    for (const auto &l : rows.front().chain.links)
      link_names.push_back(l.name);
  auto quote = [](const std::string &s) { return '"' + s + '"'; };
  out += "k,l,log2_h,log2_h_err";
  for (const auto &n : link_names)
    out += ',' + quote(n);
  out += ",k_star,x_k,y_k,best_c\n";
  for (const auto &row : rows) {
    const auto &c = row.chain;
    out += std::to_string(c.k) + ',' + std::to_string(c.l) + ',' + format_double(c.log2_h.value.mid()) +
           ',' + format_double(c.log2_h.value.radius());
    for (const auto &n : link_names)
      out += std::string(",") + to_string(c.link(n).verdict);
    out += std::string(",") + (row.is_crossover ? "1" : "0") + ',' + row.x_k.str() + ',' +
           row.y_k.str() + ',' + format_double(row.best_c) + '\n';
  }
  return out;
}

} // namespace ramify
