#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fdl/abelian.hpp"
#include "fdl/amalgam.hpp"
#include "fdl/errors.hpp"
#include "fdl/family.hpp"
#include "fdl/homology.hpp"
#include "fdl/stallings.hpp"
#include "fdl/words.hpp"

namespace fdl {

using nlohmann::json;

inline json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());  // decimal string beyond 64 bits
}

inline Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  fail(ErrorKind::BadInput, "expected an integer or decimal string");
}

inline json seq_to_json(const MultiplyingSequence& s) {
  json prefix = json::array(), period = json::array();
  for (const Int& r : s.prefix()) prefix.push_back(int_to_json(r));
  for (const Int& r : s.period()) period.push_back(int_to_json(r));
  return {{"s0", int_to_json(s.s0())}, {"prefix", prefix}, {"period", period}};
}

inline MultiplyingSequence seq_from_json(const json& j) {
  if (!j.is_object() || !j.contains("s0") || !j.contains("period"))
    fail(ErrorKind::BadInput, "sequence JSON needs s0 and period");
  std::vector<Int> prefix, period;
  for (const json& r : j.value("prefix", json::array())) prefix.push_back(int_from_json(r));
  for (const json& r : j.at("period")) period.push_back(int_from_json(r));
  return MultiplyingSequence::validate(int_from_json(j.at("s0")), std::move(prefix),
                                       std::move(period));
}

inline json witness_to_json(const std::vector<WitnessRun>& wit) {
  json out = json::array();
  for (const WitnessRun& e : wit) out.push_back({int_to_json(e.depth), int_to_json(e.count)});
  return out;
}

inline std::vector<WitnessRun> witness_from_json(const json& j) {
  std::vector<WitnessRun> wit;
  for (const json& e : j) {
    if (!e.is_array() || e.size() != 2) fail(ErrorKind::BadInput, "witness entries are [n, count]");
    wit.push_back({int_from_json(e[0]), int_from_json(e[1])});
  }
  return wit;
}

inline json fin_abelian_to_json(const FinAbelian& g) {
  json torsion = json::array();
  for (const Int& d : g.torsion) torsion.push_back(int_to_json(d));
  return {{"rank", g.rank}, {"torsion", torsion}};
}

inline json cyclic_sum_to_json(const CyclicSum& s) {
  json prefix = json::array();
  for (const Int& c : s.prefix) prefix.push_back(int_to_json(c));
  return {{"prefix", prefix}, {"tail", int_to_json(s.tail_order)}};
}

inline json graph_to_json(const LabeledGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges())
    edges.push_back({e.src, e.dst, e.label == Letter::A ? "a" : "b"});
  return {{"vertices", g.num_vertices()}, {"base", g.base()}, {"edges", edges}};
}

inline json normal_form_to_json(const NormalFormResult& nf) {
  json syls = json::array();
  for (const Syllable& s : nf.syllables)
    syls.push_back({{"factor", s.barred ? "Fbar" : "F"}, {"word", format_word(s.content)}});
  return {{"trivial", nf.trivial}, {"syllables", syls}};
}

inline json perm_rep_to_json(const PermRep& rep) {
  return {{"degree", rep.degree}, {"perm_a", rep.perm_a}, {"perm_b", rep.perm_b}};
}

inline json distinguish_to_json(const DistinguishReport& rep) {
  json out = {{"k", static_cast<long>(rep.k)},
              {"m", int_to_json(rep.m)},
              {"kind", rep.kind == DistinguishReport::Kind::H1 ? "H1" : "H2"},
              {"verdict", rep.non_isomorphic ? "non-isomorphic" : "inconclusive"}};
  if (rep.kind == DistinguishReport::Kind::H1) {
    out["left"] = fin_abelian_to_json(rep.h1_left);
    out["right"] = fin_abelian_to_json(rep.h1_right);
  } else {
    out["left"] = cyclic_sum_to_json(rep.h2_left);
    out["right"] = cyclic_sum_to_json(rep.h2_right);
  }
  return out;
}

}  // namespace fdl
