#pragma once

#include <functional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "latfac/counting.hpp"

namespace latfac::io {

using nlohmann::json;

inline constexpr const char* kFormatVersion = "latfac/1";

inline json pairs_to_json(const Relation& r) {
  json a = json::array();
  for (auto [x, y] : r.pairs()) a.push_back({x, y});
  return a;
}

inline json set_to_json(ElementSet s) {
  json a = json::array();
  for_each_bit(s, [&](Element x) { a.push_back(x); });
  return a;
}

inline Relation pairs_from_json(const Lattice& l, const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "pairs must be an array");
  Relation r(l.size());
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::ParseError, "each pair must be [i,j]");
    const auto x = p[0].get<Element>(), y = p[1].get<Element>();
    if (x >= l.size() || y >= l.size()) throw Error(ErrorKind::ParseError, "pair index out of range");
    if (!l.leq(x, y)) throw Error(ErrorKind::RefinementViolation, "pair (" + l.label(x) + "," + l.label(y) + ") is not in the order");
    r.insert(x, y);
  }
  return r;
}

inline ElementSet set_from_json(const Lattice& l, const json& j) {
  ElementSet s = 0;
  for (const auto& v : j) {
    const auto x = v.get<Element>();
    if (x >= l.size()) throw Error(ErrorKind::ParseError, "element index out of range");
    s |= bit(x);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Lattice: {"format", "labels": [...], "covers": [[i,j],...], "shape"?}

inline json to_json(const Lattice& l) {
  json j{{"format", kFormatVersion}, {"labels", l.labels()}, {"covers", pairs_to_json(covering_relations(l))}};
  if (l.shape()) j["shape"] = {{"kind", l.shape()->kind}, {"params", l.shape()->params}};
  return j;
}

inline Lattice lattice_from_json(const json& j) {
  try {
    if (!j.contains("labels") || !j.contains("covers")) throw Error(ErrorKind::ParseError, "lattice needs labels and covers");
    auto labels = j.at("labels").get<std::vector<std::string>>();
    std::vector<std::pair<Element, Element>> covers;
    for (const auto& p : j.at("covers")) {
      if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::ParseError, "each cover must be [i,j]");
      covers.emplace_back(p[0].get<Element>(), p[1].get<Element>());
    }
    Lattice l = build_lattice_indexed(std::move(labels), covers);
    if (j.contains("shape")) l.set_shape({j["shape"].at("kind").get<std::string>(), j["shape"].at("params").get<std::vector<int>>()});
    return l;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline Lattice parse_lattice(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return lattice_from_json(j);
}

// ---------------------------------------------------------------------------
// Structures

inline json to_json(const TransferSystem& t) {
  return {{"format", kFormatVersion}, {"lattice", to_json(*t.lattice)}, {"pairs", pairs_to_json(t.rel)}};
}

/// `resolve` turns a string "lattice" field (a reference) into a lattice.
inline TransferSystem transfer_from_json(const json& j, const std::function<LatticeRef(const std::string&)>& resolve = {}) {
  try {
    LatticeRef l;
    const json& lj = j.at("lattice");
    if (lj.is_string()) {
      if (!resolve) throw Error(ErrorKind::ParseError, "lattice reference cannot be resolved here");
      l = resolve(lj.get<std::string>());
    } else {
      l = share(lattice_from_json(lj));
    }
    return make_transfer(l, pairs_from_json(*l, j.at("pairs")));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline json to_json(const FactorizationSystem& f) { return {{"left", pairs_to_json(f.left)}, {"right", pairs_to_json(f.right)}}; }

inline FactorizationSystem fs_from_json(const LatticeRef& l, const json& j) {
  try {
    return {l, pairs_from_json(*l, j.at("left")), pairs_from_json(*l, j.at("right"))};
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline json to_json(const Endo& f) { return {{"table", f.table}}; }

inline Endo endo_from_json(const LatticeRef& l, const json& j) {
  try {
    Endo f{l, j.at("table").get<std::vector<Element>>()};
    if (f.table.size() != l->size()) throw Error(ErrorKind::ParseError, "table length differs from lattice size");
    for (Element v : f.table)
      if (v >= l->size()) throw Error(ErrorKind::ParseError, "table value out of range");
    return f;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline json to_json(const Fiber& f) {
  json members = json::array();
  for (const auto& m : f.members) members.push_back(to_json(m));
  return {{"operator", to_json(f.op)}, {"members", members}, {"lower", to_json(f.lower)}, {"upper", to_json(f.upper)}, {"is_interval", f.is_interval}};
}

inline json to_json(const Submonoid& s) { return {{"op", to_string(s.op)}, {"members", set_to_json(s.members)}}; }

inline Submonoid submonoid_from_json(const LatticeRef& l, const json& j) {
  try {
    const auto name = j.at("op").get<std::string>();
    if (name != "meet" && name != "join") throw Error(ErrorKind::ParseError, "op must be meet or join");
    return {l, name == "meet" ? MonoidOp::Meet : MonoidOp::Join, set_from_json(*l, j.at("members"))};
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline json to_json(const ModelStructure& m) {
  return {{"lower", to_json(m.lower)}, {"upper", to_json(m.upper)}, {"weak", pairs_to_json(m.weak)}};
}

inline ModelStructure model_from_json(const LatticeRef& l, const json& j) {
  try {
    return {fs_from_json(l, j.at("lower")), fs_from_json(l, j.at("upper")), pairs_from_json(*l, j.at("weak"))};
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline json to_json(const CountReport& r) {
  json counts = json::object();
  for (const auto& c : r.counts) counts[c.kind] = {{"value", c.value.str()}, {"provenance", to_string(c.provenance)}};
  return {{"format", kFormatVersion}, {"lattice", r.lattice}, {"counts", counts}};
}

// ---------------------------------------------------------------------------
// DOT

/// Hasse diagram, bottom on rank 0; `overlay` relations are drawn as extra
/// colored edges.
inline std::string to_dot(const Lattice& l, const Relation* overlay = nullptr) {
  const Relation cov = covering_relations(l);
  std::vector<unsigned> rank(l.size(), 0);
  for (Element y = 0; y < l.size(); ++y)
    for_each_bit(cov.column(y), [&](Element x) { rank[y] = std::max(rank[y], rank[x] + 1); });
  std::ostringstream os;
  os << "digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (Element x = 0; x < l.size(); ++x) os << "  n" << x << " [label=" << json(l.label(x)).dump() << "];\n";
  const unsigned max_rank = rank.empty() ? 0 : *std::max_element(rank.begin(), rank.end());
  for (unsigned r = 0; r <= max_rank; ++r) {
    os << "  { rank=same;";
    for (Element x = 0; x < l.size(); ++x)
      if (rank[x] == r) os << " n" << x << ";";
    os << " }\n";
  }
  for (auto [x, y] : cov.pairs()) os << "  n" << x << " -> n" << y << " [arrowhead=none];\n";
  if (overlay)
    for (auto [x, y] : overlay->pairs()) os << "  n" << x << " -> n" << y << " [color=red, constraint=false];\n";
  os << "}\n";
  return os.str();
}

}  // namespace latfac::io
