#pragma once

// Brute-force reference implementations. They only use Lattice::leq and
// Lattice::size, never the library's meet/join tables or enumerators.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "latfac/latfac.hpp"

namespace oracle {

using latfac::Element;
using latfac::Lattice;
using latfac::LatticeRef;
using latfac::Relation;

inline Element glb(const Lattice& l, Element a, Element b) {
  for (Element m = 0; m < l.size(); ++m) {
    if (!l.leq(m, a) || !l.leq(m, b)) continue;
    bool greatest = true;
    for (Element c = 0; c < l.size(); ++c)
      if (l.leq(c, a) && l.leq(c, b) && !l.leq(c, m)) greatest = false;
    if (greatest) return m;
  }
  throw std::logic_error("no glb");
}

inline Element lub(const Lattice& l, Element a, Element b) {
  for (Element m = 0; m < l.size(); ++m) {
    if (!l.leq(a, m) || !l.leq(b, m)) continue;
    bool least = true;
    for (Element c = 0; c < l.size(); ++c)
      if (l.leq(a, c) && l.leq(b, c) && !l.leq(m, c)) least = false;
    if (least) return m;
  }
  throw std::logic_error("no lub");
}

inline std::vector<std::pair<Element, Element>> strict_pairs(const Lattice& l) {
  std::vector<std::pair<Element, Element>> out;
  for (Element x = 0; x < l.size(); ++x)
    for (Element y = 0; y < l.size(); ++y)
      if (x != y && l.leq(x, y)) out.emplace_back(x, y);
  return out;
}

/// Reflexive membership test on a set of strict pairs.
using PairSet = std::set<std::pair<Element, Element>>;

inline bool rel(const PairSet& r, Element x, Element y) { return x == y || r.count({x, y}); }

inline bool naive_transfer(const Lattice& l, const PairSet& r) {
  for (auto [x, y] : r) {
    if (!l.leq(x, y)) return false;
    for (auto [a, b] : r)
      if (a == y && !rel(r, x, b)) return false;
    for (Element z = 0; z < l.size(); ++z)
      if (l.leq(z, y) && !rel(r, glb(l, x, z), z)) return false;
  }
  return true;
}

inline PairSet subset(const std::vector<std::pair<Element, Element>>& pairs, std::uint64_t mask) {
  PairSet s;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if ((mask >> i) & 1U) s.insert(pairs[i]);
  return s;
}

inline Relation to_relation(const Lattice& l, const PairSet& s) {
  Relation r(l.size());
  for (auto [x, y] : s) r.insert(x, y);
  return r;
}

/// Every transfer system by filtering all subsets of the strict order.
inline std::vector<Relation> transfer_systems(const Lattice& l) {
  const auto pairs = strict_pairs(l);
  std::vector<Relation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    const PairSet s = subset(pairs, mask);
    if (naive_transfer(l, s)) out.push_back(to_relation(l, s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool naive_saturated(const Lattice& l, const Relation& r) {
  for (Element x = 0; x < l.size(); ++x)
    for (Element y = 0; y < l.size(); ++y)
      for (Element z = 0; z < l.size(); ++z)
        if (l.leq(x, y) && l.leq(y, z) && r.related(x, y) + r.related(y, z) + r.related(x, z) == 2) return false;
  return true;
}

/// (a,b) has the left lifting property against (x,y).
inline bool lifts(const Lattice& l, Element a, Element b, Element x, Element y) {
  return !(l.leq(a, x) && l.leq(b, y)) || l.leq(b, x);
}

/// Factorization systems straight from the definition: R ranges over subsets,
/// L is its left complement, and (L,R) must be mutual complements with
/// every arrow factoring. Returns the R parts.
inline std::vector<Relation> factorization_rights(const Lattice& l) {
  const auto pairs = strict_pairs(l);
  std::vector<Relation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    const PairSet r = subset(pairs, mask);
    PairSet left;
    for (auto [a, b] : pairs) {
      bool ok = true;
      for (auto [x, y] : r) ok = ok && lifts(l, a, b, x, y);
      if (ok) left.insert({a, b});
    }
    PairSet right;
    for (auto [x, y] : pairs) {
      bool ok = true;
      for (auto [a, b] : left) ok = ok && lifts(l, a, b, x, y);
      if (ok) right.insert({x, y});
    }
    if (right != r) continue;
    bool factors = true;
    for (auto [x, y] : pairs) {
      bool found = false;
      for (Element z = 0; z < l.size(); ++z) found = found || (l.leq(x, z) && l.leq(z, y) && rel(left, x, z) && rel(r, z, y));
      factors = factors && found;
    }
    if (factors) out.push_back(to_relation(l, r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every self-map, as tables, filtered by `keep`.
template <class Keep>
std::vector<std::vector<Element>> all_maps(const Lattice& l, Keep keep) {
  const std::size_t n = l.size();
  std::vector<std::vector<Element>> out;
  std::vector<Element> t(n, 0);
  while (true) {
    if (keep(t)) out.push_back(t);
    std::size_t i = 0;
    while (i < n && ++t[i] == n) t[i++] = 0;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool monotone(const Lattice& l, const std::vector<Element>& t) {
  for (Element x = 0; x < l.size(); ++x)
    for (Element y = 0; y < l.size(); ++y)
      if (l.leq(x, y) && !l.leq(t[x], t[y])) return false;
  return true;
}

inline bool closure_op(const Lattice& l, const std::vector<Element>& t) {
  if (!monotone(l, t)) return false;
  for (Element x = 0; x < l.size(); ++x)
    if (!l.leq(x, t[x]) || t[t[x]] != t[x]) return false;
  return true;
}

inline bool interior_op(const Lattice& l, const std::vector<Element>& t) {
  if (!monotone(l, t)) return false;
  for (Element x = 0; x < l.size(); ++x)
    if (!l.leq(t[x], x) || t[t[x]] != t[x]) return false;
  return true;
}

/// Subsets containing the unit and closed under the binary operation.
inline std::vector<std::uint64_t> submonoids(const Lattice& l, bool meet) {
  std::vector<std::uint64_t> out;
  const Element unit = meet ? static_cast<Element>(l.size() - 1) : 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << l.size()); ++s) {
    if (!((s >> unit) & 1U)) continue;
    bool ok = true;
    for (Element a = 0; a < l.size() && ok; ++a)
      for (Element b = 0; b < l.size() && ok; ++b)
        if (((s >> a) & 1U) && ((s >> b) & 1U)) ok = (s >> (meet ? glb(l, a, b) : lub(l, a, b))) & 1U;
    if (ok) out.push_back(s);
  }
  return out;
}

/// Families of subsets of an n-set that contain the full set and are
/// closed under intersection.
inline std::size_t moore_families(unsigned n) {
  const unsigned points = 1U << n;
  const std::uint64_t full = points - 1;
  std::size_t count = 0;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << points); ++fam) {
    if (!((fam >> full) & 1U)) continue;
    bool ok = true;
    for (unsigned a = 0; a < points && ok; ++a)
      for (unsigned b = a + 1; b < points && ok; ++b)
        if (((fam >> a) & 1U) && ((fam >> b) & 1U)) ok = (fam >> (a & b)) & 1U;
    count += ok;
  }
  return count;
}

/// Set partitions of an n-set into k blocks via restricted growth strings.
inline std::uint64_t stirling2(unsigned n, unsigned k) {
  if (n == 0) return k == 0;
  std::vector<unsigned> a(n, 0);
  std::uint64_t count = 0;
  std::function<void(unsigned, unsigned)> go = [&](unsigned i, unsigned blocks) {
    if (i == n) {
      count += blocks == k;
      return;
    }
    for (unsigned b = 0; b <= blocks && b < k; ++b) {
      a[i] = b;
      go(i + 1, std::max(blocks, b + 1));
    }
  };
  go(0, 0);
  return count;
}

/// a×b binary matrices with no 2×2 submatrix equal to [[1,0],[0,1]] or
/// [[0,1],[1,0]]. These are counted by B_{a,b}.
inline std::uint64_t lonesum_matrices(unsigned a, unsigned b) {
  const unsigned cells = a * b;
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << cells); ++m) {
    auto at = [&](unsigned i, unsigned j) { return (m >> (i * b + j)) & 1U; };
    bool ok = true;
    for (unsigned i = 0; i < a && ok; ++i)
      for (unsigned k = i + 1; k < a && ok; ++k)
        for (unsigned j = 0; j < b && ok; ++j)
          for (unsigned h = j + 1; h < b && ok; ++h)
            ok = !(at(i, j) == at(k, h) && at(i, h) == at(k, j) && at(i, j) != at(i, h));
    count += ok;
  }
  return count;
}

inline bool modular_law(const Lattice& l) {
  for (Element x = 0; x < l.size(); ++x)
    for (Element y = 0; y < l.size(); ++y)
      for (Element z = 0; z < l.size(); ++z)
        if (l.leq(x, z) && lub(l, x, glb(l, y, z)) != glb(l, lub(l, x, y), z)) return false;
  return true;
}

/// Every lattice with at most five elements, up to isomorphism.
inline std::vector<std::pair<std::string, LatticeRef>> small_lattices() {
  using latfac::build_lattice;
  using latfac::make_standard;
  using latfac::share;
  std::vector<std::pair<std::string, LatticeRef>> out;
  for (int n = 0; n <= 4; ++n) out.emplace_back("chain" + std::to_string(n), share(make_standard("chain", {n})));
  out.emplace_back("square", share(make_standard("grid", {1, 1})));
  out.emplace_back("M3", share(make_standard("diamond", {})));
  out.emplace_back("N5", share(make_standard("pentagon", {})));
  out.emplace_back("square+bottom", share(build_lattice({"z", "0", "a", "b", "1"},
                                                        {{"z", "0"}, {"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}})));
  out.emplace_back("square+top", share(build_lattice({"0", "a", "b", "1", "t"},
                                                     {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}, {"1", "t"}})));
  return out;
}

}  // namespace oracle
