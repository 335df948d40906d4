#pragma once

#include <vector>

#include "latfac/cochar.hpp"

namespace latfac {

enum class MonoidOp { Meet, Join };

inline const char* to_string(MonoidOp op) { return op == MonoidOp::Meet ? "meet" : "join"; }

/// Subset closed under ∧ containing the top (Moore family), or closed under ∨
/// containing the bottom.
struct Submonoid {
  LatticeRef lattice;
  MonoidOp op;
  ElementSet members;

  friend bool operator==(const Submonoid& a, const Submonoid& b) { return a.op == b.op && a.members == b.members; }
};

inline bool is_submonoid(const Lattice& l, MonoidOp op, ElementSet s) {
  return op == MonoidOp::Meet ? is_meet_submonoid(l, s) : is_join_submonoid(l, s);
}

namespace detail {

inline ElementSet close_submonoid(const Lattice& l, MonoidOp op, ElementSet s, Element added) {
  std::vector<Element> work{added};
  while (!work.empty()) {
    const Element a = work.back();
    work.pop_back();
    if ((s >> a) & 1U) continue;
    s |= bit(a);
    for_each_bit(s, [&](Element b) {
      const Element c = op == MonoidOp::Meet ? l.meet(a, b) : l.join(a, b);
      if (!((s >> c) & 1U)) work.push_back(c);
    });
  }
  return s;
}

}  // namespace detail

/// All submonoids of (P,∧) or (P,∨) in ascending bitset order.
inline std::vector<Submonoid> enumerate_submonoids(const LatticeRef& l, MonoidOp op, const EnumerationOptions& opts = {}) {
  const Element unit = op == MonoidOp::Meet ? l->top() : l->bottom();
  BitSet start(1);
  start.word(0) = bit(unit);
  std::vector<std::size_t> candidates;
  for (Element x = 0; x < l->size(); ++x) candidates.push_back(x);
  auto close = [&](const BitSet& closed, std::size_t j) {
    BitSet b(1);
    b.word(0) = detail::close_submonoid(*l, op, closed.word(0), static_cast<Element>(j));
    return b;
  };
  std::vector<Submonoid> out;
  for (const BitSet& b : enumerate_closed_sets(start, candidates, close, opts)) out.push_back({l, op, b.word(0)});
  return out;
}

enum class Reflectivity { Reflective, Coreflective };

/// Reflective F ↦ R/1 as a ∧-submonoid; coreflective F ↦ 0\L as a ∨-submonoid.
inline Submonoid fac_to_submonoid(const FactorizationSystem& f, Reflectivity side) {
  if (side == Reflectivity::Reflective) {
    if (!is_reflective(f)) throw Error(ErrorKind::NotReflective, "factorization system is not reflective");
    return {f.lattice, MonoidOp::Meet, right_slice(f)};
  }
  if (!is_coreflective(f)) throw Error(ErrorKind::NotCoreflective, "factorization system is not coreflective");
  return {f.lattice, MonoidOp::Join, left_coslice(f)};
}

/// (^⊥⟨S/1⟩, ⟨S/1⟩) for an element set S.
inline FactorizationSystem free_fs(const LatticeRef& l, ElementSet s) {
  return from_transfer(generate(l, top_relations(*l, s)));
}

/// Inverse of fac_to_submonoid. ∨-submonoids go through the dual lattice.
inline FactorizationSystem submonoid_to_fac(const Submonoid& a) {
  const Lattice& l = *a.lattice;
  if (!is_submonoid(l, a.op, a.members)) throw Error(ErrorKind::NotASubmonoid, "not a submonoid");
  if (a.op == MonoidOp::Meet) return free_fs(a.lattice, a.members);
  const LatticeRef dual = share(dual_lattice(l));
  FactorizationSystem g = free_fs(dual, op(l, a.members));
  g = dual_fs(g, a.lattice);
  return g;
}

/// One instance of the adjunction F ⊣ G between 2^P and Fac P:
/// F(S) <= F  iff  S ⊆ G(F) = R/1.
inline bool galois_check(const LatticeRef& l, ElementSet s, const FactorizationSystem& f) {
  require_same_carrier(l, f.lattice);
  const bool left_side = fs_leq(free_fs(l, s), f);
  const bool right_side = (s & ~right_slice(f)) == 0;
  return left_side == right_side;
}

// ---------------------------------------------------------------------------
// (Co)monads. On a poset a monad is a monotone T with x <= Tx and TTx <= Tx.

inline bool is_monad(const Endo& t) {
  if (!is_monotone(t)) return false;
  const Lattice& l = *t.lattice;
  for (Element x = 0; x < l.size(); ++x)
    if (!l.leq(x, t(x)) || !l.leq(t(t(x)), t(x))) return false;
  return true;
}

inline bool is_comonad(const Endo& t) {
  if (!is_monotone(t)) return false;
  const Lattice& l = *t.lattice;
  for (Element x = 0; x < l.size(); ++x)
    if (!l.leq(t(x), x) || !l.leq(t(x), t(t(x)))) return false;
  return true;
}

inline std::vector<Endo> enumerate_monads(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  return enumerate_monotone_maps(
      l, [&](Element x) { return l->up_set(x); },
      [&](const std::vector<Element>& t, Element x) {
        for (Element y = 0; y <= x; ++y)
          if (t[y] <= x && !l->leq(t[t[y]], t[y])) return false;
        return true;
      },
      opts);
}

inline std::vector<Endo> enumerate_comonads(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  return enumerate_monotone_maps(
      l, [&](Element x) { return l->down_set(x); },
      [&](const std::vector<Element>& t, Element x) { return l->leq(t[x], t[t[x]]); }, opts);
}

// ---------------------------------------------------------------------------
// Model structures as intervals (C,AF) <= (AC,F)

struct ModelStructure {
  FactorizationSystem lower;  // (C, AF)
  FactorizationSystem upper;  // (AC, F)
  Relation weak;              // W = AF ∘ AC

  friend bool operator==(const ModelStructure&, const ModelStructure&) = default;
};

/// {(x,y) : x AC z AF y for some z}, reflexive pairs implied.
inline Relation weak_composite(const FactorizationSystem& lower, const FactorizationSystem& upper) {
  const Lattice& l = *lower.lattice;
  Relation w(l.size());
  for (Element x = 0; x < l.size(); ++x) {
    Word reach = lower.right.row(x) | bit(x);
    for_each_bit(upper.left.row(x), [&](Element z) { reach |= lower.right.row(z) | bit(z); });
    w.row(x) = reach & ~bit(x);
  }
  return w;
}

/// Among x <= y <= z, any two of (x,y), (y,z), (x,z) in W force the third.
inline bool two_out_of_three(const Lattice& l, const Relation& w) {
  for (Element x = 0; x < l.size(); ++x)
    for (Element y = 0; y < l.size(); ++y) {
      if (!l.leq(x, y)) continue;
      for (Element z = 0; z < l.size(); ++z) {
        if (!l.leq(y, z)) continue;
        const int held = w.related(x, y) + w.related(y, z) + w.related(x, z);
        if (held == 2) return false;
      }
    }
  return true;
}

inline ModelStructure model_candidate(const FactorizationSystem& lower, const FactorizationSystem& upper) {
  require_same_carrier(lower.lattice, upper.lattice);
  return {lower, upper, weak_composite(lower, upper)};
}

inline bool is_model_structure(const ModelStructure& m) {
  require_same_carrier(m.lower.lattice, m.upper.lattice);
  if (!fs_leq(m.lower, m.upper)) return false;
  const Relation w = weak_composite(m.lower, m.upper);
  return w == m.weak && two_out_of_three(*m.lower.lattice, w);
}

/// [(L,R) <= (Id, All)] for coreflective (L,R); W = R.
inline ModelStructure make_fibrant(const FactorizationSystem& f) {
  if (!is_coreflective(f)) throw Error(ErrorKind::NotCoreflective, "fibrant model structures come from coreflective systems");
  return model_candidate(f, max_fs(f.lattice));
}

/// [(All, Id) <= (L,R)] for reflective (L,R); W = L.
inline ModelStructure make_cofibrant(const FactorizationSystem& f) {
  if (!is_reflective(f)) throw Error(ErrorKind::NotReflective, "cofibrant model structures come from reflective systems");
  return model_candidate(min_fs(f.lattice), f);
}

inline bool is_fibrant(const ModelStructure& m) { return m.upper.right == m.upper.lattice->order(); }
inline bool is_cofibrant(const ModelStructure& m) { return m.lower.left == m.lower.lattice->order(); }

}  // namespace latfac
