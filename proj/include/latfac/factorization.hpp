#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "latfac/transfer.hpp"

namespace latfac {

using Arrow = std::pair<Element, Element>;

/// (a,b) lifts against (x,y): a <= x and b <= y force b <= x.
inline bool lifts(const Lattice& l, Arrow i, Arrow p) {
  if (!l.leq(i.first, i.second) || !l.leq(p.first, p.second))
    throw Error(ErrorKind::NotARelation, "lifting is only defined for relations x <= y");
  if (l.leq(i.first, p.first) && l.leq(i.second, p.second)) return l.leq(i.second, p.first);
  return true;
}

/// ^⊥M: relations with the left lifting property against all of M.
inline Relation left_complement(const Lattice& l, const Relation& m) {
  Relation out(l.size());
  for (Element a = 0; a < l.size(); ++a)
    for_each_bit(l.up_set(a) & ~bit(a), [&](Element b) {
      bool ok = true;
      for_each_bit(l.up_set(a), [&](Element x) {
        if ((m.row(x) & l.up_set(b)) && !l.leq(b, x)) ok = false;
      });
      if (ok) out.insert(a, b);
    });
  return out;
}

/// M^⊥: relations with the right lifting property against all of M.
inline Relation right_complement(const Lattice& l, const Relation& m) {
  Relation out(l.size());
  for (Element x = 0; x < l.size(); ++x)
    for_each_bit(l.up_set(x) & ~bit(x), [&](Element y) {
      bool ok = true;
      for_each_bit(l.down_set(x), [&](Element a) {
        if (m.row(a) & l.down_set(y) & ~l.down_set(x)) ok = false;
      });
      if (ok) out.insert(x, y);
    });
  return out;
}

struct FactorizationSystem {
  LatticeRef lattice;
  Relation left;
  Relation right;

  TransferSystem transfer() const { return {lattice, right}; }

  friend bool operator==(const FactorizationSystem& a, const FactorizationSystem& b) {
    return a.left == b.left && a.right == b.right;
  }
};

enum class FsViolationKind { MissingFactorization, ComplementMismatch };
enum class Side { Left, Right };

struct FsViolation {
  FsViolationKind kind;
  Side side;  // meaningful for ComplementMismatch
  Element x, y;

  friend bool operator==(const FsViolation&, const FsViolation&) = default;
};

inline std::optional<FsViolation> validate_fs(const Lattice& l, const Relation& left, const Relation& right) {
  require_refines(l, left);
  require_refines(l, right);
  auto first_difference = [&](const Relation& a, const Relation& b) -> std::optional<Arrow> {
    for (Element x = 0; x < l.size(); ++x)
      if (Word d = a.row(x) ^ b.row(x)) return Arrow{x, static_cast<Element>(std::countr_zero(d))};
    return std::nullopt;
  };
  if (auto d = first_difference(left, left_complement(l, right)))
    return FsViolation{FsViolationKind::ComplementMismatch, Side::Left, d->first, d->second};
  if (auto d = first_difference(right, right_complement(l, left)))
    return FsViolation{FsViolationKind::ComplementMismatch, Side::Right, d->first, d->second};
  for (Element x = 0; x < l.size(); ++x)
    for (Element y = x + 1; y < l.size(); ++y) {
      if (!l.leq(x, y)) continue;
      bool factors = false;
      for_each_bit(l.up_set(x) & l.down_set(y), [&](Element z) { factors = factors || (left.related(x, z) && right.related(z, y)); });
      if (!factors) return FsViolation{FsViolationKind::MissingFactorization, Side::Left, x, y};
    }
  return std::nullopt;
}

inline bool is_factorization_system(const FactorizationSystem& f) {
  return !validate_fs(*f.lattice, f.left, f.right).has_value();
}

inline FactorizationSystem from_transfer(const TransferSystem& t) {
  if (!is_transfer_system(*t.lattice, t.rel)) throw Error(ErrorKind::NotATransferSystem, "from_transfer needs a transfer system");
  return {t.lattice, left_complement(*t.lattice, t.rel), t.rel};
}

inline TransferSystem to_transfer(const FactorizationSystem& f) {
  if (!is_transfer_system(*f.lattice, f.right)) throw Error(ErrorKind::NotATransferSystem, "right class is not a transfer system");
  return f.transfer();
}

/// Fac(P) order: F <= G iff right(F) ⊆ right(G).
inline bool fs_leq(const FactorizationSystem& f, const FactorizationSystem& g) { return f.right.subset_of(g.right); }

inline FactorizationSystem fs_meet(const FactorizationSystem& f, const FactorizationSystem& g) {
  return from_transfer(ts_meet(f.transfer(), g.transfer()));
}
inline FactorizationSystem fs_join(const FactorizationSystem& f, const FactorizationSystem& g) {
  return from_transfer(ts_join(f.transfer(), g.transfer()));
}

/// Fac(P) in the canonical order of the transfer systems.
inline std::vector<FactorizationSystem> enumerate_fac(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  std::vector<FactorizationSystem> out;
  for (const TransferSystem& t : enumerate_transfer(l, opts)) out.push_back(from_transfer(t));
  return out;
}

/// (identities, all relations)
inline FactorizationSystem max_fs(const LatticeRef& l) { return {l, Relation(l->size()), l->order()}; }
/// (all relations, identities)
inline FactorizationSystem min_fs(const LatticeRef& l) { return {l, l->order(), Relation(l->size())}; }

/// The z with x L z R y. Computed from the right class, checked against the left.
inline Element factor(const FactorizationSystem& f, Element x, Element y) {
  const Lattice& l = *f.lattice;
  if (!l.leq(x, y)) throw Error(ErrorKind::NotComparable, l.label(x) + " is not below " + l.label(y));
  const Word candidates = l.up_set(x) & (f.right.column(y) | bit(y));
  Element z = y;
  for_each_bit(candidates, [&](Element w) { z = l.meet(z, w); });
  if (!((candidates >> z) & 1U) || !f.left.related(x, z))
    throw Error(ErrorKind::NonUniqueFactorization, "no factorization through the minimum candidate");
  int factorizations = 0;
  for_each_bit(l.up_set(x) & l.down_set(y), [&](Element w) { factorizations += f.left.related(x, w) && f.right.related(w, y); });
  if (factorizations != 1) throw Error(ErrorKind::NonUniqueFactorization, std::to_string(factorizations) + " factorizations");
  return z;
}

inline bool meet_closed(const Lattice& l, ElementSet s) {
  bool ok = true;
  for_each_bit(s, [&](Element a) { for_each_bit(s, [&](Element b) { ok = ok && ((s >> l.meet(a, b)) & 1U); }); });
  return ok;
}

inline bool join_closed(const Lattice& l, ElementSet s) {
  bool ok = true;
  for_each_bit(s, [&](Element a) { for_each_bit(s, [&](Element b) { ok = ok && ((s >> l.join(a, b)) & 1U); }); });
  return ok;
}

/// R/1 = {x : x R 1}
inline ElementSet right_slice(const FactorizationSystem& f) { return slice_top(f.transfer()); }
/// 0\L = {x : 0 L x}
inline ElementSet left_coslice(const FactorizationSystem& f) { return f.left.row(f.lattice->bottom()) | bit(f.lattice->bottom()); }

/// R/1 is always ∧-closed, so its inclusion always has a left adjoint
/// r(x) = min(R/1 ∩ ↑x). The system is reflective when L is exactly the set of
/// arrows r inverts.
inline bool is_reflective(const FactorizationSystem& f) {
  const Lattice& l = *f.lattice;
  const ElementSet s = right_slice(f);
  std::vector<Element> r(l.size());
  for (Element x = 0; x < l.size(); ++x) {
    const Word above = s & l.up_set(x);
    Element m = l.top();
    for_each_bit(above, [&](Element y) { m = l.meet(m, y); });
    if (!((above >> m) & 1U)) return false;
    r[x] = m;
  }
  for (Element x = 0; x < l.size(); ++x)
    for (Element y = 0; y < l.size(); ++y)
      if (l.lt(x, y) && f.left.contains(x, y) != (r[x] == r[y])) return false;
  return true;
}

/// Dual: R is exactly the set of arrows inverted by c(x) = max(0\L ∩ ↓x).
inline bool is_coreflective(const FactorizationSystem& f) {
  const Lattice& l = *f.lattice;
  const ElementSet s = left_coslice(f);
  std::vector<Element> c(l.size());
  for (Element x = 0; x < l.size(); ++x) {
    const Word below = s & l.down_set(x);
    Element m = l.bottom();
    for_each_bit(below, [&](Element y) { m = l.join(m, y); });
    if (!((below >> m) & 1U)) return false;
    c[x] = m;
  }
  for (Element x = 0; x < l.size(); ++x)
    for (Element y = 0; y < l.size(); ++y)
      if (l.lt(x, y) && f.right.contains(x, y) != (c[x] == c[y])) return false;
  return true;
}

/// (L,R) on P  ↦  (R^op, L^op) on P^op. `dual` must be dual_lattice(*f.lattice).
inline FactorizationSystem dual_fs(const FactorizationSystem& f, const LatticeRef& dual) {
  return {dual, op(*f.lattice, f.right), op(*f.lattice, f.left)};
}

}  // namespace latfac
