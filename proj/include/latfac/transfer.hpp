#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latfac/enumerate.hpp"
#include "latfac/lattice.hpp"

namespace latfac {

/// A partial order refining the lattice order and stable under pullback.
/// Only strict pairs are stored.
struct TransferSystem {
  LatticeRef lattice;
  Relation rel;

  friend bool operator==(const TransferSystem& a, const TransferSystem& b) { return a.rel == b.rel; }
};

enum class TransferViolationKind { Transitivity, Pullback };

/// Transitivity: x R y, y R z but not x R z.
/// Pullback: y R z and x <= z but not (x ^ y) R x.
struct TransferViolation {
  TransferViolationKind kind;
  Element x, y, z;

  friend bool operator==(const TransferViolation&, const TransferViolation&) = default;
};

inline void require_refines(const Lattice& l, const Relation& r) {
  if (r.size() != l.size()) throw Error(ErrorKind::CarrierMismatch, "relation and lattice sizes differ");
  for (Element x = 0; x < l.size(); ++x)
    if (r.row(x) & ~l.up_set(x))
      throw Error(ErrorKind::RefinementViolation, "pair starting at " + l.label(x) + " is not below in the order");
}

inline void require_same_carrier(const LatticeRef& a, const LatticeRef& b) {
  if (a != b && !(a && b && *a == *b)) throw Error(ErrorKind::CarrierMismatch, "structures live on different lattices");
}

/// Returns the first violated axiom, or nullopt when `r` is a transfer system.
inline std::optional<TransferViolation> validate_transfer(const Lattice& l, const Relation& r) {
  require_refines(l, r);
  const auto n = static_cast<Element>(l.size());
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      if (!r.contains(x, y)) continue;
      const Word missing = r.row(y) & ~r.row(x) & ~bit(x);
      if (missing) return TransferViolation{TransferViolationKind::Transitivity, x, y, static_cast<Element>(std::countr_zero(missing))};
    }
  for (Element y = 0; y < n; ++y)
    for (Element z = 0; z < n; ++z) {
      if (!r.contains(y, z)) continue;
      for (Element x = 0; x < n; ++x) {
        if (!l.leq(x, z)) continue;
        const Element m = l.meet(x, y);
        if (m != x && !r.contains(m, x)) return TransferViolation{TransferViolationKind::Pullback, x, y, z};
      }
    }
  return std::nullopt;
}

inline bool is_transfer_system(const Lattice& l, const Relation& r) { return !validate_transfer(l, r).has_value(); }

namespace detail {

using PairList = std::vector<std::pair<Element, Element>>;

/// Worklist closure of `r` (already closed) plus `work` under transitivity and
/// pullback, and under 3-for-2 when `saturate` is set.
inline void close_into(const Lattice& l, Relation& r, PairList work, bool saturate) {
  while (!work.empty()) {
    const auto [a, b] = work.back();
    work.pop_back();
    if (a == b || r.contains(a, b)) continue;
    r.insert(a, b);
    for_each_bit(r.column(a), [&](Element c) { work.emplace_back(c, b); });
    for_each_bit(r.row(b), [&](Element d) { work.emplace_back(a, d); });
    for_each_bit(l.down_set(b), [&](Element x) {
      const Element m = l.meet(x, a);
      if (m != x) work.emplace_back(m, x);
    });
    if (saturate) {
      // (a,b) as the short leg: a R z with b <= z forces b R z.
      for_each_bit(r.row(a) & l.up_set(b) & ~bit(b), [&](Element z) { work.emplace_back(b, z); });
      // (a,b) as the long leg: a R y with y <= b forces y R b.
      for_each_bit(r.row(a) & l.down_set(b) & ~bit(b), [&](Element y) { work.emplace_back(y, b); });
    }
  }
}

inline std::vector<std::size_t> strict_pair_indices(const Lattice& l) {
  std::vector<std::size_t> out;
  for (Element x = 0; x < l.size(); ++x) for_each_bit(l.up_set(x) & ~bit(x), [&](Element y) { out.push_back(64 * x + y); });
  return out;
}

inline std::vector<TransferSystem> closed_relations(const LatticeRef& l, bool saturate, const EnumerationOptions& opts) {
  const std::size_t n = l->size();
  auto close = [&](const BitSet& closed, std::size_t j) {
    Relation r = Relation::from_bits(n, closed);
    close_into(*l, r, {{static_cast<Element>(j / 64), static_cast<Element>(j % 64)}}, saturate);
    return r.bits();
  };
  auto sets = enumerate_closed_sets(BitSet(n), strict_pair_indices(*l), close, opts);
  std::vector<TransferSystem> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.push_back({l, Relation::from_bits(n, std::move(s))});
  return out;
}

}  // namespace detail

/// Smallest transfer system containing `s`.
inline TransferSystem generate(const LatticeRef& l, const Relation& s) {
  require_refines(*l, s);
  Relation r(l->size());
  detail::close_into(*l, r, s.pairs(), false);
  return {l, std::move(r)};
}

inline TransferSystem make_transfer(const LatticeRef& l, Relation r) {
  if (auto v = validate_transfer(*l, r))
    throw Error(ErrorKind::NotATransferSystem, "violated at (" + l->label(v->x) + "," + l->label(v->y) + "," + l->label(v->z) + ")");
  return {l, std::move(r)};
}

inline TransferSystem empty_transfer(const LatticeRef& l) { return {l, Relation(l->size())}; }
inline TransferSystem full_transfer(const LatticeRef& l) { return {l, l->order()}; }

/// Every transfer system on `l`, in canonical bitset order.
inline std::vector<TransferSystem> enumerate_transfer(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  return detail::closed_relations(l, false, opts);
}

/// Every saturated transfer system, enumerated directly through the saturated closure.
inline std::vector<TransferSystem> enumerate_saturated(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  return detail::closed_relations(l, true, opts);
}

inline TransferSystem ts_meet(const TransferSystem& a, const TransferSystem& b) {
  require_same_carrier(a.lattice, b.lattice);
  return {a.lattice, a.rel & b.rel};
}

inline TransferSystem ts_join(const TransferSystem& a, const TransferSystem& b) {
  require_same_carrier(a.lattice, b.lattice);
  return generate(a.lattice, a.rel | b.rel);
}

/// 3-for-2: x R y <= z and x R z imply y R z.
inline bool is_saturated(const TransferSystem& t) {
  const Lattice& l = *t.lattice;
  for (Element x = 0; x < l.size(); ++x) {
    const Word targets = t.rel.row(x);
    bool ok = true;
    for_each_bit(targets, [&](Element y) {
      if ((targets & l.up_set(y) & ~bit(y)) & ~t.rel.row(y)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

/// {x : x R 1}, always containing the top.
inline ElementSet slice_top(const TransferSystem& t) {
  const Lattice& l = *t.lattice;
  return t.rel.column(l.top()) | bit(l.top());
}

inline Relation top_relations(const Lattice& l, ElementSet s) {
  Relation r(l.size());
  for_each_bit(s & ~bit(l.top()), [&](Element x) { r.insert(x, l.top()); });
  return r;
}

/// Generated by its relations into the top element.
inline bool is_disklike(const TransferSystem& t) {
  return generate(t.lattice, top_relations(*t.lattice, slice_top(t))).rel == t.rel;
}

inline Relation transitive_closure(Relation r) {
  const std::size_t n = r.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if ((r.row(static_cast<Element>(i)) >> k) & 1U) r.row(static_cast<Element>(i)) |= r.row(static_cast<Element>(k));
  for (Element i = 0; i < n; ++i) r.erase(i, i);
  return r;
}

// ---------------------------------------------------------------------------
// Saturated covers on modular lattices

struct SaturatedCover {
  LatticeRef lattice;
  Relation covers;

  friend bool operator==(const SaturatedCover& a, const SaturatedCover& b) { return a.covers == b.covers; }
};

namespace detail {

struct HornRule {
  std::vector<std::pair<Element, Element>> premises;
  std::pair<Element, Element> conclusion;
};

/// The two saturated-cover conditions as Horn rules over covering relations.
inline std::vector<HornRule> cover_rules(const Lattice& l) {
  const Relation cov = covering_relations(l);
  std::vector<HornRule> rules;
  for (Element x = 0; x < l.size(); ++x)
    for (Element y = 0; y < l.size(); ++y) {
      if (l.comparable(x, y)) continue;
      const Element j = l.join(x, y);
      if (cov.contains(x, j)) rules.push_back({{{x, j}}, {l.meet(x, y), y}});
    }
  for (const Diamond& d : covering_diamonds(l)) {
    const std::pair<Element, Element> edges[4] = {{d.bottom, d.left}, {d.bottom, d.right}, {d.left, d.top}, {d.right, d.top}};
    for (int missing = 0; missing < 4; ++missing) {
      HornRule r{{}, edges[missing]};
      for (int i = 0; i < 4; ++i)
        if (i != missing) r.premises.push_back(edges[i]);
      rules.push_back(std::move(r));
    }
  }
  return rules;
}

inline void close_under(const std::vector<HornRule>& rules, Relation& q) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const HornRule& r : rules) {
      if (q.contains(r.conclusion.first, r.conclusion.second)) continue;
      bool fires = true;
      for (auto [a, b] : r.premises) fires = fires && q.contains(a, b);
      if (fires) {
        q.insert(r.conclusion.first, r.conclusion.second);
        changed = true;
      }
    }
  }
}

inline void require_modular(const Lattice& l) {
  if (!is_modular(l)) throw Error(ErrorKind::NotModular, "saturated covers need a modular lattice");
}

}  // namespace detail

inline bool is_saturated_cover(const Lattice& l, const Relation& q) {
  detail::require_modular(l);
  if (!q.subset_of(covering_relations(l))) throw Error(ErrorKind::NotACoverSubset, "relation contains a non-covering pair");
  Relation closed = q;
  detail::close_under(detail::cover_rules(l), closed);
  return closed == q;
}

/// Every saturated cover, as closed sets of the cover rules.
inline std::vector<SaturatedCover> enumerate_saturated_covers(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  detail::require_modular(*l);
  const std::size_t n = l->size();
  const auto rules = detail::cover_rules(*l);
  const Relation cov = covering_relations(*l);
  std::vector<std::size_t> candidates;
  for (auto [x, y] : cov.pairs()) candidates.push_back(64 * x + y);
  auto close = [&](const BitSet& closed, std::size_t j) {
    Relation q = Relation::from_bits(n, closed);
    q.insert(static_cast<Element>(j / 64), static_cast<Element>(j % 64));
    detail::close_under(rules, q);
    return q.bits();
  };
  auto sets = enumerate_closed_sets(BitSet(n), candidates, close, opts);
  std::vector<SaturatedCover> out;
  for (auto& s : sets) out.push_back({l, Relation::from_bits(n, std::move(s))});
  return out;
}

inline SaturatedCover cover_of(const TransferSystem& t) {
  detail::require_modular(*t.lattice);
  if (!is_saturated(t)) throw Error(ErrorKind::NotSaturated, "cover_of needs a saturated transfer system");
  return {t.lattice, t.rel & covering_relations(*t.lattice)};
}

/// The saturated transfer system whose covering relations are exactly `q`.
/// The transitive closure of `q` is the candidate; it is verified, and a
/// search over all saturated systems is the fallback.
inline TransferSystem ts_of(const SaturatedCover& q) {
  const Lattice& l = *q.lattice;
  if (!is_saturated_cover(l, q.covers)) throw Error(ErrorKind::NotSaturated, "not a saturated cover");
  const Relation candidate = transitive_closure(q.covers);
  if (is_transfer_system(l, candidate)) {
    TransferSystem t{q.lattice, candidate};
    if (is_saturated(t) && (candidate & covering_relations(l)) == q.covers) return t;
  }
  for (TransferSystem& t : enumerate_saturated(q.lattice))
    if ((t.rel & covering_relations(l)) == q.covers) return std::move(t);
  throw Error(ErrorKind::NoMatchingSystem, "no saturated transfer system has these covers");
}

}  // namespace latfac
