#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "latfac/factorization.hpp"

namespace latfac {

/// Monotone self-map of a lattice stored as a dense table.
struct Endo {
  LatticeRef lattice;
  std::vector<Element> table;

  Element operator()(Element x) const { return table[x]; }

  friend bool operator==(const Endo& a, const Endo& b) { return a.table == b.table; }
  friend auto operator<=>(const Endo& a, const Endo& b) { return a.table <=> b.table; }
};

inline Endo identity_endo(const LatticeRef& l) {
  Endo f{l, std::vector<Element>(l->size())};
  for (Element x = 0; x < l->size(); ++x) f.table[x] = x;
  return f;
}

inline Endo constant_endo(const LatticeRef& l, Element v) { return {l, std::vector<Element>(l->size(), v)}; }

inline bool is_monotone(const Endo& f) {
  const Lattice& l = *f.lattice;
  for (Element x = 0; x < l.size(); ++x)
    for (Element y = 0; y < l.size(); ++y)
      if (l.leq(x, y) && !l.leq(f(x), f(y))) return false;
  return true;
}

/// Pointwise order on End P.
inline bool endo_leq(const Endo& f, const Endo& g) {
  for (Element x = 0; x < f.table.size(); ++x)
    if (!f.lattice->leq(f(x), g(x))) return false;
  return true;
}

struct OperatorClass {
  bool extensive = false;
  bool contractive = false;
  bool idempotent = false;

  bool closure() const { return extensive && idempotent; }
  bool interior() const { return contractive && idempotent; }
  friend bool operator==(const OperatorClass&, const OperatorClass&) = default;
};

inline OperatorClass classify(const Endo& f) {
  if (!is_monotone(f)) throw Error(ErrorKind::NotMonotone, "classify needs a monotone map");
  const Lattice& l = *f.lattice;
  OperatorClass c{true, true, true};
  for (Element x = 0; x < l.size(); ++x) {
    c.extensive = c.extensive && l.leq(x, f(x));
    c.contractive = c.contractive && l.leq(f(x), x);
    c.idempotent = c.idempotent && f(f(x)) == f(x);
  }
  return c;
}

namespace detail {

/// Minimum of `s` as an iterated meet, verified to lie in `s`.
inline std::optional<Element> least(const Lattice& l, ElementSet s) {
  if (!s) return std::nullopt;
  Element m = l.top();
  for_each_bit(s, [&](Element x) { m = l.meet(m, x); });
  if (!((s >> m) & 1U)) return std::nullopt;
  return m;
}

inline std::optional<Element> greatest(const Lattice& l, ElementSet s) {
  if (!s) return std::nullopt;
  Element m = l.bottom();
  for_each_bit(s, [&](Element x) { m = l.join(m, x); });
  if (!((s >> m) & 1U)) return std::nullopt;
  return m;
}

}  // namespace detail

/// Characteristic function: x ↦ factoring object of 0 → x, i.e.
/// min{y : y R x}. With `cross_check`, also evaluates max{y : 0 L y <= x}
/// and insists the two agree.
inline Endo chi(const FactorizationSystem& f, bool cross_check = true) {
  const Lattice& l = *f.lattice;
  Endo out{f.lattice, std::vector<Element>(l.size())};
  const ElementSet coslice = left_coslice(f);
  for (Element x = 0; x < l.size(); ++x) {
    auto m = detail::least(l, f.right.column(x) | bit(x));
    if (!m) throw Error(ErrorKind::MinNotUnique, "min{y : y R " + l.label(x) + "} does not exist");
    if (cross_check) {
      auto alt = detail::greatest(l, coslice & l.down_set(x));
      if (!alt) throw Error(ErrorKind::MaxNotUnique, "max{y : 0 L y <= " + l.label(x) + "} does not exist");
      if (*alt != *m) throw Error(ErrorKind::MaxNotUnique, "characteristic formulas disagree at " + l.label(x));
    }
    out.table[x] = *m;
  }
  return out;
}

/// Cocharacteristic function: x ↦ factoring object of x → 1, i.e.
/// min{y : x <= y R 1}, cross-checked against max{y : x L y}.
inline Endo lambda(const FactorizationSystem& f, bool cross_check = true) {
  const Lattice& l = *f.lattice;
  Endo out{f.lattice, std::vector<Element>(l.size())};
  const ElementSet slice = right_slice(f);
  for (Element x = 0; x < l.size(); ++x) {
    auto m = detail::least(l, slice & l.up_set(x));
    if (!m) throw Error(ErrorKind::MinNotUnique, "min{y : " + l.label(x) + " <= y R 1} does not exist");
    if (cross_check) {
      auto alt = detail::greatest(l, f.left.row(x) | bit(x));
      if (!alt) throw Error(ErrorKind::MaxNotUnique, "max{y : " + l.label(x) + " L y} does not exist");
      if (*alt != *m) throw Error(ErrorKind::MaxNotUnique, "cocharacteristic formulas disagree at " + l.label(x));
    }
    out.table[x] = *m;
  }
  return out;
}

inline bool is_meet_submonoid(const Lattice& l, ElementSet a) { return ((a >> l.top()) & 1U) && meet_closed(l, a); }
inline bool is_join_submonoid(const Lattice& l, ElementSet a) { return ((a >> l.bottom()) & 1U) && join_closed(l, a); }

/// x ↦ min{y ∈ A : x <= y} for a ∧-submonoid A.
inline Endo closure_from_submonoid(const LatticeRef& l, ElementSet a) {
  if (!is_meet_submonoid(*l, a)) throw Error(ErrorKind::NotASubmonoid, "not a meet-submonoid containing the top");
  Endo f{l, std::vector<Element>(l->size())};
  for (Element x = 0; x < l->size(); ++x) f.table[x] = *detail::least(*l, a & l->up_set(x));
  return f;
}

/// x ↦ max{y ∈ A : y <= x} for a ∨-submonoid A.
inline Endo interior_from_submonoid(const LatticeRef& l, ElementSet a) {
  if (!is_join_submonoid(*l, a)) throw Error(ErrorKind::NotASubmonoid, "not a join-submonoid containing the bottom");
  Endo f{l, std::vector<Element>(l->size())};
  for (Element x = 0; x < l->size(); ++x) f.table[x] = *detail::greatest(*l, a & l->down_set(x));
  return f;
}

inline ElementSet fixed_points(const Endo& f) {
  ElementSet s = 0;
  for (Element x = 0; x < f.table.size(); ++x) {
    if (f(f(x)) != f(x)) throw Error(ErrorKind::NotIdempotent, "fixed_points needs an idempotent map");
    if (f(x) == x) s |= bit(x);
  }
  return s;
}

/// χ(F) on P against λ(F^op) on P^op, and λ(F) against χ(F^op).
inline bool verify_duality(const FactorizationSystem& f) {
  const Lattice& l = *f.lattice;
  const LatticeRef dual = share(dual_lattice(l));
  const FactorizationSystem g = dual_fs(f, dual);
  const Endo c = chi(f), lam = lambda(f), dual_lam = lambda(g), dual_c = chi(g);
  for (Element x = 0; x < l.size(); ++x) {
    if (c(x) != op(l, dual_lam(op(l, x)))) return false;
    if (lam(x) != op(l, dual_c(op(l, x)))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fibers

enum class CharKind { Chi, Lambda };

struct Fiber {
  Endo op;
  std::vector<FactorizationSystem> members;
  FactorizationSystem lower;
  FactorizationSystem upper;
  bool is_interval = false;
};

namespace detail {

inline Fiber make_fiber(Endo op, std::vector<FactorizationSystem> members, const std::vector<FactorizationSystem>& universe) {
  const LatticeRef& l = members.front().lattice;
  Relation low = members.front().right, high(l->size());
  for (const auto& m : members) {
    low = low & m.right;
    high = high | m.right;
  }
  FactorizationSystem lower = from_transfer({l, low});
  FactorizationSystem upper = from_transfer(generate(l, high));
  const auto in_members = [&](const FactorizationSystem& f) { return std::find(members.begin(), members.end(), f) != members.end(); };
  std::size_t in_interval = 0;
  for (const auto& f : universe) in_interval += fs_leq(lower, f) && fs_leq(f, upper);
  const bool interval = in_members(lower) && in_members(upper) && in_interval == members.size();
  return {std::move(op), std::move(members), std::move(lower), std::move(upper), interval};
}

}  // namespace detail

/// Groups `universe` (all of Fac P) by χ or λ; fibers are ordered by operator table.
inline std::vector<Fiber> fibers(const std::vector<FactorizationSystem>& universe, CharKind which) {
  std::map<std::vector<Element>, std::vector<FactorizationSystem>> groups;
  for (const auto& f : universe) groups[(which == CharKind::Chi ? chi(f) : lambda(f)).table].push_back(f);
  std::vector<Fiber> out;
  for (auto& [table, members] : groups) {
    Endo e{members.front().lattice, table};
    out.push_back(detail::make_fiber(std::move(e), std::move(members), universe));
  }
  return out;
}

inline Fiber fiber(const LatticeRef& l, CharKind which, const Endo& target, const EnumerationOptions& opts = {}) {
  const auto universe = enumerate_fac(l, opts);
  std::vector<FactorizationSystem> members;
  for (const auto& f : universe)
    if ((which == CharKind::Chi ? chi(f) : lambda(f)) == target) members.push_back(f);
  if (members.empty()) throw Error(ErrorKind::EmptyFiber, "operator is not in the image");
  return detail::make_fiber(target, std::move(members), universe);
}

// ---------------------------------------------------------------------------
// Direct enumeration of monotone maps under pointwise laws

/// Backtracking over monotone maps, assigning elements in id order (a linear
/// extension, so every y < x is assigned before x). `allowed(x)` restricts the
/// value of x; `consistent(table, x)` checks laws involving the prefix 0..x.
template <class Allowed, class Consistent>
std::vector<Endo> enumerate_monotone_maps(const LatticeRef& l, Allowed allowed, Consistent consistent,
                                          const EnumerationOptions& opts = {}) {
  const std::size_t n = l->size();
  std::vector<Element> table(n);
  std::vector<Endo> out;
  auto step = [&](auto&& self, Element x) -> void {
    if (x == n) {
      if (out.size() >= opts.max_results)
        throw Error(ErrorKind::EnumerationLimitExceeded, "more than " + std::to_string(opts.max_results) + " maps");
      out.push_back({l, table});
      return;
    }
    ElementSet values = allowed(x);
    for_each_bit(l->down_set(x) & ~bit(x), [&](Element y) { values &= l->up_set(table[y]); });
    for_each_bit(values, [&](Element v) {
      table[x] = v;
      if (consistent(table, x)) self(self, x + 1);
    });
  };
  step(step, 0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

/// Idempotence on every y <= x whose image is already assigned.
inline bool idempotent_prefix(const std::vector<Element>& t, Element x) {
  for (Element y = 0; y <= x; ++y)
    if (t[y] <= x && t[t[y]] != t[y]) return false;
  return true;
}

}  // namespace detail

inline std::vector<Endo> enumerate_closure_operators(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  return enumerate_monotone_maps(l, [&](Element x) { return l->up_set(x); }, detail::idempotent_prefix, opts);
}

inline std::vector<Endo> enumerate_interior_operators(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  return enumerate_monotone_maps(l, [&](Element x) { return l->down_set(x); }, detail::idempotent_prefix, opts);
}

}  // namespace latfac
