#pragma once

#include <algorithm>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "latfac/io.hpp"

namespace latfac {

struct CheckResult {
  std::string name;
  std::size_t total = 0;
  std::size_t passed = 0;

  bool ok() const { return passed == total; }
};

/// Outcome of one exhaustive verification suite.
struct SuiteReport {
  std::string suite;
  std::string lattice;
  std::vector<std::pair<std::string, std::size_t>> universes;
  std::vector<CheckResult> checks;
  std::optional<io::json> counterexample;  // first failure: lattice, structure, violated condition

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
  }
  std::size_t universe(const std::string& name) const {
    for (const auto& [k, v] : universes)
      if (k == name) return v;
    return 0;
  }
  const CheckResult* check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"fooqw",      "fibers",    "refdisk",  "satdisk-duality", "matchstick",
                                              "clsubmon",   "submonoid", "monad",    "model",           "polybernoulli"};
  return names;
}

namespace detail {

class Recorder {
 public:
  Recorder(std::string suite, const Lattice& l) : l_(l) {
    report_.suite = std::move(suite);
    report_.lattice = describe(l);
  }

  void universe(std::string name, std::size_t n) { report_.universes.emplace_back(std::move(name), n); }

  /// Records one instance of check `name`; `witness` is only evaluated on the first failure.
  void expect(const std::string& name, bool ok, const std::function<io::json()>& witness = {}) {
    CheckResult& c = slot(name);
    ++c.total;
    if (ok) {
      ++c.passed;
    } else if (!report_.counterexample) {
      report_.counterexample = io::json{{"lattice", io::to_json(l_)}, {"condition", name}, {"structure", witness ? witness() : io::json()}};
    }
  }

  /// Ensures a check with no instances still appears in the report.
  void declare(const std::string& name) { slot(name); }

  SuiteReport take() { return std::move(report_); }

 private:
  CheckResult& slot(const std::string& name) {
    for (auto& c : report_.checks)
      if (c.name == name) return c;
    report_.checks.push_back({name, 0, 0});
    return report_.checks.back();
  }

  const Lattice& l_;
  SuiteReport report_;
};

inline std::size_t index_of(const std::vector<FactorizationSystem>& fac, const Relation& right) {
  auto it = std::lower_bound(fac.begin(), fac.end(), right, [](const FactorizationSystem& f, const Relation& r) { return f.right < r; });
  return it != fac.end() && it->right == right ? static_cast<std::size_t>(it - fac.begin()) : fac.size();
}

}  // namespace detail

// Shared building blocks, also used directly by the acceptance suite.

/// Prop 3.3: F <= G implies λ(G) <= λ(F) and χ(F) <= χ(G), over all pairs.
inline void check_antitone(detail::Recorder& rec, const std::vector<FactorizationSystem>& fac) {
  std::vector<Endo> lam, ch;
  for (const auto& f : fac) {
    lam.push_back(lambda(f));
    ch.push_back(chi(f));
  }
  rec.declare("lambda antitone");
  rec.declare("chi antitone");
  for (std::size_t i = 0; i < fac.size(); ++i)
    for (std::size_t j = 0; j < fac.size(); ++j) {
      if (!fs_leq(fac[i], fac[j])) continue;
      rec.expect("lambda antitone", endo_leq(lam[j], lam[i]), [&] { return io::json{io::to_json(fac[i]), io::to_json(fac[j])}; });
      rec.expect("chi antitone", endo_leq(ch[j], ch[i]), [&] { return io::json{io::to_json(fac[i]), io::to_json(fac[j])}; });
    }
}

/// Lemmas on fibers: equal λ (resp. χ) values are preserved by meet and join.
inline void check_fiber_stability(detail::Recorder& rec, const std::vector<Fiber>& fs, CharKind which) {
  const std::string name = which == CharKind::Lambda ? "lambda fiber meet/join stable" : "chi fiber meet/join stable";
  rec.declare(name);
  for (const Fiber& fib : fs)
    for (std::size_t i = 0; i < fib.members.size(); ++i)
      for (std::size_t j = i + 1; j < fib.members.size(); ++j) {
        const auto& a = fib.members[i];
        const auto& b = fib.members[j];
        const auto m = fs_meet(a, b), jn = fs_join(a, b);
        const Endo em = which == CharKind::Lambda ? lambda(m) : chi(m);
        const Endo ej = which == CharKind::Lambda ? lambda(jn) : chi(jn);
        rec.expect(name, em == fib.op && ej == fib.op, [&] { return io::json{io::to_json(a), io::to_json(b)}; });
      }
}

inline SuiteReport verify_fooqw(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  detail::Recorder rec("fooqw", *l);
  const auto ts = enumerate_transfer(l, opts);
  rec.universe("transfer-systems", ts.size());
  std::vector<FactorizationSystem> fac;
  for (const auto& t : ts) {
    FactorizationSystem f = from_transfer(t);
    rec.expect("from_transfer validates", is_factorization_system(f), [&] { return io::to_json(f); });
    rec.expect("round-trip", to_transfer(f) == t, [&] { return io::to_json(t); });
    fac.push_back(std::move(f));
  }
  rec.declare("order preserved");
  if (ts.size() <= 3000) {
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = 0; j < ts.size(); ++j) {
        const bool tr = ts[i].rel.subset_of(ts[j].rel);
        rec.expect("order preserved", tr == fs_leq(fac[i], fac[j]) && tr == fac[j].left.subset_of(fac[i].left),
                   [&] { return io::json{io::to_json(fac[i]), io::to_json(fac[j])}; });
      }
  }
  return rec.take();
}

inline SuiteReport verify_fibers(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  detail::Recorder rec("fibers", *l);
  const auto fac = enumerate_fac(l, opts);
  const auto lam_fibers = fibers(fac, CharKind::Lambda);
  const auto chi_fibers = fibers(fac, CharKind::Chi);
  rec.universe("factorization-systems", fac.size());
  rec.universe("lambda-fibers", lam_fibers.size());
  rec.universe("chi-fibers", chi_fibers.size());

  for (int side = 0; side < 2; ++side) {
    const bool is_lambda = side == 0;
    const auto& fs = is_lambda ? lam_fibers : chi_fibers;
    const std::string tag = is_lambda ? "lambda" : "chi";
    std::set<std::vector<Element>> image;
    std::set<Relation> endpoints;
    for (const Fiber& fib : fs) {
      image.insert(fib.op.table);
      const FactorizationSystem& end = is_lambda ? fib.lower : fib.upper;
      endpoints.insert(end.right);
      rec.expect(tag + " fibers are intervals", fib.is_interval, [&] { return io::to_json(fib); });
      rec.expect(is_lambda ? "lambda minima reflective" : "chi maxima coreflective",
                 is_lambda ? is_reflective(end) : is_coreflective(end), [&] { return io::to_json(fib); });
      const OperatorClass c = classify(fib.op);
      rec.expect(is_lambda ? "lambda values are closure operators" : "chi values are interior operators",
                 is_lambda ? c.closure() : c.interior(), [&] { return io::to_json(fib.op); });
    }
    std::set<std::vector<Element>> operators;
    for (const Submonoid& a : enumerate_submonoids(l, is_lambda ? MonoidOp::Meet : MonoidOp::Join, opts))
      operators.insert((is_lambda ? closure_from_submonoid(l, a.members) : interior_from_submonoid(l, a.members)).table);
    rec.expect(tag + " image = operators from submonoids", image == operators,
               [&] { return io::json{{"image_size", image.size()}, {"operators", operators.size()}}; });
    std::set<Relation> special;
    for (const auto& f : fac)
      if (is_lambda ? is_reflective(f) : is_coreflective(f)) special.insert(f.right);
    rec.expect(is_lambda ? "lambda minima = reflective" : "chi maxima = coreflective", endpoints == special,
               [&] { return io::json{{"endpoints", endpoints.size()}, {"special", special.size()}}; });
  }

  for (const auto& f : fac) rec.expect("duality chi = lambda op", verify_duality(f), [&] { return io::to_json(f); });
  if (fac.size() <= 2000) check_antitone(rec, fac);
  std::size_t pair_work = 0;
  for (const auto& f : lam_fibers) pair_work += f.members.size() * f.members.size();
  for (const auto& f : chi_fibers) pair_work += f.members.size() * f.members.size();
  if (pair_work <= 200000) {
    check_fiber_stability(rec, lam_fibers, CharKind::Lambda);
    check_fiber_stability(rec, chi_fibers, CharKind::Chi);
  }
  return rec.take();
}

inline SuiteReport verify_refdisk(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  detail::Recorder rec("refdisk", *l);
  const auto fac = enumerate_fac(l, opts);
  rec.universe("factorization-systems", fac.size());
  for (const auto& f : fac) {
    rec.expect("reflective iff disklike", is_reflective(f) == is_disklike(f.transfer()), [&] { return io::to_json(f); });
    rec.expect("coreflective iff saturated", is_coreflective(f) == is_saturated(f.transfer()), [&] { return io::to_json(f); });
  }
  return rec.take();
}

inline SuiteReport verify_satdisk_duality(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  detail::Recorder rec("satdisk-duality", *l);
  const LatticeRef dual = share(dual_lattice(*l));
  const auto ts = enumerate_transfer(l, opts);
  const auto dual_ts = enumerate_transfer(dual, opts);
  rec.universe("transfer-systems", ts.size());
  rec.universe("dual-transfer-systems", dual_ts.size());
  std::set<Relation> image;
  std::size_t saturated = 0;
  for (const auto& t : ts) {
    const TransferSystem d{dual, op(*l, left_complement(*l, t.rel))};
    image.insert(d.rel);
    saturated += is_saturated(t);
    rec.expect("image is a transfer system", is_transfer_system(*dual, d.rel), [&] { return io::to_json(t); });
    rec.expect("saturated iff dual disklike", is_saturated(t) == is_disklike(d), [&] { return io::to_json(t); });
  }
  std::size_t dual_disklike = 0;
  for (const auto& t : dual_ts) dual_disklike += is_disklike(t);
  rec.expect("duality is a bijection", image.size() == ts.size() && ts.size() == dual_ts.size());
  rec.expect("#saturated(P) = #disklike(P^op)", saturated == dual_disklike,
             [&] { return io::json{{"saturated", saturated}, {"dual_disklike", dual_disklike}}; });
  return rec.take();
}

inline SuiteReport verify_matchstick(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  detail::Recorder rec("matchstick", *l);
  if (!is_modular(*l)) throw Error(ErrorKind::NotModular, "matchstick needs a modular lattice");
  const auto sat = enumerate_saturated(l, opts);
  const auto covers = enumerate_saturated_covers(l, opts);
  rec.universe("saturated-transfer-systems", sat.size());
  rec.universe("saturated-covers", covers.size());
  rec.expect("equal cardinality", sat.size() == covers.size(),
             [&] { return io::json{{"systems", sat.size()}, {"covers", covers.size()}}; });
  std::set<Relation> images;
  for (const auto& t : sat) {
    const SaturatedCover q = cover_of(t);
    images.insert(q.covers);
    rec.expect("cover_of gives a saturated cover", is_saturated_cover(*l, q.covers), [&] { return io::to_json(t); });
    rec.expect("ts_of . cover_of = id", ts_of(q) == t, [&] { return io::to_json(t); });
  }
  for (const auto& q : covers)
    rec.expect("cover_of . ts_of = id", cover_of(ts_of(q)) == q, [&] { return io::pairs_to_json(q.covers); });
  rec.expect("cover_of injective", images.size() == sat.size());
  return rec.take();
}

inline SuiteReport verify_clsubmon(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  detail::Recorder rec("clsubmon", *l);
  for (int side = 0; side < 2; ++side) {
    const bool closure = side == 0;
    const auto ops = closure ? enumerate_closure_operators(l, opts) : enumerate_interior_operators(l, opts);
    const auto subs = enumerate_submonoids(l, closure ? MonoidOp::Meet : MonoidOp::Join, opts);
    const std::string tag = closure ? "closure" : "interior";
    rec.universe(closure ? "closure-operators" : "interior-operators", ops.size());
    rec.universe(closure ? "meet-submonoids" : "join-submonoids", subs.size());
    auto from = [&](ElementSet a) { return closure ? closure_from_submonoid(l, a) : interior_from_submonoid(l, a); };
    for (const Endo& c : ops) {
      const ElementSet fixed = fixed_points(c);
      rec.expect(tag + " fixed points form a submonoid", is_submonoid(*l, closure ? MonoidOp::Meet : MonoidOp::Join, fixed),
                 [&] { return io::to_json(c); });
      rec.expect(tag + " round-trip", from(fixed) == c, [&] { return io::to_json(c); });
    }
    for (const Submonoid& a : subs) {
      const Endo c = from(a.members);
      const OperatorClass k = classify(c);
      rec.expect(tag + " from submonoid is an operator", closure ? k.closure() : k.interior(), [&] { return io::to_json(a); });
      rec.expect(tag + " submonoid round-trip", fixed_points(c) == a.members, [&] { return io::to_json(a); });
    }
    rec.expect(tag + " counts agree", ops.size() == subs.size());
  }
  return rec.take();
}

inline SuiteReport verify_submonoid(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  detail::Recorder rec("submonoid", *l);
  const auto fac = enumerate_fac(l, opts);
  rec.universe("factorization-systems", fac.size());
  for (int side = 0; side < 2; ++side) {
    const bool refl = side == 0;
    const auto subs = enumerate_submonoids(l, refl ? MonoidOp::Meet : MonoidOp::Join, opts);
    const std::string tag = refl ? "reflective" : "coreflective";
    rec.universe(refl ? "meet-submonoids" : "join-submonoids", subs.size());
    std::size_t special = 0;
    for (const auto& f : fac) {
      if (!(refl ? is_reflective(f) : is_coreflective(f))) continue;
      ++special;
      const Submonoid a = fac_to_submonoid(f, refl ? Reflectivity::Reflective : Reflectivity::Coreflective);
      rec.expect(tag + " fac -> submonoid -> fac", submonoid_to_fac(a) == f, [&] { return io::to_json(f); });
    }
    for (const auto& a : subs) {
      const FactorizationSystem f = submonoid_to_fac(a);
      const bool ok = (refl ? is_reflective(f) : is_coreflective(f)) &&
                      fac_to_submonoid(f, refl ? Reflectivity::Reflective : Reflectivity::Coreflective) == a;
      rec.expect(tag + " submonoid -> fac -> submonoid", ok, [&] { return io::to_json(a); });
    }
    rec.expect(tag + " counts agree", special == subs.size(),
               [&] { return io::json{{"systems", special}, {"submonoids", subs.size()}}; });
  }
  rec.declare("galois adjunction");
  if (l->size() <= 20 && (std::size_t{1} << l->size()) * fac.size() <= 2'000'000) {
    for (ElementSet s = 0; s < (ElementSet{1} << l->size()); ++s)
      for (const auto& f : fac)
        rec.expect("galois adjunction", galois_check(l, s, f), [&] { return io::json{{"S", io::set_to_json(s)}, {"F", io::to_json(f)}}; });
  }
  return rec.take();
}

inline SuiteReport verify_monad(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  detail::Recorder rec("monad", *l);
  const auto monads = enumerate_monads(l, opts);
  const auto comonads = enumerate_comonads(l, opts);
  const auto closures = enumerate_closure_operators(l, opts);
  const auto interiors = enumerate_interior_operators(l, opts);
  rec.universe("monads", monads.size());
  rec.universe("comonads", comonads.size());
  rec.universe("closure-operators", closures.size());
  rec.universe("interior-operators", interiors.size());
  rec.expect("monads = closure operators", monads == closures);
  rec.expect("comonads = interior operators", comonads == interiors);
  for (const Endo& t : monads) rec.expect("monad is closure", classify(t).closure(), [&] { return io::to_json(t); });
  for (const Endo& t : comonads) rec.expect("comonad is interior", classify(t).interior(), [&] { return io::to_json(t); });

  // All self-maps, when few enough: laws and classification must agree.
  rec.declare("is_monad iff closure (all maps)");
  double total = 1;
  for (std::size_t i = 0; i < l->size(); ++i) total *= static_cast<double>(l->size());
  if (total <= 2e6) {
    const std::size_t n = l->size();
    Endo t{l, std::vector<Element>(n, 0)};
    for (;;) {
      const bool mono = is_monotone(t);
      const OperatorClass c = mono ? classify(t) : OperatorClass{};
      rec.expect("is_monad iff closure (all maps)", is_monad(t) == (mono && c.closure()), [&] { return io::to_json(t); });
      rec.expect("is_comonad iff interior (all maps)", is_comonad(t) == (mono && c.interior()), [&] { return io::to_json(t); });
      std::size_t i = 0;
      while (i < n && ++t.table[i] == n) t.table[i++] = 0;
      if (i == n) break;
    }
  }
  return rec.take();
}

inline SuiteReport verify_model(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  detail::Recorder rec("model", *l);
  const auto fac = enumerate_fac(l, opts);
  rec.universe("factorization-systems", fac.size());
  const FactorizationSystem top = max_fs(l), bottom = min_fs(l);
  std::size_t fibrant = 0, cofibrant = 0, coreflective = 0, reflective = 0;
  for (const auto& f : fac) {
    const bool fib = is_model_structure(model_candidate(f, top));
    const bool cof = is_model_structure(model_candidate(bottom, f));
    fibrant += fib;
    cofibrant += cof;
    coreflective += is_coreflective(f);
    reflective += is_reflective(f);
    rec.expect("fibrant iff coreflective", fib == is_coreflective(f), [&] { return io::to_json(f); });
    rec.expect("cofibrant iff reflective", cof == is_reflective(f), [&] { return io::to_json(f); });
    if (is_coreflective(f)) {
      const ModelStructure m = make_fibrant(f);
      rec.expect("fibrant model valid with W = R", is_model_structure(m) && is_fibrant(m) && m.weak == f.right && m.lower == f,
                 [&] { return io::to_json(m); });
    }
    if (is_reflective(f)) {
      const ModelStructure m = make_cofibrant(f);
      rec.expect("cofibrant model valid with W = L", is_model_structure(m) && is_cofibrant(m) && m.weak == f.left && m.upper == f,
                 [&] { return io::to_json(m); });
    }
  }
  rec.universe("fibrant-models", fibrant);
  rec.universe("cofibrant-models", cofibrant);
  rec.expect("#fibrant = #coreflective", fibrant == coreflective);
  rec.expect("#cofibrant = #reflective", cofibrant == reflective);
  return rec.take();
}

inline SuiteReport verify_polybernoulli(unsigned m, unsigned n, const EnumerationOptions& opts = {}) {
  const LatticeRef l = share(make_standard("grid", {static_cast<int>(m), static_cast<int>(n)}));
  detail::Recorder rec("polybernoulli", *l);
  const BigInt formula = count_saturated_grid(m, n, false);
  const std::size_t saturated = enumerate_saturated(l, opts).size();
  const std::size_t joins = enumerate_submonoids(l, MonoidOp::Join, opts).size();
  rec.universe("formula", static_cast<std::size_t>(formula));
  rec.universe("saturated-transfer-systems", saturated);
  rec.universe("join-submonoids", joins);
  const auto witness = [&] { return io::json{{"formula", formula.str()}, {"saturated", saturated}, {"join_submonoids", joins}}; };
  rec.expect("formula = #saturated", formula == saturated, witness);
  rec.expect("formula = #join-submonoids", formula == joins, witness);
  return rec.take();
}

inline SuiteReport verify_suite(const std::string& name, const LatticeRef& l, const EnumerationOptions& opts = {}) {
  if (name == "fooqw") return verify_fooqw(l, opts);
  if (name == "fibers") return verify_fibers(l, opts);
  if (name == "refdisk") return verify_refdisk(l, opts);
  if (name == "satdisk-duality") return verify_satdisk_duality(l, opts);
  if (name == "matchstick") return verify_matchstick(l, opts);
  if (name == "clsubmon") return verify_clsubmon(l, opts);
  if (name == "submonoid") return verify_submonoid(l, opts);
  if (name == "monad") return verify_monad(l, opts);
  if (name == "model") return verify_model(l, opts);
  if (name == "polybernoulli") {
    auto dims = grid_dimensions(*l);
    if (!dims) throw Error(ErrorKind::BadParams, "polybernoulli needs a grid or chain lattice");
    return verify_polybernoulli(dims->first, dims->second, opts);
  }
  throw Error(ErrorKind::BadParams, "unknown suite '" + name + "'");
}

inline io::json to_json(const SuiteReport& r) {
  io::json universes = io::json::object();
  for (const auto& [k, v] : r.universes) universes[k] = v;
  io::json checks = io::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"total", c.total}});
  io::json j{{"format", io::kFormatVersion}, {"suite", r.suite}, {"lattice", r.lattice}, {"universes", universes},
             {"checks", checks}, {"result", r.passed() ? "pass" : "fail"}};
  if (r.counterexample) j["counterexample"] = *r.counterexample;
  return j;
}

inline void print_table(std::ostream& os, const SuiteReport& r) {
  std::size_t width = 8;
  for (const auto& [k, v] : r.universes) width = std::max(width, k.size());
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  os << std::left << std::setw(static_cast<int>(width)) << "suite" << "  " << r.suite << '\n';
  os << std::setw(static_cast<int>(width)) << "lattice" << "  " << r.lattice << '\n';
  for (const auto& [k, v] : r.universes) os << std::setw(static_cast<int>(width)) << k << "  " << v << '\n';
  for (const auto& c : r.checks)
    os << std::setw(static_cast<int>(width)) << c.name << "  " << c.passed << "/" << c.total << (c.ok() ? "" : "  FAIL") << '\n';
  os << std::setw(static_cast<int>(width)) << "result" << "  " << (r.passed() ? "PASS" : "FAIL") << '\n';
}

}  // namespace latfac
