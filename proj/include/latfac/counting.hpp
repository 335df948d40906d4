#pragma once

#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latfac/crypto.hpp"

namespace latfac {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

/// Stirling numbers of the second kind, grown row by row on demand. Rows are
/// written once under the exclusive lock and only read afterwards.
class StirlingTable {
 public:
  BigInt get(unsigned n, unsigned k) {
    if (k > n) return 0;
    {
      std::shared_lock lock(mutex_);
      if (n < rows_.size()) return rows_[n][k];
    }
    std::unique_lock lock(mutex_);
    if (rows_.empty()) rows_.push_back({BigInt(1)});
    while (rows_.size() <= n) {
      const auto& prev = rows_.back();
      const std::size_t m = rows_.size();
      std::vector<BigInt> row(m + 1, 0);
      for (std::size_t j = 1; j <= m; ++j) row[j] = BigInt(j) * (j < prev.size() ? prev[j] : BigInt(0)) + prev[j - 1];
      rows_.push_back(std::move(row));
    }
    return rows_[n][k];
  }

 private:
  std::shared_mutex mutex_;
  std::vector<std::vector<BigInt>> rows_;
};

inline StirlingTable& stirling_table() {
  static StirlingTable table;
  return table;
}

}  // namespace detail

/// Partitions of an n-set into k nonempty blocks.
inline BigInt stirling2(unsigned n, unsigned k) { return detail::stirling_table().get(n, k); }

inline BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

/// B_{a,b} = Σ_k (k!)² S(a+1,k+1) S(b+1,k+1), for a,b >= 1.
inline BigInt poly_bernoulli(unsigned a, unsigned b) {
  if (a == 0 || b == 0) throw Error(ErrorKind::BadIndex, "poly-Bernoulli indices start at 1");
  BigInt sum = 0;
  for (unsigned k = 0; k <= std::min(a, b); ++k) {
    const BigInt f = factorial(k);
    sum += f * f * stirling2(a + 1, k + 1) * stirling2(b + 1, k + 1);
  }
  return sum;
}

/// ½·B_{m+1,n+1}; with `check`, also enumerates saturated transfer systems and
/// ∨-submonoids of grid(m,n) and requires all three to agree.
inline BigInt count_saturated_grid(unsigned m, unsigned n, bool check, const EnumerationOptions& opts = {}) {
  const BigInt formula = poly_bernoulli(m + 1, n + 1) / 2;
  if (check) {
    const LatticeRef l = share(make_standard("grid", {static_cast<int>(m), static_cast<int>(n)}));
    const BigInt saturated = enumerate_saturated(l, opts).size();
    const BigInt joins = enumerate_submonoids(l, MonoidOp::Join, opts).size();
    if (saturated != formula || joins != formula)
      throw Error(ErrorKind::CountMismatch, "grid(" + std::to_string(m) + "," + std::to_string(n) + "): formula " +
                                                formula.str() + ", saturated " + saturated.str() + ", join-submonoids " +
                                                joins.str());
  }
  return formula;
}

enum class Provenance { Formula, Enumeration, BothAgree };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Formula: return "formula";
    case Provenance::Enumeration: return "enumeration";
    case Provenance::BothAgree: return "both-agree";
  }
  return "";
}

struct CountEntry {
  std::string kind;
  BigInt value;
  Provenance provenance;
};

struct CountReport {
  std::string lattice;
  std::vector<CountEntry> counts;

  const CountEntry* find(const std::string& kind) const {
    for (const auto& c : counts)
      if (c.kind == kind) return &c;
    return nullptr;
  }
  BigInt at(const std::string& kind) const {
    const CountEntry* c = find(kind);
    if (!c) throw Error(ErrorKind::BadParams, "no count for " + kind);
    return c->value;
  }
};

/// Grid dimensions of a lattice made by make_standard, if it is a grid or chain.
inline std::optional<std::pair<unsigned, unsigned>> grid_dimensions(const Lattice& l) {
  if (!l.shape()) return std::nullopt;
  const Shape& s = *l.shape();
  if (s.kind == "grid") return std::pair{static_cast<unsigned>(s.params[0]), static_cast<unsigned>(s.params[1])};
  if (s.kind == "chain") return std::pair{static_cast<unsigned>(s.params[0]), 0U};
  return std::nullopt;
}

inline std::string describe(const Lattice& l) {
  if (!l.shape()) return "lattice(" + std::to_string(l.size()) + ")";
  std::string s = l.shape()->kind + "(";
  for (std::size_t i = 0; i < l.shape()->params.size(); ++i) s += (i ? "," : "") + std::to_string(l.shape()->params[i]);
  return s + ")";
}

/// The reflective-side and coreflective-side kinds that must agree pairwise.
inline const std::vector<std::string>& reflective_kinds() {
  static const std::vector<std::string> k{"reflective", "disklike", "submonoid-meet", "closure", "monad", "cofibrant-model", "lambda-fiber-minima"};
  return k;
}
inline const std::vector<std::string>& coreflective_kinds() {
  static const std::vector<std::string> k{"coreflective", "saturated", "submonoid-join", "interior", "comonad", "fibrant-model", "chi-fiber-maxima"};
  return k;
}

/// Counts every structure kind by enumeration, applies the poly-Bernoulli
/// formula on grids, and enforces the equalities between the two web halves.
inline CountReport count_report(const LatticeRef& l, const EnumerationOptions& opts = {}) {
  CountReport report{describe(*l), {}};
  auto put = [&](std::string kind, std::size_t v) { report.counts.push_back({std::move(kind), BigInt(v), Provenance::Enumeration}); };

  const auto fac = enumerate_fac(l, opts);
  const FactorizationSystem top_fs = max_fs(l), bottom_fs = min_fs(l);
  std::size_t saturated = 0, disklike = 0, reflective = 0, coreflective = 0, fibrant = 0, cofibrant = 0;
  for (const auto& f : fac) {
    const TransferSystem t = f.transfer();
    saturated += is_saturated(t);
    disklike += is_disklike(t);
    reflective += is_reflective(f);
    coreflective += is_coreflective(f);
    fibrant += is_model_structure(model_candidate(f, top_fs));
    cofibrant += is_model_structure(model_candidate(bottom_fs, f));
  }
  const std::size_t saturated_direct = enumerate_saturated(l, opts).size();
  if (saturated_direct != saturated)
    throw Error(ErrorKind::CountMismatch, "saturated: filter " + std::to_string(saturated) + " vs direct " + std::to_string(saturated_direct));

  put("transfer", fac.size());
  put("saturated", saturated);
  put("disklike", disklike);
  put("reflective", reflective);
  put("coreflective", coreflective);
  put("closure", enumerate_closure_operators(l, opts).size());
  put("interior", enumerate_interior_operators(l, opts).size());
  put("submonoid-meet", enumerate_submonoids(l, MonoidOp::Meet, opts).size());
  put("submonoid-join", enumerate_submonoids(l, MonoidOp::Join, opts).size());
  put("fibrant-model", fibrant);
  put("cofibrant-model", cofibrant);
  put("monad", enumerate_monads(l, opts).size());
  put("comonad", enumerate_comonads(l, opts).size());
  put("lambda-fiber-minima", fibers(fac, CharKind::Lambda).size());
  put("chi-fiber-maxima", fibers(fac, CharKind::Chi).size());

  for (const auto* side : {&reflective_kinds(), &coreflective_kinds()}) {
    const BigInt first = report.at(side->front());
    for (const auto& k : *side)
      if (report.at(k) != first)
        throw Error(ErrorKind::CountMismatch, k + " = " + report.at(k).str() + " but " + side->front() + " = " + first.str());
  }

  if (auto dims = grid_dimensions(*l)) {
    const BigInt formula = count_saturated_grid(dims->first, dims->second, false);
    for (auto& c : report.counts) {
      if (std::find(coreflective_kinds().begin(), coreflective_kinds().end(), c.kind) == coreflective_kinds().end()) continue;
      if (c.value != formula)
        throw Error(ErrorKind::CountMismatch, c.kind + " = " + c.value.str() + " but the poly-Bernoulli formula gives " + formula.str());
      c.provenance = Provenance::BothAgree;
    }
  }
  return report;
}

}  // namespace latfac
