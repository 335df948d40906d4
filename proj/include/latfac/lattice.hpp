#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latfac/bitset.hpp"
#include "latfac/error.hpp"

namespace latfac {

using Element = unsigned;
using ElementSet = Word;  // bit x set <=> element x is a member

inline constexpr std::size_t kHardMaxElements = 64;

/// Element cap for constructors. LATFAC_MAX_ELEMENTS may lower it; it can
/// never exceed the one-word-per-row storage limit.
inline std::size_t max_elements() {
  if (const char* env = std::getenv("LATFAC_MAX_ELEMENTS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return std::min<std::size_t>(static_cast<std::size_t>(v), kHardMaxElements);
  }
  return kHardMaxElements;
}

/// Set of strict pairs (x,y) over a carrier of `size()` elements; the
/// diagonal is implied and never stored.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), bits_(n) {}

  std::size_t size() const { return n_; }
  Word row(Element x) const { return bits_.word(x); }
  Word& row(Element x) { return bits_.word(x); }

  bool contains(Element x, Element y) const { return x != y && ((bits_.word(x) >> y) & 1U); }
  /// Membership in the reflexive closure.
  bool related(Element x, Element y) const { return x == y || contains(x, y); }

  void insert(Element x, Element y) {
    if (x != y) bits_.word(x) |= bit(y);
  }
  void erase(Element x, Element y) { bits_.word(x) &= ~bit(y); }

  std::size_t count() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool subset_of(const Relation& o) const { return bits_.subset_of(o.bits_); }

  Word column(Element y) const {
    Word c = 0;
    for (Element x = 0; x < n_; ++x)
      if ((bits_.word(x) >> y) & 1U) c |= bit(x);
    return c;
  }

  std::vector<std::pair<Element, Element>> pairs() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element x = 0; x < n_; ++x) for_each_bit(bits_.word(x), [&](Element y) { out.emplace_back(x, y); });
    return out;
  }

  const BitSet& bits() const { return bits_; }
  static Relation from_bits(std::size_t n, BitSet b) {
    Relation r;
    r.n_ = n;
    r.bits_ = std::move(b);
    return r;
  }

  friend Relation operator&(const Relation& a, const Relation& b) { return from_bits(a.n_, a.bits_ & b.bits_); }
  friend Relation operator|(const Relation& a, const Relation& b) { return from_bits(a.n_, a.bits_ | b.bits_); }
  friend bool operator==(const Relation&, const Relation&) = default;
  friend std::strong_ordering operator<=>(const Relation& a, const Relation& b) { return a.bits_ <=> b.bits_; }

 private:
  std::size_t n_ = 0;
  BitSet bits_;
};

/// Name and parameters of a lattice produced by make_standard.
struct Shape {
  std::string kind;
  std::vector<int> params;
  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Finite bounded lattice. Element ids form a linear extension of the order,
/// so 0 is the bottom and size()-1 the top.
class Lattice {
 public:
  std::size_t size() const { return labels_.size(); }
  Element bottom() const { return 0; }
  Element top() const { return static_cast<Element>(size() - 1); }
  const std::string& label(Element x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool leq(Element x, Element y) const { return (up_[x] >> y) & 1U; }
  bool lt(Element x, Element y) const { return x != y && leq(x, y); }
  bool comparable(Element x, Element y) const { return leq(x, y) || leq(y, x); }
  Element meet(Element x, Element y) const { return meet_[x * size() + y]; }
  Element join(Element x, Element y) const { return join_[x * size() + y]; }

  /// {y : x <= y} and {y : y <= x} as element bitsets.
  ElementSet up_set(Element x) const { return up_[x]; }
  ElementSet down_set(Element x) const { return down_[x]; }
  ElementSet all() const { return size() == 64 ? ~Word{0} : bit(size()) - 1; }

  const std::optional<Shape>& shape() const { return shape_; }
  void set_shape(Shape s) { shape_ = std::move(s); }

  /// The strict order as a relation.
  Relation order() const {
    Relation r(size());
    for (Element x = 0; x < size(); ++x) r.row(x) = up_[x] & ~bit(x);
    return r;
  }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.labels_ == b.labels_ && a.up_ == b.up_; }

 private:
  friend Lattice build_lattice_indexed(std::vector<std::string>, const std::vector<std::pair<Element, Element>>&);

  std::vector<std::string> labels_;
  std::vector<Word> up_, down_;
  std::vector<Element> meet_, join_;
  std::optional<Shape> shape_;
};

using LatticeRef = std::shared_ptr<const Lattice>;

inline LatticeRef share(Lattice l) { return std::make_shared<const Lattice>(std::move(l)); }

/// Builds a lattice from labels and order pairs given by index. Input pairs may
/// be covers or any generating set; ids are renumbered by a stable topological
/// sort so that an input already in linear-extension order keeps its ids.
inline Lattice build_lattice_indexed(std::vector<std::string> labels,
                                     const std::vector<std::pair<Element, Element>>& leq_pairs) {
  const std::size_t n = labels.size();
  if (n == 0) throw Error(ErrorKind::BadParams, "a lattice needs at least one element");
  if (n > max_elements())
    throw Error(ErrorKind::SizeLimitExceeded,
                std::to_string(n) + " elements exceeds the cap of " + std::to_string(max_elements()));
  {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::BadParams, "duplicate label");
  }

  std::vector<Word> up(n, 0);
  for (std::size_t x = 0; x < n; ++x) up[x] = bit(x);
  for (auto [x, y] : leq_pairs) {
    if (x >= n || y >= n) throw Error(ErrorKind::BadParams, "order pair references an unknown element");
    up[x] |= bit(y);
  }
  // Warshall over row bitsets.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if ((up[i] >> k) & 1U) up[i] |= up[k];
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (((up[x] >> y) & 1U) && ((up[y] >> x) & 1U))
        throw Error(ErrorKind::NotAPoset, labels[x] + " and " + labels[y] + " are mutually below each other");

  // Stable topological renumbering: repeatedly take the smallest-index minimal element.
  std::vector<Element> order;
  std::vector<bool> placed(n, false);
  Word remaining = n == 64 ? ~Word{0} : bit(n) - 1;
  while (order.size() < n) {
    for (Element x = 0; x < n; ++x) {
      if (placed[x]) continue;
      bool minimal = true;
      for (Element y = 0; y < n && minimal; ++y)
        if (y != x && ((remaining >> y) & 1U) && ((up[y] >> x) & 1U)) minimal = false;
      if (minimal) {
        order.push_back(x);
        placed[x] = true;
        remaining &= ~bit(x);
        break;
      }
    }
  }
  std::vector<Element> new_id(n);
  for (Element i = 0; i < n; ++i) new_id[order[i]] = i;

  Lattice l;
  l.labels_.resize(n);
  l.up_.assign(n, 0);
  l.down_.assign(n, 0);
  for (Element x = 0; x < n; ++x) {
    l.labels_[new_id[x]] = std::move(labels[x]);
    for_each_bit(up[x], [&](Element y) {
      l.up_[new_id[x]] |= bit(new_id[y]);
      l.down_[new_id[y]] |= bit(new_id[x]);
    });
  }

  l.meet_.assign(n * n, 0);
  l.join_.assign(n * n, 0);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      const Word lower = l.down_[x] & l.down_[y];
      const Word upper = l.up_[x] & l.up_[y];
      std::optional<Element> glb, lub;
      for_each_bit(lower, [&](Element z) {
        if (l.down_[z] == lower) glb = z;
      });
      for_each_bit(upper, [&](Element z) {
        if (l.up_[z] == upper) lub = z;
      });
      if (!glb || !lub)
        throw Error(ErrorKind::NotALattice,
                    l.labels_[x] + " and " + l.labels_[y] + " lack a unique " + (glb ? "join" : "meet"));
      l.meet_[x * n + y] = *glb;
      l.join_[x * n + y] = *lub;
    }
  }
  const Word everything = n == 64 ? ~Word{0} : bit(n) - 1;
  if (l.up_[0] != everything || l.down_[n - 1] != everything)
    throw Error(ErrorKind::NoBoundedness, "no global bottom and top");
  return l;
}

/// Label-based front end: `leq_pairs` are (smaller, larger) label pairs.
inline Lattice build_lattice(std::vector<std::string> labels,
                             const std::vector<std::pair<std::string, std::string>>& leq_pairs) {
  std::map<std::string, Element> id;
  for (Element i = 0; i < labels.size(); ++i) id.emplace(labels[i], i);
  std::vector<std::pair<Element, Element>> pairs;
  for (const auto& [a, b] : leq_pairs) {
    auto ia = id.find(a), ib = id.find(b);
    if (ia == id.end() || ib == id.end()) throw Error(ErrorKind::BadParams, "unknown label in order pair");
    pairs.emplace_back(ia->second, ib->second);
  }
  return build_lattice_indexed(std::move(labels), pairs);
}

namespace detail {

inline Lattice product_of_chains(int m, int n) {
  std::vector<std::string> labels;
  std::vector<std::pair<Element, Element>> covers;
  auto id = [n](int i, int j) { return static_cast<Element>(i * (n + 1) + j); };
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j) {
      labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (i < m) covers.emplace_back(id(i, j), id(i + 1, j));
      if (j < n) covers.emplace_back(id(i, j), id(i, j + 1));
    }
  return build_lattice_indexed(std::move(labels), covers);
}

inline Lattice bounded_antichain(const std::vector<std::string>& middles) {
  std::vector<std::string> labels{"0"};
  labels.insert(labels.end(), middles.begin(), middles.end());
  labels.emplace_back("1");
  const auto top = static_cast<Element>(labels.size() - 1);
  std::vector<std::pair<Element, Element>> covers;
  for (Element i = 1; i < top; ++i) {
    covers.emplace_back(0, i);
    covers.emplace_back(i, top);
  }
  if (middles.empty()) covers.emplace_back(0, top);
  return build_lattice_indexed(std::move(labels), covers);
}

}  // namespace detail

/// chain(n), grid(m,n), boolean(n), bowtie(n), diamond, pentagon.
inline Lattice make_standard(const std::string& kind, const std::vector<int>& params) {
  auto need = [&](std::size_t count) {
    if (params.size() != count)
      throw Error(ErrorKind::BadParams, kind + " takes " + std::to_string(count) + " parameter(s)");
    for (int p : params)
      if (p < 0) throw Error(ErrorKind::BadParams, "parameters must be nonnegative");
  };
  Lattice l;
  if (kind == "chain") {
    need(1);
    std::vector<std::string> labels;
    std::vector<std::pair<Element, Element>> covers;
    for (int i = 0; i <= params[0]; ++i) {
      labels.push_back(std::to_string(i));
      if (i > 0) covers.emplace_back(i - 1, i);
    }
    if (labels.size() > max_elements()) throw Error(ErrorKind::SizeLimitExceeded, "chain too long");
    l = build_lattice_indexed(std::move(labels), covers);
  } else if (kind == "grid") {
    need(2);
    if (static_cast<std::size_t>(params[0] + 1) * static_cast<std::size_t>(params[1] + 1) > max_elements())
      throw Error(ErrorKind::SizeLimitExceeded, "grid too large");
    l = detail::product_of_chains(params[0], params[1]);
  } else if (kind == "boolean") {
    need(1);
    if (params[0] > 6 || (std::size_t{1} << params[0]) > max_elements())
      throw Error(ErrorKind::SizeLimitExceeded, "boolean lattice too large");
    const std::size_t n = std::size_t{1} << params[0];
    std::vector<std::string> labels;
    std::vector<std::pair<Element, Element>> covers;
    for (std::size_t s = 0; s < n; ++s) {
      std::string name = "{";
      for (int i = 0; i < params[0]; ++i)
        if ((s >> i) & 1U) name += (name.size() > 1 ? "," : "") + std::to_string(i);
      labels.push_back(name + "}");
      for (int i = 0; i < params[0]; ++i)
        if (!((s >> i) & 1U)) covers.emplace_back(static_cast<Element>(s), static_cast<Element>(s | (std::size_t{1} << i)));
    }
    l = build_lattice_indexed(std::move(labels), covers);
  } else if (kind == "bowtie") {
    need(1);
    if (params[0] < 1) throw Error(ErrorKind::BadParams, "bowtie needs n >= 1");
    std::vector<std::string> middles;
    for (int i = 1; i <= params[0]; ++i) middles.push_back("m" + std::to_string(i));
    l = detail::bounded_antichain(middles);
  } else if (kind == "diamond") {
    need(0);
    l = detail::bounded_antichain({"a", "b", "c"});
  } else if (kind == "pentagon") {
    need(0);
    l = build_lattice({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}});
  } else {
    throw Error(ErrorKind::BadParams, "unknown lattice kind '" + kind + "'");
  }
  l.set_shape({kind, params});
  return l;
}

/// Element id of x in the dual lattice (ids are reversed).
inline Element op(const Lattice& l, Element x) { return static_cast<Element>(l.size() - 1 - x); }

inline ElementSet op(const Lattice& l, ElementSet s) {
  ElementSet out = 0;
  for_each_bit(s, [&](Element x) { out |= bit(op(l, x)); });
  return out;
}

/// R^op: (x,y) becomes (op y, op x).
inline Relation op(const Lattice& l, const Relation& r) {
  Relation out(r.size());
  for (Element x = 0; x < r.size(); ++x) for_each_bit(r.row(x), [&](Element y) { out.insert(op(l, y), op(l, x)); });
  return out;
}

inline Lattice dual_lattice(const Lattice& l) {
  const std::size_t n = l.size();
  std::vector<std::string> labels(n);
  std::vector<std::pair<Element, Element>> pairs;
  for (Element x = 0; x < n; ++x) {
    labels[op(l, x)] = l.label(x);
    for_each_bit(l.up_set(x), [&](Element y) { pairs.emplace_back(op(l, y), op(l, x)); });
  }
  return build_lattice_indexed(std::move(labels), pairs);
}

/// All x < y with nothing strictly between.
inline Relation covering_relations(const Lattice& l) {
  Relation r(l.size());
  for (Element x = 0; x < l.size(); ++x) {
    const Word above = l.up_set(x) & ~bit(x);
    for_each_bit(above, [&](Element y) {
      const Word between = above & l.down_set(y) & ~bit(y);
      if (!between) r.insert(x, y);
    });
  }
  return r;
}

inline bool is_modular(const Lattice& l) {
  const auto n = static_cast<Element>(l.size());
  for (Element a = 0; a < n; ++a)
    for (Element b = a; b < n; ++b) {
      if (!l.leq(a, b)) continue;
      for (Element x = 0; x < n; ++x)
        if (l.join(a, l.meet(x, b)) != l.meet(l.join(a, x), b)) return false;
    }
  return true;
}

struct Diamond {
  Element bottom, left, right, top;
  friend bool operator==(const Diamond&, const Diamond&) = default;
};

/// Unordered incomparable {x,y} (x < y as ids) that both cover x^y and are covered by x v y.
inline std::vector<Diamond> covering_diamonds(const Lattice& l) {
  const Relation cov = covering_relations(l);
  std::vector<Diamond> out;
  for (Element x = 0; x < l.size(); ++x)
    for (Element y = x + 1; y < l.size(); ++y) {
      if (l.comparable(x, y)) continue;
      const Element m = l.meet(x, y), j = l.join(x, y);
      if (cov.contains(m, x) && cov.contains(m, y) && cov.contains(x, j) && cov.contains(y, j))
        out.push_back({m, x, y, j});
    }
  return out;
}

}  // namespace latfac
