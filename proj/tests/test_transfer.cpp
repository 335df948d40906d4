#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace latfac;

namespace {

Relation rel(std::size_t n, std::initializer_list<std::pair<Element, Element>> pairs) {
  Relation r(n);
  for (auto [x, y] : pairs) r.insert(x, y);
  return r;
}

const LatticeRef& c2() {
  static const LatticeRef l = share(make_standard("chain", {2}));
  return l;
}

// grid(1,1): 0 = bottom, 1 = a, 2 = b, 3 = top.
const LatticeRef& sq() {
  static const LatticeRef l = share(make_standard("grid", {1, 1}));
  return l;
}

std::vector<Relation> rels(const std::vector<TransferSystem>& ts) {
  std::vector<Relation> out;
  for (const auto& t : ts) out.push_back(t.rel);
  return out;
}

}  // namespace

TEST(Transfer, ValidateExamples) {
  EXPECT_TRUE(is_transfer_system(*c2(), Relation(3)));
  const auto v = validate_transfer(*c2(), rel(3, {{0, 2}}));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(*v, (TransferViolation{TransferViolationKind::Pullback, 1, 0, 2}));
  EXPECT_TRUE(is_transfer_system(*c2(), rel(3, {{0, 1}, {0, 2}})));
  const auto t = validate_transfer(*c2(), rel(3, {{0, 1}, {1, 2}}));
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->kind, TransferViolationKind::Transitivity);
}

TEST(Transfer, RefinementViolation) {
  try {
    validate_transfer(*c2(), rel(3, {{2, 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RefinementViolation);
  }
  try {
    generate(sq(), rel(4, {{1, 2}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RefinementViolation);
  }
  EXPECT_THROW(make_transfer(c2(), rel(3, {{0, 2}})), Error);
}

TEST(Transfer, GenerateExamples) {
  EXPECT_EQ(generate(c2(), rel(3, {{0, 2}})).rel, rel(3, {{0, 1}, {0, 2}}));
  EXPECT_EQ(generate(sq(), rel(4, {{1, 3}})).rel, rel(4, {{1, 3}, {0, 2}}));
  EXPECT_TRUE(generate(sq(), Relation(4)).rel.empty());
}

TEST(Transfer, EnumerationCounts) {
  EXPECT_EQ(enumerate_transfer(share(make_standard("chain", {1}))).size(), 2U);
  EXPECT_EQ(enumerate_transfer(c2()).size(), 5U);
  EXPECT_EQ(enumerate_transfer(sq()).size(), 10U);
  EXPECT_EQ(enumerate_transfer(share(make_standard("chain", {3}))).size(), 14U);
  EXPECT_EQ(enumerate_transfer(share(make_standard("chain", {0}))).size(), 1U);
}

TEST(Transfer, EnumerationMatchesBruteForce) {
  for (const auto& [name, l] : oracle::small_lattices()) {
    EXPECT_EQ(rels(enumerate_transfer(l)), oracle::transfer_systems(*l)) << name;
  }
}

TEST(Transfer, SaturatedMatchesFilter) {
  for (const auto& [name, l] : oracle::small_lattices()) {
    std::vector<Relation> filtered;
    for (const Relation& r : oracle::transfer_systems(*l))
      if (oracle::naive_saturated(*l, r)) filtered.push_back(r);
    EXPECT_EQ(rels(enumerate_saturated(l)), filtered) << name;
    for (const auto& t : enumerate_transfer(l)) EXPECT_EQ(is_saturated(t), oracle::naive_saturated(*l, t.rel)) << name;
  }
}

TEST(Transfer, EnumerationIndependentOfThreads) {
  const LatticeRef l = share(make_standard("grid", {2, 1}));
  const auto one = rels(enumerate_transfer(l, {1'000'000, 1}));
  EXPECT_EQ(one, rels(enumerate_transfer(l, {1'000'000, 3})));
  EXPECT_EQ(one, rels(enumerate_transfer(l, {1'000'000, 8})));
  EXPECT_TRUE(std::is_sorted(one.begin(), one.end()));
}

TEST(Transfer, EnumerationLimit) {
  try {
    enumerate_transfer(sq(), {5, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EnumerationLimitExceeded);
  }
  EXPECT_EQ(enumerate_transfer(sq(), {10, 1}).size(), 10U);
}

TEST(Transfer, MeetJoinExamples) {
  const TransferSystem a{c2(), rel(3, {{0, 1}})}, b{c2(), rel(3, {{1, 2}})};
  EXPECT_EQ(ts_join(a, b).rel, c2()->order());
  EXPECT_EQ(ts_meet(a, a), a);
  const TransferSystem r{c2(), rel(3, {{0, 1}, {0, 2}})};
  EXPECT_EQ(ts_meet(full_transfer(c2()), r), r);
  const TransferSystem other{sq(), Relation(4)};
  try {
    ts_meet(a, other);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CarrierMismatch);
  }
}

TEST(Transfer, LatticeAxiomsOnTr) {
  for (const char* kind : {"chain", "grid"}) {
    const LatticeRef l = std::string(kind) == "chain" ? share(make_standard("chain", {3})) : sq();
    const auto all = enumerate_transfer(l);
    for (const auto& x : all)
      for (const auto& y : all) {
        const auto m = ts_meet(x, y), j = ts_join(x, y);
        EXPECT_TRUE(is_transfer_system(*l, m.rel));
        EXPECT_TRUE(is_transfer_system(*l, j.rel));
        EXPECT_EQ(m, ts_meet(y, x));
        EXPECT_EQ(j, ts_join(y, x));
        EXPECT_EQ(ts_meet(x, ts_join(x, y)), x);
        EXPECT_EQ(ts_join(x, ts_meet(x, y)), x);
        // join is the least upper bound among all transfer systems
        for (const auto& z : all)
          if (x.rel.subset_of(z.rel) && y.rel.subset_of(z.rel)) { EXPECT_TRUE(j.rel.subset_of(z.rel)); }
      }
  }
}

TEST(Transfer, GenerateIsAClosure) {
  std::mt19937 rng(20240611);
  const LatticeRef l = share(make_standard("grid", {2, 2}));
  const auto pairs = oracle::strict_pairs(*l);
  for (int trial = 0; trial < 200; ++trial) {
    Relation s(l->size()), t(l->size());
    for (auto [x, y] : pairs) {
      const unsigned roll = rng() % 8;
      if (roll == 0) s.insert(x, y);
      if (roll <= 1) t.insert(x, y);
    }
    const auto gs = generate(l, s), gt = generate(l, t);
    EXPECT_TRUE(is_transfer_system(*l, gs.rel));
    EXPECT_TRUE(s.subset_of(gs.rel));
    EXPECT_EQ(generate(l, gs.rel), gs);
    EXPECT_TRUE(gs.rel.subset_of(gt.rel));
  }
}

TEST(Transfer, SaturatedExamples) {
  EXPECT_TRUE(is_saturated(empty_transfer(c2())));
  EXPECT_TRUE(is_saturated(full_transfer(c2())));
  EXPECT_FALSE(is_saturated({c2(), rel(3, {{0, 1}, {0, 2}})}));
  std::size_t count = 0;
  for (const auto& t : enumerate_transfer(sq())) count += is_saturated(t);
  EXPECT_EQ(count, 7U);
}

TEST(Transfer, DisklikeExamples) {
  EXPECT_TRUE(is_disklike(empty_transfer(c2())));
  EXPECT_TRUE(is_disklike(full_transfer(c2())));
  EXPECT_FALSE(is_disklike({c2(), rel(3, {{0, 1}})}));
  std::size_t count = 0;
  for (const auto& t : enumerate_transfer(sq())) count += is_disklike(t);
  EXPECT_EQ(count, 7U);
}

TEST(Transfer, SliceTop) {
  EXPECT_EQ(slice_top(empty_transfer(c2())), bit(2));
  EXPECT_EQ(slice_top({c2(), rel(3, {{0, 1}, {0, 2}})}), bit(0) | bit(2));
  EXPECT_EQ(slice_top(full_transfer(sq())), sq()->all());
}

TEST(Transfer, SaturatedOnPEqualsDisklikeOnDual) {
  for (const auto& [name, l] : oracle::small_lattices()) {
    const LatticeRef d = share(dual_lattice(*l));
    std::size_t disk = 0;
    for (const auto& t : enumerate_transfer(d)) disk += is_disklike(t);
    EXPECT_EQ(enumerate_saturated(l).size(), disk) << name;
  }
}

TEST(SaturatedCover, Examples) {
  const Lattice& l = *sq();
  EXPECT_TRUE(is_saturated_cover(l, Relation(4)));
  EXPECT_TRUE(is_saturated_cover(l, covering_relations(l)));
  EXPECT_TRUE(is_saturated_cover(l, rel(4, {{1, 3}, {0, 2}})));
  EXPECT_FALSE(is_saturated_cover(l, rel(4, {{0, 1}, {0, 2}, {1, 3}})));
  EXPECT_FALSE(is_saturated_cover(l, rel(4, {{1, 3}})));
}

TEST(SaturatedCover, Errors) {
  const LatticeRef n5 = share(make_standard("pentagon", {}));
  try {
    is_saturated_cover(*n5, Relation(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotModular);
  }
  try {
    is_saturated_cover(*sq(), rel(4, {{0, 3}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotACoverSubset);
  }
  try {
    cover_of({c2(), rel(3, {{0, 1}, {0, 2}})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSaturated);
  }
  EXPECT_THROW(cover_of(empty_transfer(n5)), Error);
}

TEST(SaturatedCover, RoundTrips) {
  EXPECT_TRUE(ts_of({sq(), Relation(4)}).rel.empty());
  EXPECT_EQ(ts_of({sq(), rel(4, {{1, 3}, {0, 2}})}).rel, rel(4, {{1, 3}, {0, 2}}));
  for (const LatticeRef& l : {sq(), share(make_standard("grid", {2, 1})), share(make_standard("diamond", {})),
                              share(make_standard("boolean", {3})), share(make_standard("chain", {3}))}) {
    const auto sat = enumerate_saturated(l);
    const auto covers = enumerate_saturated_covers(l);
    EXPECT_EQ(sat.size(), covers.size());
    for (const auto& t : sat) EXPECT_EQ(ts_of(cover_of(t)), t);
    for (const auto& q : covers) {
      EXPECT_TRUE(is_saturated_cover(*l, q.covers));
      EXPECT_EQ(cover_of(ts_of(q)), q);
    }
  }
}
