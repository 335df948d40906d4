#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace latfac;
using io::json;

namespace {

template <class F>
ErrorKind kind_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::BadParams;
}

}  // namespace

TEST(Io, LatticeRoundTrip) {
  for (const auto& [name, l] : oracle::small_lattices()) {
    const json j = io::to_json(*l);
    EXPECT_EQ(j.at("format"), io::kFormatVersion);
    const Lattice back = io::lattice_from_json(j);
    EXPECT_EQ(back, *l) << name;
    EXPECT_EQ(io::to_json(back), j);
  }
  const Lattice g = make_standard("grid", {2, 1});
  const Lattice back = io::parse_lattice(io::to_json(g).dump());
  ASSERT_TRUE(back.shape().has_value());
  EXPECT_EQ(back.shape()->kind, "grid");
  EXPECT_EQ(describe(back), "grid(2,1)");
}

TEST(Io, LatticeAcceptsFullOrders) {
  const json j = {{"labels", {"0", "a", "1"}}, {"covers", {{0, 1}, {1, 2}, {0, 2}}}};
  EXPECT_EQ(io::lattice_from_json(j).size(), 3U);
}

TEST(Io, LatticeErrors) {
  EXPECT_EQ(kind_of([] { io::parse_lattice("{not json"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::parse_lattice(R"({"labels": ["a"]})"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::parse_lattice(R"({"labels": ["a","b"], "covers": [[0]]})"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::parse_lattice(R"({"labels": ["a","b"], "covers": "x"})"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::parse_lattice(R"({"labels": ["0","a","b"], "covers": [[0,1],[0,2]]})"); }), ErrorKind::NotALattice);
  EXPECT_EQ(kind_of([] { io::parse_lattice(R"({"labels": ["a","b"], "covers": [[0,5]]})"); }), ErrorKind::BadParams);
}

TEST(Io, TransferRoundTrip) {
  const LatticeRef l = share(make_standard("grid", {1, 1}));
  for (const auto& t : enumerate_transfer(l)) {
    const json j = io::to_json(t);
    EXPECT_EQ(io::transfer_from_json(j), t);
  }
  const json by_ref = {{"lattice", "sq.json"}, {"pairs", {{1, 3}, {0, 2}}}};
  const TransferSystem t = io::transfer_from_json(by_ref, [&](const std::string& name) {
    EXPECT_EQ(name, "sq.json");
    return l;
  });
  EXPECT_EQ(t.rel.count(), 2U);
  EXPECT_EQ(kind_of([&] { io::transfer_from_json(by_ref); }), ErrorKind::ParseError);
  const json bad = {{"lattice", io::to_json(*l)}, {"pairs", {{1, 3}}}};
  EXPECT_EQ(kind_of([&] { io::transfer_from_json(bad); }), ErrorKind::NotATransferSystem);
  const json unordered = {{"lattice", io::to_json(*l)}, {"pairs", {{1, 2}}}};
  EXPECT_EQ(kind_of([&] { io::transfer_from_json(unordered); }), ErrorKind::RefinementViolation);
}

TEST(Io, StructureRecords) {
  const LatticeRef l = share(make_standard("chain", {2}));
  for (const auto& f : enumerate_fac(l)) {
    EXPECT_EQ(io::fs_from_json(l, io::to_json(f)), f);
    const Endo e = lambda(f);
    EXPECT_EQ(io::endo_from_json(l, io::to_json(e)), e);
  }
  const Endo f{l, {0, 2, 2}};
  EXPECT_EQ(io::to_json(f), (json{{"table", {0, 2, 2}}}));
  EXPECT_EQ(kind_of([&] { io::endo_from_json(l, json{{"table", {0, 1}}}); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([&] { io::endo_from_json(l, json{{"table", {0, 1, 7}}}); }), ErrorKind::ParseError);

  const Submonoid s{l, MonoidOp::Meet, bit(0) | bit(2)};
  EXPECT_EQ(io::to_json(s), (json{{"op", "meet"}, {"members", {0, 2}}}));
  EXPECT_EQ(io::submonoid_from_json(l, io::to_json(s)), s);
  EXPECT_EQ(kind_of([&] { io::submonoid_from_json(l, json{{"op", "plus"}, {"members", {2}}}); }), ErrorKind::ParseError);

  const auto m = make_fibrant(min_fs(l));
  EXPECT_EQ(io::model_from_json(l, io::to_json(m)), m);

  const Fiber fib = fiber(l, CharKind::Lambda, constant_endo(l, 2));
  const json fj = io::to_json(fib);
  EXPECT_EQ(fj.at("members").size(), 2U);
  EXPECT_TRUE(fj.at("is_interval").get<bool>());
}

TEST(Io, CountReportJson) {
  const json j = io::to_json(count_report(share(make_standard("chain", {2}))));
  EXPECT_EQ(j.at("lattice"), "chain(2)");
  EXPECT_EQ(j.at("counts").at("transfer").at("value"), "5");
  EXPECT_EQ(j.at("counts").at("saturated").at("provenance"), "both-agree");
}

TEST(Io, Dot) {
  const Lattice l = make_standard("grid", {1, 1});
  const std::string dot = io::to_dot(l);
  EXPECT_NE(dot.find("rankdir=BT"), std::string::npos);
  EXPECT_NE(dot.find("n0 -> n1 [arrowhead=none]"), std::string::npos);
  EXPECT_NE(dot.find("{ rank=same; n1; n2; }"), std::string::npos);
  EXPECT_EQ(dot.find("color=red"), std::string::npos);
  Relation r(4);
  r.insert(1, 3);
  const std::string overlay = io::to_dot(l, &r);
  EXPECT_NE(overlay.find("n1 -> n3 [color=red, constraint=false]"), std::string::npos);
  EXPECT_EQ(io::to_dot(l), dot);
}
