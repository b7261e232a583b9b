#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pmod/bottleneck.hpp"

using namespace pmod;

namespace {

PosetPtr chain(int n, int first = 1) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(first + i));
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(names[size_t(i)], names[size_t(i) + 1]);
  return from_covers(names, covers, MetricSpec::hasse_path());
}

PosetPtr grid33() {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int y = 1; y <= 3; ++y)
    for (int x = 1; x <= 3; ++x) names.push_back(std::to_string(x) + std::to_string(y));
  for (int y = 1; y <= 3; ++y)
    for (int x = 1; x <= 3; ++x) {
      if (x < 3) covers.emplace_back(std::to_string(x) + std::to_string(y), std::to_string(x + 1) + std::to_string(y));
      if (y < 3) covers.emplace_back(std::to_string(x) + std::to_string(y), std::to_string(x) + std::to_string(y + 1));
    }
  return from_covers(names, covers, MetricSpec::linf_product());
}

PModule interval_by_names(PosetPtr p, const std::vector<std::string>& lo,
                          const std::vector<std::string>& hi) {
  std::vector<int> a, b;
  for (auto& s : lo) a.push_back(p->index_of(s));
  for (auto& s : hi) b.push_back(p->index_of(s));
  auto gi = as_gen_interval(*p, interval_span(*p, a, b));
  REQUIRE(gi.has_value());
  return interval_module(p, *gi);
}

std::vector<std::string> point_names(const ProjComplex& c, int degree) {
  std::vector<std::string> out;
  for (int pt : c.points[size_t(degree)]) out.push_back(c.poset->names[size_t(pt)]);
  return out;
}

Assignment by_names(const ProjComplex& e, const std::vector<std::vector<std::string>>& t) {
  Assignment a;
  for (auto& deg : t) {
    a.emplace_back();
    for (auto& s : deg) a.back().push_back(e.poset->index_of(s));
  }
  return a;
}

}  // namespace

TEST_CASE("transporting along the identity assignment returns the complex itself") {
  auto p = chain(4);
  PModule m = direct_sum(interval_by_names(p, {"1"}, {"1"}), interval_by_names(p, {"2"}, {"3"}));
  ProjComplex e = minimal_resolution(m);
  Assignment id = e.points;
  auto g = transported_complex(e, id);
  REQUIRE(g.has_value());
  CHECK(*g == e);
}

TEST_CASE("transport refuses an order violation") {
  auto g = grid33();
  // two summands joined by a nonzero entry, sent to incomparable points
  ProjComplex e = ProjComplex::empty(g);
  e.points = {{g->index_of("12")}, {g->index_of("22")}};
  e.diffs = {mat_zero(1, 1)};
  e.diffs[0](0, 0) = Fp(1);
  REQUIRE(e.well_formed());
  Assignment bad = by_names(e, {{"21"}, {"12"}});
  std::string why;
  CHECK(!transported_complex(e, bad, &why).has_value());
  CHECK(!why.empty());
}

TEST_CASE("the one-parameter matching table verifies at cost one") {
  auto p = chain(4);
  PModule m = direct_sum(interval_by_names(p, {"1"}, {"1"}), interval_by_names(p, {"2"}, {"3"}));
  PModule n = interval_by_names(p, {"2"}, {"3"});
  ProjComplex e = minimal_resolution(m);
  // degree 0 summands (1,2) -> (1,2); degree 1 summands (2,4) -> (1,4)
  Assignment a = by_names(e, {{"1", "2"}, {"1", "4"}});
  auto w = verify_witness(e, a, n);
  REQUIRE(w.has_value());
  CHECK(w->cost == ExtDist(1));
}

TEST_CASE("the five-chain tables: pre-matching at cost one fails compatibility, cost three verifies") {
  auto p = chain(5);
  PModule m = interval_by_names(p, {"2"}, {"4"});
  PModule zero = PModule::zero(p);
  ProjComplex e = pad(minimal_resolution(m),
                      {ConeSpec{p->index_of("3"), 0}, ConeSpec{p->index_of("4"), 0}});
  REQUIRE(point_names(e, 0) == std::vector<std::string>{"2", "3", "4"});
  REQUIRE(point_names(e, 1) == std::vector<std::string>{"3", "4", "5"});

  // the diagonal-shift pre-matching is not differential-compatible
  Assignment shift = by_names(e, {{"2", "3", "4"}, {"2", "3", "4"}});
  CHECK(!verify_witness(e, shift, zero).has_value());

  // the long-jump matching is compatible, at cost three
  Assignment jump = by_names(e, {{"2", "3", "4"}, {"3", "4", "2"}});
  auto w = verify_witness(e, jump, zero);
  REQUIRE(w.has_value());
  CHECK(w->cost == ExtDist(3));
}

TEST_CASE("pre-matching distance of identical complexes is zero") {
  auto p = chain(4);
  ProjComplex c = minimal_resolution(interval_by_names(p, {"2"}, {"3"}));
  DistBracket b = prematch_distance(c, c, 2);
  CHECK(b.exact());
  CHECK(b.upper == ExtDist::zero());
}

TEST_CASE("pre-matching distance of the five-chain example is one") {
  auto p = chain(5);
  ProjComplex cm = minimal_resolution(interval_by_names(p, {"2"}, {"4"}));
  ProjComplex cn = ProjComplex::empty(p);
  DistBracket b = prematch_distance(cm, cn, 3);
  CHECK(b.lower == ExtDist(1));
  CHECK(b.upper == ExtDist(1));
  CHECK(b.exact());
}

TEST_CASE("pre-matching distance vanishes on the non-isomorphic two-chain pair") {
  auto p = chain(2);
  PModule m = direct_sum(interval_by_names(p, {"1"}, {"1"}), interval_by_names(p, {"2"}, {"2"}));
  PModule n = interval_by_names(p, {"1"}, {"2"});
  ProjComplex cm = minimal_resolution(m);
  ProjComplex cn = minimal_resolution(n);
  DistBracket b = prematch_distance(cm, cn, 3);
  CHECK(b.exact());
  CHECK(b.upper == ExtDist::zero());
  CHECK(!is_isomorphic(realize(cm).module, realize(cn).module));
  // and the stripped complexes differ
  CHECK(!(strip(cm) == strip(cn)));
}

TEST_CASE("bottleneck bracket on the one-parameter example closes at one") {
  auto p = chain(4);
  PModule m = direct_sum(interval_by_names(p, {"1"}, {"1"}), interval_by_names(p, {"2"}, {"3"}));
  PModule n = interval_by_names(p, {"2"}, {"3"});
  ProjComplex cm = minimal_resolution(m);
  ProjComplex cn = minimal_resolution(n);
  DistBracket b = bottleneck_distance(cm, cn, n, 3);
  CHECK(b.exact());
  CHECK(b.upper == ExtDist(1));
  REQUIRE(b.witness.has_value());
  // winning witness: pad the target with a cone at 1, matched as the table
  REQUIRE(b.witness->padding_f.size() == 1);
  CHECK(b.witness->padding_f[0].point == p->index_of("1"));
  CHECK(b.witness->padding_f[0].degree == 0);
  CHECK(b.witness->padding_e.empty());
  Assignment expect = by_names(b.witness->complex_e, {{"1", "2"}, {"1", "4"}});
  CHECK(b.witness->assignment == expect);
}

TEST_CASE("bottleneck bracket on the two-parameter example closes at one") {
  auto g = grid33();
  PModule m = direct_sum(interval_by_names(g, {"12"}, {"12"}), interval_by_names(g, {"21"}, {"31"}));
  PModule n = interval_by_names(g, {"22"}, {"23", "32"});
  ProjComplex cm = minimal_resolution(m);
  ProjComplex cn = minimal_resolution(n);
  DistBracket b = bottleneck_distance(cm, cn, n, 3);
  CHECK(b.exact());
  CHECK(b.upper == ExtDist(1));
  REQUIRE(b.witness.has_value());

  // the transported complex of the winning witness, in canonical order
  const ProjComplex& t = b.witness->transported;
  REQUIRE(t.degrees() == 3);
  CHECK(point_names(t, 0) == std::vector<std::string>{"12", "22"});
  CHECK(point_names(t, 1) == std::vector<std::string>{"12", "22", "33"});
  CHECK(point_names(t, 2) == std::vector<std::string>{"22"});
  CHECK(t.diffs[0](0, 0) == Fp(1));
  CHECK(t.diffs[0](0, 1) == Fp(1));
  CHECK(t.diffs[0](1, 2) == Fp(1));
  CHECK(t.diffs[0](0, 2) == Fp(0));
  CHECK(t.diffs[0](1, 0) == Fp(0));
  CHECK(t.diffs[0](1, 1) == Fp(0));
  CHECK(t.diffs[1](0, 0) == Fp(-1));
  CHECK(t.diffs[1](1, 0) == Fp(1));
  CHECK(t.diffs[1](2, 0) == Fp(0));
}

TEST_CASE("bottleneck bracket of a complex against itself is zero") {
  auto p = chain(4);
  PModule n = interval_by_names(p, {"2"}, {"3"});
  ProjComplex c = minimal_resolution(n);
  DistBracket b = bottleneck_distance(c, c, n, 2);
  CHECK(b.exact());
  CHECK(b.upper == ExtDist::zero());
}

TEST_CASE("bottleneck bracket of the five-chain bar against nothing") {
  auto p = chain(5);
  PModule m = interval_by_names(p, {"2"}, {"4"});
  PModule zero = PModule::zero(p);
  ProjComplex cm = minimal_resolution(m);
  ProjComplex cn = ProjComplex::empty(p);
  DistBracket b = bottleneck_distance(cm, cn, zero, 3);
  CHECK(b.lower == ExtDist(1));
  // a bar of length three matches the diagonal at its midpoint, cost two
  CHECK(b.upper == ExtDist(2));
  REQUIRE(b.witness.has_value());
  CHECK(b.witness->padding_e.empty());
  Assignment expect = by_names(b.witness->complex_e, {{"3"}, {"3"}});
  CHECK(b.witness->assignment == expect);
}

TEST_CASE("prematch value never exceeds the bottleneck upper bound") {
  auto p = chain(5);
  PModule m = interval_by_names(p, {"2"}, {"4"});
  ProjComplex cm = minimal_resolution(m);
  ProjComplex cn = ProjComplex::empty(p);
  DistBracket pre = prematch_distance(cm, cn, 3);
  DistBracket full = bottleneck_distance(cm, cn, PModule::zero(p), 3);
  CHECK(pre.upper <= full.upper);
}

TEST_CASE("bottleneck search is symmetric on the golden pairs") {
  auto p = chain(4);
  PModule m = direct_sum(interval_by_names(p, {"1"}, {"1"}), interval_by_names(p, {"2"}, {"3"}));
  PModule n = interval_by_names(p, {"2"}, {"3"});
  ProjComplex cm = minimal_resolution(m);
  ProjComplex cn = minimal_resolution(n);
  DistBracket fwd = bottleneck_distance(cm, cn, n, 3);
  DistBracket bwd = bottleneck_distance(cn, cm, m, 3);
  CHECK(fwd.upper == bwd.upper);
}

TEST_CASE("sampled triangle inequality on closed brackets over small chains") {
  std::mt19937 rng(321);
  auto rand_module = [&](PosetPtr p) {
    PModule m = PModule::zero(p);
    std::uniform_int_distribution<int> parts(0, 2);
    for (int k = parts(rng); k > 0; --k) {
      std::uniform_int_distribution<int> pickel(0, p->size() - 1);
      int a = pickel(rng), b = pickel(rng);
      if (a > b) std::swap(a, b);
      auto gi = as_gen_interval(*p, interval_span(*p, {a}, {b}));
      m = direct_sum(m, interval_module(p, *gi));
    }
    return m;
  };
  int closed_triples = 0;
  for (int it = 0; it < 200; ++it) {
    std::uniform_int_distribution<int> len(2, 5);
    auto p = chain(len(rng));
    PModule m = rand_module(p), n = rand_module(p), o = rand_module(p);
    DistBracket mn = bottleneck_distance(minimal_resolution(m), minimal_resolution(n), n, 2);
    DistBracket no = bottleneck_distance(minimal_resolution(n), minimal_resolution(o), o, 2);
    DistBracket mo = bottleneck_distance(minimal_resolution(m), minimal_resolution(o), o, 2);
    if (!mn.exact() || !no.exact() || !mo.exact()) continue;
    ++closed_triples;
    CHECK(mo.upper <= mn.upper + no.upper);
  }
  CHECK(closed_triples >= 15);
}

TEST_CASE("composing a witness with the identity witness preserves its cost") {
  auto p = chain(4);
  PModule m = direct_sum(interval_by_names(p, {"1"}, {"1"}), interval_by_names(p, {"2"}, {"3"}));
  PModule n = interval_by_names(p, {"2"}, {"3"});
  ProjComplex e = minimal_resolution(m);
  Assignment a = by_names(e, {{"1", "2"}, {"1", "4"}});
  auto w = verify_witness(e, a, n);
  REQUIRE(w.has_value());
  // the identity witness on the transported complex composes by substitution
  Assignment id = w->transported.points;
  auto idw = verify_witness(w->transported, id, n);
  REQUIRE(idw.has_value());
  CHECK(idw->cost == ExtDist::zero());
  // composite assignment: follow the first witness, then the identity
  auto composed = verify_witness(e, a, n);
  REQUIRE(composed.has_value());
  CHECK(composed->cost == w->cost);
}
