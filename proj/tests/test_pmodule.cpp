#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pmod/pmodule.hpp"

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

std::vector<int> dims_by_names(const PModule& m, const std::vector<std::string>& names) {
  std::vector<int> d;
  for (auto& s : names) d.push_back(m.dim(m.poset->index_of(s)));
  return d;
}

}  // namespace

TEST_CASE("interval and projective modules on the four-chain") {
  auto p = chain(4);
  PModule n = interval_by_names(p, {"2"}, {"3"});
  CHECK(dims_by_names(n, {"1", "2", "3", "4"}) == std::vector<int>{0, 1, 1, 0});
  CHECK(validate(n));

  PModule k2 = projective(p, p->index_of("2"));
  CHECK(dims_by_names(k2, {"1", "2", "3", "4"}) == std::vector<int>{0, 1, 1, 1});

  PModule top = simple(p, 0);
  CHECK(top.total_dim() == 1);
}

TEST_CASE("projective at the top of an augmented poset is simple") {
  auto pb = augment(chain(3));
  PModule m = projective(pb, pb->size() - 1);
  CHECK(m.total_dim() == 1);
  CHECK(m.dim(pb->size() - 1) == 1);
}

TEST_CASE("projective on the grid covers the up-set") {
  auto g = grid33();
  PModule m = projective(g, g->index_of("22"));
  CHECK(m.total_dim() == 4);
  for (auto& s : {"22", "23", "32", "33"}) CHECK(m.dim(g->index_of(s)) == 1);
}

TEST_CASE("validation detects an anticommuting square") {
  auto g = from_covers({"11", "21", "12", "22"},
                       {{"11", "21"}, {"11", "12"}, {"21", "22"}, {"12", "22"}},
                       MetricSpec::linf_product());
  PModule m = PModule::zero(g);
  m.dims = {1, 1, 1, 1};
  for (auto& a : m.arrow_maps) a = mat_identity(1);
  CHECK(validate(m));
  // flip one square leg
  for (size_t i = 0; i < g->covers.size(); ++i)
    if (g->covers[i] == std::make_pair(g->index_of("21"), g->index_of("22")))
      m.arrow_maps[i](0, 0) = Fp(-1);
  std::string why;
  CHECK(!validate(m, &why));
  CHECK(!why.empty());

  PModule z = PModule::zero(g);
  CHECK(validate(z));
}

TEST_CASE("the two-parameter modules of the running example validate") {
  auto g = grid33();
  PModule m1 = interval_by_names(g, {"12"}, {"12"});
  PModule m2 = interval_by_names(g, {"21"}, {"31"});
  PModule m = direct_sum(m1, m2);
  PModule n = interval_by_names(g, {"22"}, {"23", "32"});
  CHECK(validate(m));
  CHECK(validate(n));
  CHECK(dims_by_names(n, {"22", "23", "32", "33"}) == std::vector<int>{1, 1, 1, 0});
}

TEST_CASE("pullback along the identity is the identity") {
  auto p = chain(4);
  PModule m = interval_by_names(p, {"2"}, {"3"});
  CHECK(pullback(MonotoneMap::identity(p), m) == m);
}

TEST_CASE("pullbacks of the chain coupling recover both modules") {
  auto p = chain(4);
  auto q = chain(6, 0);
  PModule gamma = direct_sum(interval_by_names(q, {"1"}, {"1"}), interval_by_names(q, {"2"}, {"3"}));
  MonotoneMap g{p, q, {}};
  for (auto& s : {"1", "2", "3", "5"}) g.values.push_back(q->index_of(s));
  MonotoneMap i{p, q, {}};
  for (auto& s : {"0", "2", "3", "5"}) i.values.push_back(q->index_of(s));

  PModule m = direct_sum(interval_by_names(p, {"1"}, {"1"}), interval_by_names(p, {"2"}, {"3"}));
  PModule n = interval_by_names(p, {"2"}, {"3"});
  CHECK(is_isomorphic(pullback(g, gamma), m));
  CHECK(is_isomorphic(pullback(i, gamma), n));
}

TEST_CASE("pullback of a projective along a right adjoint is projective at the reflection") {
  auto p = chain(4);
  auto q = chain(6, 0);
  MonotoneMap f{q, p, {}};
  for (auto& s : {"1", "1", "2", "3", "4", "4"}) f.values.push_back(p->index_of(s));
  auto g = right_adjoint(f);
  REQUIRE(g.has_value());
  for (int x = 0; x < q->size(); ++x) {
    PModule lhs = pullback(*g, projective(q, x));
    PModule rhs = projective(p, f(x));
    CHECK(is_isomorphic(lhs, rhs));
  }
}

TEST_CASE("left Kan extension along the identity is the identity") {
  auto p = chain(4);
  PModule m = direct_sum(interval_by_names(p, {"1"}, {"1"}), interval_by_names(p, {"2"}, {"3"}));
  PModule k = left_kan(MonotoneMap::identity(p), m);
  CHECK(is_isomorphic(k, m));
}

TEST_CASE("left Kan along a left adjoint agrees with pullback along its right adjoint") {
  auto p = chain(4);
  auto q = chain(6, 0);
  MonotoneMap f{q, p, {}};
  for (auto& s : {"1", "1", "2", "3", "4", "4"}) f.values.push_back(p->index_of(s));
  auto g = right_adjoint(f);
  REQUIRE(g.has_value());
  PModule gamma = direct_sum(interval_by_names(q, {"1"}, {"1"}), interval_by_names(q, {"2"}, {"3"}));
  CHECK(is_isomorphic(left_kan(f, gamma), pullback(*g, gamma)));
}

TEST_CASE("hom dimensions between indecomposable projectives follow the order") {
  auto p = chain(4);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      auto basis = hom_basis(projective(p, x), projective(p, y));
      CHECK(int(basis.size()) == (p->leq(y, x) ? 1 : 0));
    }
}

TEST_CASE("hom into the zero module vanishes") {
  auto p = chain(3);
  PModule m = projective(p, 0);
  CHECK(hom_basis(m, PModule::zero(p)).empty());
}

TEST_CASE("hom between nested intervals is one-sided") {
  auto p = chain(2);
  PModule v1 = interval_by_names(p, {"1"}, {"1"});
  PModule v12 = interval_by_names(p, {"1"}, {"2"});
  CHECK(hom_basis(v1, v12).empty());
  CHECK(hom_basis(v12, v1).size() == 1);
}

TEST_CASE("yoneda dimension identity") {
  auto g = grid33();
  PModule n = interval_by_names(g, {"22"}, {"23", "32"});
  for (int x = 0; x < g->size(); ++x)
    CHECK(int(hom_basis(projective(g, x), n).size()) == n.dim(x));
}

TEST_CASE("isomorphism testing") {
  auto p = chain(4);
  PModule m = direct_sum(interval_by_names(p, {"1"}, {"1"}), interval_by_names(p, {"2"}, {"3"}));
  PModule n = interval_by_names(p, {"2"}, {"3"});
  CHECK(is_isomorphic(m, m));
  CHECK(!is_isomorphic(m, n));

  // equal dimension vectors but non-isomorphic
  auto p2 = chain(2);
  PModule a = direct_sum(interval_by_names(p2, {"1"}, {"1"}), interval_by_names(p2, {"2"}, {"2"}));
  PModule b = interval_by_names(p2, {"1"}, {"2"});
  CHECK(a.dims == b.dims);
  CHECK(!is_isomorphic(a, b));
}

TEST_CASE("isomorphism is found after a random change of basis") {
  auto g = grid33();
  PModule n = direct_sum(interval_by_names(g, {"22"}, {"23", "32"}),
                         interval_by_names(g, {"12"}, {"12"}));
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::int64_t> pick(1, Fp::modulus - 1);
  PModule conj = n;
  std::vector<Mat> change;
  for (int x = 0; x < g->size(); ++x) {
    Mat c = mat_identity(n.dim(x));
    for (Eigen::Index i = 0; i < c.rows(); ++i) c(i, i) = Fp(pick(rng));
    change.push_back(c);
  }
  for (size_t ai = 0; ai < g->covers.size(); ++ai) {
    auto [a, b] = g->covers[ai];
    auto inv = solve(change[size_t(a)], mat_identity(n.dim(a)));
    REQUIRE(inv.has_value());
    conj.arrow_maps[ai] = mul(change[size_t(b)], mul(n.arrow_maps[ai], *inv));
  }
  REQUIRE(validate(conj));
  CHECK(is_isomorphic(conj, n));
}

TEST_CASE("projective cover of a projective is itself") {
  auto p = chain(4);
  PModule m = projective(p, 1);
  CoverData cd = projective_cover(m);
  CHECK(cd.points == std::vector<int>{1});
  CHECK(cd.kernel.is_zero());
}

TEST_CASE("projective cover of the middle interval on the four-chain") {
  auto p = chain(4);
  PModule m = interval_by_names(p, {"2"}, {"3"});
  CoverData cd = projective_cover(m);
  CHECK(cd.points == std::vector<int>{p->index_of("2")});
  CHECK(is_isomorphic(cd.kernel, projective(p, p->index_of("4"))));
}

TEST_CASE("projective cover of the corner interval on the grid") {
  auto g = grid33();
  PModule m = interval_by_names(g, {"12"}, {"12"});
  CoverData cd = projective_cover(m);
  CHECK(cd.points == std::vector<int>{g->index_of("12")});
  CoverData second = projective_cover(cd.kernel);
  std::vector<int> expected{g->index_of("22"), g->index_of("13")};
  std::sort(expected.begin(), expected.end());
  CHECK(second.points == expected);
}

TEST_CASE("top extension zeroes out the new top") {
  auto p = chain(4);
  auto pb = augment(p);
  PModule m = direct_sum(interval_by_names(p, {"1"}, {"1"}), interval_by_names(p, {"2"}, {"3"}));
  PModule mb = extend_top(m, pb);
  CHECK(mb.dim(pb->size() - 1) == 0);
  CHECK(dims_by_names(mb, {"1", "2", "3", "4"}) == std::vector<int>{1, 1, 1, 0});
  // the displayed extension has zero first map and identity second map
  CHECK(mat_is_zero(mb.map(pb->index_of("1"), pb->index_of("2"))));
  CHECK(mat_equal(mb.map(pb->index_of("2"), pb->index_of("3")), mat_identity(1)));
  CHECK(validate(mb));

  PModule zb = extend_top(PModule::zero(p), pb);
  CHECK(zb.is_zero());
}
