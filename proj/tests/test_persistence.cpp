#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pmod/persistence.hpp"

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

GenInterval gi_by_names(PosetPtr p, const std::vector<std::string>& lo,
                        const std::vector<std::string>& hi) {
  std::vector<int> a, b;
  for (auto& s : lo) a.push_back(p->index_of(s));
  for (auto& s : hi) b.push_back(p->index_of(s));
  auto gi = as_gen_interval(*p, interval_span(*p, a, b));
  REQUIRE(gi.has_value());
  return *gi;
}

PModule sum_of(PosetPtr p, const IntervalDecomposition& parts) {
  PModule m = PModule::zero(p);
  for (auto& gi : parts) m = direct_sum(m, interval_module(p, gi));
  return m;
}

MonotoneMap capped_shift(PosetPtr p) {
  MonotoneMap s{p, p, {}};
  for (int i = 0; i < p->size(); ++i) s.values.push_back(std::min(i + 1, p->size() - 1));
  return s;
}

MonotoneMap capped_diag(PosetPtr g) {
  MonotoneMap s{g, g, {}};
  for (int i = 0; i < g->size(); ++i) {
    int x = std::min(g->names[size_t(i)][0] - '0' + 1, 3);
    int y = std::min(g->names[size_t(i)][1] - '0' + 1, 3);
    s.values.push_back(g->index_of(std::to_string(x) + std::to_string(y)));
  }
  return s;
}

int kdim(const KernelModule& km, const std::string& x, const std::string& y) {
  int xi = km.base_bar->index_of(x), yi = km.base_bar->index_of(y);
  return km.module.dim(interval_index(*km.interval, *km.base_bar, xi, yi));
}

std::vector<std::pair<std::string, std::string>> diagram_names(const PersistenceDiagram& d,
                                                               int degree) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto& [pt, mult] : d.diagram.multiplicities[size_t(degree)])
    for (int k = 0; k < mult; ++k) {
      const std::string& nm = d.diagram.interval->names[size_t(pt)];
      auto comma = nm.find(',');
      out.emplace_back(nm.substr(1, comma - 1), nm.substr(comma + 1, nm.size() - comma - 2));
    }
  return out;
}

// independent route: apply Hom(-, M) to the resolution of the simple only
std::vector<int> ext_oracle(int b, const PModule& m) {
  ProjComplex a = minimal_resolution(simple(m.poset, b));
  int d = a.degrees();
  std::vector<Mat> cochain;  // delta^i : C^i -> C^{i+1}
  std::vector<int> cdim;
  for (int i = 0; i < d; ++i) {
    int total = 0;
    for (int pt : a.points[size_t(i)]) total += m.dim(pt);
    cdim.push_back(total);
  }
  for (int i = 0; i + 1 < d; ++i) {
    Mat delta = mat_zero(cdim[size_t(i) + 1], cdim[size_t(i)]);
    int roff = 0;
    for (int s2 = 0; s2 < a.summands(i + 1); ++s2) {
      int coff = 0;
      for (int s = 0; s < a.summands(i); ++s) {
        Fp coef = a.diffs[size_t(i)](s, s2);
        if (!coef.is_zero()) {
          Mat mm = m.map(a.points[size_t(i)][size_t(s)], a.points[size_t(i) + 1][size_t(s2)]);
          for (Eigen::Index r = 0; r < mm.rows(); ++r)
            for (Eigen::Index c = 0; c < mm.cols(); ++c) delta(roff + r, coff + c) += coef * mm(r, c);
        }
        coff += m.dim(a.points[size_t(i)][size_t(s)]);
      }
      roff += m.dim(a.points[size_t(i) + 1][size_t(s2)]);
    }
    cochain.push_back(std::move(delta));
  }
  std::vector<int> out;
  for (int i = 0; i < d; ++i) {
    int rank_out = i < int(cochain.size()) ? rank_of(cochain[size_t(i)]) : 0;
    int rank_in = i > 0 ? rank_of(cochain[size_t(i) - 1]) : 0;
    out.push_back(cdim[size_t(i)] - rank_out - rank_in);
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace

TEST_CASE("kernel module of the one-parameter example matches the displayed diagram") {
  auto p = chain(4);
  PModule m = sum_of(p, {gi_by_names(p, {"1"}, {"1"}), gi_by_names(p, {"2"}, {"3"})});
  KernelModule km = kernel_module(m);
  std::string top = km.base_bar->names.back();
  // nonzero entries
  for (auto& [x, y] : std::vector<std::pair<std::string, std::string>>{
           {"1", "2"}, {"1", "3"}, {"1", "4"}, {"1", top}, {"2", "4"}, {"2", top}, {"3", "4"}, {"3", top}})
    CHECK(kdim(km, x, y) == 1);
  // diagonal and everything else vanish
  for (auto& x : {"1", "2", "3", "4"}) CHECK(kdim(km, x, x) == 0);
  CHECK(kdim(km, "2", "3") == 0);
  CHECK(kdim(km, "4", top) == 0);
  CHECK(kdim(km, top, top) == 0);
  // the value at (x, top) recovers M(x)
  for (auto& x : {"1", "2", "3", "4"})
    CHECK(kdim(km, x, top) == m.dim(p->index_of(x)));
  CHECK(validate(km.module));
}

TEST_CASE("kernel module of the second one-parameter module") {
  auto p = chain(4);
  PModule n = sum_of(p, {gi_by_names(p, {"2"}, {"3"})});
  KernelModule kn = kernel_module(n);
  std::string top = kn.base_bar->names.back();
  int nonzero = 0;
  for (int i = 0; i < kn.interval->size(); ++i) nonzero += kn.module.dim(i);
  CHECK(nonzero == 4);
  for (auto& [x, y] : std::vector<std::pair<std::string, std::string>>{
           {"2", "4"}, {"2", top}, {"3", "4"}, {"3", top}})
    CHECK(kdim(kn, x, y) == 1);
}

TEST_CASE("persistence diagrams of the one-parameter pair") {
  auto p = chain(4);
  PModule m = sum_of(p, {gi_by_names(p, {"1"}, {"1"}), gi_by_names(p, {"2"}, {"3"})});
  PModule n = sum_of(p, {gi_by_names(p, {"2"}, {"3"})});
  PersistenceDiagram dm = persistence_diagram(m);
  PersistenceDiagram dn = persistence_diagram(n);
  std::string top = dm.kernel.base_bar->names.back();

  REQUIRE(dm.resolution.degrees() == 2);
  CHECK(diagram_names(dm, 0) ==
        std::vector<std::pair<std::string, std::string>>{{"1", "2"}, {"2", "4"}});
  CHECK(diagram_names(dm, 1) ==
        std::vector<std::pair<std::string, std::string>>{{"2", "2"}, {"4", "4"}});
  CHECK(mat_equal(dm.resolution.diffs[0], mat_identity(2)));

  REQUIRE(dn.resolution.degrees() == 2);
  CHECK(diagram_names(dn, 0) == std::vector<std::pair<std::string, std::string>>{{"2", "4"}});
  CHECK(diagram_names(dn, 1) == std::vector<std::pair<std::string, std::string>>{{"4", "4"}});
}

TEST_CASE("persistence diagram of the zero module is empty") {
  auto p = chain(3);
  PersistenceDiagram d = persistence_diagram(PModule::zero(p));
  CHECK(d.resolution.degrees() == 0);
  CHECK(d.diagram.multiplicities.empty());
}

TEST_CASE("kernel modules of the two-parameter modules have the displayed supports") {
  auto g = grid33();
  PModule m1 = sum_of(g, {gi_by_names(g, {"12"}, {"12"})});
  PModule m2 = sum_of(g, {gi_by_names(g, {"21"}, {"31"})});
  PModule n = sum_of(g, {gi_by_names(g, {"22"}, {"23", "32"})});

  KernelModule k1 = kernel_module(m1);
  std::string top = k1.base_bar->names.back();
  int t1 = 0;
  for (int i = 0; i < k1.interval->size(); ++i) t1 += k1.module.dim(i);
  CHECK(t1 == 6);
  for (auto& y : {"13", "22", "23", "32", "33"}) CHECK(kdim(k1, "12", y) == 1);
  CHECK(kdim(k1, "12", top) == 1);

  KernelModule k2 = kernel_module(m2);
  int t2 = 0;
  for (int i = 0; i < k2.interval->size(); ++i) t2 += k2.module.dim(i);
  CHECK(t2 == 8);
  for (auto& y : {"22", "23", "32", "33"}) CHECK(kdim(k2, "21", y) == 1);
  CHECK(kdim(k2, "21", top) == 1);
  for (auto& y : {"32", "33"}) CHECK(kdim(k2, "31", y) == 1);
  CHECK(kdim(k2, "31", top) == 1);

  KernelModule kn = kernel_module(n);
  int tn = 0;
  for (int i = 0; i < kn.interval->size(); ++i) tn += kn.module.dim(i);
  CHECK(tn == 6);
  for (auto& x : {"22", "23", "32"}) {
    CHECK(kdim(kn, x, "33") == 1);
    CHECK(kdim(kn, x, top) == 1);
  }
}

TEST_CASE("persistence diagrams of the two-parameter modules") {
  auto g = grid33();
  PModule m1 = sum_of(g, {gi_by_names(g, {"12"}, {"12"})});
  PModule m2 = sum_of(g, {gi_by_names(g, {"21"}, {"31"})});
  PModule n = sum_of(g, {gi_by_names(g, {"22"}, {"23", "32"})});

  PersistenceDiagram d1 = persistence_diagram(m1);
  REQUIRE(d1.resolution.degrees() == 3);
  CHECK(diagram_names(d1, 0) ==
        std::vector<std::pair<std::string, std::string>>{{"12", "22"}, {"12", "13"}});
  CHECK(diagram_names(d1, 1) ==
        std::vector<std::pair<std::string, std::string>>{{"12", "23"}, {"22", "22"}, {"13", "13"}});
  CHECK(diagram_names(d1, 2) == std::vector<std::pair<std::string, std::string>>{{"23", "23"}});

  PersistenceDiagram d2 = persistence_diagram(m2);
  REQUIRE(d2.resolution.degrees() == 2);
  CHECK(diagram_names(d2, 0) == std::vector<std::pair<std::string, std::string>>{{"21", "22"}});
  CHECK(diagram_names(d2, 1) == std::vector<std::pair<std::string, std::string>>{{"22", "22"}});

  PersistenceDiagram dn = persistence_diagram(n);
  REQUIRE(dn.resolution.degrees() == 2);
  CHECK(diagram_names(dn, 0) == std::vector<std::pair<std::string, std::string>>{{"22", "33"}});
  CHECK(diagram_names(dn, 1) == std::vector<std::pair<std::string, std::string>>{{"33", "33"}});
}

TEST_CASE("kernel commutes with restriction along right adjoints, on the nose") {
  auto p = chain(4);
  auto q = chain(6, 0);
  MonotoneMap f{q, p, {}};
  for (auto& s : {"1", "1", "2", "3", "4", "4"}) f.values.push_back(p->index_of(s));
  auto g = right_adjoint(f);
  REQUIRE(g.has_value());
  PModule gamma = sum_of(q, {gi_by_names(q, {"1"}, {"1"}), gi_by_names(q, {"2"}, {"3"})});

  PosetPtr qbar = augment(q), pbar = augment(p);
  PosetPtr iq = interval_poset(qbar), ip = interval_poset(pbar);
  KernelModule kq = kernel_module_with(gamma, qbar, iq);
  MonotoneMap intg = int_map(*g, pbar, qbar, ip, iq);
  PModule lhs = pullback(intg, kq.module);
  KernelModule rhs = kernel_module_with(pullback(*g, gamma), pbar, ip);
  CHECK(lhs.dims == rhs.module.dims);
  for (size_t ai = 0; ai < ip->covers.size(); ++ai) CHECK(mat_equal(lhs.arrow_maps[ai], rhs.module.arrow_maps[ai]));
}

TEST_CASE("ext dimensions agree with the independent oracle") {
  auto p3 = chain(3);
  PModule v12 = sum_of(p3, {gi_by_names(p3, {"1"}, {"2"})});
  auto e = ext_dims(p3->index_of("1"), v12);
  CHECK(e == ext_oracle(p3->index_of("1"), v12));
  CHECK(e[0] == 0);  // no map from the simple into the longer interval

  auto p2 = chain(2);
  PModule v22 = sum_of(p2, {gi_by_names(p2, {"2"}, {"2"})});
  auto e2 = ext_dims(p2->index_of("1"), v22);
  CHECK(e2 == ext_oracle(p2->index_of("1"), v22));
  REQUIRE(e2.size() >= 2);
  CHECK(e2[0] == 0);
  CHECK(e2[1] == 1);

  // identity case on several posets
  for (auto pp : {chain(3), grid33()})
    for (int b = 0; b < pp->size(); ++b) {
      auto eb = ext_dims(b, simple(pp, b));
      CHECK(eb[0] == 1);
      for (size_t i = 1; i < eb.size(); ++i) CHECK(eb[i] == 0);
      CHECK(eb == ext_oracle(b, simple(pp, b)));
    }
}

TEST_CASE("stability report on the one-parameter example") {
  auto p = chain(4);
  IntervalDecomposition mp{gi_by_names(p, {"1"}, {"1"}), gi_by_names(p, {"2"}, {"3"})};
  IntervalDecomposition np{gi_by_names(p, {"2"}, {"3"})};
  PModule m = sum_of(p, mp), n = sum_of(p, np);
  StabilityReport rep = stability_report(p, m, n, {capped_shift(p)},
                                         {TranslationMode::Intervals}, 3, &mp, &np);
  CHECK(rep.base.bound == ExtDist(1));
  CHECK(rep.lifted_cost == ExtDist(1));
  CHECK(rep.bracket.exact());
  CHECK(rep.bracket.upper == ExtDist(1));
  CHECK(rep.chain_holds);
}

TEST_CASE("stability report is all zeros on equal modules") {
  auto p = chain(4);
  IntervalDecomposition np{gi_by_names(p, {"2"}, {"3"})};
  PModule n = sum_of(p, np);
  StabilityReport rep = stability_report(p, n, n, {MonotoneMap::identity(p)},
                                         {TranslationMode::PullTarget}, 2, &np, &np);
  CHECK(rep.base.bound == ExtDist::zero());
  CHECK(rep.lifted_cost == ExtDist::zero());
  CHECK(rep.bracket.exact());
  CHECK(rep.bracket.upper == ExtDist::zero());
  CHECK(rep.chain_holds);
}

TEST_CASE("stability report on the two-parameter example") {
  auto g = grid33();
  IntervalDecomposition mp{gi_by_names(g, {"12"}, {"12"}), gi_by_names(g, {"21"}, {"31"})};
  IntervalDecomposition np{gi_by_names(g, {"22"}, {"23", "32"})};
  PModule m = sum_of(g, mp), n = sum_of(g, np);
  StabilityReport rep = stability_report(g, m, n, {capped_diag(g)},
                                         {TranslationMode::Intervals}, 3, &mp, &np);
  CHECK(rep.base.bound == ExtDist(1));
  CHECK(rep.lifted_cost == ExtDist(1));
  CHECK(rep.bracket.exact());
  CHECK(rep.bracket.upper == ExtDist(1));
  CHECK(rep.chain_holds);
}

TEST_CASE("kernel of a morphism restricts componentwise and preserves isomorphisms") {
  auto p = chain(4);
  PModule m = sum_of(p, {gi_by_names(p, {"1"}, {"1"}), gi_by_names(p, {"2"}, {"3"})});
  KernelModule km = kernel_module(m);

  // the identity restricts to the identity
  std::vector<Mat> id_components;
  for (int x = 0; x < p->size(); ++x) id_components.push_back(mat_identity(m.dim(x)));
  auto kid = kernel_morphism(km, km, m, m, id_components);
  for (size_t i = 0; i < kid.size(); ++i)
    CHECK(mat_equal(kid[i], mat_identity(km.module.dim(int(i)))));

  // a diagonal rescaling restricts to an isomorphism of the kernels
  std::vector<Mat> scale;
  for (int x = 0; x < p->size(); ++x) {
    Mat c = mat_identity(m.dim(x));
    for (Eigen::Index k = 0; k < c.rows(); ++k) c(k, k) = Fp(3);
    scale.push_back(c);
  }
  PModule m2 = m;
  for (size_t ai = 0; ai < p->covers.size(); ++ai) {
    auto [a, b] = p->covers[ai];
    auto inv = solve(scale[size_t(a)], mat_identity(m.dim(a)));
    m2.arrow_maps[ai] = mul(scale[size_t(b)], mul(m.arrow_maps[ai], *inv));
  }
  KernelModule km2 = kernel_module(m2);
  auto kf = kernel_morphism(km, km2, m, m2, scale);
  for (size_t i = 0; i < kf.size(); ++i) {
    CHECK(kf[i].rows() == kf[i].cols());
    CHECK(rank_of(kf[i]) == kf[i].rows());
  }
}
