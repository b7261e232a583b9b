// persistence.hpp -- the kernel functor into modules over the interval poset
// of the augmented base, resolution-valued persistence diagrams, Ext
// dimensions from Hom double complexes, and the end-to-end stability report.

#pragma once

#include "pmod/transport.hpp"

namespace pmod {

/// Kernel module of M: the value at (x,y) is the kernel of the structure map
/// of the zero-extended module, so (x, top) recovers M(x) and the diagonal
/// vanishes.
struct KernelModule {
  PosetPtr base;
  PosetPtr base_bar;
  PosetPtr interval;                      // Int of the augmented base
  std::vector<std::pair<int, int>> pairs; // per interval element, (x,y) in base_bar
  PModule module;                         // over `interval`
};

inline KernelModule kernel_module_with(const PModule& m, PosetPtr base_bar, PosetPtr ip) {
  KernelModule out;
  out.base = m.poset;
  out.base_bar = std::move(base_bar);
  out.interval = std::move(ip);
  PModule mbar = extend_top(m, out.base_bar);

  for (int x = 0; x < out.base_bar->size(); ++x)
    for (int y = 0; y < out.base_bar->size(); ++y)
      if (out.base_bar->leq(x, y)) out.pairs.emplace_back(x, y);

  std::vector<Mat> incl(out.pairs.size());
  out.module = PModule::zero(out.interval);
  for (size_t i = 0; i < out.pairs.size(); ++i) {
    auto [x, y] = out.pairs[i];
    incl[i] = reduce(mbar.map(x, y)).kernel_basis;
    out.module.dims[i] = int(incl[i].cols());
  }
  for (size_t ai = 0; ai < out.interval->covers.size(); ++ai) {
    auto [a, b] = out.interval->covers[ai];
    auto [x1, y1] = out.pairs[size_t(a)];
    auto [x2, y2] = out.pairs[size_t(b)];
    auto t = solve(incl[size_t(b)], mul(mbar.map(x1, x2), incl[size_t(a)]));
    if (!t) throw std::logic_error("kernel module not closed under structure maps");
    out.module.arrow_maps[ai] = *t;
  }
  return out;
}

inline KernelModule kernel_module(const PModule& m) {
  PosetPtr bar = augment(m.poset);
  PosetPtr ip = interval_poset(bar);
  return kernel_module_with(m, std::move(bar), std::move(ip));
}

/// Kernel of a morphism: the componentwise restriction.
inline std::vector<Mat> kernel_morphism(const KernelModule& km, const KernelModule& kn,
                                        const PModule& m, const PModule& n,
                                        const std::vector<Mat>& beta) {
  PModule mbar = extend_top(m, km.base_bar);
  PModule nbar = extend_top(n, kn.base_bar);
  std::vector<Mat> incl_m(km.pairs.size()), incl_n(kn.pairs.size());
  for (size_t i = 0; i < km.pairs.size(); ++i) {
    incl_m[i] = reduce(mbar.map(km.pairs[i].first, km.pairs[i].second)).kernel_basis;
    incl_n[i] = reduce(nbar.map(kn.pairs[i].first, kn.pairs[i].second)).kernel_basis;
  }
  std::vector<Mat> out(km.pairs.size());
  std::vector<Mat> beta_bar = beta;
  beta_bar.push_back(mat_zero(0, 0));
  for (size_t i = 0; i < km.pairs.size(); ++i) {
    auto t = solve(incl_n[i], mul(beta_bar[size_t(km.pairs[i].first)], incl_m[i]));
    if (!t) throw std::logic_error("morphism does not restrict to the kernels");
    out[i] = *t;
  }
  return out;
}

/// Degreewise summand multisets of the minimal resolution of the kernel
/// module; the sign of a degree is its parity.
struct SignedDiagram {
  PosetPtr interval;
  std::vector<std::map<int, int>> multiplicities;  // per degree, point -> count
};

struct PersistenceDiagram {
  KernelModule kernel;
  ProjComplex resolution;
  SignedDiagram diagram;
};

inline PersistenceDiagram persistence_diagram(const PModule& m) {
  PersistenceDiagram out{kernel_module(m), {}, {}};
  out.resolution = minimal_resolution(out.kernel.module);
  out.diagram.interval = out.kernel.interval;
  for (int i = 0; i < out.resolution.degrees(); ++i) {
    out.diagram.multiplicities.emplace_back();
    for (int pt : out.resolution.points[size_t(i)]) ++out.diagram.multiplicities.back()[pt];
  }
  return out;
}

/// Dimensions of Ext^d from the simple at b into M, via the total Hom
/// complex of the two minimal resolutions.
inline std::vector<int> ext_dims(int b, const PModule& m) {
  ProjComplex a = minimal_resolution(simple(m.poset, b));
  ProjComplex bb = minimal_resolution(m);
  const Poset& p = *m.poset;

  int da = a.degrees(), db = bb.degrees();
  int dmax = std::max(da, 1);

  // basis of D^d: triples (i, s, t) with s a degree-i summand of a and t a
  // degree-(i-d) summand of bb, point(s) >= point(t)
  struct Entry {
    int i, s, t;
  };
  auto layer = [&](int d) {
    std::vector<Entry> e;
    for (int i = 0; i < da; ++i) {
      int j = i - d;
      if (j < 0 || j >= db) continue;
      for (int s = 0; s < a.summands(i); ++s)
        for (int t = 0; t < bb.summands(j); ++t)
          if (p.leq(bb.points[size_t(j)][size_t(t)], a.points[size_t(i)][size_t(s)]))
            e.push_back(Entry{i, s, t});
    }
    return e;
  };
  auto index_of = [](const std::vector<Entry>& es, int i, int s, int t) {
    for (size_t k = 0; k < es.size(); ++k)
      if (es[k].i == i && es[k].s == s && es[k].t == t) return int(k);
    return -1;
  };

  std::vector<int> dims;
  std::vector<Mat> deltas;  // deltas[d]: D^d -> D^{d+1}
  int lo = -db;
  for (int d = lo; d <= dmax; ++d) {
    auto cur = layer(d);
    auto nxt = layer(d + 1);
    Mat delta = mat_zero(int(nxt.size()), int(cur.size()));
    for (size_t k = 0; k < cur.size(); ++k) {
      auto [i, s, t] = cur[k];
      int j = i - d;
      // post-compose with the differential of bb
      if (j - 1 >= 0)
        for (int u = 0; u < bb.summands(j - 1); ++u) {
          Fp coef = bb.diffs[size_t(j) - 1](u, t);
          if (coef.is_zero()) continue;
          int idx = index_of(nxt, i, s, u);
          if (idx >= 0) delta(idx, int(k)) += coef;
        }
      // pre-compose with the differential of a, with the sign of the layer
      if (i + 1 < da)
        for (int s2 = 0; s2 < a.summands(i + 1); ++s2) {
          Fp coef = a.diffs[size_t(i)](s, s2);
          if (coef.is_zero()) continue;
          int idx = index_of(nxt, i + 1, s2, t);
          if (idx >= 0) delta(idx, int(k)) -= (d % 2 == 0 ? Fp(1) : Fp(-1)) * coef;
        }
    }
    deltas.push_back(std::move(delta));
    dims.push_back(int(cur.size()));
  }

  std::vector<int> out;
  for (int d = 0; d <= dmax; ++d) {
    int idx = d - lo;
    int cur_dim = dims[size_t(idx)];
    int rank_out = rank_of(deltas[size_t(idx)]);
    int rank_in = idx > 0 ? rank_of(deltas[size_t(idx) - 1]) : 0;
    out.push_back(cur_dim - rank_out - rank_in);
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

/// The full stability pipeline. Couplings are built from the supplied
/// translations, lifted through the interval construction and the kernel
/// functor, and the lifted witnesses seed the bottleneck search between the
/// persistence diagrams.
struct StabilityReport {
  GtUpper base;                       // upper bound for the modules themselves
  ExtDist lifted_cost = ExtDist::infinity();
  std::vector<std::string> lines;     // provenance of every step
  PersistenceDiagram diagram_m, diagram_n;
  DistBracket bracket;                // between the two persistence diagrams
  bool chain_holds = false;           // bracket.upper <= lifted <= base
};

inline StabilityReport stability_report(const PosetPtr& p, const PModule& m, const PModule& n,
                                        const std::vector<MonotoneMap>& sigmas,
                                        const std::vector<TranslationMode>& modes, int slack,
                                        const IntervalDecomposition* m_parts = nullptr,
                                        const IntervalDecomposition* n_parts = nullptr) {
  StabilityReport rep;
  PosetPtr pbar = augment(p);
  PosetPtr ip = interval_poset(pbar);
  KernelModule km = kernel_module_with(m, pbar, ip);
  KernelModule kn = kernel_module_with(n, pbar, ip);

  rep.diagram_m.kernel = km;
  rep.diagram_m.resolution = minimal_resolution(km.module);
  rep.diagram_m.diagram.interval = ip;
  for (int i = 0; i < rep.diagram_m.resolution.degrees(); ++i) {
    rep.diagram_m.diagram.multiplicities.emplace_back();
    for (int pt : rep.diagram_m.resolution.points[size_t(i)])
      ++rep.diagram_m.diagram.multiplicities.back()[pt];
  }
  rep.diagram_n.kernel = kn;
  rep.diagram_n.resolution = minimal_resolution(kn.module);
  rep.diagram_n.diagram.interval = ip;
  for (int i = 0; i < rep.diagram_n.resolution.degrees(); ++i) {
    rep.diagram_n.diagram.multiplicities.emplace_back();
    for (int pt : rep.diagram_n.resolution.points[size_t(i)])
      ++rep.diagram_n.diagram.multiplicities.back()[pt];
  }

  rep.base = gt_upper(p, m, n, sigmas, modes, m_parts, n_parts);
  for (auto& line : rep.base.attempts) rep.lines.push_back("base " + line);

  // lifted costs are read off the interval legs alone; the apex module of
  // the lift is only materialized for the cheapest coupling, which then
  // seeds the diagram search through its pulled-back resolution
  std::vector<MatchingWitness> seeds;
  const GaloisCoupling* best_lift = nullptr;
  ExtDist best_lift_cost = ExtDist::infinity();
  for (const GaloisCoupling& c : rep.base.validated) {
    PosetPtr qbar = augment(c.apex);
    PosetPtr iq = interval_poset(qbar);
    MonotoneMap int_f = int_map(c.left.f, qbar, pbar, iq, ip);
    MonotoneMap int_h = int_map(c.right.f, qbar, pbar, iq, ip);
    ExtDist lc = ExtDist::zero();
    for (int u = 0; u < iq->size(); ++u) lc = max(lc, ip->dist(int_f(u), int_h(u)));
    rep.lines.push_back("lifted coupling cost " + lc.str() + " (base " +
                        coupling_cost(c).str() + ")");
    rep.lifted_cost = min(rep.lifted_cost, lc);
    if (lc < best_lift_cost) {
      best_lift_cost = lc;
      best_lift = &c;
    }
  }
  if (best_lift) {
    const GaloisCoupling& c = *best_lift;
    PosetPtr qbar = augment(c.apex);
    PosetPtr iq = interval_poset(qbar);
    MonotoneMap int_f = int_map(c.left.f, qbar, pbar, iq, ip);
    MonotoneMap int_g = int_map(c.left.g, pbar, qbar, ip, iq);
    MonotoneMap int_h = int_map(c.right.f, qbar, pbar, iq, ip);
    MonotoneMap int_i = int_map(c.right.g, pbar, qbar, ip, iq);
    auto gl = make_galois_pair(int_f, int_g);
    auto gr = make_galois_pair(int_h, int_i);
    std::string why;
    if (!gl || !gl->insertion || !gr || !gr->insertion) {
      rep.lines.push_back("lift: interval legs failed to validate");
    } else {
      KernelModule kg = kernel_module_with(c.gamma, qbar, iq);
      auto lifted = make_coupling(iq, *gl, *gr, kg.module, km.module, kn.module,
                                  "kernel lift of (" + c.provenance + ")", &why);
      if (!lifted) {
        rep.lines.push_back("lift: " + why);
      } else {
        ProjComplex r = minimal_resolution(kg.module);
        auto w = pullback_matching(*lifted, r, &why);
        if (w)
          seeds.push_back(*w);
        else
          rep.lines.push_back("lift witness: " + why);
      }
    }
  }

  rep.bracket = bottleneck_distance(rep.diagram_m.resolution, rep.diagram_n.resolution, kn.module,
                                    slack, seeds);
  rep.chain_holds = rep.bracket.upper <= rep.lifted_cost && rep.lifted_cost <= rep.base.bound;
  return rep;
}

}  // namespace pmod
