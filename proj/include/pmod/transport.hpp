// transport.hpp -- Galois couplings: validation and cost, construction from
// translations, composition over poset pullbacks, transport-distance upper
// bounds with the exact zero test, and the pulled-back matching witness.

#pragma once

#include "pmod/bottleneck.hpp"

namespace pmod {

/// A validated Galois coupling: an apex poset with two insertions onto the
/// base poset and an apex module whose right-adjoint pullbacks recover the
/// two compared modules. The recovery isomorphisms are stored so composites
/// can reuse them.
struct GaloisCoupling {
  PosetPtr apex;
  GaloisPair left;   // f -| g, f: apex -> base
  GaloisPair right;  // h -| i
  PModule gamma;
  PModule m, n;                    // the coupled modules over the base
  std::vector<Mat> wit_m;          // per base element: g*Gamma -> M isomorphism
  std::vector<Mat> wit_n;          // per base element: i*Gamma -> N isomorphism
  std::string provenance;          // how the coupling was built, for reports
};

inline ExtDist coupling_cost(const GaloisCoupling& c) {
  const Poset& base = *c.left.f.dst;
  ExtDist v = ExtDist::zero();
  for (int q = 0; q < c.apex->size(); ++q) v = max(v, base.dist(c.left.f(q), c.right.f(q)));
  return v;
}

/// Checks both insertion laws and recovers the two pullback isomorphisms.
inline std::optional<GaloisCoupling> make_coupling(PosetPtr apex, const GaloisPair& left,
                                                   const GaloisPair& right, PModule gamma,
                                                   const PModule& m, const PModule& n,
                                                   std::string provenance,
                                                   std::string* why = nullptr) {
  if (!left.insertion || !right.insertion) {
    if (why) *why = "legs are not Galois insertions";
    return std::nullopt;
  }
  if (!validate(gamma, why)) return std::nullopt;
  PModule gm = pullback(left.g, gamma);
  PModule gn = pullback(right.g, gamma);
  auto im = find_isomorphism(gm, m);  // literal equality short-circuits inside
  if (!im) {
    if (why) *why = "g-pullback of the apex module does not recover the first module";
    return std::nullopt;
  }
  auto in = find_isomorphism(gn, n);
  if (!in) {
    if (why) *why = "i-pullback of the apex module does not recover the second module";
    return std::nullopt;
  }
  GaloisCoupling c{std::move(apex), left,      right,        std::move(gamma),
                   m,               n,         im->components, in->components,
                   std::move(provenance)};
  return c;
}

/// Swapping the two legs couples (N, M) at the same cost.
inline GaloisCoupling swap_legs(const GaloisCoupling& c) {
  GaloisCoupling s = c;
  std::swap(s.left, s.right);
  std::swap(s.m, s.n);
  std::swap(s.wit_m, s.wit_n);
  s.provenance = c.provenance + ", legs swapped";
  return s;
}

enum class TranslationMode { Intervals, Kan, PullTarget };

inline const char* mode_name(TranslationMode m) {
  switch (m) {
    case TranslationMode::Intervals: return "intervals";
    case TranslationMode::Kan: return "kan";
    case TranslationMode::PullTarget: return "pull-target";
  }
  return "?";
}

/// Interval decompositions feed the `Intervals` construction; modules loaded
/// from interval sums carry one.
using IntervalDecomposition = std::vector<GenInterval>;

namespace detail {

// the subposet Q' of the translation apex: both copies keep their internal
// order, cross relations are dropped
inline PosetPtr restricted_apex(const TranslationQuotient& tq, const Poset& base) {
  auto q = std::make_shared<Poset>();
  q->names = tq.apex->names;
  int m = tq.apex->size();
  q->leq_table.assign(size_t(m) * m, 0);
  for (int x = 0; x < base.size(); ++x)
    for (int y = 0; y < base.size(); ++y) {
      if (base.leq(x, y)) {
        q->leq_table[size_t(tq.left_copy[size_t(x)]) * m + tq.left_copy[size_t(y)]] = 1;
        q->leq_table[size_t(tq.right_copy[size_t(x)]) * m + tq.right_copy[size_t(y)]] = 1;
      }
    }
  q->covers = transitive_reduction(q->leq_table, m);
  q->dist_table.assign(size_t(m) * m, ExtDist::infinity());
  for (int a = 0; a < m; ++a) q->dist_table[size_t(a) * m + a] = ExtDist::zero();
  for (auto& [a, b] : q->covers) {
    q->dist_table[size_t(a) * m + b] = ExtDist(1);
    q->dist_table[size_t(b) * m + a] = ExtDist(1);
  }
  for (int k = 0; k < m; ++k)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        ExtDist via = q->dist(a, k) + q->dist(k, b);
        if (via < q->dist(a, b)) q->dist_table[size_t(a) * m + b] = via;
      }
  return q;
}

}  // namespace detail

/// Builds a Galois coupling for (M, N) over the translation apex of sigma.
///
/// Mode `Intervals` requires interval decompositions of both modules whose
/// left/right copies stay convex in the apex. Mode `Kan` requires M and N to
/// agree on the fixed points; the apex module is the left Kan extension of
/// the two-copy module, accepted only when its restriction returns the
/// original. Mode `PullTarget` requires M = N o sigma exactly.
inline std::optional<GaloisCoupling> coupling_from_translation(
    const PosetPtr& p, const MonotoneMap& sigma, const PModule& m, const PModule& n,
    TranslationMode mode, const IntervalDecomposition* m_parts = nullptr,
    const IntervalDecomposition* n_parts = nullptr, std::string* why = nullptr) {
  TranslationQuotient tq = translation_quotient(p, sigma);
  std::string prov = std::string("translation apex, mode ") + mode_name(mode);

  switch (mode) {
    case TranslationMode::Intervals: {
      if (!m_parts || !n_parts) {
        if (why) *why = "interval mode needs interval decompositions of both modules";
        return std::nullopt;
      }
      PModule gamma = PModule::zero(tq.apex);
      auto add_copy = [&](const GenInterval& gi, const std::vector<int>& copy) -> bool {
        std::vector<int> members;
        for (int x : gi.members) members.push_back(copy[size_t(x)]);
        auto lifted = as_gen_interval(*tq.apex, members);
        if (!lifted) return false;
        gamma = direct_sum(gamma, interval_module(tq.apex, *lifted));
        return true;
      };
      for (auto& gi : *m_parts)
        if (!add_copy(gi, tq.left_copy)) {
          if (why) *why = "a left-copy interval is not convex in the apex";
          return std::nullopt;
        }
      for (auto& gi : *n_parts)
        if (!add_copy(gi, tq.right_copy)) {
          if (why) *why = "a right-copy interval is not convex in the apex";
          return std::nullopt;
        }
      return make_coupling(tq.apex, tq.left, tq.right, std::move(gamma), m, n, prov, why);
    }
    case TranslationMode::Kan: {
      // M and N must restrict equally to the fixed subposet
      for (int x = 0; x < p->size(); ++x) {
        if (sigma(x) != x) continue;
        if (m.dim(x) != n.dim(x)) {
          if (why) *why = "modules differ on the fixed points of the translation";
          return std::nullopt;
        }
        for (int y = 0; y < p->size(); ++y)
          if (sigma(y) == y && p->leq(x, y) && !mat_equal(m.map(x, y), n.map(x, y))) {
            if (why) *why = "modules differ on the fixed points of the translation";
            return std::nullopt;
          }
      }
      PosetPtr qprime = detail::restricted_apex(tq, *p);
      PModule gp = PModule::zero(qprime);
      for (int u = 0; u < qprime->size(); ++u) {
        // identify which base element and copy this apex element represents
        for (int x = 0; x < p->size(); ++x) {
          if (tq.left_copy[size_t(x)] == u) gp.dims[size_t(u)] = m.dim(x);
          else if (tq.right_copy[size_t(x)] == u) gp.dims[size_t(u)] = n.dim(x);
        }
      }
      for (size_t ai = 0; ai < qprime->covers.size(); ++ai) {
        auto [a, b] = qprime->covers[ai];
        // covers of Q' stay within one copy
        Mat mm;
        bool set = false;
        for (int x = 0; x < p->size() && !set; ++x)
          for (int y = 0; y < p->size() && !set; ++y) {
            if (tq.left_copy[size_t(x)] == a && tq.left_copy[size_t(y)] == b && p->leq(x, y)) {
              mm = m.map(x, y);
              set = true;
            } else if (tq.right_copy[size_t(x)] == a && tq.right_copy[size_t(y)] == b &&
                       p->leq(x, y)) {
              mm = n.map(x, y);
              set = true;
            }
          }
        if (!set) {
          if (why) *why = "restricted apex has an unexpected cover";
          return std::nullopt;
        }
        gp.arrow_maps[ai] = mm;
      }
      if (!validate(gp, why)) return std::nullopt;
      // left Kan extension along the identity-on-elements inclusion Q' -> Q
      MonotoneMap q_incl{qprime, tq.apex, {}};
      for (int u = 0; u < qprime->size(); ++u) q_incl.values.push_back(u);
      if (!q_incl.is_monotone()) {
        if (why) *why = "apex restriction is not an inclusion";
        return std::nullopt;
      }
      PModule gamma = left_kan(q_incl, gp);
      // the unit must be an isomorphism: restricting back returns gp
      PModule back = pullback(q_incl, gamma);
      if (!is_isomorphic(back, gp)) {
        if (why) *why = "left Kan extension does not restrict back to the glued module";
        return std::nullopt;
      }
      return make_coupling(tq.apex, tq.left, tq.right, std::move(gamma), m, n, prov, why);
    }
    case TranslationMode::PullTarget: {
      // requires M = N o sigma on the nose
      for (int x = 0; x < p->size(); ++x)
        if (m.dim(x) != n.dim(sigma(x))) {
          if (why) *why = "first module is not the pullback of the second along sigma";
          return std::nullopt;
        }
      for (size_t ai = 0; ai < p->covers.size(); ++ai) {
        auto [a, b] = p->covers[ai];
        if (!mat_equal(m.arrow_maps[ai], n.map(sigma(a), sigma(b)))) {
          if (why) *why = "first module is not the pullback of the second along sigma";
          return std::nullopt;
        }
      }
      PModule gamma = pullback(tq.right.f, n);  // h* N
      return make_coupling(tq.apex, tq.left, tq.right, std::move(gamma), m, n, prov, why);
    }
  }
  return std::nullopt;
}

/// Composite coupling over the poset pullback of the two middle legs. The
/// apex module is the pointwise pullback (equalizer) of the two restrictions
/// glued through the stored middle isomorphisms.
inline std::optional<GaloisCoupling> compose(const GaloisCoupling& c1, const GaloisCoupling& c2,
                                             std::string* why = nullptr) {
  if (!same_poset(*c1.left.f.dst, *c2.left.f.dst)) {
    if (why) *why = "couplings live over different base posets";
    return std::nullopt;
  }
  if (!(c1.n == c2.m)) {
    if (why) *why = "middle modules do not agree";
    return std::nullopt;
  }
  PosetPullback pb = pullback_poset(c1.right.f, c2.left.f);
  const Poset& r = *pb.apex;
  const PModule& g1 = c1.gamma;
  const PModule& g2 = c2.gamma;

  // phi: i1* Gamma1 -> g2* Gamma2 over the base, through the middle module
  const Poset& base = *c1.left.f.dst;
  std::vector<Mat> phi(size_t(base.size()));
  for (int x = 0; x < base.size(); ++x) {
    auto inv = solve(c2.wit_m[size_t(x)], mat_identity(c2.m.dim(x)));
    if (!inv) {
      if (why) *why = "middle witness is not invertible";
      return std::nullopt;
    }
    phi[size_t(x)] = mul(*inv, c1.wit_n[size_t(x)]);
  }

  // pointwise pullback of sigma1 against sigma2 through phi
  PModule psi = PModule::zero(pb.apex);
  std::vector<Mat> incl(size_t(r.size()));  // basis inside Gamma1(q1) + Gamma2(q2)
  auto delta = [&](int rr) { return c1.right.f(pb.pi1(rr)); };
  for (int rr = 0; rr < r.size(); ++rr) {
    int q1 = pb.pi1(rr), q2 = pb.pi2(rr);
    int x = delta(rr);
    // pairs (a, b) with phi_x(Gamma1(q1 -> i1 x) a) = Gamma2(q2 -> g2 x) b
    Mat lhs = mul(phi[size_t(x)], g1.map(q1, c1.right.g(x)));
    Mat rhs = g2.map(q2, c2.left.g(x));
    Mat diff = hcat(lhs, rhs);
    for (Eigen::Index i = 0; i < rhs.rows(); ++i)
      for (Eigen::Index j = 0; j < rhs.cols(); ++j) diff(i, lhs.cols() + j) = -rhs(i, j);
    incl[size_t(rr)] = reduce(diff).kernel_basis;
    psi.dims[size_t(rr)] = int(incl[size_t(rr)].cols());
  }
  for (size_t ai = 0; ai < r.covers.size(); ++ai) {
    auto [a, b] = r.covers[ai];
    int dg1a = g1.dim(pb.pi1(a));
    Mat step = mat_zero(g1.dim(pb.pi1(b)) + g2.dim(pb.pi2(b)), dg1a + g2.dim(pb.pi2(a)));
    Mat m1 = g1.map(pb.pi1(a), pb.pi1(b));
    Mat m2 = g2.map(pb.pi2(a), pb.pi2(b));
    step.block(0, 0, m1.rows(), m1.cols()) = m1;
    step.block(m1.rows(), m1.cols(), m2.rows(), m2.cols()) = m2;
    auto t = solve(incl[size_t(b)], mul(step, incl[size_t(a)]));
    if (!t) {
      if (why) *why = "pullback module is not closed under structure maps";
      return std::nullopt;
    }
    psi.arrow_maps[ai] = *t;
  }

  GaloisPair big_left{compose(c1.left.f, pb.pi1), compose(pb.p1.g, c1.left.g), true};
  {
    auto check = is_galois_pair(big_left.f, big_left.g);
    if (!check.first || !check.second) {
      if (why) *why = "composite left leg fails the insertion law";
      return std::nullopt;
    }
  }
  GaloisPair big_right{compose(c2.right.f, pb.pi2), compose(pb.p2.g, c2.right.g), true};
  {
    auto check = is_galois_pair(big_right.f, big_right.g);
    if (!check.first || !check.second) {
      if (why) *why = "composite right leg fails the insertion law";
      return std::nullopt;
    }
  }
  return make_coupling(pb.apex, big_left, big_right, std::move(psi), c1.m, c2.n,
                       "composite of (" + c1.provenance + ") and (" + c2.provenance + ")", why);
}

/// Upper bound for the transport distance: the least validated coupling cost
/// over the supplied translations and modes. Never claims tightness.
struct GtUpper {
  ExtDist bound = ExtDist::infinity();
  std::optional<GaloisCoupling> best;
  std::vector<GaloisCoupling> validated;
  std::vector<std::string> attempts;  // one line per candidate, for reports
};

inline GtUpper gt_upper(const PosetPtr& p, const PModule& m, const PModule& n,
                        const std::vector<MonotoneMap>& sigmas,
                        const std::vector<TranslationMode>& modes,
                        const IntervalDecomposition* m_parts = nullptr,
                        const IntervalDecomposition* n_parts = nullptr) {
  GtUpper out;
  for (size_t si = 0; si < sigmas.size(); ++si)
    for (TranslationMode mode : modes) {
      std::string why;
      auto c = coupling_from_translation(p, sigmas[si], m, n, mode, m_parts, n_parts, &why);
      std::string label = "sigma#" + std::to_string(si) + " mode " + mode_name(mode);
      if (!c) {
        out.attempts.push_back(label + ": rejected (" + why + ")");
        continue;
      }
      ExtDist cost = coupling_cost(*c);
      out.attempts.push_back(label + ": cost " + cost.str());
      out.validated.push_back(*c);
      if (cost < out.bound) {
        out.bound = cost;
        out.best = c;
      }
    }
  return out;
}

/// Exact zero test: the transport distance vanishes exactly on isomorphic
/// modules.
inline bool gt_zero(const PModule& m, const PModule& n) { return is_isomorphic(m, n); }

/// Pulls a resolution of the apex module back along both insertions and
/// matches summand-for-summand; the witness cost is bounded by the coupling
/// cost.
inline std::optional<MatchingWitness> pullback_matching(const GaloisCoupling& c,
                                                        const ProjComplex& r,
                                                        std::string* why = nullptr) {
  if (!same_poset(*r.poset, *c.apex)) {
    if (why) *why = "resolution does not live over the apex";
    return std::nullopt;
  }
  {
    Realization rr = realize(r);
    if (!rr.exact_positive || !is_isomorphic(rr.module, c.gamma)) {
      if (why) *why = "complex does not resolve the apex module";
      return std::nullopt;
    }
  }
  // both pullbacks keep the scalar matrices and rename points through the legs
  ProjComplex e = r;
  e.poset = c.left.f.dst;
  Assignment a;
  for (int i = 0; i < r.degrees(); ++i) {
    a.emplace_back();
    for (size_t k = 0; k < r.points[size_t(i)].size(); ++k) {
      e.points[size_t(i)][k] = c.left.f(r.points[size_t(i)][k]);
      a.back().push_back(c.right.f(r.points[size_t(i)][k]));
    }
  }
  // canonicalize e while dragging the assignment along
  for (size_t i = 0; i < e.points.size(); ++i) {
    std::vector<int> perm(e.points[i].size());
    for (size_t k = 0; k < perm.size(); ++k) perm[k] = int(k);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int x, int y) { return e.points[i][size_t(x)] < e.points[i][size_t(y)]; });
    std::vector<int> np(perm.size()), na(perm.size());
    for (size_t k = 0; k < perm.size(); ++k) {
      np[k] = e.points[i][size_t(perm[k])];
      na[k] = a[i][size_t(perm[k])];
    }
    if (i < e.diffs.size()) {
      Mat nd = mat_zero(e.diffs[i].rows(), e.diffs[i].cols());
      for (size_t k = 0; k < perm.size(); ++k) nd.row(int(k)) = e.diffs[i].row(perm[k]);
      e.diffs[i] = nd;
    }
    if (i > 0) {
      Mat nd = mat_zero(e.diffs[i - 1].rows(), e.diffs[i - 1].cols());
      for (size_t k = 0; k < perm.size(); ++k) nd.col(int(k)) = e.diffs[i - 1].col(perm[k]);
      e.diffs[i - 1] = nd;
    }
    e.points[i] = np;
    a[i] = na;
  }
  auto w = verify_witness(e, a, c.n, why);
  if (!w) return std::nullopt;
  return w;
}

}  // namespace pmod
