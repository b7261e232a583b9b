// bottleneck.hpp -- pre-matchings and differential-compatible matchings
// between padded resolutions, their costs, and certified bracketing of the
// bottleneck distances.

#pragma once

#include "pmod/resolution.hpp"

namespace pmod {

/// Degreewise summand-to-point assignment, aligned with the summand order of
/// the source complex.
using Assignment = std::vector<std::vector<int>>;

/// A certified upper bound for the bottleneck distance: a padded source
/// complex, a target assignment, and the transported complex it produces.
struct MatchingWitness {
  ProjComplex complex_e;
  Assignment assignment;
  ProjComplex transported;
  ExtDist cost;
  std::vector<ConeSpec> padding_e;  // cones added on the source side
  std::vector<ConeSpec> padding_f;  // cones implied on the target side
};

enum class LowerReason { IsoTest, AlphaHat, ThresholdExhaustion };

struct DistBracket {
  ExtDist lower;
  ExtDist upper;  // infinity when the search exhausted its slack
  LowerReason lower_reason = LowerReason::IsoTest;
  std::optional<MatchingWitness> witness;
  bool search_complete = true;  // false when the node budget cut the search short
  bool exact() const { return !upper.inf && lower == upper && search_complete; }
};

/// Work cap for the assignment search. An exceeded budget never invalidates
/// a returned witness; it only downgrades the bracket to an honest
/// incomplete one.
struct SearchBudget {
  long node_cap = 2'000'000;
  long validation_cap = 20'000;
  long nodes = 0;
  long validations = 0;
  bool exceeded = false;
  bool spend_node() {
    if (++nodes > node_cap) exceeded = true;
    return !exceeded;
  }
  bool spend_validation() {
    if (++validations > validation_cap) exceeded = true;
    return !exceeded;
  }
};

/// Complex with the same matrices as E and summand points renamed through
/// the assignment. Fails with a message when a nonzero entry would violate
/// the order-support rule after renaming.
inline std::optional<ProjComplex> transported_complex(const ProjComplex& e, const Assignment& a,
                                                      std::string* why = nullptr) {
  if (int(a.size()) != e.degrees()) {
    if (why) *why = "assignment covers the wrong number of degrees";
    return std::nullopt;
  }
  ProjComplex g = e;
  for (int i = 0; i < e.degrees(); ++i) {
    if (a[size_t(i)].size() != e.points[size_t(i)].size()) {
      if (why) *why = "assignment is not total in degree " + std::to_string(i);
      return std::nullopt;
    }
    g.points[size_t(i)] = a[size_t(i)];
  }
  for (int i = 0; i + 1 < e.degrees(); ++i)
    for (Eigen::Index r = 0; r < e.diffs[size_t(i)].rows(); ++r)
      for (Eigen::Index c = 0; c < e.diffs[size_t(i)].cols(); ++c)
        if (!e.diffs[size_t(i)](r, c).is_zero() &&
            !e.poset->leq(g.points[size_t(i)][size_t(r)], g.points[size_t(i) + 1][size_t(c)])) {
          if (why)
            *why = "entry (" + e.poset->names[size_t(e.points[size_t(i)][size_t(r)])] + " -> " +
                   e.poset->names[size_t(e.points[size_t(i) + 1][size_t(c)])] +
                   ") transported against the order in degree " + std::to_string(i);
          return std::nullopt;
        }
  g.canonicalize();
  return g;
}

inline ExtDist assignment_cost(const ProjComplex& e, const Assignment& a) {
  ExtDist c = ExtDist::zero();
  for (int i = 0; i < e.degrees(); ++i)
    for (size_t k = 0; k < e.points[size_t(i)].size(); ++k)
      c = max(c, e.poset->dist(e.points[size_t(i)][k], a[size_t(i)][k]));
  return c;
}

/// Validates an assignment as a matching witness against the target module:
/// the transported complex must be exact in positive degrees and resolve N.
inline std::optional<MatchingWitness> verify_witness(const ProjComplex& e, const Assignment& a,
                                                     const PModule& n, std::string* why = nullptr) {
  if (!e.well_formed(why)) return std::nullopt;
  {
    Realization re = realize(e);
    if (!re.exact_positive) {
      if (why) *why = "source complex is not a resolution";
      return std::nullopt;
    }
  }
  auto g = transported_complex(e, a, why);
  if (!g) return std::nullopt;
  Realization rg = realize(*g);
  if (!rg.exact_positive) {
    if (why) *why = "transported complex is not exact in positive degrees";
    return std::nullopt;
  }
  if (!is_isomorphic(rg.module, n)) {
    if (why) *why = "transported complex does not resolve the target module";
    return std::nullopt;
  }
  return MatchingWitness{e, a, *g, assignment_cost(e, a), {}, {}};
}

namespace detail {

// maximum bipartite matching (Kuhn), adjacency as an explicit list
inline int max_bipartite(const std::vector<std::vector<int>>& adj, int right_size) {
  std::vector<int> match_right(size_t(right_size), -1);
  int total = 0;
  std::vector<char> used;
  std::function<bool(int)> try_left = [&](int u) -> bool {
    for (int v : adj[size_t(u)]) {
      if (used[size_t(v)]) continue;
      used[size_t(v)] = 1;
      if (match_right[size_t(v)] < 0 || try_left(match_right[size_t(v)])) {
        match_right[size_t(v)] = u;
        return true;
      }
    }
    return false;
  };
  for (size_t u = 0; u < adj.size(); ++u) {
    used.assign(size_t(right_size), 0);
    if (try_left(int(u))) ++total;
  }
  return total;
}

// optimal bottleneck value for matching two equal-size point multisets, or
// absent when no perfect matching exists even at infinite threshold
inline std::optional<ExtDist> bottleneck_assignment(const Poset& p, const std::vector<int>& s,
                                                    const std::vector<int>& t) {
  if (s.size() != t.size()) return std::nullopt;
  if (s.empty()) return ExtDist::zero();
  std::vector<ExtDist> values;
  for (int a : s)
    for (int b : t)
      if (!p.dist(a, b).inf) values.push_back(p.dist(a, b));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  auto feasible = [&](const ExtDist& thr) {
    std::vector<std::vector<int>> adj(s.size());
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = 0; j < t.size(); ++j)
        if (!p.dist(s[i], t[j]).inf && p.dist(s[i], t[j]) <= thr) adj[i].push_back(int(j));
    return max_bipartite(adj, int(t.size())) == int(s.size());
  };
  int lo = 0, hi = int(values.size()) - 1;
  if (values.empty() || !feasible(values[size_t(hi)])) return std::nullopt;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (feasible(values[size_t(mid)]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return values[size_t(lo)];
}

// Degree profile A with c_i = A_i + A_{i-1}; absent when impossible.
inline std::optional<std::vector<int>> cone_profile(const std::vector<int>& c) {
  int d = int(c.size());
  std::vector<int> a(size_t(d), 0);  // a[i] = cones at degree i, for i = 0..d-1
  int carry = 0;                     // A_i while descending
  for (int i = d - 1; i >= 0; --i) {
    int ai = c[size_t(i)] - carry;  // from c_i = A_{i-1} + A_i with A_i = carry
    if (i == 0) {
      if (ai != 0) return std::nullopt;
      break;
    }
    if (ai < 0) return std::nullopt;
    a[size_t(i - 1)] = ai;
    carry = ai;
  }
  if (!a.empty()) a.pop_back();  // A_{d-1} is always zero here
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline std::vector<int> padded_profile(const ProjComplex& c, const std::vector<ConeSpec>& cones,
                                       int degrees) {
  std::vector<int> v(size_t(degrees), 0);
  for (int i = 0; i < c.degrees(); ++i) v[size_t(i)] = c.summands(i);
  for (auto& k : cones) {
    v[size_t(k.degree)] += 1;
    v[size_t(k.degree) + 1] += 1;
  }
  return v;
}

}  // namespace detail

/// Exact pre-matching distance within the slack budget: minimum over cone
/// configurations on both sides of the per-degree bottleneck assignment
/// value. Differentials are ignored; only summand multisets matter.
inline DistBracket prematch_distance(const ProjComplex& pm, const ProjComplex& pn, int slack) {
  const Poset& p = *pm.poset;
  DistBracket out;
  bool class_equal = alternating_class(pm) == alternating_class(pn);
  if (class_equal) {
    out.lower = ExtDist::zero();
    out.lower_reason = LowerReason::AlphaHat;
  } else {
    auto mp = p.min_positive_distance();
    out.lower = mp ? *mp : ExtDist::infinity();
    out.lower_reason = LowerReason::AlphaHat;
  }
  out.upper = ExtDist::infinity();

  int max_deg = std::max(pm.degrees(), pn.degrees()) + slack + 1;
  std::vector<std::pair<int, int>> cone_slots;  // (degree, point)
  for (int d = 0; d + 1 < max_deg; ++d)
    for (int q = 0; q < p.size(); ++q) cone_slots.emplace_back(d, q);

  std::optional<ExtDist> best;
  // enumerate source-side cone multisets of size <= slack
  std::vector<ConeSpec> e_cones;
  std::function<void(size_t, int)> enum_e = [&](size_t start, int remaining) {
    // with the source padding fixed, the target-side cone degree profile is
    // forced; enumerate its points and take per-degree bottleneck values
    std::vector<int> ep = detail::padded_profile(pm, e_cones, max_deg);
    std::vector<int> c(size_t(max_deg), 0);
    bool ok = true;
    for (int i = 0; i < max_deg; ++i) {
      c[size_t(i)] = ep[size_t(i)] - (i < pn.degrees() ? pn.summands(i) : 0);
      if (c[size_t(i)] < 0) ok = false;
    }
    if (ok) {
      auto profile = detail::cone_profile(c);
      int total = 0;
      if (profile)
        for (int a : *profile) total += a;
      if (profile && total <= slack) {
        // DFS over target-side cone points
        std::vector<ConeSpec> f_cones;
        std::function<void(size_t, int)> enum_f = [&](size_t deg, int placed) {
          if (deg == profile->size()) {
            // evaluate: per-degree bottleneck between padded multisets
            ExtDist cost = ExtDist::zero();
            bool feasible = true;
            std::vector<int> fp = detail::padded_profile(pn, f_cones, max_deg);
            for (int i = 0; i < max_deg && feasible; ++i) {
              std::vector<int> s, t;
              if (i < pm.degrees())
                s.insert(s.end(), pm.points[size_t(i)].begin(), pm.points[size_t(i)].end());
              for (auto& k : e_cones)
                if (k.degree == i || k.degree + 1 == i) s.push_back(k.point);
              if (i < pn.degrees())
                t.insert(t.end(), pn.points[size_t(i)].begin(), pn.points[size_t(i)].end());
              for (auto& k : f_cones)
                if (k.degree == i || k.degree + 1 == i) t.push_back(k.point);
              auto v = detail::bottleneck_assignment(p, s, t);
              if (!v)
                feasible = false;
              else
                cost = max(cost, *v);
            }
            if (feasible && (!best || cost < *best)) best = cost;
            return;
          }
          int want = (*profile)[deg];
          if (placed == want) {
            enum_f(deg + 1, 0);
            return;
          }
          int from = placed > 0 && f_cones.back().degree == int(deg) ? f_cones.back().point : 0;
          for (int q = from; q < p.size(); ++q) {
            f_cones.push_back(ConeSpec{q, int(deg)});
            enum_f(deg, placed + 1);
            f_cones.pop_back();
          }
        };
        enum_f(0, 0);
      }
    }
    if (remaining == 0) return;
    for (size_t k = start; k < cone_slots.size(); ++k) {
      e_cones.push_back(ConeSpec{cone_slots[k].second, cone_slots[k].first});
      enum_e(k, remaining - 1);
      e_cones.pop_back();
    }
  };
  enum_e(0, slack);

  if (best) {
    out.upper = *best;
    if (out.lower.inf || out.upper < out.lower) out.lower = out.upper;
  }
  return out;
}

namespace detail {

struct WitnessKey {
  std::vector<ConeSpec> padding_e;
  ExtDist sum;
  std::vector<ConeSpec> padding_f;
  std::vector<int> flat_assignment;

  friend bool operator<(const WitnessKey& a, const WitnessKey& b) {
    auto cone_tuple = [](const std::vector<ConeSpec>& v) {
      std::vector<std::pair<int, int>> t;
      for (auto& c : v) t.emplace_back(c.degree, c.point);
      return t;
    };
    auto ta = cone_tuple(a.padding_e), tb = cone_tuple(b.padding_e);
    if (ta != tb) return ta < tb;
    if (a.sum != b.sum) return a.sum < b.sum;
    auto fa = cone_tuple(a.padding_f), fb = cone_tuple(b.padding_f);
    if (fa != fb) return fa < fb;
    return a.flat_assignment < b.flat_assignment;
  }
};

// exhaustive assignment search for one padded source complex at one
// threshold; returns the best valid witness by the deterministic key
struct AssignmentSearch {
  const ProjComplex& e;
  const ProjComplex& pn;
  const PModule& n;
  ExtDist threshold;
  const Poset& p;
  SearchBudget* budget;

  Assignment targets;                 // per degree, -1 = unassigned
  std::vector<std::vector<int>> carried;  // cone points flowing into each degree
  std::optional<MatchingWitness> best;
  std::optional<WitnessKey> best_key;
  std::vector<ConeSpec> padding_e;

  AssignmentSearch(const ProjComplex& e_, const ProjComplex& pn_, const PModule& n_, ExtDist t,
                   std::vector<ConeSpec> pe, SearchBudget* budget_)
      : e(e_), pn(pn_), n(n_), threshold(t), p(*e_.poset), budget(budget_),
        padding_e(std::move(pe)) {
    targets.resize(size_t(e.degrees()));
    for (int i = 0; i < e.degrees(); ++i) targets[size_t(i)].assign(e.points[size_t(i)].size(), -1);
    carried.resize(size_t(e.degrees()) + 1);
  }

  bool zero_pattern_ok(int degree, size_t slot, int target) const {
    if (degree + 1 < e.degrees()) {
      const Mat& d = e.diffs[size_t(degree)];
      for (Eigen::Index c = 0; c < d.cols(); ++c)
        if (!d(Eigen::Index(slot), c).is_zero() &&
            !p.leq(target, targets[size_t(degree) + 1][size_t(c)]))
          return false;
    }
    return true;
  }

  // remaining summands of this degree must still be able to cover the
  // remaining required points at the current threshold
  bool remaining_feasible(int degree, size_t next_slot, const std::vector<int>& required) const {
    std::vector<std::vector<int>> adj;
    for (size_t s = next_slot; s < e.points[size_t(degree)].size(); ++s) {
      std::vector<int> row;
      for (size_t j = 0; j < required.size(); ++j)
        if (!p.dist(e.points[size_t(degree)][s], required[j]).inf &&
            p.dist(e.points[size_t(degree)][s], required[j]) <= threshold)
          row.push_back(int(j));
      adj.push_back(std::move(row));
    }
    if (required.size() > adj.size()) return false;
    return max_bipartite(adj, int(required.size())) == int(required.size());
  }

  void finish() {
    if (!budget->spend_validation()) return;
    auto g = transported_complex(e, targets);
    if (!g) return;
    Realization rg = realize(*g);
    if (!rg.exact_positive || rg.module.dims != n.dims || !is_isomorphic(rg.module, n)) return;

    // reconstruct the implied target-side padding from the leftovers
    std::vector<ConeSpec> padding_f;
    for (int i = 1; i < e.degrees(); ++i)
      for (int q : carried[size_t(i)]) padding_f.push_back(ConeSpec{q, i - 1});
    std::sort(padding_f.begin(), padding_f.end());

    ExtDist sum = ExtDist::zero();
    std::vector<int> flat;
    for (int i = 0; i < e.degrees(); ++i)
      for (size_t k = 0; k < e.points[size_t(i)].size(); ++k) {
        sum = sum + p.dist(e.points[size_t(i)][k], targets[size_t(i)][k]);
        flat.push_back(targets[size_t(i)][k]);
      }
    WitnessKey key{padding_e, sum, padding_f, flat};
    if (!best_key || key < *best_key) {
      best_key = key;
      best = MatchingWitness{e, targets, *g, assignment_cost(e, targets), padding_e, padding_f};
    }
  }

  // assign slots of `degree` to the required multiset plus free cone slots
  void assign_degree(int degree, size_t slot, std::vector<int> required, int free_slots,
                     std::vector<int> free_points) {
    if (!budget->spend_node()) return;
    const auto& pts = e.points[size_t(degree)];
    if (slot == pts.size()) {
      if (!required.empty()) return;
      carried[size_t(degree)] = free_points;
      if (degree == 0) {
        // free picks at degree zero would be cones below degree zero
        if (free_points.empty()) finish();
        return;
      }
      // required points for the next degree down: its own summands of pn
      // plus the cone points just placed
      std::vector<int> next_required;
      if (degree - 1 < pn.degrees())
        next_required = pn.points[size_t(degree) - 1];
      next_required.insert(next_required.end(), free_points.begin(), free_points.end());
      int next_free = e.summands(degree - 1) - int(next_required.size());
      if (next_free < 0) return;
      assign_degree(degree - 1, 0, next_required, next_free, {});
      return;
    }
    int src = pts[slot];
    // candidate targets ordered by (distance, point index)
    std::vector<int> cands;
    for (int q = 0; q < p.size(); ++q)
      if (!p.dist(src, q).inf && p.dist(src, q) <= threshold) cands.push_back(q);
    std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) {
      if (p.dist(src, a) != p.dist(src, b)) return p.dist(src, a) < p.dist(src, b);
      return a < b;
    });
    for (int q : cands) {
      if (!zero_pattern_ok(degree, slot, q)) continue;
      targets[size_t(degree)][slot] = q;
      // consume a required copy of q when available
      auto it = std::find(required.begin(), required.end(), q);
      if (it != required.end()) {
        std::vector<int> rest = required;
        rest.erase(rest.begin() + (it - required.begin()));
        if (remaining_feasible(degree, slot + 1, rest))
          assign_degree(degree, slot + 1, rest, free_slots, free_points);
      }
      // or spend a free cone slot on it
      if (free_slots > 0 && remaining_feasible(degree, slot + 1, required)) {
        std::vector<int> fp = free_points;
        fp.push_back(q);
        assign_degree(degree, slot + 1, required, free_slots - 1, fp);
      }
      targets[size_t(degree)][slot] = -1;
    }
  }

  void run() {
    if (pn.degrees() > e.degrees()) return;
    if (e.degrees() == 0) {
      if (pn.degrees() == 0 && n.is_zero()) {
        best = MatchingWitness{e, {}, e, ExtDist::zero(), padding_e, {}};
        best_key = WitnessKey{padding_e, ExtDist::zero(), {}, {}};
      }
      return;
    }
    int top = e.degrees() - 1;
    std::vector<int> required;
    if (top < pn.degrees()) required = pn.points[size_t(top)];
    int free_slots = e.summands(top) - int(required.size());
    if (free_slots < 0) return;
    assign_degree(top, 0, required, free_slots, {});
  }
};

}  // namespace detail

/// Certified bracket for the bottleneck distance between minimal
/// resolutions. The search pads the source complex with up to `slack` cones,
/// scans thresholds over the realized distance set in increasing order and
/// enumerates differential-compatible assignments; validity of a candidate
/// is decided through its transported complex. `seeds` contribute additional
/// upper bounds (already verified witnesses).
inline DistBracket bottleneck_distance(const ProjComplex& pm, const ProjComplex& pn,
                                       const PModule& n, int slack,
                                       const std::vector<MatchingWitness>& seeds = {},
                                       SearchBudget budget = SearchBudget{}) {
  if (!same_poset(*pm.poset, *pn.poset) || !same_poset(*pm.poset, *n.poset))
    throw std::invalid_argument("bottleneck_distance: posets mismatch");
  const Poset& p = *pm.poset;
  DistBracket out;
  if (pm.degrees() == 0 && pn.degrees() == 0 && n.is_zero()) {
    out.lower = out.upper = ExtDist::zero();
    out.witness = MatchingWitness{pm, {}, pm, ExtDist::zero(), {}, {}};
    return out;
  }

  PModule m = realize(pm).module;
  bool iso = is_isomorphic(m, n);
  if (iso) {
    out.lower = ExtDist::zero();
    out.lower_reason = LowerReason::IsoTest;
  } else {
    auto mp = p.min_positive_distance();
    out.lower = mp ? *mp : ExtDist::infinity();
    out.lower_reason = LowerReason::IsoTest;
  }
  out.upper = ExtDist::infinity();

  std::vector<ExtDist> thresholds = p.distance_values();
  ExtDist seed_cap = ExtDist::infinity();
  for (auto& s : seeds) seed_cap = min(seed_cap, s.cost);

  int max_deg = std::max(pm.degrees(), pn.degrees()) + 1;
  std::vector<std::pair<int, int>> cone_slots;
  for (int d = 0; d < max_deg; ++d)
    for (int q = 0; q < p.size(); ++q) cone_slots.emplace_back(d, q);

  for (const ExtDist& t : thresholds) {
    if (budget.exceeded) break;
    if (t < out.lower && !(iso && t.is_zero())) continue;
    if (!(t < seed_cap) && !(t == seed_cap)) break;  // seeds already beat anything above
    std::optional<MatchingWitness> found;
    // source paddings in ascending cone count, lexicographic within a count;
    // the first padding that admits any witness is key-minimal
    std::vector<ConeSpec> e_cones;
    bool done = false;
    for (int count = 0; count <= slack && !done && !budget.exceeded; ++count) {
      std::function<bool(size_t, int, int)> enum_exact = [&](size_t start, int placed,
                                                             int want) -> bool {
        if (budget.exceeded) return false;
        if (placed == want) {
          ProjComplex padded = pad(pm, e_cones);
          std::vector<ConeSpec> pe = e_cones;
          std::sort(pe.begin(), pe.end());
          detail::AssignmentSearch search(padded, pn, n, t, pe, &budget);
          search.run();
          if (search.best) {
            found = search.best;
            return true;
          }
          return false;
        }
        for (size_t k = start; k < cone_slots.size(); ++k) {
          e_cones.push_back(ConeSpec{cone_slots[k].second, cone_slots[k].first});
          bool ok = enum_exact(k, placed + 1, want);
          e_cones.pop_back();
          if (ok) return true;
        }
        return false;
      };
      done = enum_exact(0, 0, count);
    }
    if (found) {
      out.upper = found->cost;
      out.witness = found;
      break;
    }
  }
  out.search_complete = !budget.exceeded;

  for (auto& s : seeds)
    if (s.cost < out.upper) {
      out.upper = s.cost;
      out.witness = s;
    }
  if (!out.upper.inf && out.upper < out.lower) out.lower = out.upper;
  if (out.upper.inf && out.witness == std::nullopt && !iso)
    out.lower_reason = LowerReason::ThresholdExhaustion;
  return out;
}

}  // namespace pmod
