// poset.hpp -- finite posets with extended metrics, monotone maps, Galois
// connections and insertions, augmentation, interval posets, translation
// quotients, poset pullbacks and generalized intervals.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pmod/extdist.hpp"

namespace pmod {

struct Poset;
using PosetPtr = std::shared_ptr<const Poset>;

/// A finite poset: element names, a dense order table, its Hasse arrows and
/// an extended metric. Immutable after construction.
struct Poset {
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq_table;       // n*n, leq_table[a*n+b] = (a <= b)
  std::vector<std::pair<int, int>> covers;   // Hasse arrows (a,b), a covered by b
  std::vector<ExtDist> dist_table;           // n*n

  int size() const { return int(names.size()); }
  bool leq(int a, int b) const { return leq_table[size_t(a) * names.size() + b] != 0; }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
  const ExtDist& dist(int a, int b) const { return dist_table[size_t(a) * names.size() + b]; }

  int index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (names[i] == name) return i;
    throw std::out_of_range("unknown poset element: " + name);
  }
  std::optional<int> find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (names[i] == name) return i;
    return std::nullopt;
  }

  std::vector<int> up_set(int x) const {
    std::vector<int> r;
    for (int y = 0; y < size(); ++y)
      if (leq(x, y)) r.push_back(y);
    return r;
  }

  /// Smallest strictly positive finite distance between elements; absent when
  /// the metric is zero or purely infinite off-diagonal.
  std::optional<ExtDist> min_positive_distance() const {
    std::optional<ExtDist> best;
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b) {
        const ExtDist& d = dist(a, b);
        if (d.inf || d.is_zero()) continue;
        if (!best || d < *best) best = d;
      }
    return best;
  }

  /// All distinct finite distance values, ascending.
  std::vector<ExtDist> distance_values() const {
    std::vector<ExtDist> vals;
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b)
        if (!dist(a, b).inf) vals.push_back(dist(a, b));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
  }
};

inline bool same_poset(const Poset& a, const Poset& b) {
  if (&a == &b) return true;
  return a.names == b.names && a.leq_table == b.leq_table && a.dist_table == b.dist_table;
}

/// How the metric of a poset under construction is produced.
struct MetricSpec {
  enum Kind { HassePath, LinfProduct, Explicit } kind = HassePath;
  // Explicit entries, symmetric closure taken; missing off-diagonal = error.
  std::vector<std::tuple<std::string, std::string, ExtDist>> entries;

  static MetricSpec hasse_path() { return {}; }
  static MetricSpec linf_product() {
    MetricSpec m;
    m.kind = LinfProduct;
    return m;
  }
  static MetricSpec explicit_table(std::vector<std::tuple<std::string, std::string, ExtDist>> e) {
    MetricSpec m;
    m.kind = Explicit;
    m.entries = std::move(e);
    return m;
  }
};

namespace detail {

inline void check_metric_axioms(const Poset& p) {
  int n = p.size();
  for (int a = 0; a < n; ++a) {
    if (!p.dist(a, a).is_zero()) throw std::invalid_argument("metric nonzero on the diagonal");
    for (int b = 0; b < n; ++b) {
      if (p.dist(a, b) != p.dist(b, a)) throw std::invalid_argument("metric not symmetric");
      for (int c = 0; c < n; ++c)
        if (p.dist(a, c) > p.dist(a, b) + p.dist(b, c))
          throw std::invalid_argument("metric violates the triangle inequality");
    }
  }
}

inline std::vector<std::pair<int, int>> transitive_reduction(const std::vector<std::uint8_t>& leq, int n) {
  std::vector<std::pair<int, int>> covers;
  auto le = [&](int a, int b) { return leq[size_t(a) * n + b] != 0; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !le(a, b)) continue;
      bool direct = true;
      for (int c = 0; c < n && direct; ++c)
        if (c != a && c != b && le(a, c) && le(c, b)) direct = false;
      if (direct) covers.emplace_back(a, b);
    }
  return covers;
}

inline std::vector<std::int64_t> parse_coordinates(const std::string& name) {
  std::vector<std::int64_t> coords;
  for (char ch : name) {
    if (ch < '0' || ch > '9')
      throw std::invalid_argument("linf_product metric needs digit-string element names, got: " + name);
    coords.push_back(ch - '0');
  }
  return coords;
}

}  // namespace detail

/// Builds a poset from cover relations; leq is the reflexive-transitive
/// closure and the stored Hasse arrows are the transitive reduction.
inline PosetPtr from_covers(std::vector<std::string> names,
                            const std::vector<std::pair<std::string, std::string>>& cover_pairs,
                            const MetricSpec& metric = MetricSpec::hasse_path()) {
  auto p = std::make_shared<Poset>();
  p->names = std::move(names);
  int n = p->size();
  {
    std::set<std::string> seen(p->names.begin(), p->names.end());
    if (int(seen.size()) != n) throw std::invalid_argument("duplicate element name");
  }
  p->leq_table.assign(size_t(n) * n, 0);
  auto set_le = [&](int a, int b) { p->leq_table[size_t(a) * n + b] = 1; };
  for (int i = 0; i < n; ++i) set_le(i, i);
  for (auto& [a, b] : cover_pairs) set_le(p->index_of(a), p->index_of(b));
  // Warshall closure
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (p->leq(a, k))
        for (int b = 0; b < n; ++b)
          if (p->leq(k, b)) p->leq_table[size_t(a) * n + b] = 1;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && p->leq(a, b) && p->leq(b, a))
        throw std::invalid_argument("cover relation has a cycle through " + p->names[a]);

  p->covers = detail::transitive_reduction(p->leq_table, n);

  p->dist_table.assign(size_t(n) * n, ExtDist::infinity());
  switch (metric.kind) {
    case MetricSpec::HassePath: {
      // shortest path in the undirected Hasse graph, edge length 1
      for (int a = 0; a < n; ++a) p->dist_table[size_t(a) * n + a] = ExtDist::zero();
      for (auto& [a, b] : p->covers) {
        p->dist_table[size_t(a) * n + b] = ExtDist(1);
        p->dist_table[size_t(b) * n + a] = ExtDist(1);
      }
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            ExtDist via = p->dist(a, k) + p->dist(k, b);
            if (via < p->dist(a, b)) p->dist_table[size_t(a) * n + b] = via;
          }
      break;
    }
    case MetricSpec::LinfProduct: {
      std::vector<std::vector<std::int64_t>> coords;
      coords.reserve(n);
      for (auto& nm : p->names) coords.push_back(detail::parse_coordinates(nm));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (coords[a].size() != coords[b].size())
            throw std::invalid_argument("linf_product: mixed coordinate lengths");
          std::int64_t m = 0;
          for (size_t i = 0; i < coords[a].size(); ++i)
            m = std::max(m, std::abs(coords[a][i] - coords[b][i]));
          p->dist_table[size_t(a) * n + b] = ExtDist(m);
        }
      break;
    }
    case MetricSpec::Explicit: {
      for (int a = 0; a < n; ++a) p->dist_table[size_t(a) * n + a] = ExtDist::zero();
      for (auto& [a, b, d] : metric.entries) {
        int ia = p->index_of(a), ib = p->index_of(b);
        p->dist_table[size_t(ia) * n + ib] = d;
        p->dist_table[size_t(ib) * n + ia] = d;
      }
      break;
    }
  }
  detail::check_metric_axioms(*p);
  return p;
}

/// A monotone map between posets. Posets are held shared so derived maps can
/// outlive their construction site.
struct MonotoneMap {
  PosetPtr src;
  PosetPtr dst;
  std::vector<int> values;  // per src element, a dst element index

  int operator()(int x) const { return values[size_t(x)]; }

  bool is_monotone() const {
    for (int a = 0; a < src->size(); ++a)
      for (int b = 0; b < src->size(); ++b)
        if (src->leq(a, b) && !dst->leq(values[a], values[b])) return false;
    return true;
  }

  static MonotoneMap identity(PosetPtr p) {
    MonotoneMap m{p, p, {}};
    m.values.resize(size_t(p->size()));
    for (int i = 0; i < p->size(); ++i) m.values[size_t(i)] = i;
    return m;
  }

  friend MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
    // g after f
    if (!same_poset(*f.dst, *g.src)) throw std::invalid_argument("compose: poset mismatch");
    MonotoneMap m{f.src, g.dst, {}};
    m.values.reserve(f.values.size());
    for (int v : f.values) m.values.push_back(g.values[size_t(v)]);
    return m;
  }

  friend bool operator==(const MonotoneMap& a, const MonotoneMap& b) {
    return same_poset(*a.src, *b.src) && same_poset(*a.dst, *b.dst) && a.values == b.values;
  }
};

/// An adjoint pair of monotone maps f : Q -> P : g with f left adjoint.
struct GaloisPair {
  MonotoneMap f;  // Q -> P
  MonotoneMap g;  // P -> Q
  bool insertion = false;
};

/// Checks the adjunction biconditional f(u) <= x  iff  u <= g(x) at every
/// pair, and whether additionally f o g = id.
inline std::pair<bool, bool> is_galois_pair(const MonotoneMap& f, const MonotoneMap& g) {
  if (!same_poset(*f.src, *g.dst) || !same_poset(*f.dst, *g.src))
    throw std::invalid_argument("is_galois_pair: posets mismatch");
  if (!f.is_monotone() || !g.is_monotone()) return {false, false};
  const Poset& Q = *f.src;
  const Poset& P = *f.dst;
  for (int u = 0; u < Q.size(); ++u)
    for (int x = 0; x < P.size(); ++x)
      if (P.leq(f(u), x) != Q.leq(u, g(x))) return {false, false};
  bool ins = true;
  for (int x = 0; x < P.size(); ++x)
    if (f(g(x)) != x) {
      ins = false;
      break;
    }
  return {true, ins};
}

inline std::optional<GaloisPair> make_galois_pair(const MonotoneMap& f, const MonotoneMap& g) {
  auto [conn, ins] = is_galois_pair(f, g);
  if (!conn) return std::nullopt;
  return GaloisPair{f, g, ins};
}

/// Right adjoint g(x) = max{u | f(u) <= x}, when every such maximum exists
/// and the pair validates.
inline std::optional<MonotoneMap> right_adjoint(const MonotoneMap& f) {
  const Poset& Q = *f.src;
  const Poset& P = *f.dst;
  MonotoneMap g{f.dst, f.src, std::vector<int>(size_t(P.size()), -1)};
  for (int x = 0; x < P.size(); ++x) {
    int best = -1;
    for (int u = 0; u < Q.size(); ++u) {
      if (!P.leq(f(u), x)) continue;
      if (best < 0 || Q.leq(best, u)) best = u;
    }
    if (best < 0) return std::nullopt;
    for (int u = 0; u < Q.size(); ++u)
      if (P.leq(f(u), x) && !Q.leq(u, best)) return std::nullopt;
    g.values[size_t(x)] = best;
  }
  if (!is_galois_pair(f, g).first) return std::nullopt;
  return g;
}

inline std::string top_name(const Poset& p) {
  std::string t = "T";
  while (p.find(t)) t += "'";
  return t;
}

/// Adjoins a formal top element at infinite distance from everything else.
inline PosetPtr augment(const PosetPtr& p) {
  auto q = std::make_shared<Poset>();
  int n = p->size();
  q->names = p->names;
  q->names.push_back(top_name(*p));
  int m = n + 1;
  q->leq_table.assign(size_t(m) * m, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) q->leq_table[size_t(a) * m + b] = p->leq(a, b);
  for (int a = 0; a <= n; ++a) q->leq_table[size_t(a) * m + n] = 1;
  q->covers = detail::transitive_reduction(q->leq_table, m);
  q->dist_table.assign(size_t(m) * m, ExtDist::infinity());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) q->dist_table[size_t(a) * m + b] = p->dist(a, b);
  q->dist_table[size_t(n) * m + n] = ExtDist::zero();
  return q;
}

/// Extends f : P -> Q to the augmented posets, top to top.
inline MonotoneMap augment_map(const MonotoneMap& f, PosetPtr src_bar, PosetPtr dst_bar) {
  MonotoneMap m{std::move(src_bar), std::move(dst_bar), f.values};
  m.values.push_back(m.dst->size() - 1);
  return m;
}

/// Interval poset Int S: comparable pairs (x,y) under the product order with
/// the L-infinity extended metric. Element names are "(x,y)".
inline PosetPtr interval_poset(const PosetPtr& s) {
  auto q = std::make_shared<Poset>();
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < s->size(); ++x)
    for (int y = 0; y < s->size(); ++y)
      if (s->leq(x, y)) {
        pairs.emplace_back(x, y);
        q->names.push_back("(" + s->names[x] + "," + s->names[y] + ")");
      }
  int m = int(pairs.size());
  q->leq_table.assign(size_t(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      q->leq_table[size_t(i) * m + j] =
          s->leq(pairs[i].first, pairs[j].first) && s->leq(pairs[i].second, pairs[j].second);
  q->covers = detail::transitive_reduction(q->leq_table, m);
  q->dist_table.resize(size_t(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      q->dist_table[size_t(i) * m + j] =
          max(s->dist(pairs[i].first, pairs[j].first), s->dist(pairs[i].second, pairs[j].second));
  return q;
}

/// Index of (x,y) inside interval_poset(s), given indices into s.
inline int interval_index(const Poset& int_s, const Poset& s, int x, int y) {
  return int_s.index_of("(" + s.names[x] + "," + s.names[y] + ")");
}

/// Int of the augmented extension of f: sends (x,y) to (f(x), f(y)) with
/// tops fixed. int_src / int_dst must be interval_poset(augment(...)) of the
/// respective sides.
inline MonotoneMap int_map(const MonotoneMap& f, const PosetPtr& src_bar, const PosetPtr& dst_bar,
                           const PosetPtr& int_src, const PosetPtr& int_dst) {
  MonotoneMap fbar = augment_map(f, src_bar, dst_bar);
  MonotoneMap m{int_src, int_dst, {}};
  m.values.resize(size_t(int_src->size()));
  for (int i = 0; i < int_src->size(); ++i) {
    const std::string& nm = int_src->names[size_t(i)];
    // parse "(a,b)" back into indices of src_bar
    auto comma = nm.find(',');
    int x = src_bar->index_of(nm.substr(1, comma - 1));
    int y = src_bar->index_of(nm.substr(comma + 1, nm.size() - comma - 2));
    m.values[size_t(i)] = interval_index(*int_dst, *dst_bar, fbar(x), fbar(y));
  }
  return m;
}

/// Result of gluing two copies of P along the fixed points of a translation.
struct TranslationQuotient {
  PosetPtr apex;
  GaloisPair left;   // f -| g
  GaloisPair right;  // h -| i
  std::vector<int> left_copy;   // per P element, apex index of x_L
  std::vector<int> right_copy;  // per P element, apex index of x_R
};

/// Apex poset of a translation sigma (x <= sigma(x)): two copies of P glued
/// at fixed points, with cross order x_i <= y_j iff sigma(x) <= y.
inline TranslationQuotient translation_quotient(const PosetPtr& p, const MonotoneMap& sigma) {
  if (!same_poset(*sigma.src, *p) || !same_poset(*sigma.dst, *p))
    throw std::invalid_argument("translation_quotient: sigma must be an endomap of P");
  for (int x = 0; x < p->size(); ++x)
    if (!p->leq(x, sigma(x))) throw std::invalid_argument("sigma is not a translation at " + p->names[x]);
  if (!sigma.is_monotone()) throw std::invalid_argument("sigma is not monotone");

  int n = p->size();
  std::vector<bool> fixed(n);
  for (int x = 0; x < n; ++x) fixed[size_t(x)] = sigma(x) == x;

  auto q = std::make_shared<Poset>();
  std::vector<int> left_copy(n), right_copy(n);
  std::vector<std::pair<int, int>> rep;  // apex element -> (P element, copy 0=L,1=R); fixed use copy 0
  for (int x = 0; x < n; ++x) {
    left_copy[size_t(x)] = int(rep.size());
    rep.emplace_back(x, 0);
    q->names.push_back(fixed[size_t(x)] ? p->names[x] : p->names[x] + "L");
  }
  for (int x = 0; x < n; ++x) {
    if (fixed[size_t(x)]) {
      right_copy[size_t(x)] = left_copy[size_t(x)];
      continue;
    }
    right_copy[size_t(x)] = int(rep.size());
    rep.emplace_back(x, 1);
    q->names.push_back(p->names[x] + "R");
  }

  int m = int(rep.size());
  q->leq_table.assign(size_t(m) * m, 0);
  auto rel = [&](int x, int cx, int y, int cy) {
    return cx == cy ? p->leq(x, y) : p->leq(sigma(x), y);
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto [x, cx] = rep[size_t(i)];
      auto [y, cy] = rep[size_t(j)];
      bool le = false;
      // fixed points represent both copies
      for (int a : fixed[size_t(x)] ? std::vector<int>{0, 1} : std::vector<int>{cx})
        for (int b : fixed[size_t(y)] ? std::vector<int>{0, 1} : std::vector<int>{cy})
          le = le || rel(x, a, y, b);
      q->leq_table[size_t(i) * m + j] = le;
    }
  q->covers = detail::transitive_reduction(q->leq_table, m);
  // apex carries the Hasse path metric; costs are always measured in P
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

  MonotoneMap f{q, p, {}}, h{q, p, {}};
  f.values.resize(size_t(m));
  h.values.resize(size_t(m));
  for (int i = 0; i < m; ++i) {
    auto [x, c] = rep[size_t(i)];
    f.values[size_t(i)] = c == 0 ? x : sigma(x);
    h.values[size_t(i)] = c == 0 ? sigma(x) : x;
  }
  MonotoneMap g{p, q, {}}, ii{p, q, {}};
  g.values.resize(size_t(n));
  ii.values.resize(size_t(n));
  for (int x = 0; x < n; ++x) {
    g.values[size_t(x)] = left_copy[size_t(x)];
    ii.values[size_t(x)] = right_copy[size_t(x)];
  }

  auto gl = make_galois_pair(f, g);
  auto gr = make_galois_pair(h, ii);
  if (!gl || !gl->insertion || !gr || !gr->insertion)
    throw std::logic_error("translation quotient failed to produce Galois insertions");
  return TranslationQuotient{q, *gl, *gr, left_copy, right_copy};
}

/// Pullback of h1 : Q1 -> P <- Q2 : f2 in posets, with the induced
/// projection/insertion pairs pi_k -| iota_k.
struct PosetPullback {
  PosetPtr apex;  // R
  MonotoneMap pi1, pi2;
  GaloisPair p1;  // pi1 -| iota1
  GaloisPair p2;  // pi2 -| iota2
};

inline PosetPullback pullback_poset(const MonotoneMap& h1, const MonotoneMap& f2) {
  if (!same_poset(*h1.dst, *f2.dst)) throw std::invalid_argument("pullback_poset: targets differ");
  auto i1 = right_adjoint(h1);
  auto g2 = right_adjoint(f2);
  if (!i1 || !g2) throw std::invalid_argument("pullback_poset: right adjoints unavailable");

  auto r = std::make_shared<Poset>();
  std::vector<std::pair<int, int>> elems;
  for (int a = 0; a < h1.src->size(); ++a)
    for (int b = 0; b < f2.src->size(); ++b)
      if (h1(a) == f2(b)) {
        elems.emplace_back(a, b);
        r->names.push_back("(" + h1.src->names[size_t(a)] + "|" + f2.src->names[size_t(b)] + ")");
      }
  int m = int(elems.size());
  r->leq_table.assign(size_t(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      r->leq_table[size_t(i) * m + j] = h1.src->leq(elems[size_t(i)].first, elems[size_t(j)].first) &&
                                        f2.src->leq(elems[size_t(i)].second, elems[size_t(j)].second);
  r->covers = detail::transitive_reduction(r->leq_table, m);
  r->dist_table.assign(size_t(m) * m, ExtDist::infinity());
  for (int a = 0; a < m; ++a) r->dist_table[size_t(a) * m + a] = ExtDist::zero();
  for (auto& [a, b] : r->covers) {
    r->dist_table[size_t(a) * m + b] = ExtDist(1);
    r->dist_table[size_t(b) * m + a] = ExtDist(1);
  }
  for (int k = 0; k < m; ++k)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        ExtDist via = r->dist(a, k) + r->dist(k, b);
        if (via < r->dist(a, b)) r->dist_table[size_t(a) * m + b] = via;
      }

  auto at = [&](int a, int b) {
    for (int i = 0; i < m; ++i)
      if (elems[size_t(i)] == std::make_pair(a, b)) return i;
    throw std::logic_error("pullback element missing");
  };
  MonotoneMap pi1{r, h1.src, {}}, pi2{r, f2.src, {}};
  for (auto& [a, b] : elems) {
    pi1.values.push_back(a);
    pi2.values.push_back(b);
  }
  MonotoneMap iota1{h1.src, r, {}}, iota2{f2.src, r, {}};
  for (int a = 0; a < h1.src->size(); ++a) iota1.values.push_back(at(a, (*g2)(h1(a))));
  for (int b = 0; b < f2.src->size(); ++b) iota2.values.push_back(at((*i1)(f2(b)), b));

  auto gp1 = make_galois_pair(pi1, iota1);
  auto gp2 = make_galois_pair(pi2, iota2);
  if (!gp1 || !gp1->insertion || !gp2 || !gp2->insertion)
    throw std::logic_error("pullback projections are not Galois insertions");
  return PosetPullback{r, pi1, pi2, *gp1, *gp2};
}

/// A connected convex subset presented by its minimal and maximal antichains.
struct GenInterval {
  std::vector<int> members;  // ascending element indices
  std::vector<int> min_antichain;
  std::vector<int> max_antichain;
};

namespace detail {

inline bool subset_connected(const Poset& p, const std::vector<int>& members) {
  if (members.empty()) return false;
  std::set<int> in(members.begin(), members.end());
  // connectivity of the Hasse graph of the induced subposet
  std::vector<int> stack{members[0]};
  std::set<int> seen{members[0]};
  auto covered_in = [&](int a, int b) {
    if (!p.lt(a, b)) return false;
    for (int c : members)
      if (c != a && c != b && p.lt(a, c) && p.lt(c, b)) return false;
    return true;
  };
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : members) {
      if (seen.count(y)) continue;
      if (covered_in(x, y) || covered_in(y, x)) {
        seen.insert(y);
        stack.push_back(y);
      }
    }
  }
  return seen.size() == in.size();
}

inline bool subset_convex(const Poset& p, const std::vector<int>& members) {
  std::set<int> in(members.begin(), members.end());
  for (int a : members)
    for (int b : members)
      if (p.leq(a, b))
        for (int c = 0; c < p.size(); ++c)
          if (p.leq(a, c) && p.leq(c, b) && !in.count(c)) return false;
  return true;
}

}  // namespace detail

/// Validates a member set as a generalized interval and computes its
/// antichain presentation, or absent if not convex and connected.
inline std::optional<GenInterval> as_gen_interval(const Poset& p, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) return std::nullopt;
  if (!detail::subset_convex(p, members) || !detail::subset_connected(p, members)) return std::nullopt;
  GenInterval gi;
  gi.members = members;
  for (int x : members) {
    bool minimal = true, maximal = true;
    for (int y : members) {
      if (y != x && p.leq(y, x)) minimal = false;
      if (y != x && p.leq(x, y)) maximal = false;
    }
    if (minimal) gi.min_antichain.push_back(x);
    if (maximal) gi.max_antichain.push_back(x);
  }
  return gi;
}

/// Members of [A,B] = {x | a <= x <= b for some a in A, b in B}.
inline std::vector<int> interval_span(const Poset& p, const std::vector<int>& a,
                                      const std::vector<int>& b) {
  std::vector<int> members;
  for (int x = 0; x < p.size(); ++x) {
    bool lo = false, hi = false;
    for (int u : a) lo = lo || p.leq(u, x);
    for (int v : b) hi = hi || p.leq(x, v);
    if (lo && hi) members.push_back(x);
  }
  return members;
}

/// All generalized intervals, enumerated through antichain pairs A <= B.
inline std::vector<GenInterval> gen_intervals(const Poset& p) {
  // enumerate antichains
  std::vector<std::vector<int>> antichains;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (!cur.empty()) antichains.push_back(cur);
    for (int x = start; x < p.size(); ++x) {
      bool ok = true;
      for (int y : cur)
        if (p.leq(x, y) || p.leq(y, x)) ok = false;
      if (!ok) continue;
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(0);

  auto below = [&](const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a) {
      bool some = false;
      for (int y : b) some = some || p.leq(x, y);
      if (!some) return false;
    }
    for (int y : b) {
      bool some = false;
      for (int x : a) some = some || p.leq(x, y);
      if (!some) return false;
    }
    return true;
  };

  std::vector<GenInterval> out;
  for (auto& a : antichains)
    for (auto& b : antichains) {
      if (!below(a, b)) continue;
      auto gi = as_gen_interval(p, interval_span(p, a, b));
      if (gi && gi->min_antichain == a && gi->max_antichain == b) out.push_back(*gi);
    }
  return out;
}

}  // namespace pmod
