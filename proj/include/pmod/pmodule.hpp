// pmodule.hpp -- modules over a finite poset (functors P -> vect), their
// morphisms, Hom spaces, isomorphism testing, restriction and left Kan
// extension, projective covers and the top extension.

#pragma once

#include <map>
#include <optional>
#include <random>

#include "pmod/fp.hpp"
#include "pmod/poset.hpp"

namespace pmod {

/// A poset module: a dimension per element and a matrix per Hasse arrow,
/// subject to full commutativity. The matrix for an arrow a -> b has shape
/// dim(b) x dim(a).
struct PModule {
  PosetPtr poset;
  std::vector<int> dims;
  std::vector<Mat> arrow_maps;  // aligned with poset->covers

  int dim(int x) const { return dims[size_t(x)]; }
  int total_dim() const {
    int t = 0;
    for (int d : dims) t += d;
    return t;
  }
  bool is_zero() const { return total_dim() == 0; }

  /// Composite structure map along any Hasse path from x to y (x <= y).
  /// Well-defined on validated modules.
  Mat map(int x, int y) const {
    if (x == y) return mat_identity(dim(x));
    // BFS upward through covers
    std::vector<int> prev(size_t(poset->size()), -1), prev_arrow(size_t(poset->size()), -1);
    std::vector<int> queue{x};
    prev[size_t(x)] = x;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      if (u == y) break;
      for (size_t ai = 0; ai < poset->covers.size(); ++ai) {
        auto [a, b] = poset->covers[ai];
        if (a != u || prev[size_t(b)] >= 0 || !poset->leq(b, y)) continue;
        prev[size_t(b)] = u;
        prev_arrow[size_t(b)] = int(ai);
        queue.push_back(b);
      }
    }
    if (prev[size_t(y)] < 0) throw std::invalid_argument("map: elements not comparable");
    Mat m = mat_identity(dim(y));
    for (int v = y; v != x; v = prev[size_t(v)]) m = mul(m, arrow_maps[size_t(prev_arrow[size_t(v)])]);
    return m;
  }

  static PModule zero(PosetPtr p) {
    PModule m{std::move(p), {}, {}};
    m.dims.assign(size_t(m.poset->size()), 0);
    for (size_t i = 0; i < m.poset->covers.size(); ++i) m.arrow_maps.push_back(mat_zero(0, 0));
    return m;
  }

  friend PModule direct_sum(const PModule& a, const PModule& b) {
    if (!same_poset(*a.poset, *b.poset)) throw std::invalid_argument("direct_sum: poset mismatch");
    PModule m{a.poset, {}, {}};
    for (int x = 0; x < a.poset->size(); ++x) m.dims.push_back(a.dim(x) + b.dim(x));
    for (size_t i = 0; i < a.poset->covers.size(); ++i) {
      auto [s, t] = a.poset->covers[i];
      Mat blk = mat_zero(m.dims[size_t(t)], m.dims[size_t(s)]);
      blk.block(0, 0, a.dim(t), a.dim(s)) = a.arrow_maps[i];
      blk.block(a.dim(t), a.dim(s), b.dim(t), b.dim(s)) = b.arrow_maps[i];
      m.arrow_maps.push_back(blk);
    }
    return m;
  }

  friend bool operator==(const PModule& a, const PModule& b) {
    if (!same_poset(*a.poset, *b.poset) || a.dims != b.dims) return false;
    for (size_t i = 0; i < a.arrow_maps.size(); ++i)
      if (!mat_equal(a.arrow_maps[i], b.arrow_maps[i])) return false;
    return true;
  }
};

/// Naturality data: one matrix per element, source dims to target dims.
struct PMorphism {
  const PModule* source = nullptr;
  const PModule* target = nullptr;
  std::vector<Mat> components;

  bool is_natural() const {
    const Poset& p = *source->poset;
    for (size_t i = 0; i < p.covers.size(); ++i) {
      auto [a, b] = p.covers[i];
      Mat lhs = mul(target->arrow_maps[i], components[size_t(a)]);
      Mat rhs = mul(components[size_t(b)], source->arrow_maps[i]);
      if (!mat_equal(lhs, rhs)) return false;
    }
    return true;
  }

  bool is_iso() const {
    for (size_t x = 0; x < components.size(); ++x) {
      const Mat& c = components[x];
      if (c.rows() != c.cols() || rank_of(c) != c.rows()) return false;
    }
    return true;
  }
};

/// Full commutativity check: the canonical BFS composite to each element must
/// be reproduced by every extra cover arrow. Reports the offending arrow.
inline bool validate(const PModule& m, std::string* why = nullptr) {
  const Poset& p = *m.poset;
  for (size_t i = 0; i < p.covers.size(); ++i) {
    auto [a, b] = p.covers[i];
    if (m.arrow_maps[i].rows() != m.dim(b) || m.arrow_maps[i].cols() != m.dim(a)) {
      if (why) *why = "arrow " + p.names[size_t(a)] + "->" + p.names[size_t(b)] + " has wrong shape";
      return false;
    }
  }
  for (int x = 0; x < p.size(); ++x)
    for (size_t i = 0; i < p.covers.size(); ++i) {
      auto [a, b] = p.covers[i];
      if (!p.leq(x, a)) continue;
      Mat via_arrow = mul(m.arrow_maps[i], m.map(x, a));
      if (!mat_equal(via_arrow, m.map(x, b))) {
        if (why)
          *why = "square at " + p.names[size_t(x)] + " through " + p.names[size_t(a)] + "->" +
                 p.names[size_t(b)] + " does not commute";
        return false;
      }
    }
  return true;
}

/// Interval module: one-dimensional on the members, identities inside.
inline PModule interval_module(PosetPtr p, const GenInterval& gi) {
  PModule m = PModule::zero(p);
  for (int x : gi.members) m.dims[size_t(x)] = 1;
  for (size_t i = 0; i < p->covers.size(); ++i) {
    auto [a, b] = p->covers[i];
    m.arrow_maps[i] = mat_zero(m.dim(b), m.dim(a));
    if (m.dim(a) == 1 && m.dim(b) == 1) m.arrow_maps[i](0, 0) = Fp(1);
  }
  return m;
}

/// Indecomposable projective at x: one-dimensional on the up-set of x.
inline PModule projective(PosetPtr p, int x) {
  auto gi = as_gen_interval(*p, p->up_set(x));
  if (!gi) throw std::logic_error("up-set is not an interval");
  return interval_module(std::move(p), *gi);
}

/// Simple (one-point interval) module at b.
inline PModule simple(PosetPtr p, int b) {
  GenInterval gi{{b}, {b}, {b}};
  return interval_module(std::move(p), gi);
}

/// Restriction along f: Q -> P.
inline PModule pullback(const MonotoneMap& f, const PModule& m) {
  if (!same_poset(*f.dst, *m.poset)) throw std::invalid_argument("pullback: poset mismatch");
  PModule r{f.src, {}, {}};
  for (int q = 0; q < f.src->size(); ++q) r.dims.push_back(m.dim(f(q)));
  for (auto& [a, b] : f.src->covers) r.arrow_maps.push_back(m.map(f(a), f(b)));
  return r;
}

/// Zero-extends M over the augmented poset (zero at the new top).
inline PModule extend_top(const PModule& m, PosetPtr p_bar) {
  PModule r{std::move(p_bar), m.dims, {}};
  r.dims.push_back(0);
  for (auto& cov : r.poset->covers) {
    if (cov.second == r.poset->size() - 1) {
      r.arrow_maps.push_back(mat_zero(0, r.dims[size_t(cov.first)]));
      continue;
    }
    bool found = false;
    for (size_t i = 0; i < m.poset->covers.size(); ++i)
      if (m.poset->covers[i] == cov) {
        r.arrow_maps.push_back(m.arrow_maps[i]);
        found = true;
        break;
      }
    if (!found) throw std::logic_error("cover not found in base poset");
  }
  return r;
}

/// Left Kan extension along f: A -> B, computed fiberwise as the colimit
/// cokernel over the comma fibers {a | f(a) <= b}.
inline PModule left_kan(const MonotoneMap& f, const PModule& m) {
  if (!same_poset(*f.src, *m.poset)) throw std::invalid_argument("left_kan: poset mismatch");
  const Poset& a_po = *f.src;
  const Poset& b_po = *f.dst;

  struct Fiber {
    std::vector<int> objs;
    std::vector<int> offset;  // per obj, block offset
    int total = 0;
    Mat proj;  // coker projection of the relation map
  };
  std::vector<Fiber> fibers(size_t(b_po.size()));
  for (int b = 0; b < b_po.size(); ++b) {
    Fiber& fb = fibers[size_t(b)];
    for (int a = 0; a < a_po.size(); ++a)
      if (b_po.leq(f(a), b)) {
        fb.offset.push_back(fb.total);
        fb.objs.push_back(a);
        fb.total += m.dim(a);
      }
    // relation columns over all strict comparable pairs in the fiber
    int cols = 0;
    for (size_t i = 0; i < fb.objs.size(); ++i)
      for (size_t j = 0; j < fb.objs.size(); ++j)
        if (i != j && a_po.leq(fb.objs[i], fb.objs[j])) cols += m.dim(fb.objs[i]);
    Mat rel = mat_zero(fb.total, cols);
    int c = 0;
    for (size_t i = 0; i < fb.objs.size(); ++i)
      for (size_t j = 0; j < fb.objs.size(); ++j) {
        if (i == j || !a_po.leq(fb.objs[i], fb.objs[j])) continue;
        int du = m.dim(fb.objs[i]);
        if (du == 0) continue;
        Mat mm = m.map(fb.objs[i], fb.objs[j]);
        rel.block(fb.offset[j], c, mm.rows(), du) = mm;
        rel.block(fb.offset[i], c, du, du) -= mat_identity(du);
        c += du;
      }
    fb.proj = reduce(rel).coker_projection;
  }

  PModule r{f.dst, {}, {}};
  for (int b = 0; b < b_po.size(); ++b) r.dims.push_back(int(fibers[size_t(b)].proj.rows()));
  for (auto& [b, b2] : b_po.covers) {
    const Fiber& fb = fibers[size_t(b)];
    const Fiber& fb2 = fibers[size_t(b2)];
    // block injection of the smaller fiber into the bigger one
    Mat inj = mat_zero(fb2.total, fb.total);
    for (size_t i = 0; i < fb.objs.size(); ++i) {
      int a = fb.objs[i];
      auto it = std::find(fb2.objs.begin(), fb2.objs.end(), a);
      int j = int(it - fb2.objs.begin());
      for (int k = 0; k < m.dim(a); ++k) inj(fb2.offset[size_t(j)] + k, fb.offset[i] + k) = Fp(1);
    }
    Mat section;
    if (fb.proj.rows() == 0) {
      section = mat_zero(fb.total, 0);
    } else {
      auto s = solve(fb.proj, mat_identity(fb.proj.rows()));
      if (!s) throw std::logic_error("cokernel projection lost full rank");
      section = *s;
    }
    r.arrow_maps.push_back(mul(fb2.proj, mul(inj, section)));
  }
  return r;
}

/// Basis of the space of natural transformations M -> N.
inline std::vector<PMorphism> hom_basis(const PModule& m, const PModule& n) {
  if (!same_poset(*m.poset, *n.poset)) throw std::invalid_argument("hom_basis: poset mismatch");
  const Poset& p = *m.poset;
  std::vector<int> offset(size_t(p.size()) + 1, 0);
  for (int x = 0; x < p.size(); ++x) offset[size_t(x) + 1] = offset[size_t(x)] + n.dim(x) * m.dim(x);
  int unknowns = offset[size_t(p.size())];

  int rows = 0;
  for (auto& [a, b] : p.covers) rows += n.dim(b) * m.dim(a);
  Mat sys = mat_zero(rows, unknowns);
  int r0 = 0;
  for (size_t ai = 0; ai < p.covers.size(); ++ai) {
    auto [a, b] = p.covers[ai];
    const Mat& nm = n.arrow_maps[ai];
    const Mat& mm = m.arrow_maps[ai];
    // N(a->b) alpha_a - alpha_b M(a->b) = 0, unknown alpha_x laid out row-major
    for (int i = 0; i < n.dim(b); ++i)
      for (int j = 0; j < m.dim(a); ++j) {
        int row = r0 + i * m.dim(a) + j;
        for (int k = 0; k < n.dim(a); ++k)
          sys(row, offset[size_t(a)] + k * m.dim(a) + j) += nm(i, k);
        for (int k = 0; k < m.dim(b); ++k)
          sys(row, offset[size_t(b)] + i * m.dim(b) + k) -= mm(k, j);
      }
    r0 += n.dim(b) * m.dim(a);
  }
  Mat ker = reduce(sys).kernel_basis;

  std::vector<PMorphism> basis;
  for (Eigen::Index c = 0; c < ker.cols(); ++c) {
    PMorphism f{&m, &n, {}};
    for (int x = 0; x < p.size(); ++x) {
      Mat comp = mat_zero(n.dim(x), m.dim(x));
      for (int i = 0; i < n.dim(x); ++i)
        for (int j = 0; j < m.dim(x); ++j) comp(i, j) = ker(offset[size_t(x)] + i * m.dim(x) + j, c);
      f.components.push_back(std::move(comp));
    }
    basis.push_back(std::move(f));
  }
  return basis;
}

namespace detail {

inline int blockdiag_rank(const std::vector<PMorphism>& basis, const std::vector<Fp>& coeff) {
  int total = 0;
  for (size_t x = 0; x < basis[0].components.size(); ++x) {
    Mat c = mat_zero(basis[0].components[x].rows(), basis[0].components[x].cols());
    for (size_t k = 0; k < basis.size(); ++k) c += coeff[k] * basis[k].components[x];
    total += rank_of(c);
  }
  return total;
}

}  // namespace detail

/// Finds an invertible natural transformation M -> N when one exists.
/// Dimension vectors are compared first; then the Hom space is probed with
/// random coefficient vectors and a deterministic rank-boosting pencil sweep.
inline std::optional<PMorphism> find_isomorphism(const PModule& m, const PModule& n) {
  if (!same_poset(*m.poset, *n.poset)) throw std::invalid_argument("find_isomorphism: poset mismatch");
  if (m.dims != n.dims) return std::nullopt;
  int full = m.total_dim();
  if (full == 0 || m == n) {
    PMorphism f{&m, &n, {}};
    for (int x = 0; x < m.poset->size(); ++x) f.components.push_back(mat_identity(m.dim(x)));
    return f;
  }
  auto basis = hom_basis(m, n);
  if (basis.empty()) return std::nullopt;

  auto assemble = [&](const std::vector<Fp>& coeff) {
    PMorphism f{&m, &n, {}};
    for (size_t x = 0; x < basis[0].components.size(); ++x) {
      Mat c = mat_zero(basis[0].components[x].rows(), basis[0].components[x].cols());
      for (size_t k = 0; k < basis.size(); ++k) c += coeff[k] * basis[k].components[x];
      f.components.push_back(std::move(c));
    }
    return f;
  };

  std::mt19937_64 rng(0x9e3779b9);
  std::uniform_int_distribution<std::int64_t> pick(0, Fp::modulus - 1);
  for (int t = 0; t < 64; ++t) {
    std::vector<Fp> coeff(basis.size());
    for (auto& c : coeff) c = Fp(pick(rng));
    if (detail::blockdiag_rank(basis, coeff) == full) return assemble(coeff);
  }

  // pencil sweep: repeatedly try to raise the block-diagonal rank with a
  // single basis direction; a rank-raising scalar, if one exists for that
  // direction, is missed by at most `full` many values
  std::vector<Fp> coeff(basis.size(), Fp(0));
  coeff[0] = Fp(1);
  int cur = detail::blockdiag_rank(basis, coeff);
  bool improved = true;
  while (cur < full && improved) {
    improved = false;
    for (size_t k = 0; k < basis.size() && !improved; ++k)
      for (std::int64_t t = 1; t <= full + 2 && !improved; ++t) {
        std::vector<Fp> trial = coeff;
        trial[k] += Fp(t);
        int r = detail::blockdiag_rank(basis, trial);
        if (r > cur) {
          coeff = trial;
          cur = r;
          improved = true;
        }
      }
  }
  if (cur == full) return assemble(coeff);
  return std::nullopt;
}

inline bool is_isomorphic(const PModule& m, const PModule& n) {
  return find_isomorphism(m, n).has_value();
}

/// Projective cover data: cover points with generator representatives, and
/// the kernel as a module with its pointwise inclusion into the cover.
struct CoverData {
  std::vector<int> points;           // ascending, with multiplicity
  std::vector<Mat> generator_reps;   // per point entry, a column in M(point)
  PModule cover;
  PModule kernel;
  std::vector<Mat> kernel_incl;      // per element, cover-coordinates basis of the kernel
  std::vector<Mat> epi_components;   // per element, cover(z) -> M(z)
};

namespace detail {

// canonical representatives of M(x)/im: standard vectors at the non-pivot
// rows of the row space of im
inline std::vector<int> quotient_rep_rows(const Mat& image, int ambient_dim) {
  Mat t = image.transpose();
  std::vector<int> piv = rref_in_place(t);
  std::vector<bool> is_pivot(size_t(ambient_dim), false);
  for (int c : piv) is_pivot[size_t(c)] = true;
  std::vector<int> reps;
  for (int i = 0; i < ambient_dim; ++i)
    if (!is_pivot[size_t(i)]) reps.push_back(i);
  return reps;
}

}  // namespace detail

/// Projective cover of M: one summand k[P]_x per basis vector of
/// M(x) / (sum of images from below).
inline CoverData projective_cover(const PModule& m) {
  const Poset& p = *m.poset;
  CoverData out;
  for (int x = 0; x < p.size(); ++x) {
    // radical at x: images along the incoming Hasse arrows
    Mat rad = mat_zero(m.dim(x), 0);
    for (size_t ai = 0; ai < p.covers.size(); ++ai)
      if (p.covers[ai].second == x) rad = hcat(rad, m.arrow_maps[ai]);
    for (int r : detail::quotient_rep_rows(rad, m.dim(x))) {
      out.points.push_back(x);
      Mat rep = mat_zero(m.dim(x), 1);
      rep(r, 0) = Fp(1);
      out.generator_reps.push_back(rep);
    }
  }

  // assemble the cover module and epi components
  out.cover = PModule::zero(m.poset);
  for (int z = 0; z < p.size(); ++z)
    for (int pt : out.points)
      if (p.leq(pt, z)) ++out.cover.dims[size_t(z)];
  for (size_t ai = 0; ai < p.covers.size(); ++ai) {
    auto [a, b] = p.covers[ai];
    Mat blk = mat_zero(out.cover.dim(b), out.cover.dim(a));
    int ia = 0;
    for (size_t s = 0; s < out.points.size(); ++s) {
      if (!p.leq(out.points[s], a)) continue;
      int ib = 0;
      for (size_t t = 0; t < out.points.size(); ++t) {
        if (!p.leq(out.points[t], b)) continue;
        if (s == t) blk(ib, ia) = Fp(1);
        ++ib;
      }
      ++ia;
    }
    out.cover.arrow_maps[ai] = blk;
  }
  for (int z = 0; z < p.size(); ++z) {
    Mat e = mat_zero(m.dim(z), 0);
    for (size_t s = 0; s < out.points.size(); ++s)
      if (p.leq(out.points[s], z)) e = hcat(e, mul(m.map(out.points[s], z), out.generator_reps[s]));
    out.epi_components.push_back(std::move(e));
  }

  out.kernel = PModule::zero(m.poset);
  out.kernel_incl.resize(size_t(p.size()));
  for (int z = 0; z < p.size(); ++z) {
    out.kernel_incl[size_t(z)] = reduce(out.epi_components[size_t(z)]).kernel_basis;
    out.kernel.dims[size_t(z)] = int(out.kernel_incl[size_t(z)].cols());
  }
  for (size_t ai = 0; ai < p.covers.size(); ++ai) {
    auto [a, b] = p.covers[ai];
    Mat carried = mul(out.cover.arrow_maps[ai], out.kernel_incl[size_t(a)]);
    auto t = solve(out.kernel_incl[size_t(b)], carried);
    if (!t) throw std::logic_error("kernel is not closed under structure maps");
    out.kernel.arrow_maps[ai] = *t;
  }
  return out;
}

}  // namespace pmod
