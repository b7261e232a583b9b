// resolution.hpp -- bounded nonnegative complexes of projective summands in
// point form, minimal projective resolutions, cone padding and stripping,
// and the class invariants of the split Grothendieck group.

#pragma once

#include <map>

#include "pmod/pmodule.hpp"

namespace pmod {

/// A shifted contractible cone: one projective summand repeated in degrees
/// `degree` and `degree + 1`, glued by an identity entry.
struct ConeSpec {
  int point = 0;
  int degree = 0;
  friend bool operator==(const ConeSpec& a, const ConeSpec& b) {
    return a.point == b.point && a.degree == b.degree;
  }
  friend bool operator<(const ConeSpec& a, const ConeSpec& b) {
    return std::tie(a.degree, a.point) < std::tie(b.degree, b.point);
  }
};

/// A complex of projective sums, one summand list per degree (ascending
/// point indices) and one scalar matrix per consecutive pair of degrees.
/// diffs[i] has a row per degree-i summand and a column per degree-(i+1)
/// summand; an entry may be nonzero only when its column point dominates its
/// row point. Trailing empty degrees are trimmed.
struct ProjComplex {
  PosetPtr poset;
  std::vector<std::vector<int>> points;  // per degree
  std::vector<Mat> diffs;                // diffs[i]: |deg i| x |deg i+1|

  int degrees() const { return int(points.size()); }
  int summands(int i) const { return i < degrees() ? int(points[size_t(i)].size()) : 0; }

  static ProjComplex empty(PosetPtr p) { return ProjComplex{std::move(p), {}, {}}; }

  void trim() {
    while (!points.empty() && points.back().empty()) {
      points.pop_back();
      if (diffs.size() >= points.size() && !diffs.empty()) diffs.pop_back();
    }
    while (diffs.size() + 1 > points.size() && !diffs.empty()) diffs.pop_back();
    while (diffs.size() + 1 < points.size()) {
      size_t i = diffs.size();
      diffs.push_back(mat_zero(int(points[i].size()), int(points[i + 1].size())));
    }
  }

  /// Checks the order-support rule and that consecutive differentials
  /// compose to zero.
  bool well_formed(std::string* why = nullptr) const {
    for (size_t i = 0; i + 1 < points.size(); ++i) {
      const Mat& d = diffs[i];
      if (d.rows() != summands(int(i)) || d.cols() != summands(int(i) + 1)) {
        if (why) *why = "differential shape mismatch at degree " + std::to_string(i);
        return false;
      }
      for (Eigen::Index r = 0; r < d.rows(); ++r)
        for (Eigen::Index c = 0; c < d.cols(); ++c)
          if (!d(r, c).is_zero() &&
              !poset->leq(points[i][size_t(r)], points[i + 1][size_t(c)])) {
            if (why) *why = "entry violates the order-support rule at degree " + std::to_string(i);
            return false;
          }
    }
    for (size_t i = 0; i + 2 < points.size(); ++i)
      if (!mat_is_zero(mul(diffs[i], diffs[i + 1]))) {
        if (why) *why = "differentials do not compose to zero at degree " + std::to_string(i);
        return false;
      }
    return true;
  }

  /// Summand slots of degree i that are present at poset element z.
  std::vector<int> slots_at(int i, int z) const {
    std::vector<int> s;
    if (i >= degrees()) return s;
    for (size_t k = 0; k < points[size_t(i)].size(); ++k)
      if (poset->leq(points[size_t(i)][k], z)) s.push_back(int(k));
    return s;
  }

  /// Realization of diffs[i] at poset element z.
  Mat diff_at(int i, int z) const {
    auto rows = slots_at(i, z), cols = slots_at(i + 1, z);
    Mat m = mat_zero(int(rows.size()), int(cols.size()));
    if (i < int(diffs.size()))
      for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols.size(); ++c) m(int(r), int(c)) = diffs[size_t(i)](rows[r], cols[c]);
    return m;
  }

  /// Sorts every degree by point index, permuting matrices accordingly.
  void canonicalize() {
    for (size_t i = 0; i < points.size(); ++i) {
      std::vector<int> perm(points[i].size());
      for (size_t k = 0; k < perm.size(); ++k) perm[k] = int(k);
      std::stable_sort(perm.begin(), perm.end(),
                       [&](int a, int b) { return points[i][size_t(a)] < points[i][size_t(b)]; });
      std::vector<int> np(points[i].size());
      for (size_t k = 0; k < perm.size(); ++k) np[k] = points[i][size_t(perm[k])];
      if (i < diffs.size()) {
        Mat nd = mat_zero(diffs[i].rows(), diffs[i].cols());
        for (size_t k = 0; k < perm.size(); ++k) nd.row(int(k)) = diffs[i].row(perm[k]);
        diffs[i] = nd;
      }
      if (i > 0) {
        Mat nd = mat_zero(diffs[i - 1].rows(), diffs[i - 1].cols());
        for (size_t k = 0; k < perm.size(); ++k) nd.col(int(k)) = diffs[i - 1].col(perm[k]);
        diffs[i - 1] = nd;
      }
      points[i] = np;
    }
    trim();
  }

  friend bool operator==(const ProjComplex& a, const ProjComplex& b) {
    if (!same_poset(*a.poset, *b.poset) || a.points != b.points) return false;
    for (size_t i = 0; i < a.diffs.size(); ++i)
      if (!mat_equal(a.diffs[i], b.diffs[i])) return false;
    return true;
  }
};

inline std::vector<int> size_vector(const ProjComplex& c) {
  std::vector<int> v;
  for (auto& d : c.points) v.push_back(int(d.size()));
  return v;
}

inline int alternating_sum(const ProjComplex& c) {
  int s = 0;
  for (int i = 0; i < c.degrees(); ++i) s += (i % 2 == 0 ? 1 : -1) * c.summands(i);
  return s;
}

/// Alternating sum of summand classes in the split Grothendieck group,
/// as an integer multiplicity per poset element.
inline std::vector<int> alternating_class(const ProjComplex& c) {
  std::vector<int> cls(size_t(c.poset->size()), 0);
  for (int i = 0; i < c.degrees(); ++i)
    for (int pt : c.points[size_t(i)]) cls[size_t(pt)] += (i % 2 == 0 ? 1 : -1);
  return cls;
}

/// Minimal projective resolution by iterated projective covers. Differential
/// entries land strictly below the column point, so no identity entry joins
/// summands at equal points.
inline ProjComplex minimal_resolution(const PModule& m) {
  ProjComplex out = ProjComplex::empty(m.poset);
  const Poset& p = *m.poset;

  CoverData cd = projective_cover(m);
  if (cd.points.empty()) return out;
  out.points.push_back(cd.points);

  // current syzygy, held as pointwise bases inside the current cover
  std::vector<int> cur_points = cd.points;
  std::vector<Mat> kernel = cd.kernel_incl;  // per element z: slots(z) x k_z

  auto slots_at = [&p](const std::vector<int>& pts, int z) {
    std::vector<int> s;
    for (size_t k = 0; k < pts.size(); ++k)
      if (p.leq(pts[k], z)) s.push_back(int(k));
    return s;
  };

  while (true) {
    bool zero = true;
    for (auto& k : kernel) zero = zero && k.cols() == 0;
    if (zero) break;

    // structure maps of the syzygy: kernel(a) -> kernel(b) over covers
    std::vector<Mat> kmap(p.covers.size());
    for (size_t ai = 0; ai < p.covers.size(); ++ai) {
      auto [a, b] = p.covers[ai];
      auto sa = slots_at(cur_points, a), sb = slots_at(cur_points, b);
      Mat incl = mat_zero(int(sb.size()), int(sa.size()));
      for (size_t r = 0; r < sb.size(); ++r)
        for (size_t c = 0; c < sa.size(); ++c)
          if (sb[r] == sa[c]) incl(int(r), int(c)) = Fp(1);
      auto t = solve(kernel[size_t(b)], mul(incl, kernel[size_t(a)]));
      if (!t) throw std::logic_error("syzygy not closed under structure maps");
      kmap[ai] = *t;
    }

    // top of the syzygy and the new cover points with their representatives;
    // the radical is generated by the incoming Hasse arrows
    std::vector<int> next_points;
    std::vector<Mat> next_cols;  // per new summand, a column in kernel(x)-coordinates
    for (int x = 0; x < p.size(); ++x) {
      Mat rad = mat_zero(kernel[size_t(x)].cols(), 0);
      for (auto& [y, xx] : p.covers) {
        if (xx != x) continue;
        auto sy = slots_at(cur_points, y), sx = slots_at(cur_points, x);
        Mat incl = mat_zero(int(sx.size()), int(sy.size()));
        for (size_t r = 0; r < sx.size(); ++r)
          for (size_t c = 0; c < sy.size(); ++c)
            if (sx[r] == sy[c]) incl(int(r), int(c)) = Fp(1);
        auto t = solve(kernel[size_t(x)], mul(incl, kernel[size_t(y)]));
        if (!t) throw std::logic_error("syzygy not closed under structure maps");
        rad = hcat(rad, *t);
      }
      for (int r : detail::quotient_rep_rows(rad, int(kernel[size_t(x)].cols()))) {
        next_points.push_back(x);
        Mat col = mat_zero(kernel[size_t(x)].cols(), 1);
        col(r, 0) = Fp(1);
        next_cols.push_back(mul(kernel[size_t(x)], col));  // cover coordinates at x
      }
    }

    // differential matrix: entries are the cover-slot components of each rep
    Mat diff = mat_zero(int(cur_points.size()), int(next_points.size()));
    for (size_t c = 0; c < next_points.size(); ++c) {
      auto sx = slots_at(cur_points, next_points[c]);
      for (size_t r = 0; r < sx.size(); ++r) diff(sx[r], int(c)) = next_cols[c](int(r), 0);
    }
    out.points.push_back(next_points);
    out.diffs.push_back(diff);

    // next syzygy: pointwise kernels of the realized differential into the
    // previous syzygy
    std::vector<Mat> next_kernel(size_t(p.size()));
    for (int z = 0; z < p.size(); ++z) {
      auto rows = slots_at(cur_points, z), cols = slots_at(next_points, z);
      Mat dz = mat_zero(int(rows.size()), int(cols.size()));
      for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols.size(); ++c) dz(int(r), int(c)) = diff(rows[r], cols[c]);
      next_kernel[size_t(z)] = reduce(dz).kernel_basis;
    }
    cur_points = next_points;
    kernel = next_kernel;
  }
  out.trim();
  return out;
}

/// Result of turning a complex back into a module.
struct Realization {
  PModule module;        // cokernel of the degree-zero differential
  bool exact_positive;   // homology vanishes in all degrees >= 1
};

inline Realization realize(const ProjComplex& c) {
  const Poset& p = *c.poset;
  Realization out{PModule::zero(c.poset), true};

  std::vector<Mat> proj(size_t(p.size()));  // coker projection at each element
  for (int z = 0; z < p.size(); ++z) {
    auto rows = c.slots_at(0, z);
    Mat d0 = c.degrees() > 1 ? c.diff_at(0, z) : mat_zero(int(rows.size()), 0);
    proj[size_t(z)] = reduce(d0).coker_projection;
    out.module.dims[size_t(z)] = int(proj[size_t(z)].rows());
  }
  for (size_t ai = 0; ai < p.covers.size(); ++ai) {
    auto [a, b] = p.covers[ai];
    auto sa = c.slots_at(0, a), sb = c.slots_at(0, b);
    Mat incl = mat_zero(int(sb.size()), int(sa.size()));
    for (size_t r = 0; r < sb.size(); ++r)
      for (size_t cc = 0; cc < sa.size(); ++cc)
        if (sb[r] == sa[cc]) incl(int(r), int(cc)) = Fp(1);
    Mat section;
    if (proj[size_t(a)].rows() == 0) {
      section = mat_zero(proj[size_t(a)].cols(), 0);
    } else {
      auto s = solve(proj[size_t(a)], mat_identity(proj[size_t(a)].rows()));
      if (!s) throw std::logic_error("cokernel projection lost rank");
      section = *s;
    }
    out.module.arrow_maps[ai] = mul(proj[size_t(b)], mul(incl, section));
  }

  for (int i = 1; i + 1 <= c.degrees(); ++i)
    for (int z = 0; z < p.size(); ++z) {
      Mat up = i < c.degrees() - 1 ? c.diff_at(i, z)
                                   : mat_zero(int(c.slots_at(i, z).size()), 0);
      Mat down = c.diff_at(i - 1, z);
      int nullity = int(down.cols()) - rank_of(down);
      if (nullity != rank_of(up)) out.exact_positive = false;
    }
  return out;
}

/// Direct sum with shifted identity cones; preserves the realized module.
inline ProjComplex pad(const ProjComplex& c, const std::vector<ConeSpec>& cones) {
  ProjComplex out = c;
  for (const ConeSpec& cone : cones) {
    int need = cone.degree + 2;
    while (out.degrees() < need) {
      out.points.emplace_back();
      if (out.degrees() >= 2) out.diffs.push_back(mat_zero(out.summands(out.degrees() - 2), 0));
    }
    // append the two copies and the unit entry
    for (int d : {cone.degree, cone.degree + 1}) {
      out.points[size_t(d)].push_back(cone.point);
      if (d > 0) {
        Mat& below = out.diffs[size_t(d - 1)];
        below.conservativeResize(Eigen::NoChange, below.cols() + 1);
        for (Eigen::Index r = 0; r < below.rows(); ++r) below(r, below.cols() - 1) = Fp(0);
      }
      if (d + 1 < out.degrees()) {
        Mat& above = out.diffs[size_t(d)];
        above.conservativeResize(above.rows() + 1, Eigen::NoChange);
        for (Eigen::Index cc = 0; cc < above.cols(); ++cc) above(above.rows() - 1, cc) = Fp(0);
      }
    }
    Mat& d = out.diffs[size_t(cone.degree)];
    d(d.rows() - 1, d.cols() - 1) = Fp(1);
  }
  out.canonicalize();
  return out;
}

/// Gaussian cancellation of identity entries joining summands at equal
/// points, scanned in increasing degree order; yields the minimal form of an
/// exact-in-positive-degrees complex.
inline ProjComplex strip(const ProjComplex& c) {
  ProjComplex cur = c;
  cur.canonicalize();
  while (true) {
    bool cancelled = false;
    for (int i = 0; i + 1 < cur.degrees() && !cancelled; ++i) {
      Mat& d = cur.diffs[size_t(i)];
      for (Eigen::Index r = 0; r < d.rows() && !cancelled; ++r)
        for (Eigen::Index cc = 0; cc < d.cols() && !cancelled; ++cc) {
          if (d(r, cc).is_zero()) continue;
          if (cur.points[size_t(i)][size_t(r)] != cur.points[size_t(i) + 1][size_t(cc)]) continue;
          // Schur complement update on this differential
          Fp u_inv = d(r, cc).inv();
          Mat nd = mat_zero(d.rows() - 1, d.cols() - 1);
          for (Eigen::Index rr = 0, ri = 0; rr < d.rows(); ++rr) {
            if (rr == r) continue;
            for (Eigen::Index c2 = 0, ci = 0; c2 < d.cols(); ++c2) {
              if (c2 == cc) continue;
              nd(ri, ci) = d(rr, c2) - d(rr, cc) * u_inv * d(r, c2);
              ++ci;
            }
            ++ri;
          }
          // adjacent differentials just lose the cancelled row / column
          if (i + 1 < int(cur.diffs.size())) {
            Mat& up = cur.diffs[size_t(i) + 1];
            Mat nu = mat_zero(up.rows() - 1, up.cols());
            for (Eigen::Index rr = 0, ri = 0; rr < up.rows(); ++rr) {
              if (rr == cc) continue;
              nu.row(ri++) = up.row(rr);
            }
            up = nu;
          }
          if (i > 0) {
            Mat& dn = cur.diffs[size_t(i) - 1];
            Mat nn = mat_zero(dn.rows(), dn.cols() - 1);
            for (Eigen::Index c2 = 0, ci = 0; c2 < dn.cols(); ++c2) {
              if (c2 == r) continue;
              nn.col(ci++) = dn.col(c2);
            }
            dn = nn;
          }
          cur.points[size_t(i)].erase(cur.points[size_t(i)].begin() + r);
          cur.points[size_t(i) + 1].erase(cur.points[size_t(i) + 1].begin() + cc);
          d = nd;
          cancelled = true;
        }
    }
    if (!cancelled) break;
  }
  cur.canonicalize();
  return cur;
}

}  // namespace pmod
