// fp.hpp -- exact arithmetic over a prime field F_p and dense linear algebra
// on top of Eigen matrices with F_p entries.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace pmod {

/// Residue modulo a session-wide prime. All matrices in the library carry
/// this scalar; the prime defaults to 32003 and may be changed once per
/// session before any matrices are built.
struct Fp {
  static inline std::int64_t modulus = 32003;

  std::int64_t v = 0;

  Fp() = default;
  Fp(std::int64_t x) : v(x % modulus) {
    if (v < 0) v += modulus;
  }

  static void set_modulus(std::int64_t p) {
    if (p < 2 || p > (std::int64_t(1) << 31)) throw std::invalid_argument("field prime out of range");
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("field modulus must be prime");
    modulus = p;
  }

  bool is_zero() const { return v == 0; }

  Fp inv() const {
    if (v == 0) throw std::domain_error("inverse of zero in F_p");
    // extended Euclid
    std::int64_t a = v, b = modulus, x0 = 1, x1 = 0;
    while (b != 0) {
      std::int64_t q = a / b;
      std::int64_t t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    return Fp(x0);
  }

  friend Fp operator+(Fp a, Fp b) { return Fp(a.v + b.v); }
  friend Fp operator-(Fp a, Fp b) { return Fp(a.v - b.v); }
  friend Fp operator-(Fp a) { return Fp(-a.v); }
  friend Fp operator*(Fp a, Fp b) { return Fp(a.v * b.v); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }

  /// Signed representative in (-p/2, p/2], used when printing.
  std::int64_t lifted() const { return v > modulus / 2 ? v - modulus : v; }

  friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.lifted(); }
};

}  // namespace pmod

namespace Eigen {
template <>
struct NumTraits<pmod::Fp> {
  using Real = pmod::Fp;
  using NonInteger = pmod::Fp;
  using Literal = pmod::Fp;
  using Nested = pmod::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline pmod::Fp epsilon() { return pmod::Fp(0); }
  static inline pmod::Fp dummy_precision() { return pmod::Fp(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace pmod {

using Mat = Eigen::Matrix<Fp, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Fp, Eigen::Dynamic, 1>;

inline Mat mat_zero(Eigen::Index r, Eigen::Index c) { return Mat::Constant(r, c, Fp(0)); }

inline Mat mat_identity(Eigen::Index n) {
  Mat m = mat_zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Fp(1);
  return m;
}

inline bool mat_equal(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

inline bool mat_is_zero(const Mat& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

inline Mat hcat(const Mat& a, const Mat& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0 && a.rows() != b.rows() && b.rows() == 0) return a;
  Mat m = mat_zero(a.rows(), a.cols() + b.cols());
  m.block(0, 0, a.rows(), a.cols()) = a;
  m.block(0, a.cols(), b.rows(), b.cols()) = b;
  return m;
}

inline Mat vcat(const Mat& a, const Mat& b) {
  if (a.rows() == 0) return b;
  Mat m = mat_zero(a.rows() + b.rows(), a.cols());
  m.block(0, 0, a.rows(), a.cols()) = a;
  m.block(a.rows(), 0, b.rows(), b.cols()) = b;
  return m;
}

/// Matrix product that tolerates empty factors.
inline Mat mul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mul: shape mismatch");
  if (a.rows() == 0 || b.cols() == 0 || a.cols() == 0) return mat_zero(a.rows(), b.cols());
  return a * b;
}

/// Row reduction summary. Kernel columns and cokernel rows are normalized so
/// that the first nonzero coordinate equals one; this pins a canonical basis
/// for every quotient and kernel taken downstream.
struct Reduced {
  int rank = 0;
  std::vector<int> pivot_cols;
  Mat rref;              // reduced row-echelon form of the input
  Mat kernel_basis;      // cols x (cols - rank)
  Mat image_basis;       // rows x rank, original pivot columns
  Mat coker_projection;  // (rows - rank) x rows, kills the column space
};

namespace detail {

// In-place RREF with first-nonzero pivoting; returns pivot columns.
inline std::vector<int> rref_in_place(Mat& m) {
  std::vector<int> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pr = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (!m(r, col).is_zero()) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    if (pr != row) m.row(pr).swap(m.row(row));
    Fp inv = m(row, col).inv();
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      Fp f = m(r, col);
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
    }
    pivots.push_back(int(col));
    ++row;
  }
  return pivots;
}

inline void normalize_leading_one_col(Mat& m, Eigen::Index c) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (!m(i, c).is_zero()) {
      Fp inv = m(i, c).inv();
      for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) *= inv;
      return;
    }
}

}  // namespace detail

inline Reduced reduce(const Mat& m) {
  Reduced out;
  out.rref = m;
  out.pivot_cols = detail::rref_in_place(out.rref);
  out.rank = int(out.pivot_cols.size());

  const Eigen::Index rows = m.rows(), cols = m.cols();

  // kernel: one column per free variable, in ascending column order
  std::vector<bool> is_pivot(cols, false);
  for (int c : out.pivot_cols) is_pivot[c] = true;
  out.kernel_basis = mat_zero(cols, cols - out.rank);
  {
    Eigen::Index k = 0;
    for (Eigen::Index f = 0; f < cols; ++f) {
      if (is_pivot[f]) continue;
      out.kernel_basis(f, k) = Fp(1);
      for (int i = 0; i < out.rank; ++i) out.kernel_basis(out.pivot_cols[i], k) = -out.rref(i, f);
      detail::normalize_leading_one_col(out.kernel_basis, k);
      ++k;
    }
  }

  out.image_basis = mat_zero(rows, out.rank);
  for (int i = 0; i < out.rank; ++i) out.image_basis.col(i) = m.col(out.pivot_cols[i]);

  // cokernel projection: left null space, via the kernel of the transpose
  {
    Mat t = m.transpose();
    std::vector<int> tp = detail::rref_in_place(t);
    std::vector<bool> piv(rows, false);
    for (int c : tp) piv[c] = true;
    out.coker_projection = mat_zero(rows - Eigen::Index(tp.size()), rows);
    Eigen::Index k = 0;
    for (Eigen::Index f = 0; f < rows; ++f) {
      if (piv[f]) continue;
      out.coker_projection(k, f) = Fp(1);
      for (size_t i = 0; i < tp.size(); ++i) out.coker_projection(k, tp[i]) = -t(Eigen::Index(i), f);
      // normalize row leading entry to one
      for (Eigen::Index j = 0; j < rows; ++j)
        if (!out.coker_projection(k, j).is_zero()) {
          Fp inv = out.coker_projection(k, j).inv();
          for (Eigen::Index c = 0; c < rows; ++c) out.coker_projection(k, c) *= inv;
          break;
        }
      ++k;
    }
  }
  return out;
}

inline int rank_of(const Mat& m) {
  Mat t = m;
  return int(detail::rref_in_place(t).size());
}

/// Solves a*x = b column by column; absent when inconsistent.
inline std::optional<Mat> solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  Mat aug = hcat(a, b);
  std::vector<int> pivots = detail::rref_in_place(aug);
  for (int c : pivots)
    if (c >= a.cols()) return std::nullopt;
  Mat x = mat_zero(a.cols(), b.cols());
  for (size_t i = 0; i < pivots.size(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) x(pivots[i], j) = aug(Eigen::Index(i), a.cols() + j);
  return x;
}

}  // namespace pmod
