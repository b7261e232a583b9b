#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pmod/fp.hpp"

using namespace pmod;

namespace {

Mat make(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  Mat m = mat_zero(Eigen::Index(rows.size()), Eigen::Index(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto& r : rows) {
    Eigen::Index j = 0;
    for (auto v : r) m(i, j++) = Fp(v);
    ++i;
  }
  return m;
}

struct PrimeGuard {
  std::int64_t saved;
  explicit PrimeGuard(std::int64_t p) : saved(Fp::modulus) { Fp::set_modulus(p); }
  ~PrimeGuard() { Fp::modulus = saved; }
};

}  // namespace

TEST_CASE("scalar arithmetic") {
  CHECK(Fp(5) + Fp(-5) == Fp(0));
  CHECK(Fp(32003) == Fp(0));
  CHECK(Fp(7) * Fp(7).inv() == Fp(1));
  CHECK(Fp(-1).lifted() == -1);
  CHECK_THROWS(Fp::set_modulus(32004));
}

TEST_CASE("reduce on the empty matrix") {
  Mat m = mat_zero(0, 0);
  Reduced r = reduce(m);
  CHECK(r.rank == 0);
  CHECK(r.kernel_basis.cols() == 0);
  CHECK(r.image_basis.cols() == 0);
  CHECK(r.coker_projection.rows() == 0);
}

TEST_CASE("reduce on the identity") {
  Reduced r = reduce(mat_identity(3));
  CHECK(r.rank == 3);
  CHECK(r.kernel_basis.cols() == 0);
  CHECK(r.coker_projection.rows() == 0);
}

TEST_CASE("reduce of the rank-one all-ones matrix over F_5") {
  PrimeGuard guard(5);
  Mat m = make({{1, 1}, {1, 1}});
  Reduced r = reduce(m);
  CHECK(r.rank == 1);
  REQUIRE(r.kernel_basis.cols() == 1);
  CHECK(r.kernel_basis(0, 0) == Fp(1));
  CHECK(r.kernel_basis(1, 0) == Fp(-1));
  REQUIRE(r.coker_projection.rows() == 1);
  CHECK(r.coker_projection(0, 0) == Fp(1));
  CHECK(r.coker_projection(0, 1) == Fp(-1));
  CHECK(mat_is_zero(mul(r.coker_projection, m)));
}

TEST_CASE("solve against the identity and the zero map") {
  Mat b = make({{3}, {1}});
  auto x = solve(mat_identity(2), b);
  REQUIRE(x.has_value());
  CHECK(mat_equal(*x, b));

  Mat z = mat_zero(2, 2);
  CHECK(!solve(z, b).has_value());
}

TEST_CASE("solve with back substitution over F_7") {
  PrimeGuard guard(7);
  Mat a = make({{1, 2}, {0, 1}});
  Mat b = make({{3}, {1}});
  auto x = solve(a, b);
  REQUIRE(x.has_value());
  CHECK(mat_equal(*x, make({{1}, {1}})));
  CHECK(mat_equal(mul(a, *x), b));
}

TEST_CASE("rank-nullity and cokernel annihilation on random matrices") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(0, 6), entry(-3, 3);
  for (int it = 0; it < 200; ++it) {
    Mat m = mat_zero(dim(rng), dim(rng));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Fp(entry(rng));
    Reduced r = reduce(m);
    CHECK(r.rank + r.kernel_basis.cols() == m.cols());
    CHECK(r.coker_projection.rows() == m.rows() - r.rank);
    CHECK(mat_is_zero(mul(r.coker_projection, m)));
    CHECK(mat_is_zero(mul(m, r.kernel_basis)));

    // a consistent system solves back exactly
    Mat x = mat_zero(m.cols(), 2);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = Fp(entry(rng));
    Mat b = mul(m, x);
    auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(mat_equal(mul(m, *sol), b));
  }
}
