#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "corrlab/algebra.hpp"
#include "corrlab/error.hpp"
#include "support.hpp"

using namespace corrlab;
using namespace corrlab::testing;

namespace {

std::array<double, 4> comps(const Quaternion& q) {
  return {q.z().real(), q.z().imag(), q.w().real(), q.w().imag()};
}

double comp_diff(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

template <FieldScalar T>
bool is_hermitian(const Matrix<T>& m, double tol) {
  return max_abs_diff(m, adjoint(m)) <= tol;
}

}  // namespace

TEST_CASE("quaternion product agrees with the Hamilton product") {
  Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    const Quaternion p = random_scalar<Quaternion>(rng);
    const Quaternion q = random_scalar<Quaternion>(rng);
    CHECK(comp_diff(comps(p * q), hamilton(comps(p), comps(q))) < 1e-13);
  }
  // i j = k, j i = -k
  const Quaternion qi(0, 1, 0, 0), qj(0, 0, 1, 0), qk(0, 0, 0, 1);
  CHECK(comps(qi * qj) == comps(qk));
  CHECK(comps(qj * qi) == comps(-1.0 * qk));
}

TEST_CASE("quaternion algebra: conjugation, norm, inverse, embedding") {
  Rng rng(22);
  for (int i = 0; i < 300; ++i) {
    const Quaternion p = random_scalar<Quaternion>(rng);
    const Quaternion q = random_scalar<Quaternion>(rng);
    // conj(pq) = conj(q) conj(p), |pq|^2 = |p|^2 |q|^2
    CHECK(comp_diff(comps(conj(p * q)), comps(conj(q) * conj(p))) < 1e-13);
    CHECK(std::abs(norm2(p * q) - norm2(p) * norm2(q)) < 1e-12 * (1 + norm2(p) * norm2(q)));
    CHECK(comp_diff(comps(p * inverse(p)), {1, 0, 0, 0}) < 1e-12);
    // embedding is a homomorphism
    const auto lhs = quaternion_embed(p * q);
    const auto rhs = quaternion_embed(p) * quaternion_embed(q);
    CHECK(max_abs_diff(lhs, rhs) < 1e-13);
    CHECK(comp_diff(comps(quaternion_extract(quaternion_embed(p))), comps(p)) == 0.0);
  }
  Matrix<Complex> bad(2, 2);
  bad(0, 0) = 1.0;
  bad(1, 1) = 2.0;
  CHECK_THROWS_AS(quaternion_extract(bad), InvalidInput);
}

TEST_CASE("cholesky example") {
  Matrix<double> s(2, 2);
  s(0, 0) = 4;
  s(1, 0) = s(0, 1) = 2;
  s(1, 1) = 5;
  const auto l = cholesky_decompose(s);
  CHECK(l(0, 0) == 2.0);
  CHECK(l(1, 0) == 1.0);
  CHECK(l(1, 1) == 2.0);
  CHECK(l(0, 1) == 0.0);
  CHECK(std::abs(log_det(l) - std::log(16.0)) < 1e-15);
}

TEST_CASE_TEMPLATE("cholesky reconstructs, has positive diagonal and the oracle determinant", T, double, Complex,
                   Quaternion) {
  Rng rng(23);
  for (std::size_t n = 1; n <= 12; ++n)
    for (int rep = 0; rep < 20; ++rep) {
      const Matrix<T> s = random_pd<T>(n, rng);
      const auto l = cholesky_decompose(s);
      CHECK(max_abs_diff(gram(l), s) < 1e-12);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(l.diagonal(j) > 0.0);
        CHECK(norm2(T(l(j, j) - T(l.diagonal(j)))) == 0.0);
        for (std::size_t k = j + 1; k < n; ++k) CHECK(norm2(l(j, k)) == 0.0);
      }
      CHECK(std::abs(log_det(l) - oracle_log_det(s)) < 1e-10);
      CHECK(is_hermitian(gram(l), 0.0));
    }
}

TEST_CASE_TEMPLATE("cholesky factor of the factor's Gram is the factor", T, double, Complex, Quaternion) {
  Rng rng(24);
  for (int rep = 0; rep < 50; ++rep) {
    const auto lower = random_lower<T>(5, rng);
    const auto l = cholesky_decompose(gram_rows(lower));
    CHECK(max_abs_diff(l.matrix(), lower) < 1e-12);
  }
}

TEST_CASE("cholesky failure reports the 1-based pivot") {
  Matrix<double> s = Matrix<double>::identity(3);
  s(2, 1) = s(1, 2) = 1.0;
  try {
    (void)cholesky_decompose(s);
    FAIL("expected NotPositiveDefinite");
  } catch (const NotPositiveDefinite& e) {
    CHECK(e.index() == 3);
  }
  Matrix<double> neg = Matrix<double>::identity(2);
  neg(0, 0) = -1.0;
  CHECK_THROWS_AS(cholesky_decompose(neg), NotPositiveDefinite);
  CHECK_THROWS_AS(cholesky_decompose(Matrix<double>(2, 3)), UsageError);
}

TEST_CASE("CholeskyFactor::from_lower validates") {
  Matrix<double> l = Matrix<double>::identity(2);
  CHECK_NOTHROW(CholeskyFactor<double>::from_lower(l));
  l(0, 1) = 0.5;
  CHECK_THROWS_AS(CholeskyFactor<double>::from_lower(l), InvalidInput);
  Matrix<Complex> lc = Matrix<Complex>::identity(2);
  lc(1, 1) = Complex(1.0, 0.1);
  CHECK_THROWS_AS(CholeskyFactor<Complex>::from_lower(lc), InvalidInput);
  Matrix<double> z = Matrix<double>::identity(2);
  z(1, 1) = 0.0;
  CHECK_THROWS_AS(CholeskyFactor<double>::from_lower(z), InvalidInput);
}

TEST_CASE("schur complement example") {
  // [[1, r], [r, 1]] / 1 = 1 - r^2
  Matrix<double> r = Matrix<double>::identity(2);
  r(1, 0) = r(0, 1) = 0.6;
  const auto s = schur_complement(r, 1);
  REQUIRE(s.rows() == 1);
  CHECK(std::abs(s(0, 0) - 0.64) < 1e-15);
  CHECK(schur_complement(r, 0) == r);
}

TEST_CASE_TEMPLATE("schur complement: determinant factorisation and inverse block", T, double, Complex, Quaternion) {
  Rng rng(25);
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t c = 1; c < n; ++c) {
      const Matrix<T> s = random_pd<T>(n, rng);
      const Matrix<T> sc = schur_complement(s, c);
      CHECK(sc.rows() == n - c);
      CHECK(is_hermitian(sc, 1e-12));
      // det S = det S11 det(S/S11)
      const double lhs = oracle_log_det(s);
      const double rhs = oracle_log_det(block(s, 0, 0, c, c)) + oracle_log_det(sc);
      CHECK(std::abs(lhs - rhs) < 1e-10);
      // S/S11 = L22 L22^dagger for the trailing block of the full factor
      const auto full = cholesky_decompose(s);
      Matrix<T> l22 = block(full.matrix(), c, c, n - c, n - c);
      CHECK(max_abs_diff(gram_rows(l22), sc) < 1e-11);
    }
}

TEST_CASE_TEMPLATE("partial_corr_from_schur has unit diagonal and matches the correlation of the complement", T,
                   double, Complex, Quaternion) {
  Rng rng(26);
  const Matrix<T> r = normalise_to_correlation(random_pd<T>(5, rng));
  const auto p = partial_corr_from_schur(r, 2);
  REQUIRE(p.rows() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(real_part(p(i, i)) - 1.0) < 1e-14);
  CHECK(max_abs_diff(p, normalise_to_correlation(schur_complement(r, 2))) < 1e-13);
  CHECK(is_valid_correlation(p));
}

TEST_CASE("partial_corr_from_schur degenerate complement") {
  Matrix<double> r = Matrix<double>::identity(3);
  r(1, 0) = r(0, 1) = 1.0 - 1e-15;
  r(2, 0) = r(0, 2) = 0.0;
  CHECK_THROWS(partial_corr_from_schur(r, 1));
}

TEST_CASE("is_valid_correlation reasons") {
  Matrix<double> r = Matrix<double>::identity(3);
  CHECK(is_valid_correlation(r));
  r(1, 0) = r(0, 1) = 0.5;
  CHECK(is_valid_correlation(r));

  auto off_diag = r;
  off_diag(2, 2) = 1.1;
  CHECK_FALSE(is_valid_correlation(off_diag));
  CHECK_FALSE(is_valid_correlation(off_diag).reason.empty());

  auto asym = r;
  asym(1, 0) = 0.4;
  CHECK_FALSE(is_valid_correlation(asym));

  auto indefinite = r;
  indefinite(2, 0) = indefinite(0, 2) = 0.9;
  indefinite(2, 1) = indefinite(1, 2) = -0.9;
  CHECK_FALSE(is_valid_correlation(indefinite));
  CHECK_THROWS_AS(CorrelationMatrix<double>::validated(indefinite), InvalidInput);

  Matrix<Complex> c = Matrix<Complex>::identity(2);
  c(1, 0) = Complex(0.3, 0.4);
  c(0, 1) = Complex(0.3, -0.4);
  CHECK(is_valid_correlation(c));
  c(0, 1) = Complex(0.3, 0.4);
  CHECK_FALSE(is_valid_correlation(c));
}

TEST_CASE("quaternion_embed examples") {
  const auto one = quaternion_embed(Quaternion(1, 0, 0, 0));
  CHECK(one == Matrix<Complex>::identity(2));
  const auto j = quaternion_embed(Quaternion(0, 0, 1, 0));
  CHECK(j(0, 0) == Complex(0));
  CHECK(j(0, 1) == Complex(1));
  CHECK(j(1, 0) == Complex(-1));
  CHECK(j(1, 1) == Complex(0));
  const auto i = quaternion_embed(Quaternion(0, 1, 0, 0));
  CHECK(i(0, 0) == Complex(0, 1));
  CHECK(i(1, 1) == Complex(0, -1));
  CHECK(i(0, 1) == Complex(0));
}

TEST_CASE("cholesky and gram small examples") {
  CHECK(cholesky_decompose(Matrix<double>::identity(4)).matrix() == Matrix<double>::identity(4));
  Matrix<double> r = Matrix<double>::identity(2);
  r(1, 0) = r(0, 1) = 0.5;
  const auto l = cholesky_decompose(r);
  CHECK(std::abs(l(1, 0) - 0.5) < 1e-15);
  CHECK(std::abs(l(1, 1) - std::sqrt(3.0) / 2) < 1e-15);

  Matrix<double> ones(2, 2);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) ones(a, b) = 1.0;
  try {
    (void)cholesky_decompose(ones);
    FAIL("expected NotPositiveDefinite");
  } catch (const NotPositiveDefinite& e) {
    CHECK(e.index() == 2);
  }

  Matrix<double> lt = Matrix<double>::identity(2);
  lt(1, 0) = std::cos(std::numbers::pi / 3);
  lt(1, 1) = std::sin(std::numbers::pi / 3);
  CHECK(max_abs_diff(gram(CholeskyFactor<double>::from_lower(lt)), r) < 1e-15);
}

TEST_CASE("schur complement and partial correlation examples") {
  Matrix<double> r = Matrix<double>::identity(2);
  r(1, 0) = r(0, 1) = 0.5;
  CHECK(std::abs(schur_complement(r, 1)(0, 0) - 0.75) < 1e-15);

  Matrix<double> r3(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r3(i, j) = i == j ? 1.0 : 0.5;
  CHECK(partial_corr_from_schur(r3, 0) == r3);
  CHECK(std::abs(partial_corr_from_schur(r3, 1)(1, 0) - 1.0 / 3.0) < 1e-15);
  for (std::size_t c = 0; c < 4; ++c)
    CHECK(partial_corr_from_schur(Matrix<double>::identity(4), c) == Matrix<double>::identity(4 - c));
}

TEST_CASE("is_valid_correlation small examples") {
  Matrix<double> r = Matrix<double>::identity(2);
  r(1, 0) = r(0, 1) = 0.9;
  CHECK(is_valid_correlation(r));
  Matrix<double> r3(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r3(i, j) = i == j ? 1.0 : -0.9;
  CHECK_FALSE(is_valid_correlation(r3));
}

TEST_CASE_TEMPLATE("log_det_hermitian", T, double, Complex, Quaternion) {
  Rng rng(27);
  for (std::size_t n = 1; n <= 6; ++n) {
    const Matrix<T> s = random_pd<T>(n, rng);
    CHECK(std::abs(log_det_hermitian(s) - oracle_log_det(s)) < 1e-11);
    CHECK(std::abs(log_det_hermitian(s) - log_det(cholesky_decompose(s))) < 1e-13);
  }
  // below the relative pivot floor but still positive definite
  Matrix<T> tiny = Matrix<T>::identity(2);
  tiny(1, 1) = T(1e-14);
  CHECK_THROWS_AS(cholesky_decompose(tiny), NotPositiveDefinite);
  CHECK(std::abs(log_det_hermitian(tiny) - std::log(1e-14)) < 1e-12);
  Matrix<T> singular = Matrix<T>::identity(2);
  singular(1, 0) = singular(0, 1) = T(1.0);
  CHECK(log_det_hermitian(singular) == -std::numeric_limits<double>::infinity());
}
