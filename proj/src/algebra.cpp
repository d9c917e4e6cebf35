#include "corrlab/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "corrlab/error.hpp"

namespace corrlab {

std::string_view to_string(Field f) noexcept {
  switch (f) {
    case Field::real: return "real";
    case Field::complex: return "complex";
    case Field::quaternion: return "quaternion";
  }
  return "real";
}

Field field_from_string(std::string_view name) {
  if (name == "real") return Field::real;
  if (name == "complex") return Field::complex;
  if (name == "quaternion") return Field::quaternion;
  throw UsageError("unknown field '" + std::string(name) + "' (expected real, complex or quaternion)");
}

namespace {

template <FieldScalar T>
double max_diagonal(const Matrix<T>& s) {
  double m = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i) m = std::max(m, real_part(s(i, i)));
  return m;
}

template <FieldScalar T>
void require_square(const Matrix<T>& s, const char* what) {
  if (!s.square()) throw UsageError(std::string(what) + ": matrix must be square");
}

// Fill the strict upper triangle from the lower one and drop imaginary parts on the diagonal.
template <FieldScalar T>
void hermitise_from_lower(Matrix<T>& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    m(j, j) = T(real_part(m(j, j)));
    for (std::size_t i = j + 1; i < m.rows(); ++i) m(j, i) = conj(m(i, j));
  }
}

}  // namespace

Matrix<Complex> quaternion_embed(const Quaternion& q) {
  Matrix<Complex> b(2, 2);
  b(0, 0) = q.z();
  b(0, 1) = q.w();
  b(1, 0) = -std::conj(q.w());
  b(1, 1) = std::conj(q.z());
  return b;
}

Quaternion quaternion_extract(const Matrix<Complex>& b) {
  if (b.rows() != 2 || b.cols() != 2) throw UsageError("quaternion_extract: expected a 2x2 block");
  const double err = std::max(std::abs(b(1, 1) - std::conj(b(0, 0))), std::abs(b(1, 0) + std::conj(b(0, 1))));
  if (err > 1e-12) throw InvalidInput("2x2 block does not have quaternion structure");
  return {b(0, 0), b(0, 1)};
}

Matrix<Complex> quaternion_embed(const Matrix<Quaternion>& m) {
  Matrix<Complex> out(2 * m.rows(), 2 * m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) {
      auto b = quaternion_embed(m(i, j));
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t r = 0; r < 2; ++r) out(2 * i + r, 2 * j + c) = b(r, c);
    }
  return out;
}

template <FieldScalar T>
CholeskyFactor<T> CholeskyFactor<T>::from_lower(Matrix<T> lower) {
  require_square(lower, "CholeskyFactor");
  for (std::size_t j = 0; j < lower.cols(); ++j) {
    for (std::size_t i = 0; i < j; ++i)
      if (norm2(lower(i, j)) != 0.0) throw InvalidInput("Cholesky factor must be lower triangular");
    const T& d = lower(j, j);
    if (!(real_part(d) > 0.0) || std::abs(norm2(d) - real_part(d) * real_part(d)) > 0.0)
      throw InvalidInput("Cholesky factor diagonal must be real and positive");
  }
  return CholeskyFactor(std::move(lower));
}

namespace {

// Cholesky into l; returns 0 on success or the 1-based index of the first pivot <= floor.
template <FieldScalar T>
std::size_t factor(const Matrix<T>& s, double floor, Matrix<T>& l) {
  const std::size_t n = s.rows();
  l = Matrix<T>(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = real_part(s(j, j));
    for (std::size_t k = 0; k < j; ++k) pivot -= norm2(l(j, k));
    if (!(pivot > floor) || !std::isfinite(pivot)) return j + 1;
    const double ljj = std::sqrt(pivot);
    l(j, j) = T(ljj);
    for (std::size_t i = j + 1; i < n; ++i) {
      T acc = s(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * conj(l(j, k));
      l(i, j) = acc / ljj;
    }
  }
  return 0;
}

}  // namespace

template <FieldScalar T>
CholeskyFactor<T> cholesky_decompose(const Matrix<T>& s) {
  require_square(s, "cholesky_decompose");
  if (s.rows() == 0) throw UsageError("cholesky_decompose: empty matrix");
  Matrix<T> l;
  if (const std::size_t failed = factor(s, kPivotFloor * max_diagonal(s), l)) throw NotPositiveDefinite(failed);
  return CholeskyFactorAccess::adopt(std::move(l));
}

template <FieldScalar T>
double log_det_hermitian(const Matrix<T>& s) {
  require_square(s, "log_det_hermitian");
  Matrix<T> l;
  if (factor(s, 0.0, l) != 0) return -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (std::size_t j = 0; j < s.rows(); ++j) acc += std::log(real_part(l(j, j)));
  return 2.0 * acc;
}

template <FieldScalar T>
Matrix<T> gram(const CholeskyFactor<T>& f) {
  const auto& l = f.matrix();
  const std::size_t n = l.rows();
  Matrix<T> out(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i < n; ++i) {
      T acc{};
      for (std::size_t k = 0; k <= j; ++k) acc += l(i, k) * conj(l(j, k));
      out(i, j) = acc;
    }
  hermitise_from_lower(out);
  return out;
}

template <FieldScalar T>
Matrix<T> gram_rows(const Matrix<T>& z) {
  const std::size_t n = z.rows();
  Matrix<T> out(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i < n; ++i) {
      T acc{};
      for (std::size_t k = 0; k < z.cols(); ++k) acc += z(i, k) * conj(z(j, k));
      out(i, j) = acc;
    }
  hermitise_from_lower(out);
  return out;
}

template <FieldScalar T>
Matrix<T> schur_complement(const Matrix<T>& s, std::size_t conditioned) {
  require_square(s, "schur_complement");
  const std::size_t n = s.rows();
  if (conditioned >= n) throw UsageError("schur_complement: must keep at least one variable");
  if (conditioned == 0) return s;
  const std::size_t m = n - conditioned;
  const auto a = cholesky_decompose(block(s, 0, 0, conditioned, conditioned));
  // Y = A^{-1} S_12 by forward substitution; then S/S_11 = S_22 - Y^dagger Y.
  Matrix<T> y = block(s, 0, conditioned, conditioned, m);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t r = 0; r < conditioned; ++r) {
      T acc = y(r, c);
      for (std::size_t k = 0; k < r; ++k) acc -= a(r, k) * y(k, c);
      y(r, c) = acc / a.diagonal(r);
    }
  Matrix<T> out(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = j; i < m; ++i) {
      T acc = s(conditioned + i, conditioned + j);
      for (std::size_t k = 0; k < conditioned; ++k) acc -= conj(y(k, i)) * y(k, j);
      out(i, j) = acc;
    }
  hermitise_from_lower(out);
  return out;
}

template <FieldScalar T>
Matrix<T> partial_corr_from_schur(const Matrix<T>& r, std::size_t conditioned) {
  const double floor = kPivotFloor * max_diagonal(r);
  Matrix<T> s = schur_complement(r, conditioned);
  const std::size_t m = s.rows();
  std::vector<double> root(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double d = real_part(s(i, i));
    if (!(d > floor)) {
      std::ostringstream msg;
      msg << "partial variance of variable " << conditioned + i + 1 << " given the first " << conditioned
          << " is degenerate (" << d << ")";
      throw Degenerate(msg.str());
    }
    root[i] = std::sqrt(d);
  }
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) s(i, j) = i == j ? T(1.0) : s(i, j) / (root[i] * root[j]);
  return s;
}

template <FieldScalar T>
double log_det(const CholeskyFactor<T>& l) {
  double acc = 0.0;
  for (std::size_t j = 0; j < l.dim(); ++j) acc += std::log(l.diagonal(j));
  return 2.0 * acc;
}

template <FieldScalar T>
Validity is_valid_correlation(const Matrix<T>& m) {
  if (!m.square() || m.rows() == 0) return {false, "matrix must be square and non-empty"};
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::sqrt(norm2(T(m(i, i) - T(1.0)))) > kUnitDiagonalTol)
      return {false, "diagonal entry " + std::to_string(i + 1) + " is not 1"};
    for (std::size_t j = 0; j < i; ++j)
      if (std::sqrt(norm2(T(m(i, j) - conj(m(j, i))))) > 1e-12)
        return {false, "matrix is not Hermitian at (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")"};
  }
  try {
    (void)cholesky_decompose(m);
  } catch (const NotPositiveDefinite& e) {
    return {false, e.what()};
  }
  return {true, {}};
}

#define CORRLAB_INSTANTIATE(T)                                                   \
  template class CholeskyFactor<T>;                                              \
  template CholeskyFactor<T> cholesky_decompose<T>(const Matrix<T>&);           \
  template Matrix<T> gram<T>(const CholeskyFactor<T>&);                          \
  template Matrix<T> gram_rows<T>(const Matrix<T>&);                             \
  template Matrix<T> schur_complement<T>(const Matrix<T>&, std::size_t);         \
  template Matrix<T> partial_corr_from_schur<T>(const Matrix<T>&, std::size_t);  \
  template double log_det<T>(const CholeskyFactor<T>&);                          \
  template double log_det_hermitian<T>(const Matrix<T>&);                        \
  template Validity is_valid_correlation<T>(const Matrix<T>&);

CORRLAB_INSTANTIATE(double)
CORRLAB_INSTANTIATE(Complex)
CORRLAB_INSTANTIATE(Quaternion)

#undef CORRLAB_INSTANTIATE

}  // namespace corrlab
