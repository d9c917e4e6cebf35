#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>

namespace corrlab {

using Complex = std::complex<double>;

// The division algebra a matrix lives over. beta is the number of real components
// per scalar.
enum class Field { real, complex, quaternion };

constexpr int beta_of(Field f) noexcept {
  switch (f) {
    case Field::real: return 1;
    case Field::complex: return 2;
    case Field::quaternion: return 4;
  }
  return 0;
}

std::string_view to_string(Field f) noexcept;
// Throws UsageError on anything other than "real", "complex", "quaternion".
Field field_from_string(std::string_view name);

// Quaternion stored as the two complex numbers of its 2x2 block
//   [  z      w   ]
//   [ -conj(w) conj(z) ]
// i.e. the real components (z_re, z_im, w_re, w_im).
class Quaternion {
 public:
  constexpr Quaternion() = default;
  constexpr Quaternion(double re) : z_(re, 0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr Quaternion(Complex z, Complex w) : z_(z), w_(w) {}
  constexpr Quaternion(double z_re, double z_im, double w_re, double w_im)
      : z_(z_re, z_im), w_(w_re, w_im) {}

  constexpr Complex z() const { return z_; }
  constexpr Complex w() const { return w_; }

  std::array<double, 4> components() const { return {z_.real(), z_.imag(), w_.real(), w_.imag()}; }

  Quaternion& operator+=(const Quaternion& o) {
    z_ += o.z_;
    w_ += o.w_;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    z_ -= o.z_;
    w_ -= o.w_;
    return *this;
  }
  Quaternion& operator*=(double s) {
    z_ *= s;
    w_ *= s;
    return *this;
  }
  Quaternion& operator/=(double s) {
    z_ /= s;
    w_ /= s;
    return *this;
  }

  friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend Quaternion operator-(const Quaternion& a) { return {-a.z_, -a.w_}; }
  friend Quaternion operator*(Quaternion a, double s) { return a *= s; }
  friend Quaternion operator*(double s, Quaternion a) { return a *= s; }
  friend Quaternion operator/(Quaternion a, double s) { return a /= s; }
  // Block product; non-commutative.
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.z_ * b.z_ - a.w_ * std::conj(b.w_), a.z_ * b.w_ + a.w_ * std::conj(b.z_)};
  }
  friend bool operator==(const Quaternion&, const Quaternion&) = default;

 private:
  Complex z_{};
  Complex w_{};
};

inline Quaternion conj(const Quaternion& q) { return {std::conj(q.z()), -q.w()}; }
inline double norm2(const Quaternion& q) { return std::norm(q.z()) + std::norm(q.w()); }
inline double real_part(const Quaternion& q) { return q.z().real(); }
inline Quaternion inverse(const Quaternion& q) { return conj(q) / norm2(q); }

inline double conj(double x) { return x; }
inline double norm2(double x) { return x * x; }
inline double real_part(double x) { return x; }

inline double norm2(const Complex& c) { return std::norm(c); }
inline double real_part(const Complex& c) { return c.real(); }
inline Complex inverse(const Complex& c) { return 1.0 / c; }
inline double inverse(double x) { return 1.0 / x; }

// Compile-time description of the three scalar types and their flat real layout.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr Field field = Field::real;
  static constexpr int beta = 1;
  static double from_components(std::span<const double> c) { return c[0]; }
  static void to_components(double x, std::span<double> out) { out[0] = x; }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr Field field = Field::complex;
  static constexpr int beta = 2;
  static Complex from_components(std::span<const double> c) { return {c[0], c[1]}; }
  static void to_components(const Complex& x, std::span<double> out) {
    out[0] = x.real();
    out[1] = x.imag();
  }
};

template <>
struct ScalarTraits<Quaternion> {
  static constexpr Field field = Field::quaternion;
  static constexpr int beta = 4;
  static Quaternion from_components(std::span<const double> c) { return {c[0], c[1], c[2], c[3]}; }
  static void to_components(const Quaternion& x, std::span<double> out) {
    auto c = x.components();
    for (int s = 0; s < 4; ++s) out[s] = c[s];
  }
};

template <class T>
concept FieldScalar = requires { ScalarTraits<T>::beta; };

// Calls fn(std::type_identity<T>{}) with the scalar type of the runtime field tag.
template <class Fn>
decltype(auto) dispatch_field(Field f, Fn&& fn) {
  switch (f) {
    case Field::complex: return fn(std::type_identity<Complex>{});
    case Field::quaternion: return fn(std::type_identity<Quaternion>{});
    case Field::real: break;
  }
  return fn(std::type_identity<double>{});
}

}  // namespace corrlab
