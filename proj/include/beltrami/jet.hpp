#pragma once

// First-order forward-mode jets: a value together with its three partial
// derivatives with respect to the seeded coordinates. Jets nest, so
// Jet<Jet<double>> carries second derivatives when both levels are seeded.

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>

#include "beltrami/linalg.hpp"

namespace beltrami {

template <typename T>
struct Jet {
  using scalar_type = T;

  T value{};
  std::array<T, 3> d{};

  constexpr Jet() = default;
  constexpr Jet(double c) : value(c) {}  // NOLINT(google-explicit-constructor)
  constexpr Jet(const T& v)              // NOLINT(google-explicit-constructor)
    requires(!std::same_as<T, double>)
      : value(v) {}
  constexpr Jet(const T& v, const std::array<T, 3>& partials) : value(v), d(partials) {}

  /// Coordinate jet: unit partial in slot `i`, zero elsewhere.
  static constexpr Jet variable(const T& v, std::size_t i) {
    Jet j(v);
    j.d[i] = T(1.0);
    return j;
  }

  constexpr Jet& operator+=(const Jet& o) {
    value += o.value;
    for (std::size_t i = 0; i < 3; ++i) d[i] += o.d[i];
    return *this;
  }
  constexpr Jet& operator-=(const Jet& o) {
    value -= o.value;
    for (std::size_t i = 0; i < 3; ++i) d[i] -= o.d[i];
    return *this;
  }
  constexpr Jet& operator*=(const Jet& o) {
    for (std::size_t i = 0; i < 3; ++i) d[i] = d[i] * o.value + value * o.d[i];
    value *= o.value;
    return *this;
  }
  constexpr Jet& operator/=(const Jet& o) {
    const T inv = T(1.0) / o.value;
    const T q = value * inv;
    for (std::size_t i = 0; i < 3; ++i) d[i] = (d[i] - q * o.d[i]) * inv;
    value = q;
    return *this;
  }
};

using Jet1 = Jet<double>;
using Jet2 = Jet<Jet<double>>;

// value_of strips every jet level.
constexpr double value_of(double x) { return x; }
template <typename T>
constexpr double value_of(const Jet<T>& x) {
  return value_of(x.value);
}

template <typename T>
constexpr Jet<T> operator-(const Jet<T>& a) {
  Jet<T> r;
  r.value = -a.value;
  for (std::size_t i = 0; i < 3; ++i) r.d[i] = -a.d[i];
  return r;
}

template <typename T>
constexpr Jet<T> operator+(Jet<T> a, const Jet<T>& b) {
  return a += b;
}
template <typename T>
constexpr Jet<T> operator-(Jet<T> a, const Jet<T>& b) {
  return a -= b;
}
template <typename T>
constexpr Jet<T> operator*(Jet<T> a, const Jet<T>& b) {
  return a *= b;
}
template <typename T>
constexpr Jet<T> operator/(Jet<T> a, const Jet<T>& b) {
  return a /= b;
}

template <typename T>
constexpr Jet<T> operator+(Jet<T> a, double b) {
  a.value += b;
  return a;
}
template <typename T>
constexpr Jet<T> operator+(double a, Jet<T> b) {
  b.value += a;
  return b;
}
template <typename T>
constexpr Jet<T> operator-(Jet<T> a, double b) {
  a.value -= b;
  return a;
}
template <typename T>
constexpr Jet<T> operator-(double a, const Jet<T>& b) {
  Jet<T> r = -b;
  r.value += a;
  return r;
}
template <typename T>
constexpr Jet<T> operator*(Jet<T> a, double b) {
  a.value *= b;
  for (auto& e : a.d) e *= b;
  return a;
}
template <typename T>
constexpr Jet<T> operator*(double a, Jet<T> b) {
  return b * a;
}
template <typename T>
constexpr Jet<T> operator/(Jet<T> a, double b) {
  return a * (1.0 / b);
}
template <typename T>
constexpr Jet<T> operator/(double a, const Jet<T>& b) {
  return Jet<T>(a) / b;
}

template <typename T>
constexpr bool operator<(const Jet<T>& a, const Jet<T>& b) {
  return value_of(a) < value_of(b);
}
template <typename T>
constexpr bool operator<(const Jet<T>& a, double b) {
  return value_of(a) < b;
}
template <typename T>
constexpr bool operator>(const Jet<T>& a, const Jet<T>& b) {
  return value_of(a) > value_of(b);
}
template <typename T>
constexpr bool operator>(const Jet<T>& a, double b) {
  return value_of(a) > b;
}

// Elementary functions. Chain rule: f(a).d = f'(a.value) * a.d.
template <typename T>
Jet<T> chain(const Jet<T>& a, const T& f, const T& df) {
  Jet<T> r(f);
  for (std::size_t i = 0; i < 3; ++i) r.d[i] = df * a.d[i];
  return r;
}

template <typename T>
Jet<T> sin(const Jet<T>& a) {
  using std::cos;
  using std::sin;
  return chain(a, sin(a.value), cos(a.value));
}

template <typename T>
Jet<T> cos(const Jet<T>& a) {
  using std::cos;
  using std::sin;
  return chain(a, cos(a.value), -sin(a.value));
}

template <typename T>
Jet<T> sqrt(const Jet<T>& a) {
  using std::sqrt;
  const T s = sqrt(a.value);
  return chain(a, s, T(0.5) / s);
}

template <typename T>
Jet<T> exp(const Jet<T>& a) {
  using std::exp;
  const T e = exp(a.value);
  return chain(a, e, e);
}

template <typename T>
Jet<T> atan2(const Jet<T>& y, const Jet<T>& x) {
  using std::atan2;
  const T inv = T(1.0) / (x.value * x.value + y.value * y.value);
  Jet<T> r(atan2(y.value, x.value));
  for (std::size_t i = 0; i < 3; ++i) r.d[i] = (x.value * y.d[i] - y.value * x.d[i]) * inv;
  return r;
}

/// Seeds a point as three coordinate jets.
template <typename T>
Vec3<Jet<T>> seed(const Vec3<T>& x) {
  return {Jet<T>::variable(x[0], 0), Jet<T>::variable(x[1], 1), Jet<T>::variable(x[2], 2)};
}

/// Lifts a point to jets with zero partials.
template <typename T>
Vec3<Jet<T>> constant(const Vec3<T>& x) {
  return {Jet<T>(x[0]), Jet<T>(x[1]), Jet<T>(x[2])};
}

template <typename T>
Vec3<T> values(const Vec3<Jet<T>>& x) {
  return {x[0].value, x[1].value, x[2].value};
}

template <typename T>
Mat3<T> values(const Mat3<Jet<T>>& a) {
  Mat3<T> r;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) r[i][j] = a[i][j].value;
  }
  return r;
}

/// Jacobian entry (i, j) = d(component i) / d(seed j).
template <typename T>
Mat3<T> jacobian(const Vec3<Jet<T>>& f) {
  Mat3<T> r;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) r[i][j] = f[i].d[j];
  }
  return r;
}

/// Partial derivative of every matrix entry along seed `k`.
template <typename T>
Mat3<T> partial(const Mat3<Jet<T>>& a, std::size_t k) {
  Mat3<T> r;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) r[i][j] = a[i][j].d[k];
  }
  return r;
}

}  // namespace beltrami
