#pragma once

// Fixed-size 3-vectors and 3x3 matrices over an arbitrary scalar type. The
// scalar may be double or a (nested) Jet, so every operation here is written
// with plain arithmetic only.

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>

namespace beltrami {

template <typename T>
struct Vec3 {
  std::array<T, 3> v{};

  constexpr Vec3() = default;
  constexpr Vec3(T x, T y, T z) : v{x, y, z} {}

  constexpr T& operator[](std::size_t i) { return v[i]; }
  constexpr const T& operator[](std::size_t i) const { return v[i]; }

  constexpr Vec3& operator+=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) v[i] += o.v[i];
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) v[i] -= o.v[i];
    return *this;
  }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

using Vec3d = Vec3<double>;

template <typename T>
constexpr Vec3<T> operator+(Vec3<T> a, const Vec3<T>& b) {
  return a += b;
}
template <typename T>
constexpr Vec3<T> operator-(Vec3<T> a, const Vec3<T>& b) {
  return a -= b;
}
template <typename T>
constexpr Vec3<T> operator-(const Vec3<T>& a) {
  return {-a[0], -a[1], -a[2]};
}
template <typename T, typename S>
constexpr Vec3<T> operator*(const S& s, const Vec3<T>& a) {
  return {s * a[0], s * a[1], s * a[2]};
}
template <typename T, typename S>
constexpr Vec3<T> operator*(const Vec3<T>& a, const S& s) {
  return {a[0] * s, a[1] * s, a[2] * s};
}
template <typename T, typename S>
constexpr Vec3<T> operator/(const Vec3<T>& a, const S& s) {
  return {a[0] / s, a[1] / s, a[2] / s};
}

template <typename T>
constexpr T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <typename T>
constexpr Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3d& a) { return std::sqrt(dot(a, a)); }

inline double max_abs_diff(const Vec3d& a, const Vec3d& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 3; ++i) m = std::fmax(m, std::fabs(a[i] - b[i]));
  return m;
}

inline std::ostream& operator<<(std::ostream& os, const Vec3d& a) {
  return os << '(' << a[0] << ", " << a[1] << ", " << a[2] << ')';
}

/// Row-major 3x3 matrix.
template <typename T>
struct Mat3 {
  std::array<std::array<T, 3>, 3> m{};

  constexpr std::array<T, 3>& operator[](std::size_t i) { return m[i]; }
  constexpr const std::array<T, 3>& operator[](std::size_t i) const { return m[i]; }

  static constexpr Mat3 identity() {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) r[i][j] = T(i == j ? 1.0 : 0.0);
    }
    return r;
  }

  /// Matrix whose columns are the given vectors.
  static constexpr Mat3 from_columns(const Vec3<T>& c0, const Vec3<T>& c1,
                                     const Vec3<T>& c2) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i) {
      r[i][0] = c0[i];
      r[i][1] = c1[i];
      r[i][2] = c2[i];
    }
    return r;
  }

  constexpr Vec3<T> column(std::size_t j) const { return {m[0][j], m[1][j], m[2][j]}; }
  constexpr Vec3<T> row(std::size_t i) const { return {m[i][0], m[i][1], m[i][2]}; }
};

using Mat3d = Mat3<double>;

template <typename T>
constexpr Mat3<T> transpose(const Mat3<T>& a) {
  Mat3<T> r;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) r[i][j] = a[j][i];
  }
  return r;
}

template <typename T>
constexpr Mat3<T> operator*(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> r;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      T s = a[i][0] * b[0][j];
      for (std::size_t k = 1; k < 3; ++k) s += a[i][k] * b[k][j];
      r[i][j] = s;
    }
  }
  return r;
}

template <typename T>
constexpr Vec3<T> operator*(const Mat3<T>& a, const Vec3<T>& x) {
  return {a[0][0] * x[0] + a[0][1] * x[1] + a[0][2] * x[2],
          a[1][0] * x[0] + a[1][1] * x[1] + a[1][2] * x[2],
          a[2][0] * x[0] + a[2][1] * x[1] + a[2][2] * x[2]};
}

template <typename T>
constexpr Mat3<T> operator-(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> r;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) r[i][j] = a[i][j] - b[i][j];
  }
  return r;
}

template <typename T>
constexpr T det(const Mat3<T>& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

/// Transposed cofactor matrix, so that a * adjugate(a) = det(a) * I.
template <typename T>
constexpr Mat3<T> adjugate(const Mat3<T>& a) {
  Mat3<T> r;
  r[0][0] = a[1][1] * a[2][2] - a[1][2] * a[2][1];
  r[0][1] = a[0][2] * a[2][1] - a[0][1] * a[2][2];
  r[0][2] = a[0][1] * a[1][2] - a[0][2] * a[1][1];
  r[1][0] = a[1][2] * a[2][0] - a[1][0] * a[2][2];
  r[1][1] = a[0][0] * a[2][2] - a[0][2] * a[2][0];
  r[1][2] = a[0][2] * a[1][0] - a[0][0] * a[1][2];
  r[2][0] = a[1][0] * a[2][1] - a[1][1] * a[2][0];
  r[2][1] = a[0][1] * a[2][0] - a[0][0] * a[2][1];
  r[2][2] = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return r;
}

template <typename T>
constexpr Mat3<T> inverse(const Mat3<T>& a) {
  const T d = det(a);
  Mat3<T> r = adjugate(a);
  for (auto& row : r.m) {
    for (auto& e : row) e = e / d;
  }
  return r;
}

inline double max_abs_diff(const Mat3d& a, const Mat3d& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) m = std::fmax(m, std::fabs(a[i][j] - b[i][j]));
  }
  return m;
}

inline double frobenius_norm(const Mat3d& a) {
  double s = 0.0;
  for (const auto& row : a.m) {
    for (double e : row) s += e * e;
  }
  return std::sqrt(s);
}

}  // namespace beltrami
