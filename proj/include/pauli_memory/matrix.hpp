#pragma once

// Small fixed-size complex matrices for two-qubit operators.
//
// Basis ordering is |00>, |01>, |10>, |11> with the first qubit as the left
// tensor factor, so the basis index of |f s> is 2*f + s.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace pauli_memory {

using cplx = std::complex<double>;

template <std::size_t N>
struct Matrix {
  std::array<cplx, N * N> a{};

  static constexpr std::size_t size = N;

  cplx& operator()(std::size_t i, std::size_t j) { return a[i * N + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * N + j]; }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) a[i] += o.a[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) a[i] -= o.a[i];
    return *this;
  }
  Matrix& operator*=(cplx s) {
    for (auto& x : a) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
  friend Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }
  friend Matrix operator*(Matrix x, cplx s) { return x *= s; }
  friend Matrix operator*(cplx s, Matrix x) { return x *= s; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    Matrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx xik = x(i, k);
        if (xik == cplx{}) continue;
        for (std::size_t j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }
};

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;

template <std::size_t N>
Matrix<N> adjoint(const Matrix<N>& m) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(m(j, i));
  return r;
}

template <std::size_t N>
cplx trace(const Matrix<N>& m) {
  cplx t{};
  for (std::size_t i = 0; i < N; ++i) t += m(i, i);
  return t;
}

/// Largest absolute entry of x - y.
template <std::size_t N>
double max_abs_diff(const Matrix<N>& x, const Matrix<N>& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
  return d;
}

/// Largest |m(i,j) - conj(m(j,i))|.
template <std::size_t N>
double hermiticity_defect(const Matrix<N>& m) {
  double d = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

inline Matrix4 kron(const Matrix2& x, const Matrix2& y) {
  Matrix4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
  return r;
}

/// sigma_0 (identity), sigma_1 (X), sigma_2 (Y), sigma_3 (Z).
inline const std::array<Matrix2, 4>& pauli() {
  static const std::array<Matrix2, 4> sigma = [] {
    const cplx i{0.0, 1.0};
    std::array<Matrix2, 4> s;
    s[0] = Matrix2::identity();
    s[1](0, 1) = 1.0;
    s[1](1, 0) = 1.0;
    s[2](0, 1) = -i;
    s[2](1, 0) = i;
    s[3](0, 0) = 1.0;
    s[3](1, 1) = -1.0;
    return s;
  }();
  return sigma;
}

/// sigma_n (x) sigma_k for n, k in 0..3.
inline const Matrix4& pauli_product(int n, int k) {
  static const std::array<Matrix4, 16> table = [] {
    std::array<Matrix4, 16> t;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) t[4 * a + b] = kron(pauli()[a], pauli()[b]);
    return t;
  }();
  return table[4 * n + k];
}

}  // namespace pauli_memory
