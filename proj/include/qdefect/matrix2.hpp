#pragma once

#include <array>
#include <complex>

namespace qdefect {

using cplx = std::complex<double>;
using Vec2 = std::array<cplx, 2>;

/// Dense 2x2 complex matrix, row-major (a11, a12, a21, a22).
struct Matrix2 {
  std::array<cplx, 4> a{};

  constexpr Matrix2() = default;
  constexpr Matrix2(cplx a11, cplx a12, cplx a21, cplx a22) : a{a11, a12, a21, a22} {}

  cplx& operator()(int r, int c) { return a[2 * r + c]; }
  const cplx& operator()(int r, int c) const { return a[2 * r + c]; }

  static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Matrix2 zero() { return {}; }
  static Matrix2 diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }

  Matrix2 adjoint() const;
  cplx trace() const { return a[0] + a[3]; }
  cplx det() const { return a[0] * a[3] - a[1] * a[2]; }

  Matrix2& operator+=(const Matrix2& o);
  Matrix2& operator-=(const Matrix2& o);
  Matrix2& operator*=(cplx s);
};

Matrix2 operator+(Matrix2 x, const Matrix2& y);
Matrix2 operator-(Matrix2 x, const Matrix2& y);
Matrix2 operator-(const Matrix2& x);
Matrix2 operator*(const Matrix2& x, const Matrix2& y);
Matrix2 operator*(cplx s, Matrix2 x);
Matrix2 operator*(Matrix2 x, cplx s);
Vec2 operator*(const Matrix2& m, const Vec2& v);

/// Largest absolute entry.
double max_norm(const Matrix2& m);
double max_abs_diff(const Matrix2& x, const Matrix2& y);

/// ‖M†M − I‖_max ≤ tol.
bool is_unitary(const Matrix2& m, double tol);
bool is_hermitian(const Matrix2& m, double tol);

/// Singular values (largest first), closed form from M†M.
std::array<double, 2> singular_values(const Matrix2& m);

/// Pauli matrix σ_i, i ∈ {1, 2, 3}.
const Matrix2& pauli(int i);

/// exp(i·angle·σ_i) = cos(angle)·I + i·sin(angle)·σ_i.
Matrix2 pauli_rotation(int i, double angle);

double norm2(const Vec2& v);
cplx dot(const Vec2& x, const Vec2& y);  // x†y

/// Unit vector (c1, c2, c3) selecting σ = Σ c_j σ_j.
struct Direction3 {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 1.0;

  double norm() const;
  bool is_unit(double tol = 1e-12) const;
  Matrix2 sigma() const;
  static Direction3 normalized(double x, double y, double z);
};

}  // namespace qdefect
