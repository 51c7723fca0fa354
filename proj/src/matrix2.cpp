#include "qdefect/matrix2.hpp"

#include <algorithm>
#include <cmath>

#include "qdefect/error.hpp"

namespace qdefect {

Matrix2 Matrix2::adjoint() const {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

Matrix2& Matrix2::operator+=(const Matrix2& o) {
  for (int i = 0; i < 4; ++i) a[i] += o.a[i];
  return *this;
}

Matrix2& Matrix2::operator-=(const Matrix2& o) {
  for (int i = 0; i < 4; ++i) a[i] -= o.a[i];
  return *this;
}

Matrix2& Matrix2::operator*=(cplx s) {
  for (auto& x : a) x *= s;
  return *this;
}

Matrix2 operator+(Matrix2 x, const Matrix2& y) { return x += y; }
Matrix2 operator-(Matrix2 x, const Matrix2& y) { return x -= y; }
Matrix2 operator-(const Matrix2& x) { return cplx(-1.0) * x; }
Matrix2 operator*(cplx s, Matrix2 x) { return x *= s; }
Matrix2 operator*(Matrix2 x, cplx s) { return x *= s; }

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
  return {x.a[0] * y.a[0] + x.a[1] * y.a[2], x.a[0] * y.a[1] + x.a[1] * y.a[3],
          x.a[2] * y.a[0] + x.a[3] * y.a[2], x.a[2] * y.a[1] + x.a[3] * y.a[3]};
}

Vec2 operator*(const Matrix2& m, const Vec2& v) {
  return {m.a[0] * v[0] + m.a[1] * v[1], m.a[2] * v[0] + m.a[3] * v[1]};
}

double max_norm(const Matrix2& m) {
  double r = 0.0;
  for (const auto& x : m.a) r = std::max(r, std::abs(x));
  return r;
}

double max_abs_diff(const Matrix2& x, const Matrix2& y) { return max_norm(x - y); }

bool is_unitary(const Matrix2& m, double tol) {
  for (const auto& x : m.a) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  }
  return max_abs_diff(m.adjoint() * m, Matrix2::identity()) <= tol;
}

bool is_hermitian(const Matrix2& m, double tol) { return max_abs_diff(m, m.adjoint()) <= tol; }

std::array<double, 2> singular_values(const Matrix2& m) {
  // Eigenvalues of the Hermitian M†M: p ± sqrt(q² + |b|²).
  const Matrix2 g = m.adjoint() * m;
  const double p = 0.5 * (g.a[0].real() + g.a[3].real());
  const double q = 0.5 * (g.a[0].real() - g.a[3].real());
  const double r = std::hypot(q, std::abs(g.a[1]));
  const double big = p + r;
  // small = det(M†M)/big avoids cancellation in p − r.
  const double small = big > 0.0 ? std::norm(m.det()) / big : 0.0;
  return {std::sqrt(std::max(big, 0.0)), std::sqrt(std::max(small, 0.0))};
}

const Matrix2& pauli(int i) {
  static const Matrix2 s1{0.0, 1.0, 1.0, 0.0};
  static const Matrix2 s2{0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0};
  static const Matrix2 s3{1.0, 0.0, 0.0, -1.0};
  switch (i) {
    case 1: return s1;
    case 2: return s2;
    default: return s3;
  }
}

Matrix2 pauli_rotation(int i, double angle) {
  return std::cos(angle) * Matrix2::identity() + cplx(0.0, std::sin(angle)) * pauli(i);
}

double norm2(const Vec2& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

cplx dot(const Vec2& x, const Vec2& y) { return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1]; }

double Direction3::norm() const { return std::sqrt(c1 * c1 + c2 * c2 + c3 * c3); }

bool Direction3::is_unit(double tol) const { return std::abs(norm() - 1.0) <= tol; }

Matrix2 Direction3::sigma() const {
  return cplx(c1) * pauli(1) + cplx(c2) * pauli(2) + cplx(c3) * pauli(3);
}

Direction3 Direction3::normalized(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::BadDirection, "zero or non-finite direction");
  return {x / n, y / n, z / n};
}

}  // namespace qdefect
