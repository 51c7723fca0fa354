#include "qdefect/unitary_params.hpp"

#include <cmath>
#include <numbers>

#include "qdefect/error.hpp"

namespace qdefect {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Below this eigenvalue separation (|λ₊ − λ₋|/2) the frame is not resolvable.
constexpr double kDegenerateRho = 1e-14;

}  // namespace

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double UnitaryParams::theta_plus() const { return wrap_angle(xi + rho); }
double UnitaryParams::theta_minus() const { return wrap_angle(xi - rho); }

UnitaryParams UnitaryParams::from_thetas(double theta_plus, double theta_minus, double mu,
                                         double nu) {
  return {0.5 * (theta_plus + theta_minus), 0.5 * (theta_plus - theta_minus), mu, nu};
}

Matrix2 diagonal_part(const UnitaryParams& p) {
  return Matrix2::diag(std::polar(1.0, p.xi + p.rho), std::polar(1.0, p.xi - p.rho));
}

Matrix2 frame(const UnitaryParams& p) {
  return pauli_rotation(2, 0.5 * p.mu) * pauli_rotation(3, 0.5 * p.nu);
}

Matrix2 params_to_matrix(const UnitaryParams& p) {
  const Matrix2 v = frame(p);
  return v.adjoint() * diagonal_part(p) * v;
}

UnitaryParams matrix_to_params(const Matrix2& u) {
  if (!is_unitary(u, 1e-10)) throw Error(ErrorKind::NotUnitary, "matrix_to_params");

  // U = e^{iη}(a₀ I + i a·σ) with e^{2iη} = det U and (a₀, a) real.
  const cplx phase = std::sqrt(u.det());
  const Matrix2 w = u * (1.0 / phase);
  const double a0 = 0.5 * (w(0, 0) + w(1, 1)).real();
  const double a3 = 0.5 * (w(0, 0) - w(1, 1)).imag();
  const double a1 = 0.5 * (w(0, 1) + w(1, 0)).imag();
  const double a2 = 0.5 * (w(0, 1) - w(1, 0)).real();
  const double an = std::sqrt(a1 * a1 + a2 * a2 + a3 * a3);
  const double half_gap = std::atan2(an, a0);  // eigenvalues e^{iη}e^{±i·half_gap}
  const double eta = std::arg(phase);

  // Eigenphases in (−π, π]; the n·σ = +1 eigenvector belongs to eta + half_gap.
  const double pa = std::arg(std::polar(1.0, eta + half_gap));
  const double pb = std::arg(std::polar(1.0, eta - half_gap));
  const bool plus_is_a = pa >= pb;
  const double tp = plus_is_a ? pa : pb;
  const double tm = plus_is_a ? pb : pa;

  UnitaryParams out;
  // Coincident eigenvalues (an ≈ |sin half_gap|): half_gap near 0 or π. Taking
  // the phase from e^{iη}·a₀ avoids splitting the pair across the ±π cut.
  if (an <= kDegenerateRho) {
    out.xi = wrap_angle(std::arg(phase * a0));
    return out;
  }
  out.xi = wrap_angle(0.5 * (tp + tm));
  out.rho = 0.5 * (tp - tm);

  // Eigenvector of s·n·σ for eigenvalue +1, s = ±1 selecting θ₊.
  const double s = plus_is_a ? 1.0 : -1.0;
  const double n1 = s * a1 / an, n2 = s * a2 / an, n3 = s * a3 / an;
  Vec2 v;
  if (n3 >= 0.0) {
    v = {cplx(1.0 + n3), cplx(n1, n2)};
  } else {
    v = {cplx(n1, -n2), cplx(1.0 - n3)};
  }
  // v ∝ (cos(μ/2) e^{−iν/2}, sin(μ/2) e^{iν/2}).
  const double r1 = std::abs(v[0]);
  const double r2 = std::abs(v[1]);
  out.mu = 2.0 * std::atan2(r2, r1);
  if (r1 > 0.0 && r2 > 0.0) {
    out.nu = wrap_angle(std::arg(v[1]) - std::arg(v[0]));
  }
  if (out.mu < 1e-15) out.mu = 0.0;
  if (kPi - out.mu < 1e-15) out.mu = kPi;
  if (out.mu == 0.0 || out.mu == kPi) out.nu = 0.0;
  return out;
}

Matrix2 parity_conjugate(const Matrix2& u, const Direction3& c) {
  if (!is_unitary(u, 1e-10)) throw Error(ErrorKind::NotUnitary, "parity_conjugate");
  if (!c.is_unit(1e-12)) throw Error(ErrorKind::BadDirection, "direction must have unit norm");
  const Matrix2 s = c.sigma();
  return s * u * s;
}

Matrix2 sigma_v(const UnitaryParams& p) {
  return pauli_rotation(3, -0.5 * p.nu) * pauli_rotation(2, -0.5 * p.mu) *
         pauli_rotation(3, 0.5 * p.nu) * pauli(3);
}

Direction3 sigma_v_direction(const UnitaryParams& p) {
  // σ_V is Hermitian and traceless: read c off the Pauli decomposition.
  const Matrix2 s = sigma_v(p);
  return {s(1, 0).real(), s(1, 0).imag(), 0.5 * (s(0, 0) - s(1, 1)).real()};
}

}  // namespace qdefect
