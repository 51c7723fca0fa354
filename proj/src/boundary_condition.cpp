#include "qdefect/boundary_condition.hpp"

#include <cmath>

#include "qdefect/error.hpp"

namespace qdefect {

void BoundaryCondition::validate() const {
  if (!is_unitary(U, 1e-10)) throw Error(ErrorKind::NotUnitary, "boundary matrix U");
  if (!(L0 > 0.0) || !std::isfinite(L0)) throw Error(ErrorKind::InvalidArgument, "L0 must be > 0");
  if (!(l > 0.0) || !std::isfinite(l)) throw Error(ErrorKind::InvalidArgument, "l must be > 0");
}

BoundaryCondition BoundaryCondition::make(const Matrix2& U, double L0, double l) {
  BoundaryCondition bc{U, L0, l};
  bc.validate();
  return bc;
}

BoundaryCondition BoundaryCondition::from_params(const UnitaryParams& p, double L0, double l) {
  return make(params_to_matrix(p), L0, l);
}

double boundary_residual(const BoundaryCondition& bc, const BoundaryVectors& v) {
  const Matrix2 I = Matrix2::identity();
  const Vec2 a = (bc.U - I) * v.phi;
  const Vec2 b = (bc.U + I) * v.dphi;
  const cplx iL0(0.0, bc.L0);
  return norm2(Vec2{a[0] + iL0 * b[0], a[1] + iL0 * b[1]});
}

double current_mismatch(const BoundaryVectors& v) {
  return std::abs(dot(v.dphi, v.phi) - dot(v.phi, v.dphi));
}

}  // namespace qdefect
