#include <algorithm>

#include "bstone/error.hpp"
#include "bstone/isometry.hpp"
#include "bstone/subspace.hpp"

namespace bstone {

RigidityReport subalgebra_rigidity_check(const RawLinearMap& k, const BlockElement& v, double tol) {
  require_same_shape(v.shape(), k.target(), "subalgebra_rigidity_check");
  if (!v.is_unitary(1e-8)) throw PreconditionError("subalgebra_rigidity_check: v is not unitary");
  const auto jr = verify_jordan(k, 1e-8, JordanMode::monomorphism);
  if (!jr.is_jordan) {
    throw PreconditionError("subalgebra_rigidity_check: K is not a Jordan *-monomorphism (" +
                            jr.reason + ")");
  }

  const auto units = matrix_unit_basis(k.source());
  std::vector<BlockElement> ks;
  std::vector<BlockElement> vks;
  for (const auto& e : units) {
    ks.push_back(k(e));
    vks.push_back(multiply(v, ks.back()));
  }
  auto basis_of = [&](const std::vector<BlockElement>& xs) {
    Matrix cols(k.target().ambient_dim(), static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      cols.col(static_cast<Eigen::Index>(i)) = xs[i].vectorize();
    }
    return orthonormal_basis(cols);
  };
  const Matrix bk = basis_of(ks);
  const Matrix bv = basis_of(vks);

  RigidityReport r;
  for (const auto& a : vks) {
    r.adjoint_residual = std::max(r.adjoint_residual, residual_from_span(bv, adjoint(a).vectorize()));
    for (const auto& b : vks) {
      r.product_residual =
          std::max(r.product_residual, residual_from_span(bv, multiply(a, b).vectorize()));
    }
  }
  r.premise_holds = r.adjoint_residual <= tol && r.product_residual <= tol;
  r.subspace_distance = subspace_distance(bv, bk);
  r.equality_holds = r.subspace_distance <= tol;
  return r;
}

}  // namespace bstone
