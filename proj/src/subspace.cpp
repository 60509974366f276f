#include "bstone/subspace.hpp"

#include <algorithm>

namespace bstone {

Matrix orthonormal_basis(const Matrix& columns, double rel_eps) {
  if (columns.cols() == 0) return Matrix(columns.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    while (rank < s.size() && s(rank) > rel_eps * s(0)) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

double subspace_distance(const Matrix& basis_a, const Matrix& basis_b) {
  if (basis_a.cols() != basis_b.cols()) return 1.0;
  if (basis_a.cols() == 0) return 0.0;
  const Matrix diff = basis_a * basis_a.adjoint() - basis_b * basis_b.adjoint();
  Eigen::JacobiSVD<Matrix> svd(diff);
  return svd.singularValues()(0);
}

double residual_from_span(const Matrix& basis, const Vector& v) {
  if (basis.cols() == 0) return v.norm();
  return (v - basis * (basis.adjoint() * v)).norm();
}

Matrix psd_kernel(const Matrix& h, double rel_eps) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& ev = es.eigenvalues();
  const double top = ev.size() > 0 ? std::max(1.0, ev(ev.size() - 1)) : 1.0;
  Eigen::Index k = 0;
  while (k < ev.size() && ev(k) <= rel_eps * top) ++k;
  return es.eigenvectors().leftCols(k);
}

}  // namespace bstone
