#pragma once

#include "bstone/algebra.hpp"

namespace bstone {

/// Orthonormal basis (as columns) of the span of `columns`, dropping singular
/// directions at or below rel_eps * largest singular value.
Matrix orthonormal_basis(const Matrix& columns, double rel_eps = 1e-9);

/// ||P_a - P_b||_2 for the orthogonal projectors onto the spans of two
/// orthonormal bases; 0 iff the subspaces coincide, 1 if dimensions differ.
double subspace_distance(const Matrix& basis_a, const Matrix& basis_b);

/// Norm of the component of v orthogonal to span(basis), for orthonormal basis.
double residual_from_span(const Matrix& basis, const Vector& v);

/// Orthonormal basis of ker(h) for Hermitian positive semidefinite h:
/// eigenvectors with eigenvalue <= rel_eps * max(1, largest eigenvalue).
Matrix psd_kernel(const Matrix& h, double rel_eps);

}  // namespace bstone
