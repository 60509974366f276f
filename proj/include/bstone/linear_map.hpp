#pragma once

#include <functional>

#include "bstone/algebra.hpp"

namespace bstone {

/// A linear map between two block algebras (or their preduals / L^p spaces),
/// stored as its matrix on vectorized elements: column k is the image of the
/// k-th coordinate vector.
class RawLinearMap {
 public:
  RawLinearMap(AlgebraShape source, AlgebraShape target, Matrix matrix);

  /// Tabulates `f` on the coordinate basis of `source`.
  static RawLinearMap from_function(const AlgebraShape& source, const AlgebraShape& target,
                                    const std::function<BlockElement(const BlockElement&)>& f);
  static RawLinearMap identity(const AlgebraShape& shape);

  const AlgebraShape& source() const { return source_; }
  const AlgebraShape& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

  BlockElement apply(const BlockElement& x) const;
  BlockElement operator()(const BlockElement& x) const { return apply(x); }

  /// Numerical rank, singular values cut at eps * largest.
  int rank(double eps = 1e-9) const;
  bool is_bijective(double eps = 1e-9) const;

 private:
  AlgebraShape source_;
  AlgebraShape target_;
  Matrix matrix_;
};

/// Matrix units e_{jk} of every block, in vectorization order.
std::vector<BlockElement> matrix_unit_basis(const AlgebraShape& shape);

/// Index permutation sending vec(x) to vec(x^T) blockwise (an involution).
std::vector<int> transpose_permutation(const AlgebraShape& shape);

}  // namespace bstone
