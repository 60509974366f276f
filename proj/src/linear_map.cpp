#include "bstone/linear_map.hpp"

#include <string>

#include "bstone/error.hpp"

namespace bstone {

RawLinearMap::RawLinearMap(AlgebraShape source, AlgebraShape target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.ambient_dim() || matrix_.cols() != source_.ambient_dim()) {
    throw ShapeError("linear map matrix must be " + std::to_string(target_.ambient_dim()) + "x" +
                     std::to_string(source_.ambient_dim()));
  }
  if (!matrix_.allFinite()) {
    throw PreconditionError("linear map matrix has non-finite entries");
  }
}

RawLinearMap RawLinearMap::from_function(
    const AlgebraShape& source, const AlgebraShape& target,
    const std::function<BlockElement(const BlockElement&)>& f) {
  Matrix m(target.ambient_dim(), source.ambient_dim());
  const auto basis = matrix_unit_basis(source);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const BlockElement img = f(basis[k]);
    require_same_shape(img.shape(), target, "from_function");
    m.col(static_cast<Eigen::Index>(k)) = img.vectorize();
  }
  return RawLinearMap(source, target, std::move(m));
}

RawLinearMap RawLinearMap::identity(const AlgebraShape& shape) {
  return RawLinearMap(shape, shape, Matrix::Identity(shape.ambient_dim(), shape.ambient_dim()));
}

BlockElement RawLinearMap::apply(const BlockElement& x) const {
  require_same_shape(x.shape(), source_, "apply");
  return BlockElement::from_vector(target_, matrix_ * x.vectorize());
}

int RawLinearMap::rank(double eps) const {
  Eigen::JacobiSVD<Matrix> svd(matrix_);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  while (r < s.size() && s(r) > eps * s(0)) ++r;
  return r;
}

bool RawLinearMap::is_bijective(double eps) const {
  return matrix_.rows() == matrix_.cols() && rank(eps) == matrix_.rows();
}

std::vector<BlockElement> matrix_unit_basis(const AlgebraShape& shape) {
  std::vector<BlockElement> out;
  out.reserve(static_cast<std::size_t>(shape.ambient_dim()));
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    const int n = shape.block(b);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) out.push_back(BlockElement::unit(shape, b, r, c));
    }
  }
  return out;
}

std::vector<int> transpose_permutation(const AlgebraShape& shape) {
  std::vector<int> perm(static_cast<std::size_t>(shape.ambient_dim()));
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    const int n = shape.block(b);
    const int off = shape.offset(b);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) perm[static_cast<std::size_t>(off + r * n + c)] = off + c * n + r;
    }
  }
  return perm;
}

}  // namespace bstone
