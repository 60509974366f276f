#pragma once

// Finite-dimensional von Neumann algebras as direct sums of full matrix
// blocks M_{n_1} (+) ... (+) M_{n_k}, and the matrix-analytic primitives
// the rest of the library is built on.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bstone {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Tolerance {
  /// Absolute threshold for residuals; rank decisions scale it by the largest
  /// singular value of the element at hand.
  double eps_abs = 1e-9;
  /// Relative gap below which eigenvalues are merged into one spectral
  /// projection.
  double eps_cluster = 1e-8;

  /// Throws PreconditionError unless both thresholds are strictly positive.
  void validate() const;
};

/// Block side lengths [n_1, ..., n_k] of M_{n_1} (+) ... (+) M_{n_k}.
class AlgebraShape {
 public:
  explicit AlgebraShape(std::vector<int> blocks);
  AlgebraShape(std::initializer_list<int> blocks);

  std::size_t num_blocks() const { return blocks_.size(); }
  int block(std::size_t i) const { return blocks_.at(i); }
  const std::vector<int>& blocks() const { return blocks_; }

  /// Sum of n_i^2, the complex dimension of the algebra.
  int ambient_dim() const { return ambient_dim_; }
  /// Position of block i's first entry in the vectorization.
  int offset(std::size_t i) const { return offsets_.at(i); }

  bool operator==(const AlgebraShape& other) const { return blocks_ == other.blocks_; }

 private:
  std::vector<int> blocks_;
  std::vector<int> offsets_;
  int ambient_dim_ = 0;
};

/// An element of the algebra, or equally the density of a normal functional
/// on it: one dense complex n_i x n_i matrix per block.
class BlockElement {
 public:
  /// The zero element.
  explicit BlockElement(AlgebraShape shape);
  BlockElement(AlgebraShape shape, std::vector<Matrix> mats);

  static BlockElement zero(const AlgebraShape& shape) { return BlockElement(shape); }
  static BlockElement identity(const AlgebraShape& shape);
  /// Matrix unit e_{row,col} inside block `block`.
  static BlockElement unit(const AlgebraShape& shape, std::size_t block, int row, int col);
  /// Central projection that is the identity on the flagged blocks and 0 elsewhere.
  static BlockElement central(const AlgebraShape& shape, const std::vector<bool>& active);

  const AlgebraShape& shape() const { return shape_; }
  std::size_t num_blocks() const { return mats_.size(); }
  const Matrix& block(std::size_t i) const { return mats_.at(i); }
  Matrix& block(std::size_t i) { return mats_.at(i); }
  const std::vector<Matrix>& mats() const { return mats_; }

  /// Blocks concatenated in order, each flattened row-major.
  Vector vectorize() const;
  static BlockElement from_vector(const AlgebraShape& shape, const Vector& v);

  BlockElement& operator+=(const BlockElement& other);
  BlockElement& operator-=(const BlockElement& other);
  BlockElement& operator*=(Complex s);

  Complex trace() const;
  double frobenius_norm() const;
  /// Largest singular value over all blocks.
  double operator_norm() const;
  double max_abs() const;

  bool is_selfadjoint(double eps) const;
  bool is_projection(double eps) const;
  bool is_unitary(double eps) const;
  bool is_partial_isometry(double eps) const;
  /// Every block is (numerically) a multiple of the identity.
  bool is_central(double eps) const;

 private:
  AlgebraShape shape_;
  std::vector<Matrix> mats_;
};

BlockElement operator+(BlockElement a, const BlockElement& b);
BlockElement operator-(BlockElement a, const BlockElement& b);
BlockElement operator-(BlockElement a);
BlockElement operator*(Complex s, BlockElement a);

/// Throws ShapeError unless both shapes are equal.
void require_same_shape(const AlgebraShape& a, const AlgebraShape& b, const char* what);

BlockElement multiply(const BlockElement& x, const BlockElement& y);
BlockElement adjoint(const BlockElement& x);
/// Blockwise transpose (no conjugation).
BlockElement transpose(const BlockElement& x);
/// (xy + yx) / 2.
BlockElement jordan_product(const BlockElement& x, const BlockElement& y);

/// Singular values of every block, concatenated (not sorted across blocks).
std::vector<double> singular_values(const BlockElement& x);

struct PolarDecomposition {
  BlockElement v;  ///< partial isometry, v*v = support of h
  BlockElement h;  ///< (x*x)^{1/2}
};

/// x = v |x| with the polar part set to zero on ker |x|. Singular values at or
/// below eps_abs * (largest singular value) are treated as zero.
PolarDecomposition polar_decompose(const BlockElement& x, const Tolerance& tol = {});

struct Supports {
  BlockElement left;   ///< vv*
  BlockElement right;  ///< v*v
};

Supports supports(const BlockElement& x, const Tolerance& tol = {});

struct SpectralComponent {
  double eigenvalue;
  BlockElement projection;
};

/// Spectral resolution of a self-adjoint element, eigenvalues in descending
/// order. Eigenvalues closer than eps_cluster * max(1, ||h||) are merged.
std::vector<SpectralComponent> spectral_decompose(const BlockElement& h,
                                                  const Tolerance& tol = {});

/// Smallest central projection z with zx = x: the identity on every block
/// whose largest entry exceeds eps_abs * max|x|, zero elsewhere.
BlockElement central_support(const BlockElement& x, const Tolerance& tol = {});

/// Blocks on which a central projection is the identity. Throws
/// PreconditionError if z is not a central projection.
std::vector<bool> central_blocks(const BlockElement& z, const Tolerance& tol = {});

}  // namespace bstone
