#include "bstone/random.hpp"

#include <cmath>

namespace bstone {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

Matrix gaussian_matrix(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

Matrix haar_unitary(int n, Rng& rng) {
  const Matrix g = gaussian_matrix(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

BlockElement random_element(const AlgebraShape& shape, Rng& rng) {
  BlockElement x(shape);
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) x.block(b) = gaussian_matrix(shape.block(b), rng);
  return x;
}

BlockElement random_unitary(const AlgebraShape& shape, Rng& rng) {
  BlockElement x(shape);
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) x.block(b) = haar_unitary(shape.block(b), rng);
  return x;
}

BlockElement random_selfadjoint(const AlgebraShape& shape, Rng& rng) {
  BlockElement x = random_element(shape, rng);
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    const Matrix g = x.block(b);
    x.block(b) = (g + g.adjoint()) * 0.5;
  }
  return x;
}

BlockElement random_projection(const AlgebraShape& shape, Rng& rng) {
  BlockElement x(shape);
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    const int n = shape.block(b);
    std::uniform_int_distribution<int> rank_dist(0, n);
    const int rank = rank_dist(rng);
    const Matrix u = haar_unitary(n, rng);
    x.block(b) = u.leftCols(rank) * u.leftCols(rank).adjoint();
  }
  return x;
}

}  // namespace bstone
