#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <string>

#include "bstone/error.hpp"
#include "bstone/linear_map.hpp"
#include "bstone/lp.hpp"
#include "bstone/random.hpp"
#include "bstone/subspace.hpp"

namespace bstone {

namespace {

Vector vec_columns(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

// Orthonormal basis of {T : T G = G T for all G in gens}, T in vec-by-columns
// coordinates: the kernel of sum_G A_G^* A_G with A_G = G^T (x) I - I (x) G.
Matrix commutant_basis(const std::vector<Matrix>& gens, int dim) {
  const Matrix id = Matrix::Identity(dim, dim);
  Matrix gram = Matrix::Zero(dim * dim, dim * dim);
  for (const auto& g : gens) {
    const Matrix b = g.transpose();
    gram += Eigen::kroneckerProduct(Matrix(b.adjoint() * b), id).eval();
    gram -= Eigen::kroneckerProduct(Matrix(b.adjoint()), g).eval();
    gram -= Eigen::kroneckerProduct(b, Matrix(g.adjoint())).eval();
    gram += Eigen::kroneckerProduct(id, Matrix(g.adjoint() * g)).eval();
  }
  return psd_kernel((gram + gram.adjoint()) * 0.5, 1e-10);
}

Matrix span_of(const std::vector<Matrix>& ops) {
  Matrix cols(ops.front().size(), static_cast<Eigen::Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = vec_columns(ops[k]);
  return orthonormal_basis(cols);
}

}  // namespace

CommutantReport commutant_check(const AlgebraShape& shape, double tol, int samples,
                                std::uint64_t seed) {
  const int dim = shape.ambient_dim();
  if (dim > kMaxCommutantDim) {
    throw PreconditionError("commutant_check: algebra dimension " + std::to_string(dim) +
                            " exceeds the dense-solve limit " + std::to_string(kMaxCommutantDim));
  }

  std::vector<Matrix> left_ops;
  std::vector<Matrix> right_ops;
  for (const auto& e : matrix_unit_basis(shape)) {
    left_ops.push_back(
        RawLinearMap::from_function(shape, shape, [&](const BlockElement& a) { return multiply(e, a); })
            .matrix());
    right_ops.push_back(
        RawLinearMap::from_function(shape, shape, [&](const BlockElement& a) { return multiply(a, e); })
            .matrix());
  }

  CommutantReport r;
  const Matrix left_span = span_of(left_ops);
  const Matrix right_span = span_of(right_ops);
  const Matrix comm_right = commutant_basis(right_ops, dim);
  const Matrix comm_left = commutant_basis(left_ops, dim);
  r.dim_left = static_cast<int>(left_span.cols());
  r.dim_right = static_cast<int>(right_span.cols());
  r.dim_commutant_of_right = static_cast<int>(comm_right.cols());
  r.dim_commutant_of_left = static_cast<int>(comm_left.cols());
  r.distance_left = subspace_distance(comm_right, left_span);
  r.distance_right = subspace_distance(comm_left, right_span);
  r.mutual = r.distance_left <= tol && r.distance_right <= tol;

  // ||x|| is attained on the trace-norm space by the witnesses
  //   right action: a = e (v e)^*,   a x = ||x|| e e^*
  //   left action:  a = (v^* f) f^*, x a = ||x|| f f^*
  // with x = v|x| and e, f the top right/left singular vectors; Hoelder bounds
  // every other ratio by ||x||.
  Rng rng(seed);
  double dev = 0.0;
  for (int s = 0; s < samples; ++s) {
    const BlockElement x = random_element(shape, rng);
    const double norm = x.operator_norm();
    const auto polar = polar_decompose(x);
    const RawLinearMap left_x = RawLinearMap::from_function(
        shape, shape, [&](const BlockElement& a) { return multiply(x, a); });
    const RawLinearMap right_x = RawLinearMap::from_function(
        shape, shape, [&](const BlockElement& a) { return multiply(a, x); });

    std::size_t top = 0;
    double best = -1.0;
    for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
      Eigen::JacobiSVD<Matrix> svd(x.block(b));
      if (svd.singularValues()(0) > best) {
        best = svd.singularValues()(0);
        top = b;
      }
    }
    Eigen::JacobiSVD<Matrix> svd(x.block(top), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector e = svd.matrixV().col(0);
    const Vector f = svd.matrixU().col(0);
    const Matrix& v = polar.v.block(top);

    BlockElement wr(shape);
    wr.block(top) = e * (v * e).adjoint();
    BlockElement wl(shape);
    wl.block(top) = (v.adjoint() * f) * f.adjoint();
    const double ratio_r = lp_norm(right_x(wr), 1.0) / lp_norm(wr, 1.0);
    const double ratio_l = lp_norm(left_x(wl), 1.0) / lp_norm(wl, 1.0);
    dev = std::max({dev, std::abs(ratio_r - norm) / norm, std::abs(ratio_l - norm) / norm});

    for (int k = 0; k < 4; ++k) {
      const BlockElement a = random_element(shape, rng);
      const double na = lp_norm(a, 1.0);
      dev = std::max({dev, lp_norm(right_x(a), 1.0) / (na * norm) - 1.0,
                      lp_norm(left_x(a), 1.0) / (na * norm) - 1.0});
    }
  }
  r.isometry_deviation = dev;
  r.isometric = dev <= tol;
  return r;
}

}  // namespace bstone
