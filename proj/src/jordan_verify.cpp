#include <algorithm>
#include <cmath>

#include "bstone/error.hpp"
#include "bstone/jordan.hpp"

namespace bstone {

namespace {

// Self-adjoint basis: e_jj, e_jk + e_kj, i(e_jk - e_kj) for j < k, per block.
std::vector<BlockElement> selfadjoint_basis(const AlgebraShape& shape) {
  std::vector<BlockElement> out;
  const Complex i(0.0, 1.0);
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    const int n = shape.block(b);
    for (int j = 0; j < n; ++j) {
      out.push_back(BlockElement::unit(shape, b, j, j));
      for (int k = j + 1; k < n; ++k) {
        const auto ejk = BlockElement::unit(shape, b, j, k);
        const auto ekj = BlockElement::unit(shape, b, k, j);
        out.push_back(ejk + ekj);
        out.push_back(i * (ejk - ekj));
      }
    }
  }
  return out;
}

Matrix nearest_unitary(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

JordanReport reject(double residual, std::string reason) {
  JordanReport r;
  r.is_jordan = false;
  r.residual = residual;
  r.reason = std::move(reason);
  return r;
}

}  // namespace

JordanReport verify_jordan(const RawLinearMap& phi, double tol, JordanMode mode) {
  const auto& src = phi.source();
  const auto& tgt = phi.target();
  double residual = 0.0;

  if (mode == JordanMode::isomorphism) {
    if (!phi.is_bijective()) return reject(0.0, "map is not bijective");
  } else if (phi.rank() != src.ambient_dim()) {
    return reject(0.0, "map is not injective");
  }

  for (const auto& e : matrix_unit_basis(src)) {
    residual = std::max(residual, (phi(adjoint(e)) - adjoint(phi(e))).frobenius_norm());
  }
  if (residual > tol) return reject(residual, "map does not preserve the adjoint");

  if (mode == JordanMode::isomorphism) {
    residual = std::max(residual, (phi(BlockElement::identity(src)) -
                                   BlockElement::identity(tgt)).frobenius_norm());
    if (residual > tol) return reject(residual, "map is not unital");
  }

  const auto basis = selfadjoint_basis(src);
  std::vector<BlockElement> images;
  images.reserve(basis.size());
  for (const auto& x : basis) images.push_back(phi(x));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = a; b < basis.size(); ++b) {
      const auto lhs = phi(jordan_product(basis[a], basis[b]));
      const auto rhs = jordan_product(images[a], images[b]);
      residual = std::max(residual, (lhs - rhs).frobenius_norm());
    }
  }
  if (residual > tol) return reject(residual, "map does not preserve the Jordan product");

  JordanReport report;
  report.is_jordan = true;
  report.residual = residual;
  if (mode == JordanMode::monomorphism) return report;

  // Minimal central projections go to minimal central projections; read off
  // the block permutation, then the flag and conjugator inside each block.
  std::vector<BlockAssignment> assignment(tgt.num_blocks());
  std::vector<bool> taken(tgt.num_blocks(), false);
  for (std::size_t i = 0; i < src.num_blocks(); ++i) {
    std::vector<bool> mask(src.num_blocks(), false);
    mask[i] = true;
    const auto img = phi(BlockElement::central(src, mask));
    std::size_t j = tgt.num_blocks();
    for (std::size_t c = 0; c < tgt.num_blocks(); ++c) {
      if (taken[c] || tgt.block(c) != src.block(i)) continue;
      const Matrix id = Matrix::Identity(tgt.block(c), tgt.block(c));
      if ((img.block(c) - id).norm() <= tol) {
        j = c;
        break;
      }
    }
    if (j == tgt.num_blocks()) {
      return reject(residual, "image of a minimal central projection is not a target block");
    }
    taken[j] = true;

    const int n = src.block(i);
    auto sub = [&](int r, int c) { return phi(BlockElement::unit(src, i, r, c)).block(j); };

    BlockFlag flag = BlockFlag::iso;
    if (n > 1) {
      std::vector<Matrix> units;
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) units.push_back(sub(r, c));
      }
      double iso_res = 0.0;
      double anti_res = 0.0;
      for (int ab = 0; ab < n * n; ++ab) {
        for (int cd = 0; cd < n * n; ++cd) {
          // e_ab e_cd = delta_bc e_ad
          const int a = ab / n, b = ab % n, c = cd / n, d = cd % n;
          const Matrix prod = b == c ? units[static_cast<std::size_t>(a * n + d)]
                                     : Matrix::Zero(n, n);
          iso_res = std::max(iso_res, (prod - units[ab] * units[cd]).norm());
          anti_res = std::max(anti_res, (prod - units[cd] * units[ab]).norm());
        }
      }
      flag = iso_res <= anti_res ? BlockFlag::iso : BlockFlag::anti;
    }

    Matrix u(n, n);
    {
      const Matrix p00 = sub(0, 0);
      Eigen::Index k = 0;
      p00.diagonal().real().maxCoeff(&k);
      const Vector u0 = p00.col(k) / std::sqrt(std::max(p00(k, k).real(), 1e-300));
      u.col(0) = u0;
      for (int a = 1; a < n; ++a) {
        // iso:  phi(e_a0) = u_a u_0*;   anti: phi(e_0a) = u_a u_0*
        u.col(a) = (flag == BlockFlag::iso ? sub(a, 0) : sub(0, a)) * u0;
      }
    }
    assignment[j] = {i, flag, canonical_phase(nearest_unitary(u))};
  }

  JordanSpec spec(src, tgt, std::move(assignment));
  const double mismatch = (spec.to_raw().matrix() - phi.matrix()).cwiseAbs().maxCoeff();
  report.residual = std::max(residual, mismatch);
  if (mismatch > tol) {
    return reject(report.residual, "recovered block structure does not reproduce the map");
  }
  report.spec = std::move(spec);
  return report;
}

}  // namespace bstone
