#include "bstone/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bstone/error.hpp"

namespace bstone {

namespace {

// Orthonormal basis of the range of a (numerical) projection block.
Matrix projection_range(const Matrix& q) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((q + q.adjoint()) * 0.5);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    if (es.eigenvalues()(k) > 0.5) keep.push_back(k);
  }
  Matrix out(q.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
  }
  return out;
}

}  // namespace

LpVector::LpVector(BlockElement elem, double p) : elem_(std::move(elem)), p_(p) {
  require_exponent(p_);
}

void require_exponent(double p) {
  if (!(p > 0.0)) {
    throw PreconditionError("exponent p must be positive, got " + std::to_string(p));
  }
}

namespace {

// Singular values of all blocks with rounding-level ones removed. An SVD
// resolves singular values only to about eps * smax; below that they are
// noise, and for p < 1 the noise would dominate s^p. `scale` raises the
// reference magnitude when x is computed from larger operands.
std::vector<double> resolved_singular_values(const BlockElement& x, double scale = 0.0) {
  auto s = singular_values(x);
  double smax = scale;
  for (double v : s) smax = std::max(smax, v);
  int nmax = 1;
  for (int n : x.shape().blocks()) nmax = std::max(nmax, n);
  const double cut = 8.0 * nmax * std::numeric_limits<double>::epsilon() * smax;
  std::erase_if(s, [cut](double v) { return v <= cut; });
  return s;
}

}  // namespace

double lp_norm(const BlockElement& x, double p) {
  require_exponent(p);
  const auto s = resolved_singular_values(x);
  double smax = 0.0;
  for (double v : s) smax = std::max(smax, v);
  if (std::isinf(p) || smax == 0.0) return smax;
  double acc = 0.0;
  for (double v : s) acc += std::pow(v / smax, p);
  return smax * std::pow(acc, 1.0 / p);
}

double lp_norm(const LpVector& xi) { return lp_norm(xi.elem(), xi.exponent()); }

namespace {

double power_sum(const BlockElement& x, double p, double scale) {
  double acc = 0.0;
  for (double v : resolved_singular_values(x, scale)) acc += std::pow(v, p);
  return acc;
}

}  // namespace

double lp_power_sum(const BlockElement& x, double p) {
  require_exponent(p);
  if (std::isinf(p)) throw PreconditionError("lp_power_sum needs a finite exponent");
  return power_sum(x, p, 0.0);
}

Complex pair(const BlockElement& density, const BlockElement& x) {
  require_same_shape(density.shape(), x.shape(), "pair");
  Complex acc = 0.0;
  for (std::size_t b = 0; b < x.num_blocks(); ++b) {
    // Tr(a x) = sum_jk a_jk x_kj
    acc += density.block(b).cwiseProduct(x.block(b).transpose()).sum();
  }
  return acc;
}

Complex pair(const LpVector& rho, const BlockElement& x) { return pair(rho.elem(), x); }

OrthogonalityMetrics orthogonality_metrics(const BlockElement& a, const BlockElement& b,
                                           const Tolerance& tol) {
  require_same_shape(a.shape(), b.shape(), "orthogonal");
  OrthogonalityMetrics m;
  const double na = a.frobenius_norm();
  const double nb = b.frobenius_norm();
  // an element that is rounding noise next to its partner counts as zero;
  // its relative supports would otherwise be full
  if (std::min(na, nb) <= tol.eps_abs * std::max(na, nb)) return m;

  const auto sa = supports(a, tol);
  const auto sb = supports(b, tol);
  m.support_overlap = std::max(multiply(sa.left, sb.left).frobenius_norm(),
                               multiply(sa.right, sb.right).frobenius_norm());
  m.product_overlap =
      (multiply(a, adjoint(b)).frobenius_norm() + multiply(adjoint(a), b).frobenius_norm()) /
      (na * nb);
  return m;
}

double orthogonality_threshold(const Tolerance& tol) { return 100.0 * tol.eps_abs; }

bool orthogonal(const BlockElement& a, const BlockElement& b, const Tolerance& tol) {
  const auto m = orthogonality_metrics(a, b, tol);
  const double thr = orthogonality_threshold(tol);
  const bool by_support = m.support_overlap <= thr;
  const bool by_product = m.product_overlap <= thr;
  if (by_support != by_product) {
    const double clear = std::sqrt(thr);
    if (std::max(m.support_overlap, m.product_overlap) > clear) {
      throw NumericsError("orthogonality tests disagree: support overlap " +
                          std::to_string(m.support_overlap) + ", product overlap " +
                          std::to_string(m.product_overlap));
    }
  }
  return by_support;
}

bool orthogonal(const LpVector& xi, const LpVector& eta, const Tolerance& tol) {
  return orthogonal(xi.elem(), eta.elem(), tol);
}

ClarksonReport clarkson_check(const BlockElement& x, const BlockElement& y, double p, double tol,
                              const Tolerance& orth_tol) {
  require_same_shape(x.shape(), y.shape(), "clarkson_check");
  require_exponent(p);
  if (p == 2.0) {
    throw PreconditionError(
        "p = 2 is excluded: in a Hilbert space the Clarkson identity holds for every pair");
  }
  if (std::isinf(p)) {
    throw PreconditionError("clarkson_check needs a finite exponent");
  }
  ClarksonReport r;
  // one resolution scale for all four terms, so that noise kept in a tiny
  // operand is not dropped from the sums it enters
  const double scale = std::max(x.operator_norm(), y.operator_norm());
  r.lhs = power_sum(x + y, p, scale) + power_sum(x - y, p, scale);
  r.rhs = 2.0 * (power_sum(x, p, scale) + power_sum(y, p, scale));
  r.equality_holds = std::abs(r.lhs - r.rhs) <= tol * r.rhs;
  r.orthogonal = orthogonal(x, y, orth_tol);
  return r;
}

ClarksonReport clarkson_check(const LpVector& xi, const LpVector& eta, double tol,
                              const Tolerance& orth_tol) {
  if (xi.exponent() != eta.exponent()) {
    throw PreconditionError("clarkson_check: vectors live in different L^p spaces");
  }
  return clarkson_check(xi.elem(), eta.elem(), xi.exponent(), tol, orth_tol);
}

BlockElement projection_join(const AlgebraShape& shape, std::span<const BlockElement> ps,
                             const Tolerance& tol) {
  BlockElement sum(shape);
  for (const auto& p : ps) sum += p;
  BlockElement out(shape);
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    const Matrix h = (sum.block(b) + sum.block(b).adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const auto& ev = es.eigenvalues();
    const double top = ev.size() > 0 ? std::max(1.0, ev(ev.size() - 1)) : 1.0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (ev(k) > tol.eps_cluster * top) {
        out.block(b) += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
      }
    }
  }
  return out;
}

BlockElement projection_meet(const BlockElement& p, const BlockElement& q, const Tolerance& tol) {
  require_same_shape(p.shape(), q.shape(), "projection_meet");
  const auto one = BlockElement::identity(p.shape());
  const BlockElement complements[] = {one - p, one - q};
  return one - projection_join(p.shape(), complements, tol);
}

Corner::Corner(BlockElement q1, BlockElement q2, const Tolerance& tol)
    : q1_(std::move(q1)), q2_(std::move(q2)) {
  require_same_shape(q1_.shape(), q2_.shape(), "Corner");
  const double eps = orthogonality_threshold(tol);
  if (!q1_.is_projection(eps) || !q2_.is_projection(eps)) {
    throw PreconditionError("a corner is cut by two projections");
  }
  for (std::size_t b = 0; b < q1_.num_blocks(); ++b) {
    if (q1_.block(b).norm() < 0.5 || q2_.block(b).norm() < 0.5) {
      q1_.block(b).setZero();
      q2_.block(b).setZero();
    }
  }
}

BlockElement Corner::compress(const BlockElement& x) const {
  return multiply(multiply(q1_, x), q2_);
}

bool Corner::contains(const BlockElement& x, const Tolerance& tol) const {
  const double scale = std::max(1.0, x.frobenius_norm());
  return (compress(x) - x).frobenius_norm() <= orthogonality_threshold(tol) * scale;
}

Matrix Corner::basis(const Tolerance&) const {
  const auto& shape = q1_.shape();
  std::vector<Vector> cols;
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    const Matrix left = projection_range(q1_.block(b));
    const Matrix right = projection_range(q2_.block(b));
    for (Eigen::Index i = 0; i < left.cols(); ++i) {
      for (Eigen::Index j = 0; j < right.cols(); ++j) {
        BlockElement e(shape);
        e.block(b) = left.col(i) * right.col(j).adjoint();
        cols.push_back(e.vectorize());
      }
    }
  }
  Matrix out(shape.ambient_dim(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = cols[k];
  return out;
}

std::vector<BlockElement> Corner::spanning_set(const Tolerance& tol) const {
  std::vector<BlockElement> out;
  const auto& shape = q1_.shape();
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    const int n = shape.block(b);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        auto e = compress(BlockElement::unit(shape, b, r, c));
        if (e.frobenius_norm() > orthogonality_threshold(tol)) out.push_back(std::move(e));
      }
    }
  }
  return out;
}

int Corner::dimension(const Tolerance& tol) const { return static_cast<int>(basis(tol).cols()); }

Corner orthocomplement(const AlgebraShape& shape, std::span<const BlockElement> set,
                       const Tolerance& tol) {
  std::vector<BlockElement> lefts;
  std::vector<BlockElement> rights;
  for (const auto& rho : set) {
    require_same_shape(rho.shape(), shape, "orthocomplement");
    auto s = supports(rho, tol);
    lefts.push_back(std::move(s.left));
    rights.push_back(std::move(s.right));
  }
  const auto one = BlockElement::identity(shape);
  return Corner(one - projection_join(shape, lefts, tol), one - projection_join(shape, rights, tol),
                tol);
}

Corner orthocomplement(const AlgebraShape& shape, std::span<const LpVector> set,
                       const Tolerance& tol) {
  std::vector<BlockElement> elems;
  elems.reserve(set.size());
  for (const auto& v : set) elems.push_back(v.elem());
  return orthocomplement(shape, elems, tol);
}

Corner corner_intersection(const Corner& a, const Corner& b, const Tolerance& tol) {
  return Corner(projection_meet(a.q1(), b.q1(), tol), projection_meet(a.q2(), b.q2(), tol), tol);
}

}  // namespace bstone
