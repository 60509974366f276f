#include "bstone/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bstone/error.hpp"

namespace bstone {

void Tolerance::validate() const {
  if (!(eps_abs > 0.0) || !(eps_cluster > 0.0)) {
    throw PreconditionError("tolerances must be strictly positive");
  }
}

AlgebraShape::AlgebraShape(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) {
    throw ShapeError("an algebra shape needs at least one block");
  }
  offsets_.reserve(blocks_.size());
  for (int n : blocks_) {
    if (n < 1) {
      throw ShapeError("block sizes must be positive, got " + std::to_string(n));
    }
    offsets_.push_back(ambient_dim_);
    ambient_dim_ += n * n;
  }
}

AlgebraShape::AlgebraShape(std::initializer_list<int> blocks)
    : AlgebraShape(std::vector<int>(blocks)) {}

void require_same_shape(const AlgebraShape& a, const AlgebraShape& b, const char* what) {
  if (!(a == b)) {
    throw ShapeError(std::string(what) + ": operands have different block structure");
  }
}

BlockElement::BlockElement(AlgebraShape shape) : shape_(std::move(shape)) {
  mats_.reserve(shape_.num_blocks());
  for (int n : shape_.blocks()) {
    mats_.push_back(Matrix::Zero(n, n));
  }
}

BlockElement::BlockElement(AlgebraShape shape, std::vector<Matrix> mats)
    : shape_(std::move(shape)), mats_(std::move(mats)) {
  if (mats_.size() != shape_.num_blocks()) {
    throw ShapeError("expected " + std::to_string(shape_.num_blocks()) + " blocks, got " +
                     std::to_string(mats_.size()));
  }
  for (std::size_t i = 0; i < mats_.size(); ++i) {
    const int n = shape_.block(i);
    if (mats_[i].rows() != n || mats_[i].cols() != n) {
      throw ShapeError("block " + std::to_string(i) + " must be " + std::to_string(n) + "x" +
                       std::to_string(n));
    }
  }
}

BlockElement BlockElement::identity(const AlgebraShape& shape) {
  BlockElement e(shape);
  for (auto& m : e.mats_) m.setIdentity();
  return e;
}

BlockElement BlockElement::unit(const AlgebraShape& shape, std::size_t block, int row, int col) {
  BlockElement e(shape);
  const int n = shape.block(block);
  if (row < 0 || col < 0 || row >= n || col >= n) {
    throw ShapeError("matrix unit index out of range");
  }
  e.mats_[block](row, col) = 1.0;
  return e;
}

BlockElement BlockElement::central(const AlgebraShape& shape, const std::vector<bool>& active) {
  if (active.size() != shape.num_blocks()) {
    throw ShapeError("central projection mask has the wrong length");
  }
  BlockElement e(shape);
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (active[i]) e.mats_[i].setIdentity();
  }
  return e;
}

Vector BlockElement::vectorize() const {
  Vector v(shape_.ambient_dim());
  for (std::size_t b = 0; b < mats_.size(); ++b) {
    const int n = shape_.block(b);
    const int off = shape_.offset(b);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) v(off + r * n + c) = mats_[b](r, c);
    }
  }
  return v;
}

BlockElement BlockElement::from_vector(const AlgebraShape& shape, const Vector& v) {
  if (v.size() != shape.ambient_dim()) {
    throw ShapeError("vector length does not match the algebra dimension");
  }
  BlockElement e(shape);
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    const int n = shape.block(b);
    const int off = shape.offset(b);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) e.mats_[b](r, c) = v(off + r * n + c);
    }
  }
  return e;
}

BlockElement& BlockElement::operator+=(const BlockElement& other) {
  require_same_shape(shape_, other.shape_, "add");
  for (std::size_t i = 0; i < mats_.size(); ++i) mats_[i] += other.mats_[i];
  return *this;
}

BlockElement& BlockElement::operator-=(const BlockElement& other) {
  require_same_shape(shape_, other.shape_, "subtract");
  for (std::size_t i = 0; i < mats_.size(); ++i) mats_[i] -= other.mats_[i];
  return *this;
}

BlockElement& BlockElement::operator*=(Complex s) {
  for (auto& m : mats_) m *= s;
  return *this;
}

Complex BlockElement::trace() const {
  Complex t = 0.0;
  for (const auto& m : mats_) t += m.trace();
  return t;
}

double BlockElement::frobenius_norm() const {
  double s = 0.0;
  for (const auto& m : mats_) s += m.squaredNorm();
  return std::sqrt(s);
}

double BlockElement::operator_norm() const {
  double best = 0.0;
  for (const auto& m : mats_) {
    Eigen::JacobiSVD<Matrix> svd(m);
    if (svd.singularValues().size() > 0) best = std::max(best, svd.singularValues()(0));
  }
  return best;
}

double BlockElement::max_abs() const {
  double best = 0.0;
  for (const auto& m : mats_) {
    if (m.size() > 0) best = std::max(best, m.cwiseAbs().maxCoeff());
  }
  return best;
}

bool BlockElement::is_selfadjoint(double eps) const {
  return std::all_of(mats_.begin(), mats_.end(),
                     [eps](const Matrix& m) { return (m - m.adjoint()).norm() <= eps; });
}

bool BlockElement::is_projection(double eps) const {
  return is_selfadjoint(eps) &&
         std::all_of(mats_.begin(), mats_.end(),
                     [eps](const Matrix& m) { return (m * m - m).norm() <= eps; });
}

bool BlockElement::is_unitary(double eps) const {
  return std::all_of(mats_.begin(), mats_.end(), [eps](const Matrix& m) {
    const Matrix id = Matrix::Identity(m.rows(), m.cols());
    return (m.adjoint() * m - id).norm() <= eps && (m * m.adjoint() - id).norm() <= eps;
  });
}

bool BlockElement::is_partial_isometry(double eps) const {
  return multiply(adjoint(*this), *this).is_projection(eps);
}

bool BlockElement::is_central(double eps) const {
  return std::all_of(mats_.begin(), mats_.end(), [eps](const Matrix& m) {
    const Complex c = m(0, 0);
    return (m - c * Matrix::Identity(m.rows(), m.cols())).norm() <= eps;
  });
}

BlockElement operator+(BlockElement a, const BlockElement& b) { return a += b; }
BlockElement operator-(BlockElement a, const BlockElement& b) { return a -= b; }
BlockElement operator-(BlockElement a) { return a *= -1.0; }
BlockElement operator*(Complex s, BlockElement a) { return a *= s; }

BlockElement multiply(const BlockElement& x, const BlockElement& y) {
  require_same_shape(x.shape(), y.shape(), "multiply");
  std::vector<Matrix> out;
  out.reserve(x.num_blocks());
  for (std::size_t i = 0; i < x.num_blocks(); ++i) out.push_back(x.block(i) * y.block(i));
  return BlockElement(x.shape(), std::move(out));
}

BlockElement adjoint(const BlockElement& x) {
  std::vector<Matrix> out;
  out.reserve(x.num_blocks());
  for (const auto& m : x.mats()) out.push_back(m.adjoint());
  return BlockElement(x.shape(), std::move(out));
}

BlockElement transpose(const BlockElement& x) {
  std::vector<Matrix> out;
  out.reserve(x.num_blocks());
  for (const auto& m : x.mats()) out.push_back(m.transpose());
  return BlockElement(x.shape(), std::move(out));
}

BlockElement jordan_product(const BlockElement& x, const BlockElement& y) {
  require_same_shape(x.shape(), y.shape(), "jordan_product");
  std::vector<Matrix> out;
  out.reserve(x.num_blocks());
  for (std::size_t i = 0; i < x.num_blocks(); ++i) {
    const Matrix xy = x.block(i) * y.block(i);
    const Matrix yx = y.block(i) * x.block(i);
    out.push_back((xy + yx) * 0.5);
  }
  return BlockElement(x.shape(), std::move(out));
}

std::vector<double> singular_values(const BlockElement& x) {
  std::vector<double> out;
  for (const auto& m : x.mats()) {
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    out.insert(out.end(), s.data(), s.data() + s.size());
  }
  return out;
}

PolarDecomposition polar_decompose(const BlockElement& x, const Tolerance& tol) {
  std::vector<Eigen::JacobiSVD<Matrix>> svds;
  svds.reserve(x.num_blocks());
  double smax = 0.0;
  for (const auto& m : x.mats()) {
    svds.emplace_back(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svds.back().singularValues().size() > 0) {
      smax = std::max(smax, svds.back().singularValues()(0));
    }
  }
  const double cutoff = tol.eps_abs * smax;

  BlockElement v(x.shape());
  BlockElement h(x.shape());
  for (std::size_t b = 0; b < x.num_blocks(); ++b) {
    const auto& svd = svds[b];
    const auto& s = svd.singularValues();
    int rank = 0;
    while (rank < s.size() && s(rank) > cutoff) ++rank;
    if (rank == 0) continue;
    const auto u = svd.matrixU().leftCols(rank);
    const auto w = svd.matrixV().leftCols(rank);
    v.block(b) = u * w.adjoint();
    h.block(b) = w * s.head(rank).cast<Complex>().asDiagonal() * w.adjoint();
  }
  return {std::move(v), std::move(h)};
}

Supports supports(const BlockElement& x, const Tolerance& tol) {
  const auto polar = polar_decompose(x, tol);
  const auto vs = adjoint(polar.v);
  return {multiply(polar.v, vs), multiply(vs, polar.v)};
}

std::vector<SpectralComponent> spectral_decompose(const BlockElement& h, const Tolerance& tol) {
  const double scale = std::max(1.0, h.max_abs());
  if (!h.is_selfadjoint(tol.eps_abs * scale)) {
    throw PreconditionError("spectral_decompose needs a self-adjoint element");
  }

  struct Eigenpair {
    double value;
    std::size_t block;
    Vector vec;
  };
  std::vector<Eigenpair> pairs;
  double norm = 0.0;
  for (std::size_t b = 0; b < h.num_blocks(); ++b) {
    const Matrix sym = (h.block(b) + h.block(b).adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    for (int k = 0; k < sym.rows(); ++k) {
      pairs.push_back({es.eigenvalues()(k), b, es.eigenvectors().col(k)});
      norm = std::max(norm, std::abs(es.eigenvalues()(k)));
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Eigenpair& a, const Eigenpair& b) { return a.value > b.value; });

  const double gap = tol.eps_cluster * (norm > 0.0 ? norm : 1.0);
  std::vector<SpectralComponent> out;
  double sum = 0.0;
  int count = 0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (k == 0 || pairs[k - 1].value - pairs[k].value > gap) {
      if (count > 0) out.back().eigenvalue = sum / count;
      out.push_back({0.0, BlockElement(h.shape())});
      sum = 0.0;
      count = 0;
    }
    const auto& p = pairs[k];
    out.back().projection.block(p.block) += p.vec * p.vec.adjoint();
    sum += p.value;
    ++count;
  }
  if (count > 0) out.back().eigenvalue = sum / count;
  return out;
}

BlockElement central_support(const BlockElement& x, const Tolerance& tol) {
  const double cutoff = tol.eps_abs * x.max_abs();
  std::vector<bool> active(x.num_blocks());
  for (std::size_t b = 0; b < x.num_blocks(); ++b) {
    active[b] = x.block(b).size() > 0 && x.block(b).cwiseAbs().maxCoeff() > cutoff;
  }
  return BlockElement::central(x.shape(), active);
}

std::vector<bool> central_blocks(const BlockElement& z, const Tolerance& tol) {
  std::vector<bool> active(z.num_blocks());
  for (std::size_t b = 0; b < z.num_blocks(); ++b) {
    const Matrix& m = z.block(b);
    const Matrix id = Matrix::Identity(m.rows(), m.cols());
    if (m.norm() <= tol.eps_abs) {
      active[b] = false;
    } else if ((m - id).norm() <= tol.eps_abs) {
      active[b] = true;
    } else {
      throw PreconditionError("expected a central projection (0 or identity on each block)");
    }
  }
  return active;
}

}  // namespace bstone
