#include "bstone/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "bstone/error.hpp"

namespace bstone {

const char* to_string(BlockFlag f) { return f == BlockFlag::iso ? "iso" : "anti"; }

JordanSpec::JordanSpec(AlgebraShape source, AlgebraShape target,
                       std::vector<BlockAssignment> assignment, double eps)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  if (assignment_.size() != target_.num_blocks() || source_.num_blocks() != target_.num_blocks()) {
    throw ShapeError("a Jordan *-isomorphism needs one assignment per block on both sides");
  }
  std::vector<bool> used(source_.num_blocks(), false);
  for (std::size_t j = 0; j < assignment_.size(); ++j) {
    const auto& a = assignment_[j];
    if (a.source_block >= source_.num_blocks() || used[a.source_block]) {
      throw PreconditionError("block assignment is not a permutation");
    }
    used[a.source_block] = true;
    const int n = target_.block(j);
    if (source_.block(a.source_block) != n) {
      throw ShapeError("block assignment pairs blocks of different sizes");
    }
    if (a.conjugator.rows() != n || a.conjugator.cols() != n) {
      throw ShapeError("conjugator has the wrong size");
    }
    const Matrix id = Matrix::Identity(n, n);
    if ((a.conjugator.adjoint() * a.conjugator - id).norm() > eps) {
      throw PreconditionError("conjugator is not unitary");
    }
  }
}

JordanSpec JordanSpec::identity(const AlgebraShape& shape) {
  std::vector<BlockAssignment> a;
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    a.push_back({b, BlockFlag::iso, Matrix::Identity(shape.block(b), shape.block(b))});
  }
  return JordanSpec(shape, shape, std::move(a));
}

JordanSpec JordanSpec::inner(const BlockElement& u, double eps) {
  std::vector<BlockAssignment> a;
  for (std::size_t b = 0; b < u.num_blocks(); ++b) a.push_back({b, BlockFlag::iso, u.block(b)});
  return JordanSpec(u.shape(), u.shape(), std::move(a), eps);
}

JordanSpec JordanSpec::transpose(const AlgebraShape& shape) {
  std::vector<BlockAssignment> a;
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    a.push_back({b, BlockFlag::anti, Matrix::Identity(shape.block(b), shape.block(b))});
  }
  return JordanSpec(shape, shape, std::move(a));
}

std::vector<std::size_t> JordanSpec::permutation() const {
  std::vector<std::size_t> p;
  for (const auto& a : assignment_) p.push_back(a.source_block);
  return p;
}

std::vector<BlockFlag> JordanSpec::flags() const {
  std::vector<BlockFlag> f;
  for (const auto& a : assignment_) f.push_back(a.flag);
  return f;
}

BlockElement JordanSpec::apply(const BlockElement& x) const {
  require_same_shape(x.shape(), source_, "apply_jordan");
  BlockElement out(target_);
  for (std::size_t j = 0; j < assignment_.size(); ++j) {
    const auto& a = assignment_[j];
    const Matrix& m = x.block(a.source_block);
    if (a.flag == BlockFlag::iso) {
      out.block(j) = a.conjugator * m * a.conjugator.adjoint();
    } else {
      out.block(j) = a.conjugator * m.transpose() * a.conjugator.adjoint();
    }
  }
  return out;
}

RawLinearMap JordanSpec::to_raw() const {
  return RawLinearMap::from_function(source_, target_,
                                     [this](const BlockElement& x) { return apply(x); });
}

JordanSpec JordanSpec::inverse() const {
  std::vector<BlockAssignment> inv(assignment_.size());
  for (std::size_t j = 0; j < assignment_.size(); ++j) {
    const auto& a = assignment_[j];
    // iso:  y = u x u*    =>  x = u* y u
    // anti: y = u x^T u*  =>  x = (u* y u)^T = u^T y^T conj(u)
    Matrix c = a.flag == BlockFlag::iso ? Matrix(a.conjugator.adjoint())
                                        : Matrix(a.conjugator.transpose());
    inv[a.source_block] = {j, a.flag, std::move(c)};
  }
  return JordanSpec(target_, source_, std::move(inv));
}

BlockElement apply_jordan(const JordanSpec& j, const BlockElement& x) { return j.apply(x); }

JordanSpec compose(const JordanSpec& outer, const JordanSpec& inner) {
  require_same_shape(inner.target(), outer.source(), "compose");
  std::vector<BlockAssignment> out;
  for (const auto& f : outer.assignment()) {
    const auto& g = inner.assignment()[f.source_block];
    const BlockFlag flag = f.flag == g.flag ? BlockFlag::iso : BlockFlag::anti;
    // outer anti: u_f (u_g m u_g*)^T u_f* = (u_f conj(u_g)) m^T (u_f conj(u_g))*
    Matrix c = f.flag == BlockFlag::iso ? Matrix(f.conjugator * g.conjugator)
                                        : Matrix(f.conjugator * g.conjugator.conjugate());
    out.push_back({g.source_block, flag, std::move(c)});
  }
  return JordanSpec(inner.source(), outer.target(), std::move(out), 1e-8);
}

Matrix canonical_phase(const Matrix& u) {
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    const Complex c = u(r, 0);
    if (std::abs(c) > 1e-6) return u * (std::conj(c) / std::abs(c));
  }
  return u;
}

double distance_modulo_phase(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (a - phase * b).norm();
}

bool same_up_to_phase(const JordanSpec& a, const JordanSpec& b, double eps) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) return false;
  if (a.permutation() != b.permutation() || a.flags() != b.flags()) return false;
  for (std::size_t j = 0; j < a.assignment().size(); ++j) {
    if (distance_modulo_phase(a.assignment()[j].conjugator, b.assignment()[j].conjugator) > eps) {
      return false;
    }
  }
  return true;
}

bool shapes_jordan_isomorphic(const AlgebraShape& a, const AlgebraShape& b) {
  auto x = a.blocks();
  auto y = b.blocks();
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

JordanSpec random_jordan(const AlgebraShape& source, const AlgebraShape& target, Rng& rng) {
  if (!shapes_jordan_isomorphic(source, target)) {
    throw PreconditionError("random_jordan: shapes have different block-size multisets");
  }
  std::map<int, std::vector<std::size_t>> by_size;
  for (std::size_t i = 0; i < source.num_blocks(); ++i) by_size[source.block(i)].push_back(i);
  for (auto& [n, blocks] : by_size) {
    // Fisher-Yates
    for (std::size_t k = blocks.size(); k > 1; --k) {
      std::uniform_int_distribution<std::size_t> pick(0, k - 1);
      std::swap(blocks[k - 1], blocks[pick(rng)]);
    }
  }
  std::map<int, std::size_t> next;
  std::bernoulli_distribution coin(0.5);
  std::vector<BlockAssignment> a;
  for (std::size_t j = 0; j < target.num_blocks(); ++j) {
    const int n = target.block(j);
    const std::size_t src = by_size[n][next[n]++];
    const bool anti = coin(rng);
    const Matrix u = haar_unitary(n, rng);
    a.push_back({src, (anti && n > 1) ? BlockFlag::anti : BlockFlag::iso,
                 n == 1 ? Matrix::Identity(1, 1) : canonical_phase(u)});
  }
  return JordanSpec(source, target, std::move(a));
}

JordanSpec random_jordan(const AlgebraShape& source, const AlgebraShape& target,
                         std::uint64_t seed) {
  Rng rng(seed);
  return random_jordan(source, target, rng);
}

BlockElement split_iso_anti(const JordanSpec& j) {
  std::vector<bool> active(j.source().num_blocks(), false);
  for (const auto& a : j.assignment()) {
    if (a.flag == BlockFlag::iso) active[a.source_block] = true;
  }
  return BlockElement::central(j.source(), active);
}

}  // namespace bstone
