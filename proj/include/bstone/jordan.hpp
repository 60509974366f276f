#pragma once

// Jordan *-isomorphisms between block algebras. Every such map is a block
// permutation followed, on each target block, by either x -> u x u* (a
// *-isomorphism on that block) or x -> u x^T u* (a *-antiisomorphism).

#include <optional>
#include <string>
#include <vector>

#include "bstone/algebra.hpp"
#include "bstone/linear_map.hpp"
#include "bstone/random.hpp"

namespace bstone {

enum class BlockFlag { iso, anti };

const char* to_string(BlockFlag f);

struct BlockAssignment {
  std::size_t source_block;
  BlockFlag flag;
  Matrix conjugator;
};

/// Target block j receives u_j phi_j(x_{perm[j]}) u_j^*, phi_j = id or transpose.
class JordanSpec {
 public:
  JordanSpec(AlgebraShape source, AlgebraShape target, std::vector<BlockAssignment> assignment,
             double eps = 1e-9);

  static JordanSpec identity(const AlgebraShape& shape);
  /// x -> u x u* with u unitary in `shape`.
  static JordanSpec inner(const BlockElement& u, double eps = 1e-9);
  /// x -> x^T on every block.
  static JordanSpec transpose(const AlgebraShape& shape);

  const AlgebraShape& source() const { return source_; }
  const AlgebraShape& target() const { return target_; }
  const std::vector<BlockAssignment>& assignment() const { return assignment_; }

  /// perm[j] = source block feeding target block j.
  std::vector<std::size_t> permutation() const;
  std::vector<BlockFlag> flags() const;

  BlockElement apply(const BlockElement& x) const;
  BlockElement operator()(const BlockElement& x) const { return apply(x); }
  RawLinearMap to_raw() const;

  JordanSpec inverse() const;

 private:
  AlgebraShape source_;
  AlgebraShape target_;
  std::vector<BlockAssignment> assignment_;
};

BlockElement apply_jordan(const JordanSpec& j, const BlockElement& x);

/// (outer ∘ inner)(x) = outer(inner(x)).
JordanSpec compose(const JordanSpec& outer, const JordanSpec& inner);

/// Multiplies by a phase so that the first column's first entry of magnitude
/// above 1e-6 is real and positive.
Matrix canonical_phase(const Matrix& u);

/// min over theta of ||a - e^{i theta} b||_F.
double distance_modulo_phase(const Matrix& a, const Matrix& b);

/// Same permutation and flags, conjugators equal modulo phase within eps.
bool same_up_to_phase(const JordanSpec& a, const JordanSpec& b, double eps);

enum class JordanMode {
  isomorphism,   ///< bijective and unital; a JordanSpec is recovered
  monomorphism,  ///< injective only; no spec recovery
};

struct JordanReport {
  bool is_jordan = false;
  double residual = 0.0;
  std::optional<JordanSpec> spec;
  std::string reason;
};

/// Checks a raw linear map for being a Jordan *-isomorphism (or monomorphism):
/// *-preservation on the matrix-unit basis, unitality, rank, and
/// phi(x o y) = phi(x) o phi(y) on all pairs of a self-adjoint basis. In
/// isomorphism mode also recovers the block permutation (lowest free target
/// index first), the per-block flag and the conjugators (canonical phase), and
/// checks the recovered spec reproduces the map.
JordanReport verify_jordan(const RawLinearMap& phi, double tol = 1e-9,
                           JordanMode mode = JordanMode::isomorphism);

/// Equal multisets of block sizes.
bool shapes_jordan_isomorphic(const AlgebraShape& a, const AlgebraShape& b);

/// Uniform dimension-respecting permutation, fair iso/anti flags (blocks of
/// size 1 are always iso: transpose is trivial there), Haar conjugators in
/// canonical phase.
JordanSpec random_jordan(const AlgebraShape& source, const AlgebraShape& target, Rng& rng);
JordanSpec random_jordan(const AlgebraShape& source, const AlgebraShape& target,
                         std::uint64_t seed);

/// Central projection of the source that is the identity exactly on the blocks
/// carried with flag iso.
BlockElement split_iso_anti(const JordanSpec& j);

}  // namespace bstone
