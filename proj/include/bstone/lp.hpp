#pragma once

// Schatten p-spaces over a block algebra. With the (unnormalized) matrix trace
// as reference trace, L^1 is the predual: the density a represents the normal
// functional x -> sum_i Tr(a_i x_i). The bimodule actions
//   (x rho)(y) = rho(y x),   (rho x)(y) = rho(x y)
// become a -> x a and a -> a x on densities.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "bstone/algebra.hpp"

namespace bstone {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// An element of L^p, 0 < p <= inf.
class LpVector {
 public:
  LpVector(BlockElement elem, double p);

  const BlockElement& elem() const { return elem_; }
  double exponent() const { return p_; }
  const AlgebraShape& shape() const { return elem_.shape(); }

 private:
  BlockElement elem_;
  double p_;
};

/// Throws PreconditionError unless p is in (0, inf].
void require_exponent(double p);

/// (sum_j s_j^p)^{1/p} over the singular values of all blocks; the largest
/// singular value for p = inf. A quasi-norm when p < 1.
double lp_norm(const BlockElement& x, double p);
double lp_norm(const LpVector& xi);

/// sum_j s_j^p, i.e. ||x||_p^p for finite p.
double lp_power_sum(const BlockElement& x, double p);

/// rho(x) = sum_i Tr(a_i x_i) for the density a of rho.
Complex pair(const BlockElement& density, const BlockElement& x);
Complex pair(const LpVector& rho, const BlockElement& x);

struct OrthogonalityMetrics {
  /// max(||s_l(a) s_l(b)||, ||s_r(a) s_r(b)||)
  double support_overlap = 0.0;
  /// (||a b*|| + ||a* b||) / (||a|| ||b||), or 0 if either is zero.
  double product_overlap = 0.0;
};

OrthogonalityMetrics orthogonality_metrics(const BlockElement& a, const BlockElement& b,
                                           const Tolerance& tol = {});

/// Overlap at or below which a pair counts as orthogonal.
double orthogonality_threshold(const Tolerance& tol);

/// a ⊥ b: orthogonal left supports and orthogonal right supports. Decided by
/// both the support route and the product route (a b* = a* b = 0); throws
/// NumericsError when one route is clearly orthogonal and the other clearly not.
bool orthogonal(const BlockElement& a, const BlockElement& b, const Tolerance& tol = {});
bool orthogonal(const LpVector& xi, const LpVector& eta, const Tolerance& tol = {});

struct ClarksonReport {
  bool equality_holds = false;
  bool orthogonal = false;
  /// ||x + y||^p + ||x - y||^p
  double lhs = 0.0;
  /// 2 (||x||^p + ||y||^p)
  double rhs = 0.0;
  bool agree() const { return equality_holds == orthogonal; }
};

/// Equality case of the Clarkson inequality, p in (0, inf) \ {2}.
///
/// For p = 1 the identity lhs = rhs is the same as the pair of equalities
/// ||x + y|| = ||x|| + ||y|| = ||x - y||, because each of ||x +- y|| is at
/// most ||x|| + ||y||. Equality is decided relative to rhs: |lhs - rhs| <=
/// tol * rhs.
ClarksonReport clarkson_check(const BlockElement& x, const BlockElement& y, double p,
                              double tol, const Tolerance& orth_tol = {});
ClarksonReport clarkson_check(const LpVector& xi, const LpVector& eta, double tol,
                              const Tolerance& orth_tol = {});

/// Lattice join of projections: support of their sum.
BlockElement projection_join(const AlgebraShape& shape, std::span<const BlockElement> ps,
                             const Tolerance& tol = {});
/// Lattice meet, 1 - join(1 - p, 1 - q).
BlockElement projection_meet(const BlockElement& p, const BlockElement& q,
                             const Tolerance& tol = {});

/// The corner q1 X q2, kept in the normal form c(q1) = c(q2).
class Corner {
 public:
  /// Normalizes: both projections are cut down to the blocks where both are
  /// nonzero (outside them the corner is {0} anyway).
  Corner(BlockElement q1, BlockElement q2, const Tolerance& tol = {});

  const BlockElement& q1() const { return q1_; }
  const BlockElement& q2() const { return q2_; }
  const AlgebraShape& shape() const { return q1_.shape(); }

  bool contains(const BlockElement& x, const Tolerance& tol = {}) const;
  /// q1 x q2
  BlockElement compress(const BlockElement& x) const;
  /// Orthonormal basis of the corner in vectorized coordinates (columns).
  Matrix basis(const Tolerance& tol = {}) const;
  /// Spanning elements q1 e_jk q2 (nonzero ones only).
  std::vector<BlockElement> spanning_set(const Tolerance& tol = {}) const;
  int dimension(const Tolerance& tol = {}) const;

 private:
  BlockElement q1_;
  BlockElement q2_;
};

/// S^⊥ = (1 - join s_l) X (1 - join s_r) over rho in S. `shape` fixes the
/// ambient algebra when S is empty.
Corner orthocomplement(const AlgebraShape& shape, std::span<const BlockElement> set,
                       const Tolerance& tol = {});
Corner orthocomplement(const AlgebraShape& shape, std::span<const LpVector> set,
                       const Tolerance& tol = {});

/// Intersection of two corners, (p1 ∧ q1) X (p2 ∧ q2).
Corner corner_intersection(const Corner& a, const Corner& b, const Tolerance& tol = {});

/// N(z): the largest number of pairwise orthogonal functionals with central
/// support z. Closed form: the smallest block size among the blocks of z.
int n_invariant(const AlgebraShape& shape, const BlockElement& z, const Tolerance& tol = {});

struct NInvariantSearch {
  int value = 0;           ///< largest orthogonal family found
  int search_bound = 0;    ///< sizes up to this were attempted
  std::size_t candidates = 0;
};

/// Brute-force N(z): builds candidate functionals with central support z out
/// of matrix units (in the standard frame and in `random_frames` Haar-rotated
/// frames), then searches exhaustively for the largest pairwise orthogonal
/// subfamily, trying sizes up to max block size + 1.
NInvariantSearch n_invariant_search(const AlgebraShape& shape, const BlockElement& z,
                                    std::uint64_t seed, int random_frames = 1,
                                    const Tolerance& tol = {});

struct CommutantReport {
  int dim_left = 0;
  int dim_right = 0;
  int dim_commutant_of_right = 0;
  int dim_commutant_of_left = 0;
  double distance_left = 0.0;   ///< commutant(right image) vs left image
  double distance_right = 0.0;  ///< commutant(left image) vs right image
  bool mutual = false;
  double isometry_deviation = 0.0;
  bool isometric = false;
};

inline constexpr int kMaxCommutantDim = 36;

/// Builds the left and right multiplication representations of the algebra on
/// its predual, computes each commutant as a nullspace, and checks they are
/// each other's images. Also samples ||x||_inf against the norm of x acting
/// by multiplication on the trace-norm space.
CommutantReport commutant_check(const AlgebraShape& shape, double tol = 1e-8,
                                int samples = 100, std::uint64_t seed = 1);

}  // namespace bstone
