#pragma once

// Surjective isometries of Schatten p-spaces over block algebras and the
// recovery of their (unitary, Jordan *-isomorphism) structure.
//
// Reference trace. Throughout, the reference trace is the unnormalized matrix
// trace Tr. The functional Tr(p . ) attached to a projection p then has density
// p itself, and since p^{1/p} = p the density of the L^p element attached to
// p is p for every exponent. This is what lets one reconstruction procedure
// serve every p.
//
// Canonical maps act the same way for every p. Let J be a Jordan
// *-isomorphism and u a unitary. For a positive density a (the functional
// phi = Tr(a . )) one has
//   (phi o J^{-1})(y) = Tr(a J^{-1}(y)) = Tr(J(a) J(J^{-1}(y))) = Tr(J(a) y),
// using Tr(J(b) J(c)) = Tr(J(b o c)) = Tr(b o c) = Tr(b c) (J preserves Tr
// and the Jordan product, and a Jordan product has the trace of the ordinary
// product). So phi o J^{-1} has density J(a). A Jordan *-map commutes with
// continuous functional calculus on self-adjoints, hence
//   (phi o J^{-1})^{1/p} = J(a)^{1/p} = J(a^{1/p}),
// and the rule T(phi^{1/p}) = u (phi o J^{-1})^{1/p} reads T(b) = u J(b) on
// positive b = a^{1/p}. Every element is a combination of four positive ones,
// so T(x) = u J(x) for all x: one linear map, isometric for every p in
// (0, inf], because u J(.) only permutes, transposes and unitarily rotates the
// blocks and so preserves singular values.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bstone/jordan.hpp"
#include "bstone/linear_map.hpp"
#include "bstone/lp.hpp"

namespace bstone {

/// x -> u J(x).
struct CanonicalIsometry {
  BlockElement u;
  JordanSpec jordan;
  double p;

  BlockElement apply(const BlockElement& x) const;
  RawLinearMap to_raw() const;
};

/// Matrix of x -> u J(x). The same map for every exponent (see above); `p`
/// is validated but does not change the result.
RawLinearMap build_canonical(const BlockElement& u, const JordanSpec& j, double p = 1.0,
                             double eps = 1e-9);

struct IsometryReport {
  bool is_isometry = false;
  /// max over samples of | ||phi x||_p / ||x||_p - 1 |
  double max_ratio_dev = 0.0;
  bool surjective = false;
};

/// Samples Gaussian elements and compares norm ratios with 1. Never throws on
/// a mathematical failure.
IsometryReport verify_isometry(const RawLinearMap& phi, double p, int samples,
                               std::uint64_t seed, double tol);

enum class Verdict { canonical, non_canonical, not_isometric };

const char* to_string(Verdict v);
/// Process exit status for a verdict: 0, 2, 3.
int exit_status(Verdict v);

struct ReconstructionReport {
  BlockElement w;     ///< polar part of phi(1)
  BlockElement phi1;  ///< |phi(1)|; the identity for a canonical map
  std::optional<JordanSpec> k_spec;
  RawLinearMap k_map;  ///< K defined through right supports, extended linearly
  double residual_form = 0.0;         ///< max ||phi(x) - w K(x)|| over the test set
  double residual_additivity = 0.0;   ///< max ||w_q + w_{1-q} - w||, ||h_q + h_{1-q} - h||
  double residual_consistency = 0.0;  ///< max ||K(q) - w* phi(q)|| on the spanning projections
  double residual_trace = 0.0;        ///< ||phi1 - 1|| and non-unitarity of w
  double jordan_residual = 0.0;
  double isometry_deviation = 0.0;
  Verdict verdict = Verdict::non_canonical;
  std::vector<std::string> notes;
};

struct ReconstructOptions {
  double tol = 1e-7;
  Tolerance numerics{};
  int isometry_samples = 32;
  std::uint64_t seed = 0x5eed;
  /// Run the procedure even at p = 2, where the structure theorem does not
  /// apply. Only for demonstrating that failure.
  bool allow_hilbert_exponent = false;
};

/// Spanning projections of one algebra: every e_jj, and for j < k the rank-one
/// projections (e_jj + e_kk + e_jk + e_kj)/2 and (e_jj + e_kk - i e_jk + i e_kj)/2.
/// They form a basis of the algebra.
std::vector<BlockElement> spanning_projections(const AlgebraShape& shape);

/// Recovers (w, K) with phi(x) = w K(x) from a surjective isometry of L^p,
/// p != 2:
///   1. w h := polar decomposition of phi(1); expects w unitary, h = 1.
///   2. K(q) := right support of phi(q) on spanning projections q, checking
///      additivity w_q + w_{1-q} = w, h_q + h_{1-q} = h.
///   3. K extended linearly; cross-checked against w* phi(q).
///   4. K checked for being a Jordan *-isomorphism; its block spec recovered.
///   5. verdict.
/// Throws PreconditionError at p = 2 (unless allowed) and for non-bijective maps.
ReconstructionReport reconstruct(const RawLinearMap& phi, double p,
                                 const ReconstructOptions& opts = {});

struct CentralImage {
  BlockElement z_prime;
  bool lattice_isomorphism = false;  ///< minimal central projections map to minimal ones
  bool summand_exact = false;        ///< phi(z X z) is all of z' X z'
  int n_source = 0;
  int n_target = 0;
  bool block_sizes_match = false;    ///< same block-size multiset under z and z'
};

/// z' with phi(X z) = X' z': the join of the central supports of the images
/// of a basis of X z. Throws PreconditionError for non-central z.
CentralImage central_image(const RawLinearMap& phi, const BlockElement& z, double p,
                           const Tolerance& tol = {});

/// The pre-adjoint with respect to the trace pairing:
/// pair(dualize(T)(rho), x) = pair(rho, T(x)). Exact (a permutation of the
/// transposed matrix), and an involution.
RawLinearMap dualize(const RawLinearMap& t);

struct BanachStoneReport {
  Verdict verdict = Verdict::non_canonical;
  ReconstructionReport reconstruction;
  /// max ||T(x) - u J(x)||_inf over the matrix units.
  double residual = 0.0;
  /// ||u - T(1)||_F
  double uniqueness_residual = 0.0;
  /// True when the assembled (u, J) reproduce T with Ad(v) y = v y v* and
  /// v = w* z' + (1 - z').
  bool form_consistent = false;
  /// Residual of the literal reading v = w z' + (1 - z'); nonzero whenever w
  /// is not self-adjoint on z'.
  double literal_ad_residual = 0.0;
  bool ok = false;
  std::vector<std::string> notes;
};

struct BanachStoneResult {
  std::optional<BlockElement> u;
  std::optional<JordanSpec> jordan;
  BanachStoneReport report;
};

/// For a surjective isometry T of the operator-norm algebras, recovers u and
/// J with T(x) = u J(x): Phi = dualize(T); (w, K) = reconstruct(Phi, 1);
/// z = iso part of K, z' = K(z);
///   u = K^{-1}(w z') + K^{-1}(w (1 - z')),
///   J = K^{-1} o Ad(w* z' + (1 - z')).
BanachStoneResult extract_banach_stone(const RawLinearMap& t, const ReconstructOptions& opts = {});

struct RigidityReport {
  bool premise_holds = false;   ///< v K(C) is closed under product and adjoint
  bool equality_holds = false;  ///< v K(C) = K(C)
  double product_residual = 0.0;
  double adjoint_residual = 0.0;
  double subspace_distance = 0.0;
};

/// For a Jordan *-monomorphism K : C -> D and a unitary v in D: whether v K(C)
/// is a C*-subalgebra and whether it equals K(C). Whenever the first holds the
/// second must too. Throws PreconditionError if K is not a Jordan monomorphism
/// or v is not unitary.
RigidityReport subalgebra_rigidity_check(const RawLinearMap& k, const BlockElement& v,
                                         double tol = 1e-8);

}  // namespace bstone
