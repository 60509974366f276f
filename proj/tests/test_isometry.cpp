#include <cmath>

#include "bstone/error.hpp"
#include "bstone/isometry.hpp"
#include "bstone/random.hpp"
#include "bstone/subspace.hpp"
#include "helpers.hpp"

using namespace bstone;
using testing::dist;
using testing::e;

namespace {

const AlgebraShape kM2{2};

BlockElement flip() { return testing::m2({{0.0, 1.0}, {1.0, 0.0}}); }

// Diagonal embedding of C^2 into M_2.
RawLinearMap diagonal_embedding() {
  const AlgebraShape c2{1, 1};
  return RawLinearMap::from_function(c2, kM2, [](const BlockElement& x) {
    BlockElement y(kM2);
    y.block(0)(0, 0) = x.block(0)(0, 0);
    y.block(0)(1, 1) = x.block(1)(0, 0);
    return y;
  });
}

Matrix span_of(const std::vector<BlockElement>& xs, int dim) {
  Matrix m(dim, static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = xs[i].vectorize();
  return orthonormal_basis(m);
}

}  // namespace

TEST_CASE("build_canonical examples") {
  const auto id = build_canonical(BlockElement::identity(kM2), JordanSpec::identity(kM2));
  CHECK((id.matrix() - Matrix::Identity(4, 4)).norm() == 0.0);

  const auto t = build_canonical(testing::m2({{1.0, 0.0}, {0.0, -1.0}}), JordanSpec::transpose(kM2));
  CHECK(dist(t(e(kM2, 0, 1)), -e(kM2, 1, 0)) == 0.0);

  const auto f = build_canonical(flip(), JordanSpec::identity(kM2));
  CHECK(dist(f(e(kM2, 0, 0)), e(kM2, 1, 0)) == 0.0);
  for (double p : {0.5, 1.0, 3.0, kInfinity}) {
    CHECK(lp_norm(f(e(kM2, 0, 0)), p) == doctest::Approx(1.0));
  }

  CHECK_THROWS_AS(build_canonical(Complex(2.0) * BlockElement::identity(kM2), JordanSpec::identity(kM2)),
                  PreconditionError);
  CHECK_THROWS_AS(build_canonical(BlockElement::identity(AlgebraShape{3}), JordanSpec::identity(kM2)),
                  ShapeError);
  CHECK_THROWS_AS(build_canonical(BlockElement::identity(kM2), JordanSpec::identity(kM2), 0.0),
                  PreconditionError);
}

TEST_CASE("canonical isometry value type") {
  Rng rng(61);
  const AlgebraShape s{2, 3};
  const CanonicalIsometry c{random_unitary(s, rng), random_jordan(s, s, rng), 3.0};
  const auto x = random_element(s, rng);
  CHECK(dist(c.apply(x), c.to_raw()(x)) < 1e-12);
}

TEST_CASE("verify_isometry examples") {
  Rng rng(62);
  const AlgebraShape s{2, 3};
  const auto canon = build_canonical(random_unitary(s, rng), random_jordan(s, s, rng));
  auto r = verify_isometry(canon, 1.0, 100, 1, 1e-9);
  CHECK(r.is_isometry);
  CHECK(r.surjective);

  const RawLinearMap twice(kM2, kM2, Matrix::Identity(4, 4) * 2.0);
  r = verify_isometry(twice, 1.0, 10, 1, 1e-9);
  CHECK_FALSE(r.is_isometry);
  CHECK(r.max_ratio_dev == doctest::Approx(1.0));

  const RawLinearMap haar(kM2, kM2, haar_unitary(4, rng));
  CHECK(verify_isometry(haar, 2.0, 100, 2, 1e-9).is_isometry);
  CHECK_FALSE(verify_isometry(haar, 1.0, 100, 2, 1e-9).is_isometry);
}

TEST_CASE("verdict plumbing") {
  CHECK(exit_status(Verdict::canonical) == 0);
  CHECK(exit_status(Verdict::non_canonical) == 2);
  CHECK(exit_status(Verdict::not_isometric) == 3);
  CHECK(std::string(to_string(Verdict::non_canonical)) == "non-canonical");
}

TEST_CASE("spanning projections form a basis of projections") {
  const AlgebraShape s{3, 1, 2};
  const auto qs = spanning_projections(s);
  REQUIRE(static_cast<int>(qs.size()) == s.ambient_dim());
  Matrix m(s.ambient_dim(), s.ambient_dim());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    CHECK(qs[i].is_projection(1e-14));
    m.col(static_cast<Eigen::Index>(i)) = qs[i].vectorize();
  }
  CHECK(Eigen::FullPivLU<Matrix>(m).rank() == s.ambient_dim());
}

TEST_CASE("reconstruct examples") {
  auto r = reconstruct(RawLinearMap::identity(kM2), 1.0);
  CHECK(r.verdict == Verdict::canonical);
  CHECK(dist(r.w, BlockElement::identity(kM2)) < 1e-14);
  REQUIRE(r.k_spec);
  CHECK(same_up_to_phase(*r.k_spec, JordanSpec::identity(kM2), 1e-12));
  CHECK(r.residual_form < 1e-14);
  CHECK(r.residual_additivity < 1e-14);

  const auto phi = build_canonical(flip(), JordanSpec::transpose(kM2), 1.0);
  r = reconstruct(phi, 1.0);
  CHECK(r.verdict == Verdict::canonical);
  CHECK(dist(r.w, flip()) < 1e-14);
  REQUIRE(r.k_spec);
  CHECK(r.k_spec->flags() == std::vector<BlockFlag>{BlockFlag::anti});
  CHECK((r.k_map.matrix() - JordanSpec::transpose(kM2).to_raw().matrix()).norm() < 1e-14);

  Rng rng(63);
  const RawLinearMap haar(kM2, kM2, haar_unitary(4, rng));
  CHECK_THROWS_AS(reconstruct(haar, 2.0), PreconditionError);
  ReconstructOptions opts;
  opts.allow_hilbert_exponent = true;
  r = reconstruct(haar, 2.0, opts);
  CHECK(r.verdict == Verdict::non_canonical);
  CHECK(r.residual_form > 0.1);

  CHECK_THROWS_AS(reconstruct(RawLinearMap(kM2, kM2, Matrix::Zero(4, 4)), 1.0), PreconditionError);

  const RawLinearMap twice(kM2, kM2, Matrix::Identity(4, 4) * 2.0);
  CHECK(reconstruct(twice, 1.0).verdict == Verdict::not_isometric);
}

TEST_CASE("reconstruct roundtrip over exponents") {
  const AlgebraShape a{2, 3, 2}, b{2, 2, 3};
  for (double p : {0.7, 1.0, 3.0, kInfinity}) {
    for (std::uint64_t t = 0; t < 10; ++t) {
      Rng rng(trial_seed(64, t));
      const auto j = random_jordan(a, b, rng);
      const auto u = random_unitary(b, rng);
      const auto r = reconstruct(build_canonical(u, j, p), p);
      CHECK(r.verdict == Verdict::canonical);
      CHECK(dist(r.w, u) <= 1e-7);
      REQUIRE(r.k_spec);
      CHECK(r.k_spec->permutation() == j.permutation());
      CHECK(r.k_spec->flags() == j.flags());
      CHECK(same_up_to_phase(*r.k_spec, j, 1e-7));
      CHECK(r.residual_additivity <= 1e-7);
      CHECK(dist(r.phi1, BlockElement::identity(b)) <= 1e-7);
    }
  }
}

TEST_CASE("canonical isometries preserve orthogonality") {
  const AlgebraShape s{2, 3};
  const auto one = BlockElement::identity(s);
  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng(trial_seed(65, t));
    const auto phi = build_canonical(random_unitary(s, rng), random_jordan(s, s, rng));
    const auto q1 = random_projection(s, rng);
    const auto q2 = random_projection(s, rng);
    const auto x = multiply(multiply(q1, random_element(s, rng)), q2);
    const auto y = multiply(multiply(one - q1, random_element(s, rng)), one - q2);
    REQUIRE(orthogonal(x, y));
    CHECK(orthogonal(phi(x), phi(y)));
  }
}

TEST_CASE("corner transport") {
  const AlgebraShape s{2, 2};
  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng(trial_seed(66, t));
    const auto phi = build_canonical(random_unitary(s, rng), random_jordan(s, s, rng));
    std::vector<BlockElement> set, image;
    for (int k = 0; k < 2; ++k) {
      set.push_back(multiply(multiply(random_projection(s, rng), random_element(s, rng)),
                             random_projection(s, rng)));
      image.push_back(phi(set.back()));
    }
    std::vector<BlockElement> moved;
    for (const auto& x : orthocomplement(s, set).spanning_set()) moved.push_back(phi(x));
    const Matrix lhs = span_of(moved, s.ambient_dim());
    const Matrix rhs = orthocomplement(s, image).basis();
    CHECK(subspace_distance(lhs, rhs) <= 1e-7);
  }
}

TEST_CASE("central_image examples") {
  const AlgebraShape s22{2, 2};
  const JordanSpec swap(s22, s22,
                        {{1, BlockFlag::iso, Matrix::Identity(2, 2)},
                         {0, BlockFlag::anti, Matrix::Identity(2, 2)}});
  const auto z = BlockElement::central(s22, {true, false});
  auto c = central_image(swap.to_raw(), z, 1.0);
  CHECK(dist(c.z_prime, BlockElement::central(s22, {false, true})) == 0.0);
  CHECK(c.lattice_isomorphism);
  CHECK(c.summand_exact);
  CHECK(c.n_source == c.n_target);

  c = central_image(RawLinearMap::identity(s22), z, 1.0);
  CHECK(dist(c.z_prime, z) == 0.0);

  const AlgebraShape a{2, 3}, b{3, 2};
  for (std::uint64_t t = 0; t < 10; ++t) {
    Rng rng(trial_seed(67, t));
    const auto j = random_jordan(a, b, rng);
    const auto phi = build_canonical(random_unitary(b, rng), j, 3.0);
    for (std::size_t blk = 0; blk < 2; ++blk) {
      std::vector<bool> mask(2, false);
      mask[blk] = true;
      c = central_image(phi, BlockElement::central(a, mask), 3.0);
      std::vector<bool> expected(2, false);
      for (std::size_t k = 0; k < 2; ++k) expected[k] = j.permutation()[k] == blk;
      CHECK(central_blocks(c.z_prime) == expected);
      CHECK(c.n_source == c.n_target);
      CHECK(c.block_sizes_match);
    }
  }
  CHECK_THROWS_AS(central_image(RawLinearMap::identity(kM2), e(kM2, 0, 0), 1.0), PreconditionError);
}

TEST_CASE("dualize examples") {
  const auto id = dualize(RawLinearMap::identity(AlgebraShape{2, 3}));
  CHECK((id.matrix() - Matrix::Identity(13, 13)).norm() == 0.0);

  Rng rng(68);
  const auto u = random_unitary(kM2, rng);
  const auto ad = dualize(JordanSpec::inner(u).to_raw());
  const auto rho = random_element(kM2, rng);
  CHECK(dist(ad(rho), multiply(multiply(adjoint(u), rho), u)) < 1e-14);

  const AlgebraShape a{2, 1}, b{1, 2, 1};
  Matrix m(b.ambient_dim(), a.ambient_dim());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Complex(std::sin(r + 3.0 * c), std::cos(2.0 * r - c));
  }
  const RawLinearMap t(a, b, m);
  CHECK((dualize(dualize(t)).matrix() - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dualize satisfies the pairing identity") {
  Rng rng(69);
  const AlgebraShape a{2, 1}, b{3};
  const int da = a.ambient_dim(), db = b.ambient_dim();
  Matrix m(db, da);
  for (Eigen::Index r = 0; r < db; ++r) {
    for (Eigen::Index c = 0; c < da; ++c) {
      std::normal_distribution<double> g;
      m(r, c) = Complex(g(rng), g(rng));
    }
  }
  const RawLinearMap t(a, b, m);
  const auto d = dualize(t);
  CHECK(d.source() == b);
  CHECK(d.target() == a);
  for (int k = 0; k < 20; ++k) {
    const auto rho = random_element(b, rng);
    const auto x = random_element(a, rng);
    CHECK(std::abs(pair(d(rho), x) - pair(rho, t(x))) < 1e-11);
  }
}

TEST_CASE("dualize maps operator-norm isometries to trace-norm isometries") {
  const AlgebraShape s{2, 2, 1};
  for (std::uint64_t t = 0; t < 10; ++t) {
    Rng rng(trial_seed(70, t));
    const auto tmap = build_canonical(random_unitary(s, rng), random_jordan(s, s, rng), kInfinity);
    CHECK(verify_isometry(tmap, kInfinity, 20, t, 1e-9).is_isometry);
    CHECK(verify_isometry(dualize(tmap), 1.0, 20, t, 1e-9).is_isometry);
  }
}

TEST_CASE("banach-stone examples") {
  auto res = extract_banach_stone(RawLinearMap::identity(kM2));
  REQUIRE(res.report.ok);
  CHECK(dist(*res.u, BlockElement::identity(kM2)) < 1e-14);
  CHECK(same_up_to_phase(*res.jordan, JordanSpec::identity(kM2), 1e-12));

  res = extract_banach_stone(JordanSpec::transpose(kM2).to_raw());
  REQUIRE(res.report.ok);
  CHECK(dist(*res.u, BlockElement::identity(kM2)) < 1e-14);
  CHECK(res.jordan->flags() == std::vector<BlockFlag>{BlockFlag::anti});
  REQUIRE(res.report.reconstruction.k_spec);
  CHECK(split_iso_anti(*res.report.reconstruction.k_spec).frobenius_norm() == 0.0);

  const RawLinearMap twice(kM2, kM2, Matrix::Identity(4, 4) * 2.0);
  res = extract_banach_stone(twice);
  CHECK_FALSE(res.report.ok);
  CHECK(res.report.verdict == Verdict::not_isometric);
  CHECK_FALSE(res.u);
}

TEST_CASE("banach-stone roundtrip and the conjugation convention") {
  const AlgebraShape s{2, 2, 3};
  int literal_failures = 0;
  for (std::uint64_t t = 0; t < 10; ++t) {
    Rng rng(trial_seed(71, t));
    const auto j0 = random_jordan(s, s, rng);
    const auto u0 = random_unitary(s, rng);
    const auto tmap = build_canonical(u0, j0, kInfinity);
    const auto res = extract_banach_stone(tmap);
    REQUIRE(res.report.ok);
    CHECK(res.report.form_consistent);
    CHECK(res.report.residual <= 1e-7);
    CHECK(dist(*res.u, u0) <= 1e-9);
    CHECK(res.report.uniqueness_residual <= 10 * Tolerance{}.eps_abs);
    CHECK(same_up_to_phase(*res.jordan, j0, 1e-7));
    literal_failures += res.report.literal_ad_residual > 1e-3;
  }
  CHECK(literal_failures > 0);
}

TEST_CASE("rigidity examples") {
  const auto k = diagonal_embedding();
  const auto v = testing::m2({{std::polar(1.0, 0.3), 0.0}, {0.0, std::polar(1.0, -1.1)}});
  auto r = subalgebra_rigidity_check(k, v);
  CHECK(r.premise_holds);
  CHECK(r.equality_holds);

  r = subalgebra_rigidity_check(k, flip());
  CHECK_FALSE(r.premise_holds);
  CHECK(r.product_residual > 0.1);

  Rng rng(72);
  r = subalgebra_rigidity_check(RawLinearMap::identity(kM2), random_unitary(kM2, rng));
  CHECK(r.premise_holds);
  CHECK(r.equality_holds);

  CHECK_THROWS_AS(subalgebra_rigidity_check(k, Complex(2.0) * BlockElement::identity(kM2)),
                  PreconditionError);
  const RawLinearMap not_jordan(AlgebraShape{1, 1}, kM2, Matrix::Ones(4, 2));
  CHECK_THROWS_AS(subalgebra_rigidity_check(not_jordan, flip()), PreconditionError);
}
