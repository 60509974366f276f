#include "bstone/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bstone/error.hpp"
#include "bstone/random.hpp"

namespace bstone {

BlockElement CanonicalIsometry::apply(const BlockElement& x) const {
  return multiply(u, jordan.apply(x));
}

RawLinearMap CanonicalIsometry::to_raw() const { return build_canonical(u, jordan, p); }

RawLinearMap build_canonical(const BlockElement& u, const JordanSpec& j, double p, double eps) {
  require_exponent(p);
  require_same_shape(u.shape(), j.target(), "build_canonical");
  if (!u.is_unitary(eps)) throw PreconditionError("build_canonical: u is not unitary");
  return RawLinearMap::from_function(j.source(), j.target(),
                                     [&](const BlockElement& x) { return multiply(u, j.apply(x)); });
}

IsometryReport verify_isometry(const RawLinearMap& phi, double p, int samples, std::uint64_t seed,
                               double tol) {
  require_exponent(p);
  IsometryReport r;
  r.surjective = phi.is_bijective();
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const BlockElement x = random_element(phi.source(), rng);
    const double nx = lp_norm(x, p);
    if (nx == 0.0) continue;
    r.max_ratio_dev = std::max(r.max_ratio_dev, std::abs(lp_norm(phi(x), p) / nx - 1.0));
  }
  r.is_isometry = r.max_ratio_dev <= tol;
  return r;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::canonical:
      return "canonical";
    case Verdict::non_canonical:
      return "non-canonical";
    case Verdict::not_isometric:
      return "not-isometric";
  }
  return "unknown";
}

int exit_status(Verdict v) {
  switch (v) {
    case Verdict::canonical:
      return 0;
    case Verdict::non_canonical:
      return 2;
    case Verdict::not_isometric:
      return 3;
  }
  return 1;
}

CentralImage central_image(const RawLinearMap& phi, const BlockElement& z, double p,
                           const Tolerance& tol) {
  require_exponent(p);
  require_same_shape(z.shape(), phi.source(), "central_image");
  const auto& src = phi.source();
  const auto& tgt = phi.target();
  const auto mask = central_blocks(z, tol);

  std::vector<bool> image_mask(tgt.num_blocks(), false);
  std::vector<std::vector<bool>> per_block(src.num_blocks());
  std::vector<Vector> image_vectors;
  for (std::size_t b = 0; b < src.num_blocks(); ++b) {
    if (!mask[b]) continue;
    per_block[b].assign(tgt.num_blocks(), false);
    const int n = src.block(b);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const auto img = phi(BlockElement::unit(src, b, r, c));
        image_vectors.push_back(img.vectorize());
        const auto cs = central_blocks(central_support(img, tol), tol);
        for (std::size_t j = 0; j < cs.size(); ++j) {
          if (cs[j]) {
            per_block[b][j] = true;
            image_mask[j] = true;
          }
        }
      }
    }
  }

  CentralImage out{BlockElement::central(tgt, image_mask)};

  // each minimal central projection under z must land on exactly one block,
  // different blocks on different blocks
  bool lattice = true;
  std::vector<int> hits(tgt.num_blocks(), 0);
  for (std::size_t b = 0; b < src.num_blocks(); ++b) {
    if (!mask[b]) continue;
    const auto count = std::count(per_block[b].begin(), per_block[b].end(), true);
    if (count != 1) lattice = false;
    for (std::size_t j = 0; j < tgt.num_blocks(); ++j) hits[j] += per_block[b][j] ? 1 : 0;
  }
  lattice = lattice && std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; });
  out.lattice_isomorphism = lattice;

  int dim_source = 0;
  std::vector<int> sizes_source;
  for (std::size_t b = 0; b < src.num_blocks(); ++b) {
    if (mask[b]) {
      dim_source += src.block(b) * src.block(b);
      sizes_source.push_back(src.block(b));
    }
  }
  int dim_target = 0;
  std::vector<int> sizes_target;
  for (std::size_t j = 0; j < tgt.num_blocks(); ++j) {
    if (image_mask[j]) {
      dim_target += tgt.block(j) * tgt.block(j);
      sizes_target.push_back(tgt.block(j));
    }
  }
  Matrix cols(tgt.ambient_dim(), static_cast<Eigen::Index>(image_vectors.size()));
  for (std::size_t k = 0; k < image_vectors.size(); ++k) {
    cols.col(static_cast<Eigen::Index>(k)) = image_vectors[k];
  }
  Eigen::Index rank = 0;
  if (cols.cols() > 0) {
    Eigen::JacobiSVD<Matrix> svd(cols);
    const auto& s = svd.singularValues();
    while (rank < s.size() && s(rank) > tol.eps_abs * s(0)) ++rank;
  }
  out.summand_exact = rank == dim_source && dim_source == dim_target;

  std::sort(sizes_source.begin(), sizes_source.end());
  std::sort(sizes_target.begin(), sizes_target.end());
  out.block_sizes_match = sizes_source == sizes_target;

  out.n_source = n_invariant(src, z, tol);
  out.n_target = std::any_of(image_mask.begin(), image_mask.end(), [](bool b) { return b; })
                     ? n_invariant(tgt, out.z_prime, tol)
                     : 0;
  return out;
}

RawLinearMap dualize(const RawLinearMap& t) {
  // M(r, c) = T(pi_target(c), pi_source(r)) with pi the blockwise transpose
  // permutation of each side.
  const auto ps = transpose_permutation(t.source());
  const auto pt = transpose_permutation(t.target());
  const Matrix& m = t.matrix();
  Matrix d(m.cols(), m.rows());
  for (Eigen::Index r = 0; r < d.rows(); ++r) {
    for (Eigen::Index c = 0; c < d.cols(); ++c) {
      d(r, c) = m(pt[static_cast<std::size_t>(c)], ps[static_cast<std::size_t>(r)]);
    }
  }
  return RawLinearMap(t.target(), t.source(), std::move(d));
}

}  // namespace bstone
