#include <algorithm>
#include <cmath>

#include "bstone/error.hpp"
#include "bstone/isometry.hpp"
#include "bstone/random.hpp"

namespace bstone {

std::vector<BlockElement> spanning_projections(const AlgebraShape& shape) {
  std::vector<BlockElement> out;
  const Complex i(0.0, 1.0);
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    const int n = shape.block(b);
    for (int j = 0; j < n; ++j) {
      const auto ejj = BlockElement::unit(shape, b, j, j);
      out.push_back(ejj);
      for (int k = j + 1; k < n; ++k) {
        const auto diag = ejj + BlockElement::unit(shape, b, k, k);
        const auto ejk = BlockElement::unit(shape, b, j, k);
        const auto ekj = BlockElement::unit(shape, b, k, j);
        out.push_back(Complex(0.5) * (diag + ejk + ekj));
        out.push_back(Complex(0.5) * (diag - i * ejk + i * ekj));
      }
    }
  }
  return out;
}

ReconstructionReport reconstruct(const RawLinearMap& phi, double p, const ReconstructOptions& opts) {
  require_exponent(p);
  opts.numerics.validate();
  if (p == 2.0 && !opts.allow_hilbert_exponent) {
    throw PreconditionError("reconstruct: p = 2 admits isometries that are not of the form w K(.)");
  }
  if (!phi.is_bijective()) throw PreconditionError("reconstruct: map is not bijective");

  const auto& src = phi.source();
  const auto& tgt = phi.target();
  const auto& num = opts.numerics;
  const auto one = BlockElement::identity(src);
  const auto one_t = BlockElement::identity(tgt);

  const auto pol = polar_decompose(phi(one), num);
  const BlockElement& w = pol.v;
  const BlockElement& h = pol.h;
  double res_trace = (h - one_t).frobenius_norm();
  res_trace = std::max(res_trace, (multiply(adjoint(w), w) - one_t).frobenius_norm());
  res_trace = std::max(res_trace, (multiply(w, adjoint(w)) - one_t).frobenius_norm());

  const auto qs = spanning_projections(src);
  const auto dim = static_cast<Eigen::Index>(qs.size());
  Matrix q_cols(src.ambient_dim(), dim);
  Matrix k_cols(tgt.ambient_dim(), dim);
  double res_add = 0.0;
  double res_cons = 0.0;
  for (Eigen::Index c = 0; c < dim; ++c) {
    const auto& q = qs[static_cast<std::size_t>(c)];
    const auto img = phi(q);
    const auto pq = polar_decompose(img, num);
    const auto pc = polar_decompose(phi(one - q), num);
    const auto kq = multiply(adjoint(pq.v), pq.v);
    res_add = std::max(res_add, (pq.v + pc.v - w).frobenius_norm());
    res_add = std::max(res_add, (pq.h + pc.h - h).frobenius_norm());
    res_cons = std::max(res_cons, (kq - multiply(adjoint(w), img)).frobenius_norm());
    q_cols.col(c) = q.vectorize();
    k_cols.col(c) = kq.vectorize();
  }
  // K on the projection basis, extended linearly.
  Matrix k_matrix = q_cols.transpose().partialPivLu().solve(k_cols.transpose()).transpose();
  RawLinearMap k_map(src, tgt, std::move(k_matrix));

  ReconstructionReport r{.w = w, .phi1 = h, .k_spec = std::nullopt, .k_map = k_map, .notes = {}};
  r.residual_trace = res_trace;
  r.residual_additivity = res_add;
  r.residual_consistency = res_cons;

  std::vector<BlockElement> tests = matrix_unit_basis(src);
  Rng rng(opts.seed);
  for (int s = 0; s < 4; ++s) {
    auto x = random_element(src, rng);
    x *= Complex(1.0 / x.frobenius_norm());
    tests.push_back(std::move(x));
  }
  for (const auto& x : tests) {
    r.residual_form = std::max(r.residual_form, (phi(x) - multiply(w, k_map(x))).frobenius_norm());
  }

  const auto jr = verify_jordan(k_map, opts.tol, JordanMode::isomorphism);
  r.jordan_residual = jr.residual;
  if (jr.is_jordan) {
    r.k_spec = jr.spec;
  } else {
    r.notes.push_back("K is not a Jordan *-isomorphism: " + jr.reason);
  }

  const auto iso = verify_isometry(phi, p, opts.isometry_samples, opts.seed, opts.tol);
  r.isometry_deviation = iso.max_ratio_dev;

  if (!iso.is_isometry) {
    r.verdict = Verdict::not_isometric;
    r.notes.push_back("map changes L^p norms");
  } else if (jr.is_jordan && r.residual_form <= opts.tol && r.residual_additivity <= opts.tol &&
             r.residual_consistency <= opts.tol && r.residual_trace <= opts.tol) {
    r.verdict = Verdict::canonical;
  } else {
    r.verdict = Verdict::non_canonical;
    if (r.residual_form > opts.tol) r.notes.push_back("phi differs from w K(.)");
    if (r.residual_trace > opts.tol) r.notes.push_back("phi(1) is not unitary");
    if (r.residual_additivity > opts.tol) r.notes.push_back("polar parts are not additive");
  }
  return r;
}

}  // namespace bstone
