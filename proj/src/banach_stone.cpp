#include <algorithm>

#include "bstone/isometry.hpp"

namespace bstone {

namespace {

double max_op_residual(const RawLinearMap& t, const BlockElement& u, const JordanSpec& j) {
  double res = 0.0;
  for (const auto& e : matrix_unit_basis(t.source())) {
    res = std::max(res, (t(e) - multiply(u, j.apply(e))).operator_norm());
  }
  return res;
}

}  // namespace

BanachStoneResult extract_banach_stone(const RawLinearMap& t, const ReconstructOptions& opts) {
  // Phi acts on densities of the target of T and lands in densities of its source.
  const RawLinearMap phi = dualize(t);
  auto rec = reconstruct(phi, 1.0, opts);

  BanachStoneResult out{std::nullopt, std::nullopt,
                        BanachStoneReport{.verdict = rec.verdict, .reconstruction = rec, .notes = {}}};
  auto& rep = out.report;
  if (rec.verdict != Verdict::canonical || !rec.k_spec) {
    rep.notes.push_back("dual map is not canonical; no (u, J) extracted");
    return out;
  }

  const JordanSpec& k = *rec.k_spec;  // maps the target of T onto its source
  const BlockElement& w = rec.w;
  const auto z = split_iso_anti(k);
  const auto zp = k.apply(z);
  const auto one = BlockElement::identity(zp.shape());
  const JordanSpec k_inv = k.inverse();

  const BlockElement u = k_inv.apply(multiply(w, zp)) + k_inv.apply(multiply(w, one - zp));
  const BlockElement v = multiply(adjoint(w), zp) + (one - zp);
  const JordanSpec j = compose(k_inv, JordanSpec::inner(v, 1e-8));

  const BlockElement v_lit = multiply(w, zp) + (one - zp);
  const JordanSpec j_lit = compose(k_inv, JordanSpec::inner(v_lit, 1e-8));

  rep.residual = max_op_residual(t, u, j);
  rep.literal_ad_residual = max_op_residual(t, u, j_lit);
  rep.uniqueness_residual = (u - t(BlockElement::identity(t.source()))).frobenius_norm();
  rep.form_consistent = rep.residual <= opts.tol;
  rep.ok = rep.form_consistent && rep.uniqueness_residual <= opts.tol;
  if (!rep.form_consistent) rep.notes.push_back("assembled u J(.) does not reproduce T");
  if (rep.literal_ad_residual > opts.tol) {
    rep.notes.push_back("conjugating by w z' + (1 - z') instead of w* z' + (1 - z') fails");
  }
  out.u = u;
  out.jordan = j;
  return out;
}

}  // namespace bstone
