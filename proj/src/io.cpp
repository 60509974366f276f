#include "bstone/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bstone/error.hpp"

namespace bstone::io {

namespace {

json encode_complex(Complex c) { return json::array({c.real(), c.imag()}); }

Complex decode_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ShapeError("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json encode_flat(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(encode_complex(m(r, c)));
  }
  return out;
}

Matrix decode_flat(const json& j, int n) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw ShapeError("block has the wrong number of entries");
  }
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = decode_complex(j[static_cast<std::size_t>(r * n + c)]);
  }
  return m;
}

int square_side(std::size_t entries) {
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(entries))));
  if (static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != entries) {
    throw ShapeError("conjugator entry count is not a square");
  }
  return n;
}

}  // namespace

json encode(const AlgebraShape& shape) { return {{"blocks", shape.blocks()}}; }

AlgebraShape decode_shape(const json& j) {
  return AlgebraShape(j.at("blocks").get<std::vector<int>>());
}

json encode(const BlockElement& x) {
  json mats = json::array();
  for (const auto& m : x.mats()) mats.push_back(encode_flat(m));
  return {{"shape", encode(x.shape())}, {"mats", mats}};
}

BlockElement decode_element(const json& j) {
  const auto shape = decode_shape(j.at("shape"));
  const auto& mats = j.at("mats");
  if (!mats.is_array() || mats.size() != shape.num_blocks()) {
    throw ShapeError("element has the wrong number of blocks");
  }
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) out.push_back(decode_flat(mats[b], shape.block(b)));
  return BlockElement(shape, std::move(out));
}

json encode_exponent(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

double decode_exponent(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfinity;
    throw PreconditionError("exponent must be a number or \"inf\"");
  }
  return j.get<double>();
}

json encode(const LpVector& xi) {
  return {{"p", encode_exponent(xi.exponent())}, {"elem", encode(xi.elem())}};
}

LpVector decode_lp(const json& j) {
  return LpVector(decode_element(j.at("elem")), decode_exponent(j.at("p")));
}

json encode(const Corner& c) { return {{"q1", encode(c.q1())}, {"q2", encode(c.q2())}}; }

Corner decode_corner(const json& j) {
  return Corner(decode_element(j.at("q1")), decode_element(j.at("q2")));
}

json encode(const JordanSpec& s) {
  json flags = json::array();
  json conj = json::array();
  for (const auto& a : s.assignment()) {
    flags.push_back(to_string(a.flag));
    conj.push_back(encode_flat(a.conjugator));
  }
  return {{"source", encode(s.source())},
          {"target", encode(s.target())},
          {"perm", s.permutation()},
          {"flags", flags},
          {"conjugators", conj}};
}

JordanSpec decode_jordan(const json& j) {
  const auto perm = j.at("perm").get<std::vector<std::size_t>>();
  const auto& flags = j.at("flags");
  const auto& conj = j.at("conjugators");
  if (flags.size() != perm.size() || conj.size() != perm.size()) {
    throw ShapeError("perm, flags and conjugators must have equal length");
  }
  std::vector<BlockAssignment> a;
  std::vector<int> sizes;
  for (std::size_t k = 0; k < perm.size(); ++k) {
    const auto f = flags[k].get<std::string>();
    if (f != "iso" && f != "anti") throw PreconditionError("flag must be \"iso\" or \"anti\"");
    const int n = square_side(conj[k].size());
    sizes.push_back(n);
    a.push_back({perm[k], f == "iso" ? BlockFlag::iso : BlockFlag::anti, decode_flat(conj[k], n)});
  }
  const AlgebraShape target = j.contains("target") ? decode_shape(j.at("target")) : AlgebraShape(sizes);
  AlgebraShape source = target;
  if (j.contains("source")) {
    source = decode_shape(j.at("source"));
  } else {
    std::vector<int> src(perm.size(), 0);
    for (std::size_t k = 0; k < perm.size(); ++k) {
      if (perm[k] >= perm.size()) throw PreconditionError("block assignment is not a permutation");
      src[perm[k]] = sizes[k];
    }
    source = AlgebraShape(src);
  }
  return JordanSpec(source, target, std::move(a));
}

json encode(const RawLinearMap& m) {
  json rows = json::array();
  const Matrix& a = m.matrix();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(encode_complex(a(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"source", encode(m.source())}, {"target", encode(m.target())}, {"matrix", rows}};
}

RawLinearMap decode_map(const json& j) {
  const auto source = decode_shape(j.at("source"));
  const auto target = decode_shape(j.at("target"));
  const auto& rows = j.at("matrix");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(target.ambient_dim())) {
    throw ShapeError("map matrix has the wrong number of rows");
  }
  Matrix a(target.ambient_dim(), source.ambient_dim());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(source.ambient_dim())) {
      throw ShapeError("map matrix has the wrong number of columns");
    }
    for (Eigen::Index c = 0; c < a.cols(); ++c) a(r, c) = decode_complex(row[static_cast<std::size_t>(c)]);
  }
  return RawLinearMap(source, target, std::move(a));
}

json encode(const IsometryReport& r) {
  return {{"is_isometry", r.is_isometry},
          {"max_ratio_dev", r.max_ratio_dev},
          {"surjective", r.surjective}};
}

json encode(const ReconstructionReport& r) {
  json out = {{"verdict", to_string(r.verdict)},
              {"w", encode(r.w)},
              {"phi1", encode(r.phi1)},
              {"residual_form", r.residual_form},
              {"residual_additivity", r.residual_additivity},
              {"residual_consistency", r.residual_consistency},
              {"residual_trace", r.residual_trace},
              {"jordan_residual", r.jordan_residual},
              {"isometry_deviation", r.isometry_deviation},
              {"notes", r.notes}};
  out["k_spec"] = r.k_spec ? encode(*r.k_spec) : json(nullptr);
  return out;
}

json encode(const CentralImage& c) {
  return {{"z_prime", encode(c.z_prime)},
          {"lattice_isomorphism", c.lattice_isomorphism},
          {"summand_exact", c.summand_exact},
          {"n_source", c.n_source},
          {"n_target", c.n_target},
          {"block_sizes_match", c.block_sizes_match}};
}

json encode(const BanachStoneReport& r) {
  return {{"verdict", to_string(r.verdict)},
          {"ok", r.ok},
          {"residual", r.residual},
          {"uniqueness_residual", r.uniqueness_residual},
          {"form_consistent", r.form_consistent},
          {"literal_ad_residual", r.literal_ad_residual},
          {"notes", r.notes},
          {"reconstruction", encode(r.reconstruction)}};
}

json encode(const RigidityReport& r) {
  return {{"premise_holds", r.premise_holds},
          {"equality_holds", r.equality_holds},
          {"product_residual", r.product_residual},
          {"adjoint_residual", r.adjoint_residual},
          {"subspace_distance", r.subspace_distance}};
}

json encode(const ClarksonReport& r) {
  return {{"equality_holds", r.equality_holds},
          {"orthogonal", r.orthogonal},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"agree", r.agree()}};
}

json encode(const CommutantReport& r) {
  return {{"dim_left", r.dim_left},
          {"dim_right", r.dim_right},
          {"dim_commutant_of_right", r.dim_commutant_of_right},
          {"dim_commutant_of_left", r.dim_commutant_of_left},
          {"distance_left", r.distance_left},
          {"distance_right", r.distance_right},
          {"mutual", r.mutual},
          {"isometry_deviation", r.isometry_deviation},
          {"isometric", r.isometric}};
}

json encode(const NInvariantSearch& r) {
  return {{"value", r.value}, {"search_bound", r.search_bound}, {"candidates", r.candidates}};
}

json encode(const Tolerance& t) { return {{"eps_abs", t.eps_abs}, {"eps_cluster", t.eps_cluster}}; }

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace bstone::io
