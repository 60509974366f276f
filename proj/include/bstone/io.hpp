#pragma once

// JSON encodings. Complex numbers are [re, im] pairs; doubles are written with
// round-trip precision, so decode(encode(x)) == x bit for bit.

#include <json.hpp>
#include <string>

#include "bstone/isometry.hpp"
#include "bstone/jordan.hpp"
#include "bstone/linear_map.hpp"
#include "bstone/lp.hpp"

namespace bstone::io {

using json = nlohmann::json;

/// {"blocks":[2,3]}
json encode(const AlgebraShape& shape);
AlgebraShape decode_shape(const json& j);

/// {"shape":..., "mats":[[[re,im],...], ...]}, each block row-major.
json encode(const BlockElement& x);
BlockElement decode_element(const json& j);

/// {"p": number or "inf", "elem": ...}
json encode(const LpVector& xi);
LpVector decode_lp(const json& j);

/// {"q1": ..., "q2": ...}
json encode(const Corner& c);
Corner decode_corner(const json& j);

/// {"source","target","perm":[...],"flags":["iso"|"anti",...],
///  "conjugators":[[[re,im],...], ...]} with conjugators row-major.
json encode(const JordanSpec& j);
JordanSpec decode_jordan(const json& j);

/// {"source","target","matrix":[[[re,im],...], ...]} as a list of rows.
json encode(const RawLinearMap& m);
RawLinearMap decode_map(const json& j);

json encode(const IsometryReport& r);
json encode(const ReconstructionReport& r);
json encode(const CentralImage& c);
json encode(const BanachStoneReport& r);
json encode(const RigidityReport& r);
json encode(const ClarksonReport& r);
json encode(const CommutantReport& r);
json encode(const NInvariantSearch& r);
json encode(const Tolerance& t);

/// p as a JSON value: a number, or "inf".
json encode_exponent(double p);
double decode_exponent(const json& j);

json read_file(const std::string& path);
/// Writes `text` followed by a newline. Throws std::runtime_error on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace bstone::io
