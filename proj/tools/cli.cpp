#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bstone/error.hpp"
#include "bstone/io.hpp"
#include "bstone/isometry.hpp"
#include "bstone/jordan.hpp"
#include "bstone/lp.hpp"
#include "bstone/random.hpp"

namespace bstone::cli {

namespace {

using io::json;

struct HilbertExponent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  json report;
  std::vector<std::string> csv;  ///< header first; empty if the command has no CSV form
  int status = 0;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string flag(bool b) { return b ? "true" : "false"; }

std::string shape_text(const AlgebraShape& s) {
  std::string out;
  for (std::size_t i = 0; i < s.num_blocks(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(s.block(i));
  }
  return out;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string row(std::initializer_list<std::string> cells) {
  std::string out;
  for (const auto& c : cells) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

void forbid_hilbert(const std::vector<double>& ps, const std::string& what) {
  for (double p : ps) {
    if (p == 2.0) {
      throw HilbertExponent(what +
                            ": p = 2 is excluded; the structure and orthogonality results "
                            "require p != 2 (every unitary of the Hilbert space is an isometry)");
    }
  }
}

AlgebraShape shape_or(const ExperimentConfig& c, std::size_t i, AlgebraShape fallback) {
  return c.shapes.size() > i ? c.shapes[i] : std::move(fallback);
}

std::vector<double> ps_or(const ExperimentConfig& c, std::vector<double> fallback) {
  return c.ps.empty() ? std::move(fallback) : c.ps;
}

ReconstructOptions options(const ExperimentConfig& c, std::uint64_t seed) {
  ReconstructOptions o;
  o.tol = c.tol;
  o.numerics = c.numerics;
  o.seed = seed;
  return o;
}

json envelope(const ExperimentConfig& c) {
  json shapes = json::array();
  for (const auto& s : c.shapes) shapes.push_back(io::encode(s));
  json ps = json::array();
  for (double p : c.ps) ps.push_back(io::encode_exponent(p));
  return {{"tool", "bstone"},
          {"version", kVersion},
          {"command", c.command},
          {"config",
           {{"shapes", shapes},
            {"p", ps},
            {"trials", c.trials},
            {"seed", c.seed},
            {"format", c.format},
            {"input", c.input},
            {"negative", c.negative}}},
          {"tolerances",
           {{"tol", c.tol}, {"eps_abs", c.numerics.eps_abs}, {"eps_cluster", c.numerics.eps_cluster}}}};
}

struct Instance {
  BlockElement u;
  JordanSpec jordan;
  RawLinearMap map;
  bool scrambled;
};

// A random canonical isometry, optionally perturbed into a non-isometry.
Instance make_instance(const AlgebraShape& src, const AlgebraShape& tgt, std::uint64_t seed,
                       bool negative) {
  Rng rng(seed);
  JordanSpec j = random_jordan(src, tgt, rng);
  BlockElement u = random_unitary(tgt, rng);
  RawLinearMap m = build_canonical(u, j);
  if (negative) {
    const int d = tgt.ambient_dim();
    Matrix scrambled = m.matrix() + gaussian_matrix(d, rng) * (0.5 / std::sqrt(double(d)));
    m = RawLinearMap(src, tgt, std::move(scrambled));
  }
  return {std::move(u), std::move(j), std::move(m), negative};
}

RawLinearMap load_map(const std::string& path) {
  const json j = io::read_file(path);
  return io::decode_map(j.contains("map") ? j.at("map") : j);
}

int worst(int a, int b) {
  auto rank = [](int s) { return s == 3 ? 3 : s == 2 ? 2 : s == 0 ? 0 : 1; };
  return rank(a) >= rank(b) ? a : b;
}

Output cmd_gen(const ExperimentConfig& c) {
  const auto src = shape_or(c, 0, {2, 3});
  const auto tgt = shape_or(c, 1, src);
  const auto p = ps_or(c, {1.0}).front();
  require_exponent(p);
  const auto inst = make_instance(src, tgt, trial_seed(c.seed, 0), c.negative);
  Output o;
  o.report = envelope(c);
  o.report["p"] = io::encode_exponent(p);
  o.report["scrambled"] = inst.scrambled;
  o.report["u"] = io::encode(inst.u);
  o.report["jordan"] = io::encode(inst.jordan);
  o.report["map"] = io::encode(inst.map);
  return o;
}

Output cmd_verify(const ExperimentConfig& c) {
  const auto ps = ps_or(c, {1.0, 3.0, kInfinity});
  const RawLinearMap m = c.input.empty()
                             ? make_instance(shape_or(c, 0, {2, 3}), shape_or(c, 1, shape_or(c, 0, {2, 3})),
                                             trial_seed(c.seed, 0), c.negative)
                                   .map
                             : load_map(c.input);
  Output o;
  o.report = envelope(c);
  o.report["results"] = json::array();
  o.csv.push_back("p,is_isometry,max_ratio_dev,surjective");
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const auto r = verify_isometry(m, ps[k], c.trials, trial_seed(c.seed, k + 1), c.tol);
    json entry = io::encode(r);
    entry["p"] = io::encode_exponent(ps[k]);
    o.report["results"].push_back(entry);
    o.csv.push_back(row({num(ps[k]), flag(r.is_isometry), num(r.max_ratio_dev), flag(r.surjective)}));
    if (!r.is_isometry) o.status = 3;
  }
  return o;
}

Output cmd_reconstruct(const ExperimentConfig& c) {
  const auto ps = ps_or(c, {1.0});
  forbid_hilbert(ps, "reconstruct");
  Output o;
  o.report = envelope(c);
  o.report["results"] = json::array();
  o.csv.push_back(
      "trial,p,verdict,residual_form,residual_additivity,residual_consistency,residual_trace,"
      "jordan_residual,isometry_deviation");
  const int count = c.input.empty() ? c.trials : 1;
  for (int t = 0; t < count; ++t) {
    const auto seed = trial_seed(c.seed, static_cast<std::uint64_t>(t));
    std::optional<Instance> inst;
    if (c.input.empty()) {
      const auto src = shape_or(c, 0, {2, 3});
      inst = make_instance(src, shape_or(c, 1, src), seed, c.negative);
    }
    const RawLinearMap m = inst ? inst->map : load_map(c.input);
    for (double p : ps) {
      const auto r = reconstruct(m, p, options(c, seed));
      json entry = io::encode(r);
      entry["trial"] = t;
      entry["p"] = io::encode_exponent(p);
      if (inst && !inst->scrambled) {
        entry["w_error"] = (r.w - inst->u).frobenius_norm();
        entry["spec_match"] = r.k_spec.has_value() && same_up_to_phase(*r.k_spec, inst->jordan, c.tol);
      }
      o.report["results"].push_back(entry);
      o.csv.push_back(row({std::to_string(t), num(p), to_string(r.verdict), num(r.residual_form),
                           num(r.residual_additivity), num(r.residual_consistency),
                           num(r.residual_trace), num(r.jordan_residual),
                           num(r.isometry_deviation)}));
      o.status = worst(o.status, exit_status(r.verdict));
    }
  }
  return o;
}

// Three kinds of pairs: orthogonal by construction, generic, and both in one
// random corner.
std::pair<BlockElement, BlockElement> sample_pair(const AlgebraShape& shape, Rng& rng, int kind) {
  const auto one = BlockElement::identity(shape);
  if (kind == 1) return {random_element(shape, rng), random_element(shape, rng)};
  const auto q1 = random_projection(shape, rng);
  const auto q2 = random_projection(shape, rng);
  const auto x = multiply(multiply(q1, random_element(shape, rng)), q2);
  if (kind == 0) {
    return {x, multiply(multiply(one - q1, random_element(shape, rng)), one - q2)};
  }
  return {x, multiply(multiply(q1, random_element(shape, rng)), q2)};
}

Output cmd_clarkson(const ExperimentConfig& c) {
  const auto shape = shape_or(c, 0, {3, 2});
  const auto ps = ps_or(c, {0.5, 1.0, 3.0});
  forbid_hilbert(ps, "clarkson-sweep");
  Output o;
  o.report = envelope(c);
  o.report["shape"] = io::encode(shape);
  o.report["results"] = json::array();
  o.csv.push_back("p,trials,equalities,orthogonal,disagreements,max_orthogonal_gap");
  for (std::size_t k = 0; k < ps.size(); ++k) {
    int eq = 0, orth = 0, disagree = 0;
    double gap = 0.0;
    for (int t = 0; t < c.trials; ++t) {
      Rng rng(trial_seed(c.seed, k * static_cast<std::uint64_t>(c.trials) + t));
      const auto [x, y] = sample_pair(shape, rng, t % 3);
      const auto r = clarkson_check(x, y, ps[k], c.tol, c.numerics);
      eq += r.equality_holds;
      orth += r.orthogonal;
      disagree += !r.agree();
      if (r.orthogonal && r.rhs > 0.0) gap = std::max(gap, std::abs(r.lhs - r.rhs) / r.rhs);
    }
    o.report["results"].push_back({{"p", io::encode_exponent(ps[k])},
                                   {"trials", c.trials},
                                   {"equalities", eq},
                                   {"orthogonal", orth},
                                   {"disagreements", disagree},
                                   {"max_orthogonal_gap", gap}});
    o.csv.push_back(row({num(ps[k]), std::to_string(c.trials), std::to_string(eq),
                         std::to_string(orth), std::to_string(disagree), num(gap)}));
    if (disagree > 0) o.status = kExitCheckFailed;
  }
  return o;
}

Output cmd_commutant(const ExperimentConfig& c) {
  const std::vector<AlgebraShape> shapes =
      c.shapes.empty() ? std::vector<AlgebraShape>{{2}, {2, 1}, {3, 2}} : c.shapes;
  Output o;
  o.report = envelope(c);
  o.report["results"] = json::array();
  o.csv.push_back(
      "shape,dim_left,dim_right,distance_left,distance_right,mutual,isometry_deviation,isometric");
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const auto r = commutant_check(shapes[i], c.tol, c.trials, trial_seed(c.seed, i));
    json entry = io::encode(r);
    entry["shape"] = io::encode(shapes[i]);
    o.report["results"].push_back(entry);
    o.csv.push_back(row({quoted(shape_text(shapes[i])), std::to_string(r.dim_left),
                         std::to_string(r.dim_right), num(r.distance_left), num(r.distance_right),
                         flag(r.mutual), num(r.isometry_deviation), flag(r.isometric)}));
    if (!r.mutual || !r.isometric) o.status = kExitCheckFailed;
  }
  return o;
}

// N of every minimal central projection, i.e. the sorted block sizes.
std::vector<int> n_profile(const AlgebraShape& s) {
  std::vector<int> out;
  for (std::size_t b = 0; b < s.num_blocks(); ++b) {
    std::vector<bool> mask(s.num_blocks(), false);
    mask[b] = true;
    out.push_back(n_invariant(s, BlockElement::central(s, mask)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool oracle_sized(const AlgebraShape& s) {
  return s.num_blocks() <= 3 &&
         std::all_of(s.blocks().begin(), s.blocks().end(), [](int n) { return n <= 3; });
}

Output cmd_classify(const ExperimentConfig& c) {
  if (c.shapes.size() != 2) throw std::invalid_argument("classify needs exactly two --shape values");
  const auto& a = c.shapes[0];
  const auto& b = c.shapes[1];
  const bool iso = shapes_jordan_isomorphic(a, b);
  const int na = n_invariant(a, BlockElement::identity(a));
  const int nb = n_invariant(b, BlockElement::identity(b));

  Output o;
  o.report = envelope(c);
  json cert = {{"n_a", na}, {"n_b", nb}, {"profile_a", n_profile(a)}, {"profile_b", n_profile(b)}};
  if (oracle_sized(a)) cert["oracle_a"] = n_invariant_search(a, BlockElement::identity(a), c.seed).value;
  if (oracle_sized(b)) cert["oracle_b"] = n_invariant_search(b, BlockElement::identity(b), c.seed).value;
  o.report["isomorphic"] = iso;
  o.report["certificate"] = cert;
  o.csv.push_back("shape_a,shape_b,isomorphic,n_a,n_b,p,is_isometry,max_ratio_dev");
  const auto sa = quoted(shape_text(a));
  const auto sb = quoted(shape_text(b));
  if (!iso) {
    o.csv.push_back(row({sa, sb, "false", std::to_string(na), std::to_string(nb), "", "", ""}));
    return o;
  }
  const auto ps = ps_or(c, {1.0, 3.0, kInfinity});
  const auto inst = make_instance(a, b, trial_seed(c.seed, 0), false);
  o.report["isometry"] = {{"u", io::encode(inst.u)}, {"jordan", io::encode(inst.jordan)}};
  o.report["checks"] = json::array();
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const auto r = verify_isometry(inst.map, ps[k], c.trials, trial_seed(c.seed, k + 1), c.tol);
    json entry = io::encode(r);
    entry["p"] = io::encode_exponent(ps[k]);
    o.report["checks"].push_back(entry);
    o.csv.push_back(row({sa, sb, "true", std::to_string(na), std::to_string(nb), num(ps[k]),
                         flag(r.is_isometry), num(r.max_ratio_dev)}));
    if (!r.is_isometry || !r.surjective) o.status = kExitCheckFailed;
  }
  return o;
}

Output cmd_pipeline(const ExperimentConfig& c) {
  const auto shape = shape_or(c, 0, {2, 2, 3});
  Output o;
  o.report = envelope(c);
  o.report["results"] = json::array();
  o.csv.push_back(
      "trial,verdict,ok,residual,uniqueness_residual,literal_ad_residual,u_error,jordan_match");
  const int count = c.input.empty() ? c.trials : 1;
  for (int t = 0; t < count; ++t) {
    const auto seed = trial_seed(c.seed, static_cast<std::uint64_t>(t));
    std::optional<Instance> inst;
    if (c.input.empty()) inst = make_instance(shape, shape_or(c, 1, shape), seed, c.negative);
    const RawLinearMap m = inst ? inst->map : load_map(c.input);
    const auto res = extract_banach_stone(m, options(c, seed));
    json entry = io::encode(res.report);
    entry["trial"] = t;
    std::string u_error, match;
    if (res.u) entry["u"] = io::encode(*res.u);
    if (res.jordan) entry["jordan"] = io::encode(*res.jordan);
    if (inst && !inst->scrambled && res.u && res.jordan) {
      const double err = (*res.u - inst->u).frobenius_norm();
      const bool same = same_up_to_phase(*res.jordan, inst->jordan, c.tol);
      entry["u_error"] = err;
      entry["jordan_match"] = same;
      u_error = num(err);
      match = flag(same);
    }
    o.report["results"].push_back(entry);
    o.csv.push_back(row({std::to_string(t), to_string(res.report.verdict), flag(res.report.ok),
                         num(res.report.residual), num(res.report.uniqueness_residual),
                         num(res.report.literal_ad_residual), u_error, match}));
    const int s = res.report.ok ? 0
                  : res.report.verdict == Verdict::canonical ? kExitCheckFailed
                                                             : exit_status(res.report.verdict);
    o.status = worst(o.status, s);
  }
  return o;
}

Output dispatch(const ExperimentConfig& c) {
  if (c.command == "gen") return cmd_gen(c);
  if (c.command == "verify") return cmd_verify(c);
  if (c.command == "reconstruct") return cmd_reconstruct(c);
  if (c.command == "clarkson-sweep") return cmd_clarkson(c);
  if (c.command == "commutant") return cmd_commutant(c);
  if (c.command == "classify") return cmd_classify(c);
  if (c.command == "pipeline") return cmd_pipeline(c);
  throw std::invalid_argument("unknown command: " + c.command);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
               item.end());
    out.push_back(item);
  }
  return out;
}

}  // namespace

AlgebraShape parse_shape(const std::string& text) {
  std::vector<int> blocks;
  for (const auto& item : split(text, ',')) {
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad block size '" + item + "' in shape '" + text + "'");
    }
    if (used != item.size()) throw std::invalid_argument("bad shape '" + text + "'");
    blocks.push_back(n);
  }
  return AlgebraShape(std::move(blocks));
}

std::vector<double> parse_exponents(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    if (item == "inf" || item == "infinity") {
      out.push_back(kInfinity);
      continue;
    }
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent '" + item + "'");
    }
    if (used != item.size() || !(p > 0.0)) throw std::invalid_argument("bad exponent '" + item + "'");
    out.push_back(p);
  }
  return out;
}

std::optional<int> parse_args(int argc, const char* const* argv, ExperimentConfig& config,
                              std::ostream& out, std::ostream& err) {
  CLI::App app{"Isometries of noncommutative L^p spaces over block matrix algebras", "bstone"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);

  std::vector<std::string> shapes;
  std::vector<std::string> ps;
  std::optional<double> tol;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen", "write a random canonical isometry (or a scrambled non-isometry)"},
      {"verify", "sample the L^p norm ratio of a map"},
      {"reconstruct", "recover (w, K) from a surjective isometry"},
      {"clarkson-sweep", "tabulate Clarkson equality against orthogonality"},
      {"commutant", "check the left/right multiplication commutant theorem"},
      {"classify", "decide whether two shapes have isometric L^p spaces"},
      {"pipeline", "extract (u, J) from an operator-norm isometry"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--shape", shapes, "block sizes, e.g. 2,3; repeat for source and target");
    sub->add_option("--p", ps, "exponent or comma list; 'inf' allowed");
    sub->add_option("--trials", config.trials, "trials or samples")->check(CLI::PositiveNumber);
    sub->add_option("--seed", config.seed, "64-bit seed");
    sub->add_option("--tol", tol, "verdict tolerance (default from " + std::string(kTolEnv) + ")")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", config.out, "report path (default: stdout)");
    sub->add_option("--format", config.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--input", config.input, "map JSON to operate on");
    sub->add_flag("--negative", config.negative, "scramble generated maps into non-isometries");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    for (const auto& s : shapes) config.shapes.push_back(parse_shape(s));
    for (const auto& p : ps) {
      for (double v : parse_exponents(p)) config.ps.push_back(v);
    }
    if (tol) {
      config.tol = *tol;
    } else if (const char* env = std::getenv(kTolEnv); env != nullptr && *env != '\0') {
      std::size_t used = 0;
      const double v = std::stod(env, &used);
      if (used != std::string(env).size() || !(v > 0.0)) throw std::invalid_argument(env);
      config.tol = v;
    }
  } catch (const std::exception& e) {
    err << "bstone: invalid argument: " << e.what() << '\n';
    return kExitUsage;
  }
  return std::nullopt;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.trials < 1) throw std::invalid_argument("--trials must be at least 1");
    if (config.format != "json" && config.format != "csv") {
      throw std::invalid_argument("--format must be json or csv");
    }
    config.numerics.validate();
    Output o = dispatch(config);
    if (config.format == "csv" && o.csv.empty()) {
      throw std::invalid_argument(config.command + " has no CSV form");
    }
    std::string text;
    if (config.format == "json") {
      text = o.report.dump(2);
    } else {
      for (std::size_t i = 0; i < o.csv.size(); ++i) text += (i ? "\n" : "") + o.csv[i];
    }
    if (config.out.empty()) {
      out << text << '\n';
    } else {
      io::write_file(config.out, text);
    }
    return o.status;
  } catch (const HilbertExponent& e) {
    err << "bstone: " << e.what() << '\n';
    return kExitHilbert;
  } catch (const std::invalid_argument& e) {
    err << "bstone: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "bstone: malformed JSON input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "bstone: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace bstone::cli
