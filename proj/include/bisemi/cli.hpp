#pragma once

// Command-line surface: one registered verb per invocation, records emitted
// as JSON lines or CSV with fixed column order and float formatting.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "bisemi/curves.hpp"
#include "bisemi/ellipmod.hpp"
#include "bisemi/hecke.hpp"
#include "bisemi/lfunc.hpp"
#include "bisemi/mat2.hpp"
#include "bisemi/placelat.hpp"
#include "bisemi/zeta.hpp"

namespace bisemi::cli {

enum class OutputFormat { json, csv, text };

struct RunConfig {
  std::string command;  // "group verb", e.g. "hecke eig"
  std::map<std::string, std::string> params;
  OutputFormat output_format = OutputFormat::json;
  int precision = 12;
};

/// Bad invocation; exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Record emission

struct Raw {
  std::string text;  // emitted unquoted in JSON (exact integers)
};

using Value = std::variant<std::monostate, bool, std::int64_t, double, std::string, Raw>;

inline Value rat_value(const Rat& r) {
  if (is_integer(r)) return Raw{numerator(r).str()};
  return to_string(r);
}

inline Value int_value(const BigInt& n) { return Raw{n.str()}; }

class Emitter {
 public:
  Emitter(OutputFormat format, int precision) : format_(format), precision_(precision) {}

  void columns(std::vector<std::string> names) { columns_ = std::move(names); }

  void row(std::vector<Value> values) {
    if (values.size() != columns_.size()) throw std::logic_error("row width does not match columns");
    rows_.push_back(std::move(values));
  }

  /// Pre-rendered text output (semimodule text form).
  void text(std::string body) { text_ = std::move(body); }

  /// Appends a QuadNum as three columns: symbolic, real part, imaginary part.
  static void quad_columns(std::vector<std::string>& cols, const std::string& name) {
    cols.push_back(name);
    cols.push_back(name + "_re");
    cols.push_back(name + "_im");
  }
  static void quad_values(std::vector<Value>& vals, const QuadNum& q) {
    const auto z = q.to_complex();
    vals.emplace_back(q.to_string());
    vals.emplace_back(z.real());
    vals.emplace_back(z.imag());
  }

  void write(std::ostream& os) const {
    if (format_ == OutputFormat::text) {
      os << text_;
      return;
    }
    if (format_ == OutputFormat::csv) {
      for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << csv_escape(columns_[i]);
      os << '\n';
      for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
        os << '\n';
      }
      return;
    }
    for (const auto& r : rows_) {
      os << '{';
      for (std::size_t i = 0; i < r.size(); ++i)
        os << (i ? "," : "") << nlohmann::json(columns_[i]).dump() << ':' << json_cell(r[i]);
      os << "}\n";
    }
  }

 private:
  std::string format_double(double v) const {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision_, v);
    return buf;
  }

  static std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  }

  std::string csv_cell(const Value& v) const {
    return std::visit(
        [&](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, std::monostate>) return "";
          else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
          else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
          else if constexpr (std::is_same_v<T, double>) return format_double(x);
          else if constexpr (std::is_same_v<T, std::string>) return csv_escape(x);
          else return x.text;
        },
        v);
  }

  std::string json_cell(const Value& v) const {
    return std::visit(
        [&](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, std::monostate>) return "null";
          else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
          else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
          else if constexpr (std::is_same_v<T, double>) {
            if (!std::isfinite(x)) return nlohmann::json(format_double(x)).dump();
            return format_double(x);
          } else if constexpr (std::is_same_v<T, std::string>) return nlohmann::json(x).dump();
          else return x.text;
        },
        v);
  }

  OutputFormat format_;
  int precision_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Value>> rows_;
  std::string text_;
};

// ---------------------------------------------------------------------------
// Parameter access

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& raw) : raw_(raw) {}

  bool has(const std::string& key) const { return raw_.contains(key); }

  const std::string& str(const std::string& key) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) throw UsageError("missing required key --" + key);
    return it->second;
  }
  std::string str(const std::string& key, const std::string& fallback) const { return has(key) ? str(key) : fallback; }

  std::int64_t integer(const std::string& key) const {
    const std::string& s = str(key);
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("invalid integer for --" + key + ": '" + s + "'");
  }
  std::int64_t integer(const std::string& key, std::int64_t fallback) const { return has(key) ? integer(key) : fallback; }

  double real(const std::string& key) const {
    const std::string& s = str(key);
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("invalid number for --" + key + ": '" + s + "'");
  }
  double real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }

  Rat rational(const std::string& key) const {
    try {
      return parse_rat(str(key));
    } catch (const Error&) {
      throw UsageError("invalid rational for --" + key + ": '" + str(key) + "'");
    }
  }

  /// "2", "-0.5", "0.5+14.1i", "3-2i", "-i"
  Complex complex(const std::string& key) const {
    std::string s;
    for (char c : str(key))
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto bad = [&] { return UsageError("invalid complex number for --" + key + ": '" + str(key) + "'"); };
    auto to_d = [&](const std::string& t) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(t, &used);
      } catch (const std::exception&) {
        throw bad();
      }
      if (used != t.size()) throw bad();
      return v;
    };
    if (s.empty()) throw bad();
    if (s.back() != 'i') return {to_d(s), 0.0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;)
      if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
        split = i;
        break;
      }
    const std::string re = split == std::string::npos ? "" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    if (im.empty() || im == "+") im = "1";
    else if (im == "-") im = "-1";
    return {re.empty() ? 0.0 : to_d(re), to_d(im)};
  }

  std::vector<std::int64_t> int_list(const std::string& key) const {
    std::vector<std::int64_t> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      try {
        std::size_t used = 0;
        out.push_back(std::stoll(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw UsageError("invalid integer list for --" + key + ": '" + str(key) + "'");
      }
    }
    return out;
  }

  template <class Enum>
  Enum choice(const std::string& key, const std::vector<std::pair<std::string, Enum>>& options,
              std::optional<Enum> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw UsageError("missing required key --" + key);
    }
    for (const auto& [name, v] : options)
      if (name == str(key)) return v;
    std::string allowed;
    for (const auto& [name, v] : options) allowed += (allowed.empty() ? "" : "|") + name;
    throw UsageError("invalid value for --" + key + ": '" + str(key) + "' (expected " + allowed + ")");
  }

 private:
  const std::map<std::string, std::string>& raw_;
};

// ---------------------------------------------------------------------------
// Verb registry

struct KeySpec {
  std::string name;
  std::string help;
  bool required = false;
};

using Handler = std::function<void(const Params&, Emitter&, OutputFormat)>;

struct VerbSpec {
  std::string group;
  std::string name;
  std::string help;
  std::vector<KeySpec> keys;
  std::vector<std::string> operations;  // library operations reached through this verb
  bool allows_text = false;
  Handler handler;

  std::string command() const { return group + " " + name; }
};

namespace detail {

inline std::string matrix_string(const Mat2Q& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

inline std::string matrix_string(const Mat2K& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

inline Mat2Q parse_matrix(const Params& p, const std::string& key) {
  std::vector<Rat> v;
  std::stringstream ss(p.str(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(parse_rat(item));
    } catch (const Error&) {
      throw UsageError("invalid matrix entry for --" + key + ": '" + item + "'");
    }
  }
  if (v.size() != 4) throw UsageError("--" + key + " needs four comma-separated entries e11,e12,e21,e22");
  return {v[0], v[1], v[2], v[3]};
}

const std::vector<std::pair<std::string, Branch>> kBranches = {{"plus", Branch::plus}, {"minus", Branch::minus}};
const std::vector<std::pair<std::string, ZeroVariant>> kVariants = {{"riemann", ZeroVariant::riemann},
                                                                    {"bsd", ZeroVariant::bsd}};
const std::vector<std::pair<std::string, PlaceKind>> kKinds = {{"real", PlaceKind::real}, {"complex", PlaceKind::complex}};
const std::vector<std::pair<std::string, Side>> kSides = {{"left", Side::left}, {"right", Side::right}};
const std::vector<std::pair<std::string, Triangle>> kTriangles = {{"upper", Triangle::upper}, {"lower", Triangle::lower}};

inline PlaceSpec place_spec(const Params& p, const std::string& prefix = "") {
  const auto kind = p.choice<PlaceKind>(prefix + "kind", kKinds, PlaceKind::real);
  const auto s = p.integer(prefix + "s");
  const auto N = p.integer(prefix + "N", 1);
  std::vector<std::int64_t> mult;
  if (p.has(prefix + "mult")) mult = p.int_list(prefix + "mult");
  return PlaceSpec::make(kind, s, N, std::move(mult));
}

inline std::vector<KeySpec> place_keys(const std::string& prefix = "", bool with_kind = true) {
  std::vector<KeySpec> keys;
  if (with_kind) keys.push_back({prefix + "kind", "real|complex (default real)"});
  keys.push_back({prefix + "s", "number of places", true});
  keys.push_back({prefix + "N", "ramification order (default 1)"});
  keys.push_back({prefix + "mult", "comma-separated multiplicities (default all 1)"});
  return keys;
}

inline SeriesSpec series_spec(const Params& p, const std::string& branch_key = "branch") {
  SeriesSpec spec;
  spec.branch = p.choice<Branch>(branch_key, kBranches, Branch::minus);
  spec.N = p.integer("N", 1);
  spec.n_max = p.integer("n_max", 1);
  spec.m_rule = MultiplicityRule::constant(p.integer("m", 0));
  return spec;
}

inline std::string complex_string(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

inline WeierstrassCurve curve(const Params& p) { return WeierstrassCurve::make(p.integer("a"), p.integer("b")); }

inline std::vector<std::pair<std::int64_t, std::int64_t>> read_battery(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open curve battery file '" + path + "'");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::int64_t a, b;
    if (!(row >> a)) continue;
    if (!(row >> b)) throw UsageError("curve battery line needs 'a b': '" + line + "'");
    out.emplace_back(a, b);
  }
  return out;
}

inline void lseries_columns(Emitter& e) { e.columns({"operation", "inputs", "value_re", "value_im", "error_estimate"}); }

// Handlers ------------------------------------------------------------------

inline void hecke_eig(const Params& p, Emitter& e, OutputFormat) {
  const auto q = p.integer("q"), b = p.integer("b");
  const bool frobenius = !p.has("N");
  const auto params = HeckeParams::make(q, b, p.integer("N", 1));
  const EigenPair ev = frobenius ? frobenius_eigenvalues(q, b) : eigenvalues(params);
  const Translation t = translate_to_origin(ev);
  std::vector<std::string> cols{"q", "b", "N", "q_N", "b_N", "trace", "det"};
  for (auto name : {"lambda_plus", "lambda_minus", "radius", "center"}) Emitter::quad_columns(cols, name);
  e.columns(cols);
  std::vector<Value> v{q, b, params.N, int_value(params.q_N()), int_value(params.b_N()), rat_value(ev.trace),
                       rat_value(ev.det)};
  for (const auto* x : {&ev.plus, &ev.minus, &t.radius, &t.center}) Emitter::quad_values(v, *x);
  e.row(std::move(v));
}

inline void hecke_coset(const Params& p, Emitter& e, OutputFormat) {
  const auto params = HeckeParams::make(p.integer("q"), p.integer("b"), p.integer("N", 1));
  const Mat2Q g = coset_matrix(params);
  const CharPoly cp = charpoly(g);
  const QuadRoots r = eigen_quad(g);
  std::vector<std::string> cols{"q", "b", "N", "matrix", "trace", "det"};
  Emitter::quad_columns(cols, "eigen_plus");
  Emitter::quad_columns(cols, "eigen_minus");
  e.columns(cols);
  std::vector<Value> v{params.q, params.b, params.N, matrix_string(g), rat_value(cp.trace), rat_value(cp.det)};
  Emitter::quad_values(v, r.plus);
  Emitter::quad_values(v, r.minus);
  e.row(std::move(v));
}

inline void hecke_decomp(const Params& p, Emitter& e, OutputFormat) {
  const BigInt b(p.integer("b_N"));
  const Mat2Q d = decomposition_element(b);
  e.columns({"b_N", "matrix", "det"});
  e.row({int_value(b), matrix_string(d), rat_value(d.det())});
}

inline void alg_gauss(const Params& p, Emitter& e, OutputFormat) {
  e.columns({"factor", "side", "input", "unipotent", "diagonal", "transpose", "exchanged"});
  if (p.has("right") || p.has("left")) {
    const Mat2Q right = parse_matrix(p, "right"), left = parse_matrix(p, "left");
    const BilinearGauss g = bilinear_gauss(right, left);
    const auto swapped = exchange_involution(std::pair{right, left});
    e.row({"right", "lower", matrix_string(right), matrix_string(g.right.unipotent), matrix_string(g.right.diagonal),
           matrix_string(involution_first_kind(right)), matrix_string(swapped.first)});
    e.row({"left", "upper", matrix_string(left), matrix_string(g.left.unipotent), matrix_string(g.left.diagonal),
           matrix_string(involution_first_kind(left)), matrix_string(swapped.second)});
    return;
  }
  const Mat2Q t = parse_matrix(p, "matrix");
  const Triangle side = p.choice<Triangle>("side", kTriangles);
  const GaussFactors f = gauss_decompose_triangular(t, side);
  e.row({"single", side == Triangle::upper ? "upper" : "lower", matrix_string(t), matrix_string(f.unipotent),
         matrix_string(f.diagonal), matrix_string(involution_first_kind(t)), std::monostate{}});
}

inline void place_degree(const Params& p, Emitter& e, OutputFormat) {
  const PlaceSpec spec = place_spec(p);
  const auto n = p.integer("n");
  e.columns({"kind", "s", "N", "n", "degree"});
  e.row({to_string(spec.kind()), spec.s(), spec.N(), n, extension_degree(spec, n)});
}

inline void place_bilattice(const Params& p, Emitter& e, OutputFormat) {
  const PlaceSpec right = place_spec(p);
  std::map<std::string, std::string> left_raw;
  for (auto key : {"kind", "s", "N", "mult"}) {
    const std::string left_key = std::string("left_") + key;
    if (p.has(left_key)) left_raw[key] = p.str(left_key);
    else if (p.has(key)) left_raw[key] = p.str(key);
  }
  const PlaceSpec left = place_spec(Params(left_raw));
  e.columns({"n", "m", "rank_right", "rank_left"});
  for (const auto& b : decompose_bilattice(right, left)) e.row({b.n, b.m, b.rank_right, b.rank_left});
}

inline void place_borel_serre(const Params& p, Emitter& e, OutputFormat) {
  std::map<std::string, std::string> c_raw{{"kind", "complex"}}, r_raw{{"kind", "real"}};
  for (auto key : {"s", "N", "mult"}) {
    if (p.has(std::string("complex_") + key)) c_raw[key] = p.str(std::string("complex_") + key);
    if (p.has(std::string("real_") + key)) r_raw[key] = p.str(std::string("real_") + key);
  }
  if (!c_raw.contains("s")) throw UsageError("missing required key --complex_s");
  if (!r_raw.contains("s")) throw UsageError("missing required key --real_s");
  const auto report = check_borel_serre(place_spec(Params(c_raw)), place_spec(Params(r_raw)));
  e.columns({"equal_place_count", "unit_complex_multiplicity", "ranks_commensurable", "all"});
  e.row({report.equal_place_count, report.unit_complex_multiplicity, report.ranks_commensurable, report.all()});
}

inline FourierSemimodule semimodule_from(const Params& p) {
  if (p.has("file")) {
    std::ifstream in(p.str("file"));
    if (!in) throw UsageError("cannot open semimodule file '" + p.str("file") + "'");
    return read_semimodule(in);
  }
  return build_phi(place_spec(p), parse_rule(p.str("rule", "hecke")), p.choice<Branch>("branch", kBranches, Branch::plus),
                   p.choice<Side>("side", kSides, Side::left));
}

inline void write_terms(const FourierSemimodule& phi, const std::function<std::int64_t(std::int64_t)>& multiplicity,
                        Emitter& e, OutputFormat format) {
  if (format == OutputFormat::text) {
    std::ostringstream os;
    write_semimodule(os, phi);
    e.text(os.str());
    return;
  }
  std::vector<std::string> cols{"side", "N", "n", "m"};
  Emitter::quad_columns(cols, "coeff");
  cols.push_back("multiplicity");
  e.columns(cols);
  for (const auto& t : phi.terms()) {
    std::vector<Value> v{to_string(phi.side()), phi.N(), t.n, t.m};
    Emitter::quad_values(v, t.coeff);
    v.emplace_back(multiplicity(t.n));
    e.row(std::move(v));
  }
}

inline void semimodule_build(const Params& p, Emitter& e, OutputFormat format) {
  const PlaceSpec spec = place_spec(p);
  const FourierSemimodule phi = semimodule_from(p);
  SupercuspidalRep rep = SupercuspidalRep::from_places(spec);
  if (p.has("nilpotent")) {
    const auto nm = p.int_list("nilpotent");
    if (nm.size() != 2) throw UsageError("--nilpotent expects 'n,m'");
    rep = apply_nilpotent_multiplicity(rep, nm[0], nm[1]);
  }
  write_terms(phi, [&](std::int64_t n) { return rep.multiplicity(n); }, e, format);
}

inline void semimodule_eval(const Params& p, Emitter& e, OutputFormat) {
  const FourierSemimodule phi = semimodule_from(p);
  const double x = p.real("x");
  const Complex v = eval(phi, x);
  e.columns({"side", "N", "terms", "x", "value_re", "value_im"});
  e.row({to_string(phi.side()), phi.N(), static_cast<std::int64_t>(phi.size()), x, v.real(), v.imag()});
}

inline void semimodule_kernel(const Params& p, Emitter& e, OutputFormat) {
  const PlaceSpec spec = PlaceSpec::make(PlaceKind::real, p.integer("s"), p.integer("N", 1));
  const auto product =
      diagonal_tensor(build_phi(spec, CoefficientRule::simple, Branch::minus, Side::right),
                      build_phi(spec, CoefficientRule::simple, Branch::plus, Side::left));
  const auto bipoints = kernel_bipoints(product);
  e.columns({"n", "coeff_right", "coeff_left", "bipoint"});
  for (std::size_t i = 0; i < bipoints.size(); ++i)
    e.row({bipoints[i].first, product.terms[i].coeff_right.to_string(), product.terms[i].coeff_left.to_string(),
           int_value(bipoints[i].second)});
}

inline void eis_coeff(const Params& p, Emitter& e, OutputFormat) {
  const auto n = p.integer("n"), N = p.integer("N", 1);
  const auto c = eis_coefficient(n, N);
  const auto split = semitorus_split(Rat(c.restricted));
  std::vector<std::string> cols{"n", "N", "restricted", "classical"};
  Emitter::quad_columns(cols, "semitorus_radius");
  e.columns(cols);
  std::vector<Value> v{n, N, int_value(c.restricted), int_value(c.classical)};
  Emitter::quad_values(v, split.first);
  e.row(std::move(v));
}

inline void lseries_sum(const Params& p, Emitter& e, OutputFormat) {
  const SeriesSpec spec = series_spec(p);
  const Complex s = p.complex("s");
  const auto v = partial_sum(spec, s);
  lseries_columns(e);
  e.row({"partial_sum",
         "branch=" + to_string(spec.branch) + ";N=" + std::to_string(spec.N) + ";m=" + std::to_string(spec.m_rule.default_m[0]) +
             ";n_max=" + std::to_string(spec.n_max) + ";s=" + p.str("s"),
         v.value.real(), v.value.imag(), v.error_estimate});
}

inline void lseries_degenerate(const Params& p, Emitter& e, OutputFormat) {
  const SeriesSpec right = series_spec(p, "branch_right");
  const SeriesSpec left = series_spec(p, "branch_left");
  const double x = p.real("x");
  const double v = degenerate_product(right, left, x);
  lseries_columns(e);
  e.row({"degenerate_product",
         "branch_right=" + to_string(right.branch) + ";branch_left=" + to_string(left.branch) + ";N=" +
             std::to_string(right.N) + ";m=" + std::to_string(right.m_rule.default_m[0]) + ";n_max=" + std::to_string(right.n_max) +
             ";x=" + p.str("x"),
         v, 0.0, std::monostate{}});
}

inline DirichletCharacter character(const Params& p, std::int64_t N) {
  if (!p.has("character")) return DirichletCharacter::trivial(N);
  std::vector<Complex> values;
  std::stringstream ss(p.str("character"));
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::map<std::string, std::string> one{{"character", item}};
    values.push_back(Params(one).complex("character"));
  }
  return DirichletCharacter(N, std::move(values));
}

inline void lseries_euler(const Params& p, Emitter& e, OutputFormat) {
  const SeriesSpec spec = series_spec(p);
  const Complex s = p.complex("s");
  const auto p_max = p.integer("p_max");
  const auto r = euler_product(spec, s, p_max, character(p, spec.N));
  e.columns({"operation", "inputs", "value_re", "value_im", "error_estimate", "primes", "diverging", "max_factor"});
  e.row({"euler_product",
         "branch=" + to_string(spec.branch) + ";N=" + std::to_string(spec.N) + ";m=" + std::to_string(spec.m_rule.default_m[0]) +
             ";p_max=" + std::to_string(p_max) + ";s=" + p.str("s"),
         r.value.real(), r.value.imag(), r.error_estimate, static_cast<std::int64_t>(r.factors.size()), r.diverging,
         r.max_factor_abs});
}

inline void lseries_partition(const Params& p, Emitter& e, OutputFormat) {
  const SeriesSpec spec = series_spec(p);
  const Complex s = p.complex("s");
  std::set<std::int64_t> kept;
  if (p.has("kept")) {
    for (auto n : p.int_list("kept")) kept.insert(n);
  } else if (p.has("a") && p.has("b")) {
    for (auto n : restricted_rank_count(curve(p), spec.n_max).places) kept.insert(n);
  } else {
    throw UsageError("missing required key --kept (or --a and --b)");
  }
  const auto parts = partition_series(spec, kept);
  e.columns({"operation", "inputs", "value_re", "value_im", "error_estimate", "part", "classes"});
  const std::string inputs = "branch=" + to_string(spec.branch) + ";N=" + std::to_string(spec.N) +
                             ";m=" + std::to_string(spec.m_rule.default_m[0]) + ";n_max=" + std::to_string(spec.n_max) +
                             ";s=" + p.str("s");
  for (const auto& [name, part] : {std::pair{"kept", &parts.kept}, std::pair{"complement", &parts.complement},
                                   std::pair{"whole", &spec}}) {
    const auto v = partial_sum(*part, s);
    e.row({"partition_series", inputs, v.value.real(), v.value.imag(), v.error_estimate, name,
           static_cast<std::int64_t>(part->class_list().size())});
  }
}

inline void zeta_value(const Params& p, Emitter& e, OutputFormat) {
  const Complex s = p.complex("s");
  const auto v = zeta_with_estimate(s);
  lseries_columns(e);
  e.row({"zeta_numeric", "s=" + p.str("s"), v.value.real(), v.value.imag(), v.error_estimate});
}

inline void zeta_zero(const Params& p, Emitter& e, OutputFormat) {
  const auto k = p.integer("k");
  const auto variant = p.choice<ZeroVariant>("variant", kVariants, ZeroVariant::riemann);
  const ZeroScan scan{p.real("t_max", 60.0), p.real("step", 0.05)};
  const auto z = locate_zeta_zero(k, variant, scan);
  e.columns({"operation", "inputs", "value_re", "value_im", "error_estimate", "abs_zeta"});
  e.row({"locate_zeta_zero", "k=" + std::to_string(k) + ";variant=" + to_string(variant), z.sigma, z.tau,
         z.bracket_width, z.abs_zeta});
}

inline void zeromap_candidate(const Params& p, Emitter& e, OutputFormat) {
  const auto n = p.integer("n");
  const Rat E = p.rational("E");
  const auto variant = p.choice<ZeroVariant>("variant", kVariants, ZeroVariant::riemann);
  const auto c = nontrivial_candidate(n, E, variant);
  std::vector<std::string> cols{"n", "E", "variant"};
  Emitter::quad_columns(cols, "lambda_plus");
  Emitter::quad_columns(cols, "lambda_minus");
  for (auto name : {"product", "sigma", "tau"}) cols.emplace_back(name);
  e.columns(cols);
  std::vector<Value> v{n, rat_value(E), to_string(variant)};
  Emitter::quad_values(v, c.plus);
  Emitter::quad_values(v, c.minus);
  v.emplace_back(rat_value(c.product));
  v.emplace_back(rat_value(c.sigma));
  v.emplace_back(c.tau);
  e.row(std::move(v));
}

inline void zeromap_check(const Params& p, Emitter& e, OutputFormat) {
  const auto n = p.integer("n");
  const Rat E = p.rational("E");
  const auto variant = p.choice<ZeroVariant>("variant", kVariants, ZeroVariant::riemann);
  const auto r = zero_map_check(n, E, variant);
  e.columns({"n", "E", "variant", "element", "trivial_product", "matrix_det", "closed_form_product",
             "det_matches_product", "matches_trivial", "eigenvalues_match"});
  e.row({n, rat_value(E), to_string(variant), matrix_string(r.element), int_value(r.trivial_product),
         rat_value(r.matrix_det), rat_value(r.closed_form_product), r.det_matches_product, r.matches_trivial,
         r.eigenvalues_match});
}

inline void energy_solve(const Params& p, Emitter& e, OutputFormat) {
  const auto n = p.integer("n");
  const double tau = p.real("tau");
  const auto variant = p.choice<ZeroVariant>("variant", kVariants, ZeroVariant::riemann);
  const double E = energy_from_tau(n, tau, variant);
  const auto back = nontrivial_candidate(n, E, variant);
  e.columns({"n", "tau", "variant", "E", "roundtrip_tau"});
  e.row({n, tau, to_string(variant), E, back.tau});
}

inline void curve_count(const Params& p, Emitter& e, OutputFormat) {
  const auto r = count_points_bruteforce(curve(p), p.integer("p"));
  e.columns({"p", "good", "count", "a_p"});
  e.row({r.p, r.good, r.count, r.a_p});
}

inline void curve_reduce(const Params& p, Emitter& e, OutputFormat) {
  const auto p_max = p.integer("p_max");
  const bool battery = p.has("battery");
  std::vector<std::pair<std::int64_t, std::int64_t>> curves;
  if (battery) curves = read_battery(p.str("battery"));
  else curves.emplace_back(p.integer("a"), p.integer("b"));
  if (battery) e.columns({"a", "b", "p", "good", "count", "a_p"});
  else e.columns({"p", "good", "count", "a_p"});
  for (auto [a, b] : curves) {
    const auto c = WeierstrassCurve::make(a, b);
    for (auto q : primes_up_to(p_max)) {
      std::vector<Value> v;
      if (battery) v = {a, b};
      v.emplace_back(q);
      if (good_reduction(c, q)) {
        const auto r = count_points_bruteforce(c, q);
        v.insert(v.end(), {true, r.count, r.a_p});
      } else {
        v.insert(v.end(), {false, std::monostate{}, std::monostate{}});
      }
      e.row(std::move(v));
    }
  }
}

inline void curve_semimodule(const Params& p, Emitter& e, OutputFormat format) {
  const auto N = p.integer("N", 1);
  const auto phi = curve_to_semimodule(curve(p), p.integer("p_max"), N, p.choice<Branch>("branch", kBranches, Branch::minus));
  if (format == OutputFormat::text) {
    std::ostringstream os;
    write_semimodule(os, phi);
    e.text(os.str());
    return;
  }
  std::vector<std::string> cols{"side", "N", "p", "m_p"};
  Emitter::quad_columns(cols, "coeff");
  for (auto name : {"mp_value", "mp_root", "mp_holds"}) cols.emplace_back(name);
  e.columns(cols);
  for (const auto& t : phi.terms()) {
    const auto mp = mp_formula_check(t.n, N, t.m);
    std::vector<Value> v{to_string(phi.side()), N, t.n, t.m};
    Emitter::quad_values(v, t.coeff);
    v.emplace_back(int_value(mp.value));
    v.emplace_back(int_value(mp.root));
    v.emplace_back(mp.holds);
    e.row(std::move(v));
  }
}

inline void curve_rank_count(const Params& p, Emitter& e, OutputFormat) {
  const auto r = restricted_rank_count(curve(p), p.integer("p_max"));
  std::string places;
  for (auto q : r.places) places += (places.empty() ? "" : " ") + std::to_string(q);
  e.columns({"a", "b", "p_max", "restricted_place_count", "places"});
  e.row({p.integer("a"), p.integer("b"), p.integer("p_max"), r.count, places});
}

}  // namespace detail

inline const std::vector<VerbSpec>& verbs() {
  using namespace detail;
  static const std::vector<VerbSpec> table = [] {
    const std::vector<KeySpec> series_keys{{"branch", "plus|minus (default minus)"},
                                           {"N", "level (default 1)"},
                                           {"m", "representative index for every class (default 0)"},
                                           {"n_max", "truncation (default 1)"}};
    auto with = [](std::vector<KeySpec> base, std::initializer_list<KeySpec> extra) {
      base.insert(base.end(), extra);
      return base;
    };
    const std::vector<KeySpec> curve_keys{{"a", "curve coefficient a", true}, {"b", "curve coefficient b", true}};
    const auto place = place_keys();
    const std::vector<KeySpec> semimodule_keys =
        with(place_keys("", true), {{"rule", "hecke|simple (default hecke)"},
                                    {"branch", "plus|minus (default plus)"},
                                    {"side", "left|right (default left)"}});
    std::vector<KeySpec> borel;
    for (auto k : place_keys("complex_", false)) borel.push_back({k.name, "complex places: " + k.help, false});
    for (auto k : place_keys("real_", false)) borel.push_back({k.name, "real places: " + k.help, false});

    return std::vector<VerbSpec>{
        {"hecke", "eig", "eigenvalues of the Hecke coset representative (Frobenius case when --N is omitted)",
         {{"q", "place cardinality", true}, {"b", "sublattice index", true}, {"N", "level"}},
         {"eigenvalues", "frobenius_eigenvalues", "translate_to_origin"}, false, hecke_eig},
        {"hecke", "coset", "coset representative matrix with its characteristic polynomial and exact roots",
         {{"q", "place cardinality", true}, {"b", "sublattice index", true}, {"N", "level (default 1)"}},
         {"coset_matrix", "charpoly", "eigen_quad"}, false, hecke_coset},
        {"hecke", "decomp", "decomposition-group element u(b_N) u(b_N)^T",
         {{"b_N", "off-diagonal entry", true}}, {"decomposition_element"}, false, hecke_decomp},
        {"alg", "gauss", "Gauss decomposition of a triangular matrix or a (lower, upper) pair",
         {{"matrix", "e11,e12,e21,e22"}, {"side", "upper|lower"}, {"right", "lower triangular e11,e12,e21,e22"},
          {"left", "upper triangular e11,e12,e21,e22"}},
         {"gauss_decompose_triangular", "bilinear_gauss", "involution_first_kind", "exchange_involution"}, false, alg_gauss},
        {"place", "degree", "extension degree at place n", with(place, {{"n", "place index", true}}),
         {"extension_degree"}, false, place_degree},
        {"place", "bilattice", "subbilattice grid of corresponding right and left specs",
         with(place, {{"left_kind", "left spec kind"}, {"left_s", "left spec s"}, {"left_N", "left spec N"},
                      {"left_mult", "left spec multiplicities"}}),
         {"decompose_bilattice"}, false, place_bilattice},
        {"place", "borel-serre", "covering conditions between complex and real places", borel, {"check_borel_serre"},
         false, place_borel_serre},
        {"semimodule", "build", "truncated Fourier semimodule over a place grid",
         with(semimodule_keys, {{"nilpotent", "n,m: set the multiplicity of class n to m"}}),
         {"build_phi", "apply_nilpotent_multiplicity"}, true, semimodule_build},
        {"semimodule", "eval", "evaluate a semimodule at x",
         with(semimodule_keys, {{"x", "real abscissa", true}, {"file", "semimodule text file (overrides build keys)"}}),
         {"eval"}, false, semimodule_eval},
        {"semimodule", "kernel", "kernel bipoints of the simple right x left product",
         {{"s", "number of classes", true}, {"N", "level (must be 1)"}}, {"diagonal_tensor", "kernel_bipoints"}, false,
         semimodule_kernel},
        {"eis", "coeff", "restricted and classical weight-2 Eisenstein coefficients",
         {{"n", "class", true}, {"N", "level (default 1)"}}, {"eis_coefficient", "semitorus_split"}, false, eis_coeff},
        {"lseries", "sum", "partial sum of the Hecke L-series", with(series_keys, {{"s", "complex argument", true}}),
         {"partial_sum"}, false, lseries_sum},
        {"lseries", "degenerate", "diagonal product sum lambda_R lambda_L n^{-2x}",
         {{"branch_right", "plus|minus (default minus)"}, {"branch_left", "plus|minus (default minus)"},
          {"N", "level (default 1)"}, {"m", "representative index (default 0)"}, {"n_max", "truncation (default 1)"},
          {"x", "real exponent", true}},
         {"degenerate_product"}, false, lseries_degenerate},
        {"lseries", "euler", "finite Euler product over primes <= p_max",
         with(series_keys, {{"s", "complex argument", true}, {"p_max", "prime bound", true},
                            {"character", "comma-separated values on residues mod N"}}),
         {"euler_product"}, false, lseries_euler},
        {"lseries", "partition", "split the series into kept classes and their complement",
         with(series_keys, {{"s", "complex argument", true}, {"kept", "comma-separated classes"},
                            {"a", "take kept classes from this curve's good primes"}, {"b", "curve coefficient b"}}),
         {"partition_series"}, false, lseries_partition},
        {"zeta", "value", "Riemann zeta at a complex point", {{"s", "complex argument", true}}, {"zeta_numeric"}, false,
         zeta_value},
        {"zeta", "zero", "k-th zero ordinate on the critical line",
         {{"k", "zero index", true}, {"variant", "riemann|bsd"}, {"t_max", "scan bound"}, {"step", "scan step"}},
         {"locate_zeta_zero"}, false, zeta_zero},
        {"zeromap", "candidate", "non-trivial zero candidate for class n and energy E",
         {{"n", "class", true}, {"E", "energy (rational)", true}, {"variant", "riemann|bsd"}}, {"nontrivial_candidate"},
         false, zeromap_candidate},
        {"zeromap", "check", "determinant map from trivial to candidate zeros",
         {{"n", "class", true}, {"E", "energy (rational)", true}, {"variant", "riemann|bsd"}}, {"zero_map_check"}, false,
         zeromap_check},
        {"energy", "solve", "energy whose candidate has ordinate tau",
         {{"n", "class", true}, {"tau", "ordinate", true}, {"variant", "riemann|bsd"}}, {"energy_from_tau"}, false,
         energy_solve},
        {"curve", "count", "brute-force #E(F_p)", with(curve_keys, {{"p", "odd prime", true}}),
         {"count_points_bruteforce"}, false, curve_count},
        {"curve", "reduce", "reduction type and counts for all primes <= p_max",
         {{"a", "curve coefficient a"}, {"b", "curve coefficient b"}, {"battery", "file of 'a b' lines"},
          {"p_max", "prime bound", true}},
         {"good_reduction"}, false, curve_reduce},
        {"curve", "semimodule", "semimodule of a curve over its good primes",
         with(curve_keys, {{"p_max", "prime bound", true}, {"N", "level (default 1)"}, {"branch", "plus|minus (default minus)"}}),
         {"curve_to_semimodule", "mp_formula_check"}, true, curve_semimodule},
        {"curve", "rank-count", "restricted place count N_g", with(curve_keys, {{"p_max", "prime bound", true}}),
         {"restricted_rank_count"}, false, curve_rank_count},
    };
  }();
  return table;
}

inline const VerbSpec* find_verb(const std::string& command) {
  for (const auto& v : verbs())
    if (v.command() == command) return &v;
  return nullptr;
}

/// Runs one verb. Exit status: 0 success, 1 domain error, 2 usage error.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const VerbSpec* verb = find_verb(config.command);
  if (verb == nullptr) {
    err << "usage error: unknown command '" << config.command << "'\n";
    return 2;
  }
  if (config.precision < 6 || config.precision > 17) {
    err << "usage error: --precision must be in [6, 17]\n";
    return 2;
  }
  if (config.output_format == OutputFormat::text && !verb->allows_text) {
    err << "usage error: --format text is not available for '" << verb->command() << "'\n";
    return 2;
  }
  for (const auto& [key, value] : config.params) {
    bool known = false;
    for (const auto& k : verb->keys) known = known || k.name == key;
    if (!known) {
      err << "usage error: unknown key --" << key << " for '" << verb->command() << "'\n";
      return 2;
    }
  }
  Emitter emitter(config.output_format, config.precision);
  try {
    verb->handler(Params(config.params), emitter, config.output_format);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  emitter.write(out);
  return 0;
}

/// Flat "key = value" (or "key value") lines; '#' starts a comment.
inline std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto sep = line.find('=');
    if (sep == std::string::npos) sep = line.find_first_of(" \t");
    if (sep == std::string::npos) throw UsageError("config line needs 'key = value': '" + line + "'");
    std::string key = trim(line.substr(0, sep));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    out[key] = trim(line.substr(sep + 1));
  }
  return out;
}

/// Parses argv with CLI11 and runs the selected verb.
inline int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bisemi: exact Hecke/L-series/elliptic-curve computations"};
  app.name("bisemi");
  app.require_subcommand(1);
  std::string format = "json";
  std::optional<int> precision;
  std::string config_path;
  app.add_option("--format", format, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--precision", precision, "significant digits for floats, 6..17 (env BISEMI_PRECISION)");
  app.add_option("--config", config_path, "flat key=value file supplying verb keys");

  std::map<std::string, std::map<std::string, std::string>> values;  // per command
  std::map<std::string, CLI::App*> groups;
  std::vector<std::pair<const VerbSpec*, CLI::App*>> leaves;
  for (const auto& v : verbs()) {
    CLI::App*& group = groups[v.group];
    if (group == nullptr) {
      group = app.add_subcommand(v.group, v.group + " commands");
      group->require_subcommand(1);
      group->fallthrough();
    }
    CLI::App* leaf = group->add_subcommand(v.name, v.help);
    leaf->fallthrough();
    for (const auto& k : v.keys) leaf->add_option("--" + k.name, values[v.command()][k.name], k.help);
    leaves.emplace_back(&v, leaf);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  RunConfig config;
  const CLI::App* chosen = nullptr;
  for (const auto& [verb, leaf] : leaves) {
    if (!leaf->parsed()) continue;
    chosen = leaf;
    config.command = verb->command();
    for (const auto& k : verb->keys)
      if (leaf->count("--" + k.name) > 0) config.params[k.name] = values[verb->command()][k.name];
  }
  if (chosen == nullptr) {
    err << "usage error: no command given\n";
    return 2;
  }

  try {
    if (!config_path.empty()) {
      auto file = read_config_file(config_path);
      if (auto it = file.find("format"); it != file.end() && app.count("--format") == 0) format = it->second;
      if (auto it = file.find("precision"); it != file.end() && !precision) precision = std::stoi(it->second);
      file.erase("format");
      file.erase("precision");
      for (auto& [k, v] : file) config.params.emplace(k, v);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception&) {
    err << "usage error: invalid precision in config file\n";
    return 2;
  }

  if (!precision) {
    if (const char* env = std::getenv("BISEMI_PRECISION")) {
      try {
        precision = std::stoi(env);
      } catch (const std::exception&) {
        err << "usage error: BISEMI_PRECISION is not an integer\n";
        return 2;
      }
    }
  }
  config.precision = precision.value_or(12);
  if (format == "csv") config.output_format = OutputFormat::csv;
  else if (format == "text") config.output_format = OutputFormat::text;
  else if (format == "json") config.output_format = OutputFormat::json;
  else {
    err << "usage error: --format must be json|csv|text\n";
    return 2;
  }
  return run(config, out, err);
}

}  // namespace bisemi::cli
