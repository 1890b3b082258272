#include "gtsim/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "gtsim/errors.hpp"
#include "gtsim/initial_data.hpp"
#include "gtsim/spectral.hpp"

namespace gt {

// ---- grid and initial data ---------------------------------------------------

Grid GridSpec::make() const {
  if (d < 1 || d > kMaxDim) throw ConfigError("grid: d must be 1, 2 or 3");
  auto expand = [&](const auto& v, const char* what) {
    using T = typename std::decay_t<decltype(v)>::value_type;
    if (v.size() == 1) return std::vector<T>(static_cast<std::size_t>(d), v[0]);
    if (v.size() != static_cast<std::size_t>(d)) {
      throw ConfigError(std::string("grid: ") + what + " needs 1 or d entries");
    }
    return std::vector<T>(v.begin(), v.end());
  };
  const auto ns = expand(n, "n");
  const auto Ls = expand(L, "L");
  return Grid::make(d, ns, Ls);
}

Field InitialSpec::build(const Grid& grid) const {
  if (kind == "gaussian") return gaussian_data(grid, {A, sigma});
  if (kind == "plane-wave") {
    if (modes.size() != static_cast<std::size_t>(grid.dim())) {
      throw ConfigError("initial: plane-wave modes need one entry per axis");
    }
    return plane_wave(grid, A, modes);
  }
  if (kind == "box") {
    auto params = InflationParams::from_scaling(N, delta, s);
    return freq_box_data(grid, params).field;
  }
  if (kind == "annulus") return annulus_bump(grid, N, T);
  if (kind == "snapshot") return read_snapshot(path, grid).field;
  throw ConfigError("initial: unknown kind '" + kind +
                    "' (expected gaussian, plane-wave, box, annulus or snapshot)");
}

// ---- TOML mapping ------------------------------------------------------------------

namespace {

std::string line_of(const toml::node& n) {
  const auto& src = n.source();
  if (src.begin.line == 0) return "";
  return " (line " + std::to_string(src.begin.line) + ")";
}

class Reader {
 public:
  Reader(const toml::table& t, std::string prefix) : t_(t), prefix_(std::move(prefix)) {}

  std::string path(std::string_view key) const {
    return prefix_.empty() ? std::string(key) : prefix_ + "." + std::string(key);
  }

  const toml::node* take(std::string_view key) {
    const toml::node* n = t_.get(key);
    if (n) seen_.insert(std::string(key));
    return n;
  }

  [[noreturn]] void fail(std::string_view key, const toml::node& n, const char* expected) const {
    throw ConfigError("key '" + path(key) + "'" + line_of(n) + ": expected " + expected);
  }

  double number(std::string_view key, const toml::node& n) const {
    if (auto v = n.value_exact<double>()) return *v;
    if (auto v = n.value_exact<std::int64_t>()) return static_cast<double>(*v);
    fail(key, n, "a number");
  }
  std::int64_t integer(std::string_view key, const toml::node& n) const {
    if (auto v = n.value_exact<std::int64_t>()) return *v;
    fail(key, n, "an integer");
  }

  void operator()(std::string_view key, double& out) {
    if (auto* n = take(key)) out = number(key, *n);
  }
  void operator()(std::string_view key, int& out) {
    if (auto* n = take(key)) out = static_cast<int>(integer(key, *n));
  }
  void operator()(std::string_view key, long& out) {
    if (auto* n = take(key)) out = static_cast<long>(integer(key, *n));
  }
  void operator()(std::string_view key, std::size_t& out) {
    if (auto* n = take(key)) {
      const auto v = integer(key, *n);
      if (v < 0) fail(key, *n, "a nonnegative integer");
      out = static_cast<std::size_t>(v);
    }
  }
  void operator()(std::string_view key, bool& out) {
    if (auto* n = take(key)) {
      if (auto v = n->value_exact<bool>()) {
        out = *v;
        return;
      }
      fail(key, *n, "a boolean");
    }
  }
  void operator()(std::string_view key, std::string& out) {
    if (auto* n = take(key)) {
      if (auto v = n->value_exact<std::string>()) {
        out = *v;
        return;
      }
      fail(key, *n, "a string");
    }
  }
  void operator()(std::string_view key, std::optional<double>& out) {
    if (auto* n = take(key)) out = number(key, *n);
  }
  template <class T>
  void operator()(std::string_view key, std::vector<T>& out) {
    auto* n = take(key);
    if (!n) return;
    const auto* arr = n->as_array();
    if (!arr) fail(key, *n, "an array");
    std::vector<T> v;
    for (const auto& e : *arr) {
      if constexpr (std::is_floating_point_v<T>) {
        v.push_back(number(key, e));
      } else {
        const auto x = integer(key, e);
        if (std::is_unsigned_v<T> && x < 0) fail(key, e, "nonnegative integers");
        v.push_back(static_cast<T>(x));
      }
    }
    out = std::move(v);
  }

  const toml::table* table(std::string_view key) {
    auto* n = take(key);
    if (!n) return nullptr;
    if (!n->as_table()) fail(key, *n, "a table");
    return n->as_table();
  }

  void finish() const {
    for (const auto& [k, v] : t_) {
      if (!seen_.count(std::string(k.str()))) {
        throw ConfigError("unknown key '" + path(k.str()) + "'" + line_of(v));
      }
    }
  }

 private:
  const toml::table& t_;
  std::string prefix_;
  std::set<std::string> seen_;
};

class Writer {
 public:
  explicit Writer(toml::table& t) : t_(t) {}
  void operator()(std::string_view key, double v) { t_.insert_or_assign(key, v); }
  void operator()(std::string_view key, int v) { t_.insert_or_assign(key, static_cast<std::int64_t>(v)); }
  void operator()(std::string_view key, long v) { t_.insert_or_assign(key, static_cast<std::int64_t>(v)); }
  void operator()(std::string_view key, std::size_t v) {
    t_.insert_or_assign(key, static_cast<std::int64_t>(v));
  }
  void operator()(std::string_view key, bool v) { t_.insert_or_assign(key, v); }
  void operator()(std::string_view key, const std::string& v) { t_.insert_or_assign(key, v); }
  void operator()(std::string_view key, const std::optional<double>& v) {
    if (v) t_.insert_or_assign(key, *v);
  }
  template <class T>
  void operator()(std::string_view key, const std::vector<T>& v) {
    toml::array a;
    for (const auto& x : v) {
      if constexpr (std::is_floating_point_v<T>) {
        a.push_back(static_cast<double>(x));
      } else {
        a.push_back(static_cast<std::int64_t>(x));
      }
    }
    t_.insert_or_assign(key, std::move(a));
  }

 private:
  toml::table& t_;
};

// One field list per struct drives both directions.

template <class IO, class S>
void grid_fields(IO& io, S& g) {
  io("d", g.d);
  io("n", g.n);
  io("L", g.L);
}

template <class IO, class S>
void solver_fields(IO& io, S& s) {
  io("dt", s.dt);
  io("safety", s.safety);
  io("capture_every", s.capture_every);
  io("t_final", s.t_final);
  io("keep_snapshots", s.keep_snapshots);
  io("record_diagnostics", s.record_diagnostics);
  io("s_list", s.s_list);
}

template <class IO, class S>
void initial_fields(IO& io, S& s) {
  io("kind", s.kind);
  io("A", s.A);
  io("sigma", s.sigma);
  io("modes", s.modes);
  io("N", s.N);
  io("delta", s.delta);
  io("s", s.s);
  io("T", s.T);
  io("path", s.path);
}

template <class IO, class S>
void picard_fields(IO& io, S& s) {
  io("J", s.J);
  io("Q", s.Q);
  io("T", s.T);
  io("norm_s", s.norm_s);
}

template <class IO, class S>
void xi1_fields(IO& io, S& s) {
  io("n_mode", s.n_mode);
  io("dxi", s.dxi);
  io("delta", s.delta);
  io("s", s.s);
  io("t_frac", s.t_frac);
}

template <class IO, class S>
void neg_fields(IO& io, S& s) {
  io("n_modes", s.n_modes);
  io("dxi", s.dxi);
  io("delta", s.delta);
  io("s", s.s);
  io("t_fracs", s.t_fracs);
  io("t_scaling_frac", s.t_scaling_frac);
  io("J", s.J);
  io("Q", s.Q);
  io("t_slope_tol", s.t_slope_tol);
  io("n_exponent_rel_tol", s.n_exponent_rel_tol);
  io("hs_exponent_tol", s.hs_exponent_tol);
  io("dominance_ratio", s.dominance_ratio);
}

template <class IO, class S>
void ip_fields(IO& io, S& s) {
  io("n_list", s.n_list);
  io("s_list", s.s_list);
  io("T", s.T);
  io("dxi", s.dxi);
  io("time_samples", s.time_samples);
  io("growth_rel_tol", s.growth_rel_tol);
  io("flat_tol", s.flat_tol);
  io("l2_doubling_tol", s.l2_doubling_tol);
}

template <class IO, class S>
void equip_fields(IO& io, S& s) {
  io("d", s.d);
  io("p", s.p);
  io("sigma", s.sigma);
  io("A", s.A);
  io("n", s.n);
  io("L", s.L);
  io("dt", s.dt);
  io("capture_every", s.capture_every);
  io("tail_limit", s.tail_limit);
  io("growth_target", s.growth_target);
  io("bound_constant_min", s.bound_constant_min);
}

template <class IO, class S>
void energy_fields(IO& io, S& s) {
  io("d", s.d);
  io("p", s.p);
  io("s", s.s);
  io("A", s.A);
  io("sigma_list", s.sigma_list);
  io("eps_list", s.eps_list);
  io("scaling_n", s.scaling_n);
  io("potential_sigma_list", s.potential_sigma_list);
  io("exponent_rel_tol", s.exponent_rel_tol);
  io("focusing_run", s.focusing_run);
  io("focus_sigma", s.focus_sigma);
  io("focus_n", s.focus_n);
  io("focus_L", s.focus_L);
  io("focus_dt", s.focus_dt);
  io("focus_tail_limit", s.focus_tail_limit);
}

template <class IO, class S>
void symmetry_fields(IO& io, S& s) {
  io("lambda_list", s.lambda_list);
  io("rescaling", s.rescaling);
  io("p", s.p);
  io("gamma", s.gamma);
  io("A", s.A);
  io("sigma", s.sigma);
  io("n", s.n);
  io("L", s.L);
  io("t1", s.t1);
  io("dt", s.dt);
  io("residual_factor", s.residual_factor);
  io("control_factor", s.control_factor);
  io("max_grid_points", s.max_grid_points);
}

template <class Fn, class S>
void read_section(Reader& parent, std::string_view key, S& s, Fn fields) {
  if (const toml::table* t = parent.table(key)) {
    Reader r(*t, parent.path(key));
    fields(r, s);
    r.finish();
  }
}

template <class Fn, class S>
void write_section(toml::table& parent, std::string_view key, const S& s, Fn fields) {
  toml::table t;
  Writer w(t);
  fields(w, s);
  parent.insert_or_assign(key, std::move(t));
}

void read_equation(Reader& root, GTConfig& eq) {
  const toml::table* t = root.table("equation");
  if (!t) return;
  Reader r(*t, "equation");
  r("d", eq.d);
  r("p", eq.p);
  r("gamma", eq.gamma);
  std::string variant = to_string(eq.variant);
  r("variant", variant);
  eq.variant = variant_from_string(variant);
  r("upper", eq.upper);
  r("points_per_panel", eq.points_per_panel);
  std::vector<double> nodes, weights;
  r("sigma_nodes", nodes);
  r("sigma_weights", weights);
  r.finish();
  if (!nodes.empty() || !weights.empty()) {
    if (nodes.size() != weights.size()) {
      throw ConfigError("equation: sigma_nodes and sigma_weights differ in length");
    }
    eq.sigma_quad = SigmaQuadrature::from_table(std::move(nodes), std::move(weights), eq.sigma_upper());
  }
}

void write_equation(toml::table& root, const GTConfig& eq) {
  toml::table t;
  Writer w(t);
  w("d", eq.d);
  w("p", eq.p);
  w("gamma", eq.gamma);
  w("variant", to_string(eq.variant));
  w("upper", eq.upper);
  w("points_per_panel", eq.points_per_panel);
  if (eq.sigma_quad && eq.sigma_quad->user_table) {
    w("sigma_nodes", eq.sigma_quad->nodes);
    w("sigma_weights", eq.sigma_quad->weights);
  }
  root.insert_or_assign("equation", std::move(t));
}

void apply_override(toml::table& root, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + kv + "' must have the form key=value");
  }
  std::string key = kv.substr(0, eq);
  const std::string value = kv.substr(eq + 1);
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    parts.push_back(key.substr(start, dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  toml::table* t = &root;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    auto* n = t->get(parts[i]);
    if (!n) {
      t->insert_or_assign(parts[i], toml::table{});
      n = t->get(parts[i]);
    }
    if (!n->is_table()) throw ConfigError("override '" + key + "': '" + parts[i] + "' is not a table");
    t = n->as_table();
  }
  toml::table parsed;
  try {
    parsed = toml::parse("v = " + value);
  } catch (const toml::parse_error&) {
    // bare words are taken as strings
    t->insert_or_assign(parts.back(), value);
    return;
  }
  parsed.at("v").visit([&](auto&& node) { t->insert_or_assign(parts.back(), node); });
}

}  // namespace

void RunConfig::validate() const {
  equation.validate();
  if (grid.d != equation.d) throw ConfigError("grid.d must equal equation.d");
  (void)grid.make();
  solver.validate();
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides,
                       const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": "
       << e.description();
    throw ConfigError(os.str());
  }
  for (const auto& kv : overrides) apply_override(root, kv);

  RunConfig cfg;
  Reader r(root, "");
  r("output_dir", cfg.output_dir);
  r("seed", cfg.seed);
  read_equation(r, cfg.equation);
  read_section(r, "grid", cfg.grid, [](auto& io, auto& s) { grid_fields(io, s); });
  read_section(r, "solver", cfg.solver, [](auto& io, auto& s) { solver_fields(io, s); });
  read_section(r, "initial", cfg.initial, [](auto& io, auto& s) { initial_fields(io, s); });
  read_section(r, "picard", cfg.picard, [](auto& io, auto& s) { picard_fields(io, s); });
  read_section(r, "xi1", cfg.xi1, [](auto& io, auto& s) { xi1_fields(io, s); });
  if (const toml::table* ex = r.table("experiment")) {
    Reader e(*ex, "experiment");
    read_section(e, "inflate_neg", cfg.inflate_neg, [](auto& io, auto& s) { neg_fields(io, s); });
    read_section(e, "ipscale", cfg.ipscale, [](auto& io, auto& s) { ip_fields(io, s); });
    read_section(e, "equipartition", cfg.equipartition, [](auto& io, auto& s) { equip_fields(io, s); });
    read_section(e, "inflate_energy", cfg.inflate_energy, [](auto& io, auto& s) { energy_fields(io, s); });
    read_section(e, "symmetry", cfg.symmetry, [](auto& io, auto& s) { symmetry_fields(io, s); });
    e.finish();
  }
  r.finish();
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides, path.string());
}

std::string to_toml(const RunConfig& cfg) {
  toml::table root;
  root.insert_or_assign("output_dir", cfg.output_dir);
  root.insert_or_assign("seed", static_cast<std::int64_t>(cfg.seed));
  write_equation(root, cfg.equation);
  write_section(root, "grid", cfg.grid, [](auto& io, auto& s) { grid_fields(io, s); });
  write_section(root, "solver", cfg.solver, [](auto& io, auto& s) { solver_fields(io, s); });
  write_section(root, "initial", cfg.initial, [](auto& io, auto& s) { initial_fields(io, s); });
  write_section(root, "picard", cfg.picard, [](auto& io, auto& s) { picard_fields(io, s); });
  write_section(root, "xi1", cfg.xi1, [](auto& io, auto& s) { xi1_fields(io, s); });
  toml::table ex;
  write_section(ex, "inflate_neg", cfg.inflate_neg, [](auto& io, auto& s) { neg_fields(io, s); });
  write_section(ex, "ipscale", cfg.ipscale, [](auto& io, auto& s) { ip_fields(io, s); });
  write_section(ex, "equipartition", cfg.equipartition, [](auto& io, auto& s) { equip_fields(io, s); });
  write_section(ex, "inflate_energy", cfg.inflate_energy, [](auto& io, auto& s) { energy_fields(io, s); });
  write_section(ex, "symmetry", cfg.symmetry, [](auto& io, auto& s) { symmetry_fields(io, s); });
  root.insert_or_assign("experiment", std::move(ex));
  std::ostringstream os;
  os << root << "\n";
  return os.str();
}

// ---- snapshots ------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'G', 'T', 'S', '1'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& out, T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    v = std::bit_cast<T>(bytes);
  }
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in, const std::string& what) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (in.gcount() != static_cast<std::streamsize>(sizeof(T))) {
    throw FormatError("snapshot truncated while reading " + what);
  }
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    v = std::bit_cast<T>(bytes);
  }
  return v;
}

}  // namespace

void write_snapshot(const Field& u, double t, const std::filesystem::path& path, double gamma, int p) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  const Grid& g = u.grid();
  out.write(kMagic, 4);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  for (int a = 0; a < g.dim(); ++a) put<std::uint64_t>(out, g.n(a));
  for (int a = 0; a < g.dim(); ++a) put<double>(out, g.length(a));
  put<double>(out, t);
  put<double>(out, gamma);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(p));
  for (const auto& v : u.values()) {
    put<double>(out, v.real());
    put<double>(out, v.imag());
  }
  if (!out) throw FormatError("write to '" + path.string() + "' failed");
}

Snapshot read_snapshot(const std::filesystem::path& path, const std::optional<Grid>& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open snapshot '" + path.string() + "'");
  char magic[4] = {};
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("'" + path.string() + "' is not a GTS1 snapshot (bad magic)");
  }
  const auto version = get<std::uint32_t>(in, "version");
  if (version != kVersion) {
    throw FormatError("unsupported snapshot version " + std::to_string(version));
  }
  const auto d = get<std::uint32_t>(in, "dimension");
  if (d < 1 || d > static_cast<std::uint32_t>(kMaxDim)) {
    throw FormatError("snapshot dimension " + std::to_string(d) + " out of range");
  }
  std::vector<std::size_t> n(d);
  std::vector<double> L(d);
  for (auto& v : n) v = static_cast<std::size_t>(get<std::uint64_t>(in, "dims"));
  for (auto& v : L) v = get<double>(in, "lengths");
  Snapshot s;
  s.t = get<double>(in, "time");
  s.gamma = get<double>(in, "gamma");
  s.p = static_cast<int>(get<std::uint32_t>(in, "p"));
  Grid g;
  try {
    g = Grid::make(static_cast<int>(d), n, L);
  } catch (const ConfigError& e) {
    throw FormatError(std::string("snapshot grid is invalid: ") + e.what());
  }
  if (expected && !(g == *expected)) {
    throw FormatError("snapshot dimension mismatch: file grid differs from the expected grid");
  }
  std::vector<cplx> values(g.size());
  for (auto& v : values) {
    const double re = get<double>(in, "samples");
    const double im = get<double>(in, "samples");
    v = cplx{re, im};
  }
  try {
    s.field = Field(g, std::move(values));
  } catch (const DomainError& e) {
    throw FormatError(std::string("snapshot samples are invalid: ") + e.what());
  }
  return s;
}

// ---- records ---------------------------------------------------------------------

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> record_columns(const std::vector<double>& s_list) {
  std::vector<std::string> cols{"t",        "mass",  "kinetic",     "potential",    "energy",
                                "variance", "vdot1", "equip_ratio", "boundary_frac"};
  for (double s : s_list) cols.push_back("hs_norm_" + format_double(s));
  return cols;
}

void write_records(const std::vector<DiagnosticsRecord>& records, const std::filesystem::path& path,
                   const std::vector<double>& s_list) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  const auto cols = record_columns(s_list);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& r : records) {
    const double fixed[] = {r.t,        r.mass,  r.kinetic,     r.potential,    r.energy,
                            r.variance, r.vdot1, r.equip_ratio, r.boundary_frac};
    for (std::size_t i = 0; i < std::size(fixed); ++i) out << (i ? "," : "") << format_double(fixed[i]);
    for (double s : s_list) {
      double v = std::numeric_limits<double>::quiet_NaN();
      for (const auto& [sv, norm] : r.hs_norms) {
        if (sv == s) v = norm;
      }
      out << "," << format_double(v);
    }
    out << "\n";
  }
  if (!out) throw FormatError("write to '" + path.string() + "' failed");
}

std::vector<std::vector<double>> read_records(const std::filesystem::path& path,
                                              std::vector<std::string>* header) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open records '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw FormatError("records file is empty");
  if (header) {
    header->clear();
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) header->push_back(c);
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) {
      double v = 0.0;
      if (c == "nan" || c == "-nan") {
        v = std::numeric_limits<double>::quiet_NaN();
      } else if (c == "inf") {
        v = std::numeric_limits<double>::infinity();
      } else if (c == "-inf") {
        v = -std::numeric_limits<double>::infinity();
      } else {
        const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
        if (res.ec != std::errc{}) throw FormatError("records: bad number '" + c + "'");
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void append_jsonl(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  out << j.dump() << "\n";
}

}  // namespace gt
