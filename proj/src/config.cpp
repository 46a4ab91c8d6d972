#include "kglab/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "kglab/errors.hpp"

namespace kg {

namespace {

using json = nlohmann::json;

// A JSON object together with its dotted path, for diagnostics.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string key(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }
  bool has(const std::string& k) const { return j_.contains(k) && !j_.at(k).is_null(); }

  void allow_only(std::initializer_list<const char*> keys) const {
    for (const auto& [k, _] : j_.items()) {
      bool known = false;
      for (const char* allowed : keys) known = known || k == allowed;
      if (!known) throw ConfigError(key(k), "unknown key");
    }
  }

  Node child(const std::string& k) const {
    if (!j_.contains(k)) throw ConfigError(key(k), "missing required section");
    return Node(j_.at(k), key(k));
  }

  double number(const std::string& k) const {
    if (!j_.contains(k)) throw ConfigError(key(k), "missing required number");
    const json& v = j_.at(k);
    if (!v.is_number()) throw ConfigError(key(k), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(key(k), "must be finite");
    return d;
  }
  double number(const std::string& k, double fallback) const { return has(k) ? number(k) : fallback; }

  std::size_t count(const std::string& k, std::size_t fallback) const {
    if (!has(k)) return fallback;
    const json& v = j_.at(k);
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(key(k), "expected a non-negative integer");
    return v.get<std::size_t>();
  }

  std::string text(const std::string& k) const {
    if (!j_.contains(k)) throw ConfigError(key(k), "missing required string");
    if (!j_.at(k).is_string()) throw ConfigError(key(k), "expected a string");
    return j_.at(k).get<std::string>();
  }
  std::string text(const std::string& k, const std::string& fallback) const { return has(k) ? text(k) : fallback; }

  const json& raw(const std::string& k) const { return j_.at(k); }

 private:
  const json& j_;
  std::string path_;
};

SmoothProfile parse_profile(const Node& n) {
  const std::string name = n.text("profile");
  try {
    if (name == "zero") {
      n.allow_only({"profile"});
      return profiles::zero();
    }
    if (name == "constant") {
      n.allow_only({"profile", "value"});
      return profiles::constant(n.number("value"));
    }
    if (name == "linear") {
      n.allow_only({"profile", "slope", "offset"});
      return profiles::linear(n.number("slope"), n.number("offset", 0.0));
    }
    if (name == "gaussian") {
      n.allow_only({"profile", "amplitude", "width", "center"});
      if (n.has("width") && !(n.number("width") > 0.0)) throw ConfigError(n.key("width"), "must be positive");
      return profiles::gaussian(n.number("amplitude", 1.0), n.number("width", 1.0), n.number("center", 0.0));
    }
    if (name == "sine") {
      n.allow_only({"profile", "amplitude", "frequency", "phase"});
      return profiles::sine(n.number("amplitude", 1.0), n.number("frequency", 1.0), n.number("phase", 0.0));
    }
  } catch (const DomainError& e) {
    throw ConfigError(n.key("profile"), e.what());
  }
  throw ConfigError(n.key("profile"), "unknown profile '" + name + "'");
}

LambdaProfile parse_lambda(const Node& c) {
  const Node n = c.child("lambda");
  const std::string name = n.text("profile");
  const bool has_on = c.has("t_on");
  const double t_on = has_on ? c.number("t_on") : 0.0;
  if (name == "ramp") {
    n.allow_only({"profile", "a"});
    const double a = n.number("a");
    if (!(a > 0.0)) throw ConfigError(n.key("a"), "must be positive (got " + std::to_string(a) + ")");
    return LambdaProfile::ramp(a, t_on);
  }
  if (name == "zero") {
    n.allow_only({"profile"});
    return LambdaProfile::off();
  }
  SmoothProfile p = parse_profile(n);
  return has_on ? LambdaProfile(std::move(p), t_on) : LambdaProfile::always_on(std::move(p));
}

Direction parse_direction(const Node& c, bool allow_parity) {
  const std::string d = c.text("direction", "+x");
  if (d == "+x") return Direction::kPlusX;
  if (d == "-x") return Direction::kMinusX;
  if (allow_parity && d == "even") return Direction::kEven;
  if (allow_parity && d == "odd") return Direction::kOdd;
  throw ConfigError(c.key("direction"), "unsupported direction '" + d + "'");
}

cplx parse_complex(const Node& c, const std::string& k) {
  if (!c.has(k)) return 0.0;
  const json& v = c.raw(k);
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(c.key(k), "expected a number or [re, im]");
}

template <class Scattering>
Scattering parse_scattering(const Node& c, bool allow_parity) {
  c.allow_only({"type", "k", "lambda", "t_on", "t1", "initial", "direction"});
  Scattering s;
  s.k = c.number("k");
  if (s.k == 0.0) throw ConfigError(c.key("k"), "must be non-zero");
  s.lam = parse_lambda(c);
  if (!s.lam.continuity_checked())
    throw ConfigError(c.key("lambda"), "lambda must vanish at t_on (continuous switch-on)");
  if (c.has("t1")) {
    s.t1 = c.number("t1");
  } else if (s.lam.has_finite_switch_on()) {
    s.t1 = s.lam.switch_on();
  } else if (!s.lam.identically_zero()) {
    throw ConfigError(c.key("t1"), "required when lambda has no t_on");
  }
  s.initial = parse_complex(c, "initial");
  s.direction = parse_direction(c, allow_parity);
  return s;
}

CaseSpec parse_case(const Node& c) {
  const std::string type = c.text("type");
  CaseSpec spec = DeltaCase{};
  if (type == "A") {
    c.allow_only({"type", "chi1", "chi2", "p", "m", "branch"});
    const double m = c.number("m");
    if (!(m > 0.0)) throw ConfigError(c.key("m"), "case A needs m > 0");
    const double branch = c.number("branch", 1.0);
    if (branch != 1.0 && branch != -1.0) throw ConfigError(c.key("branch"), "must be +1 or -1");
    spec = ChiCase{parse_profile(c.child("chi1")), parse_profile(c.child("chi2")),
                   dispersion(c.number("p"), m, static_cast<int>(branch))};
  } else if (type == "B") {
    spec = parse_scattering<DeltaCase>(c, true);
  } else if (type == "C") {
    spec = parse_scattering<StepElectricCase>(c, false);
  } else {
    throw ConfigError(c.key("type"), "expected \"A\", \"B\" or \"C\"");
  }
  try {
    validate(spec);
  } catch (const DomainError& e) {
    throw ConfigError(c.key("type"), e.what());
  }
  return spec;
}

}  // namespace

Grid1D make_grid(const GridConfig& grid, const TimeConfig& time, std::size_t nx) {
  const double duration = time.t_end - time.t_start;
  if (duration > 0.0) return Grid1D::fitted(grid.x_min, grid.x_max, nx, duration, grid.courant);
  return Grid1D::with_courant(grid.x_min, grid.x_max, nx, grid.courant);
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    // nlohmann reports "line L, column C" inside what()
    throw ConfigError("", std::string("syntax error: ") + e.what());
  }
  const Node root(doc, "");
  root.allow_only({"case", "grid", "time", "exact", "verify", "convergence", "outputs"});

  RunConfig cfg;
  cfg.case_spec = parse_case(root.child("case"));

  {
    const Node g = root.child("grid");
    g.allow_only({"x_min", "x_max", "nx", "courant"});
    cfg.grid.x_min = g.number("x_min");
    cfg.grid.x_max = g.number("x_max");
    cfg.grid.nx = g.count("nx", cfg.grid.nx);
    cfg.grid.courant = g.number("courant", cfg.grid.courant);
    if (!(cfg.grid.x_max > cfg.grid.x_min)) throw ConfigError(g.key("x_max"), "must exceed x_min");
    if (cfg.grid.nx < 4) throw ConfigError(g.key("nx"), "must be at least 4");
    if (!(cfg.grid.courant > 0.0 && cfg.grid.courant <= 1.0))
      throw ConfigError(g.key("courant"), "must lie in (0, 1] for stability");
  }
  {
    const Node t = root.child("time");
    t.allow_only({"t_start", "t_end", "sample_every"});
    cfg.time.t_start = t.number("t_start");
    cfg.time.t_end = t.number("t_end");
    cfg.time.sample_every = t.count("sample_every", 1);
    if (cfg.time.t_end < cfg.time.t_start) throw ConfigError(t.key("t_end"), "must not precede t_start");
    if (cfg.time.sample_every == 0) throw ConfigError(t.key("sample_every"), "must be at least 1");
  }
  if (root.has("exact")) {
    const Node e = root.child("exact");
    e.allow_only({"times"});
    if (e.has("times")) {
      const json& ts = e.raw("times");
      if (!ts.is_array()) throw ConfigError(e.key("times"), "expected an array of numbers");
      for (const auto& v : ts) {
        if (!v.is_number()) throw ConfigError(e.key("times"), "expected an array of numbers");
        cfg.exact_times.push_back(v.get<double>());
      }
    }
  }
  if (cfg.exact_times.empty()) cfg.exact_times = {cfg.time.t_end};

  if (root.has("verify")) {
    const Node v = root.child("verify");
    v.allow_only({"suites", "box"});
    if (v.has("suites")) {
      const json& s = v.raw("suites");
      if (!s.is_array()) throw ConfigError(v.key("suites"), "expected an array of suite names");
      std::vector<std::string> names;
      for (const auto& x : s) {
        if (!x.is_string()) throw ConfigError(v.key("suites"), "expected an array of suite names");
        const auto name = x.get<std::string>();
        if (name != "residual" && name != "oracle" && name != "jump" && name != "parity")
          throw ConfigError(v.key("suites"), "unknown suite '" + name + "'");
        names.push_back(name);
      }
      cfg.suites = std::move(names);
    }
    if (v.has("box")) {
      const Node b = v.child("box");
      b.allow_only({"x_lo", "x_hi", "t_lo", "t_hi", "nx", "nt"});
      SampleBox box;
      box.x_lo = b.number("x_lo");
      box.x_hi = b.number("x_hi");
      box.t_lo = b.number("t_lo");
      box.t_hi = b.number("t_hi");
      box.nx = b.count("nx", 50);
      box.nt = b.count("nt", 50);
      if (box.nx == 0 || box.nt == 0) throw ConfigError(b.key("nx"), "sample counts must be positive");
      cfg.residual_box = box;
    }
  }
  if (root.has("convergence")) {
    const Node c = root.child("convergence");
    c.allow_only({"levels", "band"});
    if (c.has("levels")) {
      const json& l = c.raw("levels");
      if (!l.is_array()) throw ConfigError(c.key("levels"), "expected an array of nx values");
      cfg.levels.clear();
      for (const auto& x : l) {
        if (!x.is_number_integer() || x.get<long long>() < 4)
          throw ConfigError(c.key("levels"), "entries must be integers >= 4");
        cfg.levels.push_back(x.get<std::size_t>());
      }
      for (std::size_t i = 1; i < cfg.levels.size(); ++i)
        if (cfg.levels[i] != 2 * cfg.levels[i - 1]) throw ConfigError(c.key("levels"), "each level must double nx");
    }
    if (c.has("band")) {
      const json& b = c.raw("band");
      if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
        throw ConfigError(c.key("band"), "expected [lo, hi]");
      cfg.band = OrderBand{b[0].get<double>(), b[1].get<double>()};
    }
  }
  if (root.has("outputs")) {
    const Node o = root.child("outputs");
    o.allow_only({"csv", "svg"});
    cfg.csv = o.text("csv", "");
    cfg.svg = o.text("svg", "");
  }

  // Case-dependent grid preconditions, checked before any computation.
  const Grid1D g = make_grid(cfg.grid, cfg.time, cfg.grid.nx);
  if (std::holds_alternative<DeltaCase>(cfg.case_spec) && !g.origin_index())
    throw ConfigError("grid.x_min", "delta case needs x = 0 on a grid node (x_min / dx a negative integer)");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace kg
