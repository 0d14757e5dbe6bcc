#include "utm/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "utm/error.hpp"
#include "utm/estimate_auditor.hpp"
#include "utm/global_relation.hpp"
#include "utm/linear_evaluator.hpp"
#include "utm/nonlinear_solver.hpp"
#include "utm/problem.hpp"

namespace utm {

using json = nlohmann::json;

std::string to_string(Mode m) {
  switch (m) {
    case Mode::linear: return "linear";
    case Mode::nonlinear: return "nonlinear";
    case Mode::reference: return "reference";
    case Mode::compare: return "compare";
    case Mode::constants: return "constants";
    case Mode::audit: return "audit";
    case Mode::params: return "params";
  }
  return "linear";
}

namespace {

const std::map<std::string, Mode> kModes = {{"linear", Mode::linear},       {"nonlinear", Mode::nonlinear},
                                            {"reference", Mode::reference}, {"compare", Mode::compare},
                                            {"constants", Mode::constants}, {"audit", Mode::audit},
                                            {"params", Mode::params}};
const std::vector<std::string> kAudits = {"dm", "calc", "theta4", "theta", "G", "bourgain"};
constexpr int kMaxBoundary = 8;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// shortest text that reads back to the same double
std::string fmt(double v) {
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <class T>
T parse_number(const std::string& s) {
  T v{};
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw ConfigError("malformed number '" + s + "'");
  return v;
}

double parse_real(const std::string& s) {
  // from_chars rejects a leading '+'
  return parse_number<double>(!s.empty() && s[0] == '+' ? s.substr(1) : s);
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("malformed boolean '" + s + "' (use true or false)");
}

struct Key {
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class M>
Key real_key(M member) {
  return {[member](RunConfig& c, const std::string& v) { c.*member = parse_real(v); },
          [member](const RunConfig& c) { return fmt(c.*member); }};
}
template <class M>
Key int_key(M member) {
  return {[member](RunConfig& c, const std::string& v) { c.*member = parse_number<int>(v); },
          [member](const RunConfig& c) { return std::to_string(c.*member); }};
}
template <class M>
Key bool_key(M member) {
  return {[member](RunConfig& c, const std::string& v) { c.*member = parse_bool(v); },
          [member](const RunConfig& c) { return std::string(c.*member ? "true" : "false"); }};
}
template <class M>
Key handle_key(M member) {
  return {[member](RunConfig& c, const std::string& v) { c.*member = canonical_handle(v); },
          [member](const RunConfig& c) { return c.*member; }};
}
template <class Sub, class M>
Key nested_real(Sub sub, M member) {
  return {[sub, member](RunConfig& c, const std::string& v) { (c.*sub).*member = parse_real(v); },
          [sub, member](const RunConfig& c) { return fmt((c.*sub).*member); }};
}
template <class Sub, class M>
Key nested_int(Sub sub, M member) {
  return {[sub, member](RunConfig& c, const std::string& v) { (c.*sub).*member = parse_number<int>(v); },
          [sub, member](const RunConfig& c) { return std::to_string((c.*sub).*member); }};
}

// emission order is the order of this table
const std::vector<std::pair<std::string, Key>>& keys() {
  static const std::vector<std::pair<std::string, Key>> table = [] {
    std::vector<std::pair<std::string, Key>> t;
    t.push_back({"mode",
                 {[](RunConfig& c, const std::string& v) {
                    auto it = kModes.find(v);
                    if (it == kModes.end())
                      throw ConfigError("unknown mode '" + v +
                                        "' (linear, nonlinear, reference, compare, constants, audit, params)");
                    c.mode = it->second;
                  },
                  [](const RunConfig& c) { return to_string(c.mode); }}});
    t.push_back({"m", int_key(&RunConfig::m)});
    t.push_back({"T", real_key(&RunConfig::T)});
    t.push_back({"s", real_key(&RunConfig::s)});
    t.push_back({"nonlinear", bool_key(&RunConfig::nonlinear)});
    t.push_back({"u0", handle_key(&RunConfig::u0)});
    for (int l = 0; l < kMaxBoundary; ++l)
      t.push_back({"g" + std::to_string(l),
                   {[l](RunConfig& c, const std::string& v) {
                      if (static_cast<int>(c.g.size()) <= l) c.g.resize(l + 1, "zero");
                      c.g[l] = canonical_handle(v);
                    },
                    [l](const RunConfig& c) { return l < static_cast<int>(c.g.size()) ? c.g[l] : std::string(); }}});
    t.push_back({"f_space", handle_key(&RunConfig::f_space)});
    t.push_back({"f_time", handle_key(&RunConfig::f_time)});
    t.push_back({"x_min", real_key(&RunConfig::x_min)});
    t.push_back({"x_max", real_key(&RunConfig::x_max)});
    t.push_back({"nx", int_key(&RunConfig::nx)});
    t.push_back({"nt", int_key(&RunConfig::nt)});
    using Q = QuadratureConfig;
    const auto q = &RunConfig::quad;
    t.push_back({"truncation_radius", nested_real(q, &Q::truncation_radius)});
    t.push_back({"panels", nested_int(q, &Q::panels)});
    t.push_back({"oscillatory_rule",
                 {[](RunConfig& c, const std::string& v) {
                    if (v == "filon")
                      c.quad.oscillatory_rule = OscillatoryRule::filon_linear_phase;
                    else if (v == "dense")
                      c.quad.oscillatory_rule = OscillatoryRule::dense_trapezoid;
                    else
                      throw ConfigError("oscillatory_rule must be filon or dense");
                  },
                  [](const RunConfig& c) {
                    return std::string(c.quad.oscillatory_rule == OscillatoryRule::filon_linear_phase ? "filon"
                                                                                                       : "dense");
                  }}});
    t.push_back({"rel_tol", nested_real(q, &Q::rel_tol)});
    t.push_back({"time_subpanels", nested_int(q, &Q::time_subpanels)});
    t.push_back({"contour_radius", nested_real(q, &Q::contour_radius)});
    t.push_back({"contour_panels", nested_int(q, &Q::contour_panels)});
    t.push_back({"gauss_order", nested_int(q, &Q::gauss_order)});
    t.push_back({"pole_terms", nested_int(q, &Q::pole_terms)});
    t.push_back({"model_shift", nested_real(q, &Q::model_shift)});
    t.push_back({"model_terms", nested_int(q, &Q::model_terms)});
    const auto f = &RunConfig::fd;
    t.push_back({"fd_L", nested_real(f, &FDConfig::L)});
    t.push_back({"fd_nx", nested_int(f, &FDConfig::Nx)});
    t.push_back({"fd_nt", nested_int(f, &FDConfig::Nt)});
    t.push_back({"fd_theta", nested_real(f, &FDConfig::theta)});
    t.push_back({"max_iter", int_key(&RunConfig::max_iter)});
    t.push_back({"tol", real_key(&RunConfig::tol)});
    t.push_back({"audit",
                 {[](RunConfig& c, const std::string& v) {
                    if (std::find(kAudits.begin(), kAudits.end(), v) == kAudits.end())
                      throw ConfigError("unknown audit '" + v + "' (dm, calc, theta4, theta, G, bourgain)");
                    c.audit = v;
                  },
                  [](const RunConfig& c) { return c.audit; }}});
    t.push_back({"audit_which", int_key(&RunConfig::audit_which)});
    t.push_back({"audit_weight",
                 {[](RunConfig& c, const std::string& v) {
                    if (v != "xi" && v != "xi1") throw ConfigError("audit_weight must be xi or xi1");
                    c.audit_weight = v;
                  },
                  [](const RunConfig& c) { return c.audit_weight; }}});
    t.push_back({"audit_samples", int_key(&RunConfig::audit_samples)});
    t.push_back({"audit_radius", real_key(&RunConfig::audit_radius)});
    t.push_back({"audit_sweep", bool_key(&RunConfig::audit_sweep)});
    t.push_back({"audit_b", real_key(&RunConfig::audit_b)});
    t.push_back({"audit_b1", real_key(&RunConfig::audit_b1)});
    t.push_back({"audit_alpha1", real_key(&RunConfig::audit_alpha1)});
    t.push_back({"audit_l", int_key(&RunConfig::audit_l)});
    t.push_back({"audit_tau_max", real_key(&RunConfig::audit_tau_max)});
    t.push_back({"audit_tau_points", int_key(&RunConfig::audit_tau_points)});
    t.push_back({"seed",
                 {[](RunConfig& c, const std::string& v) { c.seed = parse_number<std::uint64_t>(v); },
                  [](const RunConfig& c) { return std::to_string(c.seed); }}});
    t.push_back({"out",
                 {[](RunConfig& c, const std::string& v) {
                    if (v.empty()) throw ConfigError("out must not be empty");
                    c.out = v;
                  },
                  [](const RunConfig& c) { return c.out; }}});
    return t;
  }();
  return table;
}

const Key* find_key(const std::string& name) {
  for (const auto& [k, v] : keys())
    if (k == name) return &v;
  return nullptr;
}

bool solve_mode(Mode m) {
  return m == Mode::linear || m == Mode::nonlinear || m == Mode::reference || m == Mode::compare;
}

}  // namespace

// --- handles ------------------------------------------------------------------------------

DataHandle parse_handle(const std::string& raw) {
  const std::string text = trim(raw);
  if (text == "zero" || text.empty()) return DataHandle();
  if (text.rfind("csv:", 0) == 0) {
    const std::string path = trim(text.substr(4));
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open data file '" + path + "'");
    std::vector<double> x, v;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw ConfigError("data file '" + path + "': expected two columns");
      try {
        x.push_back(parse_real(trim(line.substr(0, comma))));
        v.push_back(parse_real(trim(line.substr(comma + 1))));
      } catch (const ConfigError&) {
        if (!first) throw;
      }
      first = false;
    }
    return DataHandle::sampled(std::move(x), std::move(v));
  }
  if (text.rfind("builtin:", 0) != 0) throw ConfigError("handle must be zero, builtin:name(...) or csv:path");
  std::string body = text.substr(8);
  std::map<std::string, double> params;
  std::string name = body;
  const auto open = body.find('(');
  if (open != std::string::npos) {
    if (body.back() != ')') throw ConfigError("unbalanced parentheses in '" + text + "'");
    name = body.substr(0, open);
    std::stringstream args(body.substr(open + 1, body.size() - open - 2));
    std::string item;
    while (std::getline(args, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("parameter '" + item + "' is not key=value");
      params[trim(item.substr(0, eq))] = parse_real(trim(item.substr(eq + 1)));
    }
  }
  return DataHandle::builtin(trim(name), params);
}

std::string canonical_handle(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.rfind("csv:", 0) == 0) {
    parse_handle(text);
    return "csv:" + trim(text.substr(4));
  }
  const DataHandle h = parse_handle(text);
  if (h.name() == "zero") return "zero";
  return h.describe();
}

// --- config text --------------------------------------------------------------------------

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::vector<std::string> errors;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    auto err = [&](const std::string& msg) { errors.push_back("line " + std::to_string(lineno) + ": " + msg); };
    if (eq == std::string::npos) {
      err("expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    const Key* k = find_key(key);
    if (!k) {
      err("unknown key '" + key + "'");
      continue;
    }
    if (seen.count(key)) {
      err("duplicate key '" + key + "' (first on line " + std::to_string(seen[key]) + ")");
      continue;
    }
    seen[key] = lineno;
    try {
      k->set(c, value);
    } catch (const Error& e) {
      err(key + ": " + e.what());
    }
  }
  auto at = [&](const std::string& key) { return seen.count(key) ? "line " + std::to_string(seen[key]) + ": " : ""; };

  if (!seen.count("mode")) errors.push_back("missing required key 'mode'");
  if (c.m < 3 || c.m % 2 == 0) {
    errors.push_back(at("m") + (c.m % 2 == 0 ? "m must be odd" : "m must be an odd integer >= 3"));
  } else {
    const int j = (c.m - 1) / 2;
    for (int l = j; l < static_cast<int>(c.g.size()); ++l)
      if (seen.count("g" + std::to_string(l)))
        errors.push_back(at("g" + std::to_string(l)) + "g" + std::to_string(l) + " given but m = " +
                         std::to_string(c.m) + " takes " + std::to_string(j) + " boundary data");
    c.g.resize(j, "zero");
    try {
      c.fd.validate(c.m);
    } catch (const Error& e) {
      errors.push_back(e.what());
    }
  }
  if (!(c.T > 0)) errors.push_back(at("T") + "T must be positive");
  if (!(c.x_max > c.x_min) || c.x_min < 0) errors.push_back("grid: need 0 <= x_min < x_max");
  if (c.nx < 2 || c.nt < 2) errors.push_back("grid: nx and nt must be at least 2");
  try {
    c.quad.validate();
  } catch (const Error& e) {
    errors.push_back(std::string("quadrature: ") + e.what());
  }
  if (c.max_iter < 1 || !(c.tol > 0)) errors.push_back("picard: need max_iter >= 1 and tol > 0");
  if (solve_mode(c.mode) && !seen.count("u0"))
    errors.push_back("mode " + to_string(c.mode) + " requires key 'u0'");
  if (c.mode == Mode::audit && c.audit.empty()) errors.push_back("mode audit requires key 'audit'");
  if (c.mode == Mode::audit && c.audit_samples < 1000) errors.push_back(at("audit_samples") + "audit_samples must be >= 1000");

  if (!errors.empty()) {
    auto line_of = [](const std::string& e) {
      return e.rfind("line ", 0) == 0 ? std::atoi(e.c_str() + 5) : std::numeric_limits<int>::max();
    };
    std::stable_sort(errors.begin(), errors.end(),
                     [&](const std::string& a, const std::string& b) { return line_of(a) < line_of(b); });
    std::string msg;
    for (const auto& e : errors) msg += (msg.empty() ? "" : "\n") + e;
    throw ConfigError(msg);
  }
  return c;
}

std::string emit_config(const RunConfig& c) {
  std::string s;
  const int j = (c.m - 1) / 2;
  for (const auto& [k, key] : keys()) {
    if (k.size() >= 2 && k[0] == 'g' && std::isdigit(static_cast<unsigned char>(k[1]))) {
      if (std::stoi(k.substr(1)) >= j) continue;
    }
    if (k == "audit" && c.audit.empty()) continue;
    s += k + " = " + key.get(c) + "\n";
  }
  return s;
}

ProblemSpec make_spec(const RunConfig& c) {
  ProblemSpec p;
  p.m = c.m;
  p.T = c.T;
  p.s = c.s;
  p.nonlinear = c.nonlinear || c.mode == Mode::nonlinear;
  p.u0 = parse_handle(c.u0);
  for (const auto& g : c.g) p.g.push_back(parse_handle(g));
  const DataHandle fs = parse_handle(c.f_space), ft = parse_handle(c.f_time);
  if (!fs.is_zero() && !ft.is_zero()) p.f = ForcingHandle::separable(fs, ft);
  return p;
}

Grid make_grid(const RunConfig& c) { return Grid::uniform(c.x_min, c.x_max, c.nx, 0.0, c.T, c.nt); }

// --- fields -------------------------------------------------------------------------------

void write_field_csv(const SolutionField& f, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw ConfigError("cannot write '" + path + "'");
  std::fprintf(fp, "x,t,re_u,im_u\n");
  for (std::size_t k = 0; k < f.nt(); ++k)
    for (std::size_t i = 0; i < f.nx(); ++i) {
      const cd v = f.at(i, k);
      std::fprintf(fp, "%.12e,%.12e,%.12e,%.12e\n", f.x[i], f.t[k], v.real(), v.imag());
    }
  std::fclose(fp);
}

SolutionField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (trim(line) != "x,t,re_u,im_u") throw ConfigError("'" + path + "': unexpected header");
  SolutionField f;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    double v[4];
    std::stringstream ss(line);
    std::string cell;
    for (int q = 0; q < 4; ++q) {
      if (!std::getline(ss, cell, ',')) throw ConfigError("'" + path + "': short row");
      v[q] = parse_real(trim(cell));
    }
    if (f.t.empty() || v[1] != f.t.back()) f.t.push_back(v[1]);
    if (f.t.size() == 1) f.x.push_back(v[0]);
    f.values.emplace_back(v[2], v[3]);
  }
  if (f.values.size() != f.x.size() * f.t.size()) throw ConfigError("'" + path + "': rows are not a full grid");
  return f;
}

// --- run ----------------------------------------------------------------------------------

namespace {

json field_summary(const SolutionField& f) {
  return {{"nx", f.nx()},
          {"nt", f.nt()},
          {"l2_norm", l2_norm(f)},
          {"max_abs", f.max_abs()},
          {"max_imag", f.max_imag()},
          {"provenance", to_string(f.provenance)}};
}

json audit_json(const AuditReport& r) {
  return {{"inequality", r.inequality_id},
          {"parameters", r.parameters},
          {"samples", r.samples},
          {"value", r.value},
          {"worst_location", r.worst_location},
          {"stability_delta", r.stability_delta},
          {"growth_exponent", r.growth_exponent},
          {"growth_flagged", r.growth_flagged},
          {"bounded", r.bounded},
          {"seed", r.seed},
          {"note", r.note}};
}

json config_json(const RunConfig& c) {
  json j = json::object();
  std::istringstream in(emit_config(c));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    j[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return j;
}

void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p);
  if (!out) throw ConfigError("cannot write '" + p.string() + "'");
  out << s;
}

void add_pde_residual(json& rep, const SolutionField& f, int m) {
  try {
    rep["pde_residual"] = pde_residual(f, m);
  } catch (const Error& e) {
    rep["pde_residual"] = nullptr;
    rep["pde_residual_note"] = e.what();
  }
}

SolutionField solve_utm(const RunConfig& c, const ValidatedSpec& v, json& rep) {
  const auto consts = solve_constants(c.m);
  const Grid g = make_grid(c);
  if (!v.spec.nonlinear) {
    LinearEvaluator ev(v, consts, g, c.quad);
    rep["warnings"] = ev.warnings();
    return ev.evaluate();
  }
  auto r = picard_solve(v, consts, g, c.quad, c.max_iter, c.tol, false);
  const auto cr = contraction_report(r.state);
  rep["picard"] = {{"iterations", r.state.diff_norms.size()},
                   {"converged", r.state.converged},
                   {"diff_norms", r.state.diff_norms},
                   {"contraction_ratios", r.state.contraction_ratios},
                   {"rate", cr.rate},
                   {"diverging", cr.diverging},
                   {"note", cr.note}};
  rep["warnings"] = r.state.warnings;
  return r.field;
}

json run_audit(const RunConfig& c) {
  AuditOptions o;
  o.samples = c.audit_samples;
  o.seed = c.seed;
  o.radius = c.audit_radius;
  o.sweep = c.audit_sweep;
  const ThetaParams tp{c.m, c.audit_b, c.audit_b1, c.audit_alpha1};
  if (c.audit == "dm")
    return audit_json(audit_dm_bound(c.m, c.audit_weight == "xi" ? DmWeight::xi : DmWeight::xi1, o));
  if (c.audit == "calc") return audit_json(audit_calc_inequality(c.audit_which, o));
  if (c.audit == "theta4") return audit_json(audit_theta4(tp, o));
  if (c.audit == "theta") return audit_json(audit_microlocal_theta(c.audit_which, tp, o));
  if (c.audit == "G")
    return audit_json(
        audit_G(c.audit_which, c.s, c.audit_b, c.m, c.audit_l, log_tau_grid(c.audit_tau_max, c.audit_tau_points)));
  // bourgain: norm of the linear field of the configured problem
  const auto v = validated(make_spec(c));
  const auto f = evaluate_linear(v, solve_constants(c.m), make_grid(c), c.quad);
  return {{"inequality", "bourgain"},
          {"s", c.s},
          {"b", c.audit_b},
          {"alpha", c.audit_alpha1},
          {"norm", discrete_bourgain_norm(f, c.m, c.s, c.audit_b, c.audit_alpha1)},
          {"y_norm", discrete_bourgain_norm(f, c.m, c.s, c.audit_b, c.audit_alpha1, true)}};
}

int run_checked(const RunConfig& c) {
  namespace fs = std::filesystem;
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(c.out);
  const fs::path dir(c.out);
  json rep;
  rep["mode"] = to_string(c.mode);
  rep["config"] = config_json(c);

  switch (c.mode) {
    case Mode::linear:
    case Mode::nonlinear:
    case Mode::reference:
    case Mode::compare: {
      const auto v = validated(make_spec(c));
      json compat = json::array();
      for (const auto& e : compatibility_check(v))
        compat.push_back({{"l", e.ell}, {"required", e.required}, {"satisfied", e.satisfied}, {"residual", e.residual}});
      rep["compatibility"] = compat;
      rep["spec_warnings"] = v.warnings;
      if (c.mode == Mode::reference) {
        const auto f = solve_fd(v, c.fd, make_grid(c));
        rep["field"] = field_summary(f);
        add_pde_residual(rep, f, c.m);
        write_field_csv(f, (dir / "field.csv").string());
        break;
      }
      const auto u = solve_utm(c, v, rep);
      rep["field"] = field_summary(u);
      add_pde_residual(rep, u, c.m);
      write_field_csv(u, (dir / "field.csv").string());
      if (c.mode == Mode::compare) {
        const auto ref = solve_fd(v, c.fd, make_grid(c));
        rep["reference"] = field_summary(ref);
        rep["relative_l2"] = relative_l2(u, ref);
        write_field_csv(ref, (dir / "field_fd.csv").string());
      }
      break;
    }
    case Mode::constants: {
      const auto k = solve_constants(c.m);
      std::string txt;
      char buf[160];
      for (std::size_t p = 0; p < k.C.size(); ++p) {
        for (std::size_t n = 0; n < k.C[p].size(); ++n) {
          std::snprintf(buf, sizeof buf, "C %zu %zu %.15e %.15e\n", p + 1, n + 1, k.C[p][n].real(), k.C[p][n].imag());
          txt += buf;
        }
        for (std::size_t l = 0; l < k.Cprime[p].size(); ++l) {
          std::snprintf(buf, sizeof buf, "Cprime %zu %zu %.15e %.15e\n", p + 1, l, k.Cprime[p][l].real(),
                        k.Cprime[p][l].imag());
          txt += buf;
        }
      }
      write_text(dir / "constants.txt", txt);
      rep["condition_numbers"] = k.condition_numbers;
      rep["residual"] = residual_check(k, default_samples(c.m));
      break;
    }
    case Mode::audit:
      rep["audit"] = run_audit(c);
      break;
    case Mode::params: {
      const auto w = parameter_window(c.s, c.m);
      rep["window"] = {{"s", w.s}, {"beta", w.beta}, {"b", w.b}, {"b1", w.b1}, {"alpha", w.alpha}, {"alpha1", w.alpha1}};
      break;
    }
  }
  write_text(dir / "report.json", rep.dump(2) + "\n");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_text(dir / "timings.json", json{{"total_seconds", secs}}.dump(2) + "\n");
  return 0;
}

}  // namespace

int run(const RunConfig& c, std::ostream& err) {
  try {
    return run_checked(c);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace utm
