#include "tclab/cli.hpp"

#include "tclab/cohom1.hpp"
#include "tclab/curvature.hpp"
#include "tclab/hermitian.hpp"
#include "tclab/liealg.hpp"
#include "tclab/polytope.hpp"
#include "tclab/potential.hpp"
#include "tclab/torus4d.hpp"

#include "tclab/parallel.hpp"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace tclab {

using json = nlohmann::ordered_json;

namespace {

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail_input(const std::string& msg) { throw CliError{2, msg}; }
[[noreturn]] void fail_math(const std::string& msg) { throw CliError{1, msg}; }

uint64_t fnv1a(const std::string& data, uint64_t seed = 1469598103934665603ull) {
  uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

Rational parse_rat(const std::string& s) {
  auto q = rat_parse(trim(s));
  if (!q) fail_input("cannot parse rational '" + s + "'");
  return *q;
}

// "d=2,b=1/2,a=1;d=2,b=-1/2,a=1"
FiberData parse_fiber(const std::string& text) {
  FiberData w;
  for (const auto& part : split(text, ';')) {
    FiberEntry entry;
    bool have_d = false, have_b = false, have_a = false;
    for (const auto& kv : split(part, ',')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) fail_input("bad fiber entry '" + part + "'");
      std::string key = trim(kv.substr(0, eq)), value = trim(kv.substr(eq + 1));
      if (key == "d") {
        entry.d = std::atoi(value.c_str());
        have_d = true;
      } else if (key == "b") {
        entry.b = parse_rat(value);
        have_b = true;
      } else if (key == "a") {
        entry.a = parse_rat(value);
        have_a = true;
      } else {
        fail_input("unknown fiber key '" + key + "'");
      }
    }
    if (!have_d || !have_b || !have_a) fail_input("fiber entry needs d, b, a: '" + part + "'");
    w.push_back(entry);
  }
  return w;
}

// "d=2,quad(e,l,t),b=1/2;d=2,lin(b,a)"
FiberProfile parse_profile(const std::string& text) {
  FiberProfile profile;
  for (const auto& part : split(text, ';')) {
    ProfileEntry entry;
    bool have_shape = false;
    std::string rest = part;
    // tokenize by commas not inside parentheses
    std::vector<std::string> tokens;
    int depth = 0;
    std::string cur;
    for (char c : rest) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        tokens.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    tokens.push_back(cur);
    for (const auto& raw : tokens) {
      std::string tok = trim(raw);
      if (tok.rfind("d=", 0) == 0) {
        entry.d = std::atoi(tok.substr(2).c_str());
      } else if (tok.rfind("quad(", 0) == 0 && tok.back() == ')') {
        auto args = split(tok.substr(5, tok.size() - 6), ',');
        if (args.size() != 3) fail_input("quad(e,l,t) needs three arguments");
        Rational e = parse_rat(args[0]), l = parse_rat(args[1]), t = parse_rat(args[2]);
        entry.A = PolyQ({t, l, e});
        have_shape = true;
      } else if (tok.rfind("lin(", 0) == 0 && tok.back() == ')') {
        auto args = split(tok.substr(4, tok.size() - 5), ',');
        if (args.size() != 2) fail_input("lin(b,a) needs two arguments");
        Rational b = parse_rat(args[0]), a = parse_rat(args[1]);
        entry.A = PolyQ({a, b});
        entry.b = b;
        have_shape = true;
      } else if (tok.rfind("b=", 0) == 0) {
        entry.b = parse_rat(tok.substr(2));
      } else {
        fail_input("unknown profile token '" + tok + "'");
      }
    }
    if (!have_shape) fail_input("profile entry needs quad(...) or lin(...): '" + part + "'");
    profile.push_back(entry);
  }
  return profile;
}

// "1/5,-1/3;0,0"
std::vector<RatVec> parse_points(const std::string& text, size_t dim) {
  std::vector<RatVec> pts;
  for (const auto& part : split(text, ';')) {
    RatVec x;
    for (const auto& c : split(part, ',')) x.push_back(parse_rat(c));
    if (x.size() != dim) fail_input("point arity mismatch in '" + part + "'");
    pts.push_back(std::move(x));
  }
  return pts;
}

json rat_json(const Rational& q) { return rat_to_string(q); }

json ratvec_json(const RatVec& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(rat_json(q));
  return out;
}

json poly_json(const PolyQ& p) {
  // coefficient arrays, lowest degree first
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(rat_json(c));
  return out;
}

json ratfunc_json(const RatFuncQ& r) {
  return json{{"num", poly_json(r.num())}, {"den", poly_json(r.den())}};
}

json certificate_json(const SignCertificate& cert) {
  json out;
  out["verdict"] = cert.verdict == SignVerdict::Positive          ? "positive"
                   : cert.verdict == SignVerdict::NonnegativeWithRoots ? "nonnegative-with-roots"
                                                                       : "fails";
  json roots = json::array();
  for (const auto& r : cert.interior_roots)
    roots.push_back(json{{"lo", rat_json(r.lo)}, {"hi", rat_json(r.hi)}, {"multiplicity", r.multiplicity}});
  out["roots"] = roots;
  json ep = json::array();
  for (const auto& r : cert.endpoint_roots) ep.push_back(rat_json(r));
  out["endpoint_roots"] = ep;
  if (cert.witness)
    out["witness"] = json{{"lo", rat_json(cert.witness->lo)}, {"hi", rat_json(cert.witness->hi)}};
  if (!cert.message.empty()) out["message"] = cert.message;
  return out;
}

json matrix_json(const Mat<Rational>& m) {
  json rows = json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(rat_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

// Sparse printing of a Lie algebra element.
json alg_json(const AlgElement& m) {
  json entries = json::array();
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).re == 0 && m(i, j).im == 0) continue;
      json e;
      e["i"] = i;
      e["j"] = j;
      e["re"] = rat_json(m(i, j).re);
      if (m(i, j).im != 0) e["im"] = rat_json(m(i, j).im);
      entries.push_back(e);
    }
  return entries;
}

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::string> options;
  bool has(const std::string& key) const { return options.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const {
    auto it = options.find(key);
    return it == options.end() ? fallback : it->second;
  }
  std::string require(const std::string& key) const {
    auto it = options.find(key);
    if (it == options.end()) fail_input("missing required option --" + key);
    return it->second;
  }
};

Args parse_args(const std::vector<std::string>& argv, size_t start,
                const std::vector<std::string>& known_flags,
                const std::vector<std::string>& known_options) {
  Args args;
  for (size_t i = start; i < argv.size(); ++i) {
    const std::string& tok = argv[i];
    if (tok.rfind("--", 0) == 0) {
      std::string key = tok.substr(2);
      std::string value;
      auto eq = key.find('=');
      bool inline_value = eq != std::string::npos;
      if (inline_value) {
        value = key.substr(eq + 1);
        key = key.substr(0, eq);
      }
      bool is_flag = std::find(known_flags.begin(), known_flags.end(), key) != known_flags.end();
      bool is_opt =
          std::find(known_options.begin(), known_options.end(), key) != known_options.end();
      if (!is_flag && !is_opt) fail_input("unknown option --" + key);
      if (is_flag) {
        args.options[key] = inline_value ? value : "1";
      } else {
        if (!inline_value) {
          if (i + 1 >= argv.size()) fail_input("option --" + key + " needs a value");
          value = argv[++i];
        }
        args.options[key] = value;
      }
    } else {
      args.positional.push_back(tok);
    }
  }
  return args;
}

Polytope load_polytope_json(const json& j) {
  size_t n = j.at("n").get<size_t>();
  std::vector<Facet> facets;
  for (const auto& f : j.at("facets")) {
    Facet facet;
    for (const auto& m : f.at("mu")) facet.mu.push_back(m.get<long long>());
    facet.lambda = parse_rat(f.at("lambda").get<std::string>());
    facets.push_back(std::move(facet));
  }
  return Polytope(n, std::move(facets));
}

std::map<std::string, Rational> parse_params(const std::string& text) {
  std::map<std::string, Rational> params;
  if (text.empty()) return params;
  for (const auto& kv : split(text, ',')) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) fail_input("bad parameter '" + kv + "'");
    params[trim(kv.substr(0, eq))] = parse_rat(kv.substr(eq + 1));
  }
  return params;
}

// --potential catalog:NAME or a JSON file path; returns (potential, digest text)
std::pair<Potential, std::string> load_potential(const Args& args) {
  std::string spec = args.require("potential");
  auto params = parse_params(args.get("params"));
  if (spec.rfind("catalog:", 0) == 0) {
    std::string name = spec.substr(8);
    try {
      return {potential_catalog(name, params), spec + args.get("params")};
    } catch (const std::invalid_argument&) {
      return {Potential(polytope_catalog(name, params)), spec + args.get("params")};
    }
  }
  std::ifstream in(spec);
  if (!in) fail_input("cannot open potential file '" + spec + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  json j = json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) fail_input("invalid JSON in '" + spec + "'");
  Polytope P = load_polytope_json(j);
  if (!j.count("correction_hessian")) return {Potential(std::move(P)), ss.str()};
  size_t n = P.dim();
  auto entries = j.at("correction_hessian");
  if (entries.size() != n * n) fail_input("correction_hessian must have n*n entries (row-major)");
  std::vector<std::vector<MultiRatFunc>> hess(n, std::vector<MultiRatFunc>(n, MultiRatFunc(n)));
  for (size_t i = 0; i < n; ++i)
    for (size_t jx = 0; jx < n; ++jx)
      hess[i][jx] = parse_ratfunc(entries[i * n + jx].get<std::string>(), n);
  return {Potential(std::move(P), std::move(hess)), ss.str()};
}

json make_report(const std::string& command_echo, const std::string& digest_src) {
  json report;
  report["command"] = command_echo;
  report["inputs_digest"] = hex64(fnv1a(digest_src));
  return report;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// ---------------------------------------------------------------------------

CliResult cmd_futaki(const std::vector<std::string>& argv) {
  Args args = parse_args(argv, 1, {"json"}, {"polytope", "params", "fiber", "interval"});
  std::string digest_src;
  for (const auto& a : argv) digest_src += a + "\x1f";
  json report = make_report("futaki", digest_src);

  bool vanishes = true;
  if (args.has("polytope")) {
    Polytope P = polytope_catalog(args.require("polytope"), parse_params(args.get("params")));
    RatVec fut = P.futaki_vector();
    report["futaki_vector"] = ratvec_json(fut);
    for (const auto& q : fut)
      if (q != 0) vanishes = false;
  } else if (args.has("fiber")) {
    FiberData w = parse_fiber(args.require("fiber"));
    auto iv = split(args.get("interval", "-1,1"), ',');
    if (iv.size() != 2) fail_input("--interval needs lo,hi");
    Rational value = futaki_fiberwise(w, parse_rat(iv[0]), parse_rat(iv[1]));
    report["futaki_fiberwise"] = rat_json(value);
    vanishes = value == 0;
  } else {
    fail_input("futaki needs --polytope or --fiber");
  }
  report["vanishes"] = vanishes;
  return {0, report.dump(2) + "\n", ""};
}

CliResult cmd_extremal(const std::vector<std::string>& argv) {
  Args args = parse_args(argv, 1, {"csc", "json"},
                         {"fiber", "interval", "einstein", "csv", "samples"});
  std::string digest_src;
  for (const auto& a : argv) digest_src += a + "\x1f";
  json report = make_report("extremal", digest_src);

  FiberData w = parse_fiber(args.require("fiber"));
  auto iv = split(args.get("interval", "-1,1"), ',');
  if (iv.size() != 2) fail_input("--interval needs lo,hi");
  Rational x0 = parse_rat(iv[0]), x1 = parse_rat(iv[1]);

  if (args.has("csc")) {
    // Treat the a-parameters as symbols (at most two distinct entries).
    if (w.size() > 2) fail_input("--csc supports at most two fiber entries (two symbols)");
    std::vector<SymbolicFiberEntry> sym;
    for (size_t i = 0; i < w.size(); ++i) {
      SymbolicFiberEntry e;
      e.d = w[i].d;
      e.b = w[i].b;
      e.a_affine.assign(w.size() + 1, Rational(0));
      e.a_affine[i + 1] = Rational(1);
      sym.push_back(e);
    }
    auto locus = csc_locus(sym, w.size(), x0, x1);
    report["alpha_identically_zero"] = locus.identically_zero;
    json pieces = json::array();
    for (const auto& piece : locus.pieces) {
      pieces.push_back(json{{"factor", piece.factor.to_string(locus.symbols)},
                            {"description", piece.description},
                            {"feasible", piece.feasible},
                            {"note", piece.note}});
    }
    report["csc_locus"] = pieces;
    report["alpha_numerator"] = locus.alpha_num.to_string(locus.symbols);
    return {0, report.dump(2) + "\n", ""};
  }

  if (args.has("einstein")) {
    Rational lambda = parse_rat(args.require("einstein"));
    auto res = einstein_h(w, lambda, x0);
    report["einstein"] = json{{"feasible", res.feasible},
                              {"reason", res.reason},
                              {"D", res.feasible ? rat_json(res.D) : json(nullptr)}};
    if (res.feasible) {
      report["h"] = ratfunc_json(res.h);
      return {0, report.dump(2) + "\n", ""};
    }
    return {1, report.dump(2) + "\n", "einstein consistency failed\n"};
  }

  ExtremalSolution sol;
  try {
    sol = solve_compact_extremal(w, x0, x1);
  } catch (const std::domain_error& e) {
    fail_math(e.what());
  }
  report["h"] = ratfunc_json(sol.h);
  report["alpha"] = rat_json(sol.alpha);
  report["beta"] = rat_json(sol.beta);
  report["integration_constants"] = json{{"e", rat_json(sol.e)}, {"f", rat_json(sol.f)}};
  report["smooth_left"] = sol.smooth_left;
  report["smooth_right"] = sol.smooth_right;
  report["orbits"] = json{{"left", sol.left_orbit}, {"right", sol.right_orbit}};
  report["certificates"] = json{{"positivity", certificate_json(sol.positivity)}};

  if (args.has("csv")) {
    int samples = std::atoi(args.get("samples", "101").c_str());
    std::ofstream out(args.require("csv"));
    if (!out) fail_input("unwritable csv path");
    out << "x,h,S";
    for (size_t j = 0; j < w.size(); ++j) out << ",A_" << (j + 1);
    out << "\n";
    RatFuncQ S = scalar_of_h(w, sol.h);
    for (int i = 0; i < samples; ++i) {
      Rational x = x0 + (x1 - x0) * Rational(i + 1, samples + 1);
      out << format_double(to_double(x)) << "," << format_double(to_double(sol.h(x))) << ","
          << format_double(to_double(S(x)));
      for (const auto& entry : w) out << "," << format_double(to_double(entry.A(x)));
      out << "\n";
    }
  }
  int exit_code = sol.positivity.nonnegative() && sol.smooth_left && sol.smooth_right ? 0 : 1;
  return {exit_code, report.dump(2) + "\n", ""};
}

CliResult cmd_curvature(const std::vector<std::string>& argv) {
  Args args = parse_args(argv, 1, {"fit", "json"},
                         {"potential", "params", "points", "grid", "lambda", "fiber"});
  std::string digest_src;
  for (const auto& a : argv) digest_src += a + "\x1f";
  auto [pot, extra_digest] = load_potential(args);
  json report = make_report("curvature", digest_src + extra_digest);

  std::vector<RatVec> points;
  if (args.has("points")) {
    points = parse_points(args.require("points"), pot.dim());
  } else {
    int k = std::atoi(args.get("grid", "3").c_str());
    if (k < 1) fail_input("--grid must be >= 1");
    // k^n lattice over the vertex bounding box, filtered to the interior.
    RatVec lo(pot.dim()), hi(pot.dim());
    for (size_t d = 0; d < pot.dim(); ++d) {
      lo[d] = hi[d] = pot.polytope().vertices()[0][d];
      for (const auto& v : pot.polytope().vertices()) {
        lo[d] = std::min(lo[d], v[d]);
        hi[d] = std::max(hi[d], v[d]);
      }
    }
    std::vector<RatVec> lattice{{}};
    for (size_t d = 0; d < pot.dim(); ++d) {
      std::vector<RatVec> next;
      for (const auto& base : lattice)
        for (int i = 1; i <= k; ++i) {
          RatVec x = base;
          x.push_back(lo[d] + (hi[d] - lo[d]) * Rational(i, k + 1));
          next.push_back(std::move(x));
        }
      lattice = std::move(next);
    }
    for (auto& x : lattice)
      if (pot.polytope().strictly_contains(x)) points.push_back(std::move(x));
  }
  if (points.empty()) fail_input("no interior sample points");

  std::optional<FiberWeight> weights;
  if (args.has("fiber")) {
    FiberData w = parse_fiber(args.require("fiber"));
    FiberWeight fw;
    for (const auto& e : w) {
      if (pot.dim() != 1) fail_input("--fiber with d, b, a entries requires a 1d base here");
      fw.push_back({e.d, {e.b}, e.a});
    }
    weights = fw;
  }
  std::optional<Rational> lambda;
  if (args.has("lambda")) lambda = parse_rat(args.require("lambda"));

  bool all_pass = true;
  json results = json::array();
  for (const auto& x : points) {
    json entry;
    entry["point"] = ratvec_json(x);
    MetricPoint mp;
    try {
      mp = metric_at(pot, x);
    } catch (const std::domain_error& e) {
      entry["error"] = e.what();
      all_pass = false;
      results.push_back(entry);
      continue;
    }
    Rational s = abreu_scalar(mp), s2 = abreu_scalar_simplified(mp);
    entry["S"] = rat_json(s);
    entry["S_simplified"] = rat_json(s2);
    RatVec adj = adjugate_divergence(mp);
    entry["adjugate_div"] = ratvec_json(adj);
    if (s != s2) all_pass = false;
    for (const auto& q : adj)
      if (q != 0) all_pass = false;
    if (weights) {
      entry["S_fiberwise"] = rat_json(fkt_scalar(mp, *weights));
      if (lambda) {
        auto [resA, resB] = fkt_einstein_residual(mp, *weights, *lambda);
        entry["fkt_einstein_residual_A"] = matrix_json(resA);
        entry["fkt_einstein_residual_B"] = ratvec_json(resB);
      }
    } else if (lambda) {
      auto res = einstein_residual(mp, *lambda);
      entry["einstein_residual"] = matrix_json(res);
      entry["einstein_zero"] = res.is_zero();
    }
    results.push_back(entry);
  }
  report["results"] = results;
  if (args.has("fit")) {
    auto fit = extremal_fit(pot, points);
    report["extremal_fit"] = json{{"alpha", ratvec_json(fit.alpha)},
                                  {"beta", rat_json(fit.beta)},
                                  {"max_residual", rat_json(fit.max_residual)}};
  }
  report["identity_checks_pass"] = all_pass;
  return {all_pass ? 0 : 1, report.dump(2) + "\n", ""};
}

CliResult cmd_hermitian(const std::vector<std::string>& argv) {
  Args args = parse_args(argv, 1, {"noncompact", "mu", "json"},
                         {"profile", "family", "beta", "compact-c", "compact-scan", "csv",
                          "samples"});
  std::string digest_src;
  for (const auto& a : argv) digest_src += a + "\x1f";
  json report = make_report("hermitian", digest_src);

  if (args.has("family")) {
    auto parts = split(args.require("family"), ',');
    if (parts.size() != 2) fail_input("--family needs q,l");
    long long q = std::atoll(parts[0].c_str());
    auto fam = hirzebruch_hermitian_family(q, parse_rat(parts[1]));
    report["family"] = json{{"q", q},
                            {"b", rat_json(fam.b)},
                            {"valid", fam.valid},
                            {"violated", fam.violated},
                            {"A1", poly_json(fam.A1)},
                            {"S", rat_json(fam.S)}};
    if (fam.valid) report["h"] = ratfunc_json(fam.h);
    return {0, report.dump(2) + "\n", ""};
  }

  FiberProfile profile = parse_profile(args.require("profile"));
  if (args.has("mu")) {
    auto gate = sum_d_mu(profile);
    report["sum_d_mu"] = to_string(gate);
    report["gate_holds"] = gate.is_zero();
    return {gate.is_zero() ? 0 : 1, report.dump(2) + "\n", ""};
  }
  if (args.has("noncompact")) {
    Rational beta = parse_rat(args.get("beta", "0"));
    NoncompactSolution sol;
    try {
      sol = noncompact_hermitian(profile, beta);
    } catch (const std::domain_error& e) {
      fail_input(e.what());
    }
    report["accepted"] = sol.accepted;
    report["reason"] = sol.reason;
    if (sol.accepted) {
      report["h"] = ratfunc_json(sol.h);
      report["orbit"] = sol.orbit;
    }
    return {sol.accepted ? 0 : 1, report.dump(2) + "\n", ""};
  }
  if (args.has("compact-c") || args.has("compact-scan")) {
    CompactHermitianSpec spec;
    // profile: leading lin entries share c = a/b; the last entry must be quad.
    if (profile.back().A.degree() != 2) fail_input("compact solve needs a trailing quad entry");
    spec.d_quad = profile.back().d;
    spec.e_quad = profile.back().A[2];
    spec.b_quad = profile.back().b;
    for (size_t i = 0; i + 1 < profile.size(); ++i) {
      if (profile[i].A.degree() != 1) fail_input("compact solve needs leading lin entries");
      spec.linear.push_back({profile[i].d, profile[i].A[1]});
    }
    CompactHermitianResult sol;
    if (args.has("compact-c")) {
      sol = solve_compact_hermitian(spec, parse_rat(args.require("compact-c")));
    } else {
      auto parts = split(args.require("compact-scan"), ',');
      if (parts.size() != 2) fail_input("--compact-scan needs lo,hi");
      sol = solve_compact_hermitian_scan(spec, parse_rat(parts[0]), parse_rat(parts[1]));
    }
    report["found"] = sol.found;
    report["message"] = sol.message;
    if (sol.found) {
      report["c"] = rat_json(sol.c);
      report["c_m"] = rat_json(sol.c_m);
      report["beta"] = format_double(to_double(sol.beta));
      report["boundary_residual"] = sol.boundary_residual;
      report["h"] = ratfunc_json(sol.h);
      report["certificates"] = json{{"positivity", certificate_json(sol.positivity)}};
    }
    return {sol.found ? 0 : 1, report.dump(2) + "\n", ""};
  }
  fail_input("hermitian needs --family, --mu, --noncompact, or --compact-c/--compact-scan");
}

CliResult cmd_diag(const std::vector<std::string>& argv) {
  Args args = parse_args(argv, 1, {"json"}, {"orbit"});
  std::string digest_src;
  for (const auto& a : argv) digest_src += a + "\x1f";
  json report = make_report("diag", digest_src);

  std::string spec = args.require("orbit");
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
  std::vector<long long> params;
  if (colon != std::string::npos)
    for (const auto& p : split(spec.substr(colon + 1), ',')) params.push_back(std::atoll(p.c_str()));

  IsotropyDecomposition decomp;
  try {
    decomp = standard_decomposition(name, params);
  } catch (const std::invalid_argument& e) {
    fail_input(e.what());
  }
  auto verdict = diagonalizability_verdict(decomp);
  report["orbit"] = spec;
  json dims = json::array();
  for (const auto& s : decomp.summands) dims.push_back(s.dim);
  report["summand_dims"] = dims;
  report["verdict"] =
      verdict.diagonalizable ? "diagonalizable" : "not diagonalizable by this method";
  report["method_inconclusive"] = verdict.inconclusive;
  report["required_dim"] = verdict.required_dim;
  report["achieved_dim"] = verdict.achieved_dim;
  report["rule_applied"] = verdict.rule_applied;
  json families = json::array();
  for (const auto& fam : verdict.families) {
    json f;
    f["members"] = fam.members;
    f["type"] = summand_type_name(fam.type);
    f["required"] = fam.required;
    f["achieved"] = fam.achieved;
    json vecs = json::array();
    for (size_t a = 0; a < fam.members.size(); ++a)
      for (size_t b = a + 1; b < fam.members.size(); ++b)
        for (const auto& v : equivalence_vectors(decomp, fam.members[a], fam.members[b]))
          vecs.push_back(alg_json(v));
    f["vectors"] = vecs;
    families.push_back(f);
  }
  report["families"] = families;
  return {0, report.dump(2) + "\n", ""};
}

CliResult cmd_t2(const std::vector<std::string>& argv) {
  Args args = parse_args(argv, 1, {"invariants", "json"},
                         {"example", "grid", "check", "orbit", "tol", "killing", "side"});
  std::string digest_src;
  for (const auto& a : argv) digest_src += a + "\x1f";
  json report = make_report("t2", digest_src);

  if (args.has("invariants")) {
    OrbitData data;
    for (const auto& pair_text : split(args.require("orbit"), ';')) {
      std::string t = trim(pair_text);
      if (t.size() < 5 || t.front() != '(' || t.back() != ')') fail_input("bad pair '" + t + "'");
      auto nums = split(t.substr(1, t.size() - 2), ',');
      if (nums.size() != 2) fail_input("bad pair '" + t + "'");
      data.pairs.push_back({std::atoll(nums[0].c_str()), std::atoll(nums[1].c_str())});
    }
    OrbitInvariants inv;
    try {
      inv = orbit_invariants(data);
    } catch (const std::invalid_argument& e) {
      fail_input(e.what());
    }
    report["chi"] = inv.chi;
    report["tau"] = inv.tau;
    report["spin"] = inv.spin;
    report["hitchin_thorpe_pass"] = inv.hitchin_thorpe_pass;
    return {0, report.dump(2) + "\n", ""};
  }

  std::string name = args.require("example");
  int grid = std::atoi(args.get("grid", "32").c_str());
  std::string check = args.get("check", "einstein");
  TorusMetric tm;
  try {
    tm = metric_catalog(name);
  } catch (const std::invalid_argument& e) {
    fail_input(e.what());
  }
  report["example"] = name;
  report["grid"] = grid;
  report["check"] = check;

  if (check == "einstein") {
    if (tm.lambda == 0) {
      tm.lambda = derive_lambda(tm, tm.R0 + 0.37 * (tm.R1 - tm.R0), tm.T0 + 0.41 * (tm.T1 - tm.T0));
      report["lambda_derived"] = tm.lambda;
    } else {
      report["lambda"] = tm.lambda;
    }
    double tol = std::atof(args.get("tol", name == "page" ? "1e-6" : "1e-8").c_str());
    double res = torus_einstein_residual(tm, grid);
    report["residual"] = res;
    report["tolerance"] = tol;
    report["pass"] = res < tol;
    return {res < tol ? 0 : 1, report.dump(2) + "\n", ""};
  }
  if (check == "rhoq") {
    if (name != "s4") fail_input("isothermal form only available for s4");
    double res = rhoQ_holomorphicity(s4_isothermal(), grid);
    double tol = std::atof(args.get("tol", "1e-6").c_str());
    report["residual"] = res;
    report["pass"] = res < tol;
    return {res < tol ? 0 : 1, report.dump(2) + "\n", ""};
  }
  if (check == "bolts") {
    if (tm.lambda == 0) tm.lambda = derive_lambda(tm, tm.R0 + 0.37 * (tm.R1 - tm.R0),
                                                  tm.T0 + 0.41 * (tm.T1 - tm.T0));
    BoltAreaReport rep;
    try {
      rep = bolt_area_identity(tm);
    } catch (const std::invalid_argument& e) {
      fail_input(e.what());
    }
    double tol = std::atof(args.get("tol", "1e-6").c_str());
    report["two_pi_area_A"] = rep.two_pi_area_A;
    report["two_pi_area_B"] = rep.two_pi_area_B;
    report["lambda_vol"] = rep.lambda_vol;
    report["rel_error"] = rep.rel_error;
    report["pass"] = rep.rel_error < tol;
    return {rep.rel_error < tol ? 0 : 1, report.dump(2) + "\n", ""};
  }
  if (check == "gravity") {
    auto mn = split(args.get("killing", "1,0"), ',');
    if (mn.size() != 2) fail_input("--killing needs m,n");
    long long m = std::atoll(mn[0].c_str()), n = std::atoll(mn[1].c_str());
    std::string side_name = args.get("side", "tmin");
    RectSide side = side_name == "rmin"   ? RectSide::RMin
                    : side_name == "rmax" ? RectSide::RMax
                    : side_name == "tmin" ? RectSide::TMin
                    : side_name == "tmax" ? RectSide::TMax
                                          : (fail_input("--side must be rmin|rmax|tmin|tmax"),
                                             RectSide::TMin);
    SurfaceGravityReport rep;
    try {
      rep = surface_gravity(tm, m, n, side);
    } catch (const std::domain_error& e) {
      fail_math(e.what());
    }
    report["kappa2"] = rep.kappa2;
    report["max_deviation"] = rep.max_deviation;
    return {0, report.dump(2) + "\n", ""};
  }
  fail_input("unknown --check '" + check + "'");
}

const char* kUsage =
    "usage: tclab <curvature|extremal|hermitian|futaki|diag|t2> [options]\n"
    "  curvature --potential catalog:NAME|file.json [--params a=1] [--points \"x,y;...\"]\n"
    "            [--grid k] [--lambda p/q] [--fiber SPEC] [--fit]\n"
    "  extremal  --fiber \"d=2,b=1/2,a=1;...\" --interval lo,hi [--csc] [--einstein p/q]\n"
    "            [--csv PATH] [--samples N]\n"
    "  hermitian --family q,l | --profile \"d=2,quad(e,l,t),b=..;d=2,lin(b,a)\"\n"
    "            [--mu] [--noncompact --beta p/q] [--compact-c c|--compact-scan lo,hi]\n"
    "  futaki    --polytope NAME|file.json [--params ..] | --fiber SPEC --interval lo,hi\n"
    "  diag      --orbit stiefel:N|flag:N1,N2|su3u1|su2|t3\n"
    "  t2        --example s4|cp2|s2xs2|page --grid K --check einstein|rhoq|bolts|gravity\n"
    "            [--tol T] [--killing m,n] [--side rmin|rmax|tmin|tmax]\n"
    "  t2        --orbit \"(1,0);(0,1)\" --invariants\n";

}  // namespace

CliResult dispatch(const std::vector<std::string>& args) {
  try {
    if (args.empty()) return {2, kUsage, "no subcommand\n"};
    const std::string& cmd = args[0];
    if (cmd == "futaki") return cmd_futaki(args);
    if (cmd == "extremal") return cmd_extremal(args);
    if (cmd == "curvature") return cmd_curvature(args);
    if (cmd == "hermitian") return cmd_hermitian(args);
    if (cmd == "diag") return cmd_diag(args);
    if (cmd == "t2") return cmd_t2(args);
    return {2, kUsage, "unknown subcommand '" + cmd + "'\n"};
  } catch (const CliError& e) {
    json err;
    err["error"] = e.message;
    return {e.code, err.dump(2) + "\n", e.message + "\n"};
  } catch (const std::exception& e) {
    json err;
    err["error"] = e.what();
    return {2, err.dump(2) + "\n", std::string(e.what()) + "\n"};
  }
}

}  // namespace tclab
