#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "gcx/bundles/jet.hpp"
#include "gcx/cli/cli.hpp"
#include "gcx/error.hpp"
#include "gcx/gcs/differentials.hpp"
#include "gcx/scalar/parse.hpp"

namespace gcx::cli {

const std::vector<std::string> kCommands = {
    "check-structure", "check-function", "courant",   "validate-bundle", "delbar",         "poisson-module",
    "jet",             "atiyah-cech",    "atiyah-jet", "atiyah-liepair",  "examples",
};

namespace {

[[noreturn]] void bad_request(const std::string& what) { fail(ErrorCode::ParseError, "commands: " + what); }

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string fmt(const std::vector<RatFunc>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "]";
}

std::string fmt(const RMatrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) s += (r ? ", " : "") + fmt(m.row(r));
  return s + "]";
}

std::string cell_name(const std::vector<int>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

struct Builder {
  Result r;
  Builder(std::string command, std::string target) {
    r.command = std::move(command);
    r.target = std::move(target);
  }
  void add(std::string key, std::string value) { r.fields.emplace_back(std::move(key), std::move(value)); }
  void flag(std::string key, bool v) { add(std::move(key), yes_no(v)); }
  void witness(std::string w) { r.witnesses.push_back(std::move(w)); }
  void cochain(const std::string& name, const CechCochain& c) {
    for (const auto& [cell, comps] : c.cells)
      for (std::size_t l = 0; l < comps.size(); ++l)
        add(name + cell_name(cell) + ".dz" + std::to_string(l + 1), fmt(comps[l]));
  }
  void connection(const Connection& d) {
    for (std::size_t i = 0; i < d.a.size(); ++i)
      for (std::size_t l = 0; l < d.a[i].size(); ++l)
        add("A(" + std::to_string(i) + ").dz" + std::to_string(l + 1), fmt(d.a[i][l]));
  }
  void section(const std::string& name, const GSection& s) {
    const ChartVars& c = s.chart();
    bool any = false;
    for (int i = 0; i < c.dim(); ++i)
      if (!s.vec()[i].is_zero()) {
        add(name + ".d/d" + c.var(i).name(), s.vec()[i].str());
        any = true;
      }
    for (int i = 0; i < c.dim(); ++i) {
      const RatFunc f = s.cov().coeff({i});
      if (!f.is_zero()) {
        add(name + ".d" + c.var(i).name(), f.str());
        any = true;
      }
    }
    if (!any) add(name, "0");
  }
  Result done(std::string status) {
    r.status = std::move(status);
    return std::move(r);
  }
};

const Json& param(const Json& req, const std::string& key) {
  if (!req.contains(key)) bad_request(req.value("command", "") + " needs \"" + key + "\"");
  return req.at(key);
}

std::string param_text(const Json& req, const std::string& key) {
  const Json& v = param(req, key);
  if (!v.is_string()) bad_request("\"" + key + "\" must be a string");
  return v.get<std::string>();
}

template <class T>
const T& find(const std::map<std::string, T>& m, const std::string& name, const char* kind) {
  auto it = m.find(name);
  if (it == m.end()) bad_request(std::string("unknown ") + kind + " \"" + name + "\"");
  return it->second;
}

RatFunc parse_in(const std::string& text, const ChartVars& c) {
  try {
    return parse_ratfunc(text, c);
  } catch (const Error& e) {
    fail(ErrorCode::ParseError, "commands: " + std::string(e.what()));
  }
}

class Runner {
 public:
  Runner(const ProblemFile& f, const RunOptions& o) : f_(f), opt_(o) {}

  std::vector<Result> request(const Json& req) {
    const std::string cmd = param_text(req, "command");
    if (cmd == "check-structure") return {structure(param_text(req, "chart"))};
    if (cmd == "check-function") return {function(param_text(req, "chart"), param_text(req, "function"))};
    if (cmd == "courant") return {courant(req)};
    if (cmd == "poisson-module") return {poisson(param_text(req, "section"), param(req, "function"))};
    if (cmd == "delbar") return {delbar(param_text(req, "section"))};
    if (cmd == "atiyah-jet" && req.contains("connection")) return {given_connection(param_text(req, "connection"))};
    return {on_bundle(cmd, param_text(req, "bundle"))};
  }

  /// The command on every object it applies to.
  std::vector<Result> all(const std::string& cmd) {
    std::vector<Result> out;
    if (cmd == "check-structure") {
      for (const auto& [n, c] : f_.charts) out.push_back(structure(n));
    } else if (cmd == "check-function") {
      for (const auto& [n, c] : f_.charts)
        for (const auto& fn : f_.functions) out.push_back(function(n, fn));
    } else if (cmd == "courant") {
      for (const auto& [n, c] : f_.charts) out.push_back(default_courant(n));
    } else if (cmd == "delbar") {
      for (const auto& [n, s] : f_.sections) out.push_back(delbar(n));
    } else if (cmd == "poisson-module") {
      for (const auto& [n, s] : f_.sections) {
        const GHBundle& b = f_.bundles.at(s.bundle);
        for (const auto& fn : f_.functions)
          if (global_function(fn, b.cover())) out.push_back(poisson(n, Json(fn)));
      }
    } else {
      for (const auto& [n, b] : f_.bundles) out.push_back(on_bundle(cmd, n));
      if (cmd == "atiyah-jet")
        for (const auto& [n, d] : f_.connections) out.push_back(given_connection(n));
    }
    return out;
  }

 private:
  const ProblemFile& f_;
  const RunOptions& opt_;

  AnsatzSpace ansatz(const GHBundle& b) const { return AnsatzSpace::laurent(b.cover(), opt_.window); }

  // A single expression that parses on the cover and glues as a function.
  static std::optional<RatFunc> global_function(const std::string& text, const Cover& c) {
    RatFunc f;
    try {
      f = parse_ratfunc(text, c.vars());
    } catch (const Error&) {
      return std::nullopt;
    }
    for (auto [i, j] : c.overlap_list())
      if (!(f == c.pull(f, i, j))) return std::nullopt;
    return f;
  }

  Result structure(const std::string& name) {
    const ModelChart& c = find(f_.charts, name, "chart");
    Builder b("check-structure", name);
    b.add("chart", c.describe());
    const ChartReport rep = check_chart(c);
    b.flag("isotropic", rep.isotropic);
    b.flag("dual", rep.dual);
    b.flag("conjugate", rep.conjugate);
    b.flag("integrable", rep.integrable);
    if (!rep.witness.empty()) b.witness(rep.witness);
    bool linear = true;
    const auto pts = sample_points(c.vars(), opt_.samples);
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const LinearCheck lc = check_linear_gcs(linear_structure_at(c, pts[p]));
      if (!lc.ok()) {
        linear = false;
        b.witness("sample point " + std::to_string(p) + ": " + lc.witness);
      }
    }
    b.flag("pointwise_structure", linear);
    return b.done(rep.ok() && linear ? "pass" : "fail");
  }

  Result function(const std::string& chart_name, const std::string& text) {
    const ModelChart& c = find(f_.charts, chart_name, "chart");
    Builder b("check-function", chart_name + " " + text);
    RatFunc f;
    try {
      f = parse_ratfunc(text);
    } catch (const Error& e) {
      fail(ErrorCode::ParseError, "commands: " + std::string(e.what()));
    }
    for (auto id : f.variable_ids())
      if (!c.vars().contains(Var::from_id(id))) {
        b.flag("holomorphic", false);
        b.witness("variable " + Var::from_id(id).name() + " is not a coordinate of this chart");
        return b.done("fail");
      }
    const HolomorphyReport rep = is_gen_holomorphic(f, c, opt_.samples);
    b.flag("holomorphic", rep.holomorphic);
    b.flag("coordinate_criterion", rep.coordinate_criterion);
    b.flag("pointwise_linear", rep.pointwise_linear);
    b.flag("cotangent_in_lminus", rep.cotangent_in_lminus);
    b.flag("criteria_agree", rep.consistent());
    if (!rep.witness.empty()) b.witness(rep.witness);
    if (!rep.consistent()) return b.done("fail");
    return b.done(rep.holomorphic ? "pass" : "fail");
  }

  static GSection section_param(const Json& j, const ChartVars& c, const std::string& key) {
    if (!j.is_object()) bad_request("\"" + key + "\" must be an object");
    VField x(c);
    KForm xi(c, 1);
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() != "vector" && it.key() != "form") bad_request("unknown key \"" + it.key() + "\" in \"" + key + "\"");
      if (!it.value().is_object()) bad_request("\"" + key + "." + it.key() + "\" must be an object");
      for (auto e = it.value().begin(); e != it.value().end(); ++e) {
        auto v = parse_var(e.key());
        if (!v || !c.contains(*v)) bad_request("\"" + e.key() + "\" is not a coordinate of the chart");
        if (!e.value().is_string()) bad_request("coefficients must be strings");
        const RatFunc f = parse_in(e.value().get<std::string>(), c);
        if (it.key() == "vector")
          x[c.require_index(*v)] += f;
        else
          xi += KForm::monomial(c, {*v}, f);
      }
    }
    return GSection(x, xi);
  }

  Result courant(const Json& req) {
    const std::string name = param_text(req, "chart");
    const ChartVars& c = find(f_.charts, name, "chart").vars();
    return courant_on(name, section_param(param(req, "a"), c, "a"), section_param(param(req, "b"), c, "b"),
                      section_param(param(req, "c"), c, "c"));
  }

  // x dx-type triple built from the first and last coordinates of the chart.
  Result default_courant(const std::string& name) {
    const ChartVars& c = find(f_.charts, name, "chart").vars();
    const Var first = c.var(0), last = c.var(c.dim() - 1);
    const RatFunc x = RatFunc::variable(first);
    const GSection a = GSection::vector(x * VField::coord(c, first));
    const GSection b(VField::coord(c, last), KForm::monomial(c, {last}, x));
    const GSection d = GSection::covector(KForm::monomial(c, {first}, x * x));
    return courant_on(name, a, b, d);
  }

  Result courant_on(const std::string& name, const GSection& a, const GSection& b, const GSection& c) {
    Builder r("courant", name);
    const GSection ab = courant_bracket(a, b);
    r.section("bracket_ab", ab);
    r.add("pairing_ab", pairing(a, b).str());
    const bool skew = (ab + courant_bracket(b, a)).is_zero();
    const GSection defect = jacobiator_defect(a, b, c);
    r.flag("antisymmetric", skew);
    r.flag("jacobiator_vanishes", defect.is_zero());
    if (!defect.is_zero()) r.witness("jacobiator defect " + defect.str());
    return r.done(skew && defect.is_zero() ? "pass" : "fail");
  }

  Result delbar(const std::string& name) {
    const NamedSection& s = find(f_.sections, name, "section");
    const GHBundle& b = f_.bundles.at(s.bundle);
    require_section(s.section, b);
    Builder r("delbar", name);
    const DelbarE d = del_bar_E(s.section, b);
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t l = 0; l < d[i].size(); ++l)
        r.add("delbar(" + std::to_string(i) + ").e" + std::to_string(l + 1), fmt(d[i][l].values));
    const auto mismatch = delbar_overlap_mismatch(s.section, b);
    const bool squares = delbar_squares_to_zero(s.section, b);
    r.flag("glues", !mismatch);
    r.flag("squares_to_zero", squares);
    r.flag("holomorphic", is_gh_section(s.section, b));
    if (mismatch) r.witness(*mismatch);
    return r.done(!mismatch && squares ? "pass" : "fail");
  }

  Result poisson(const std::string& name, const Json& fn) {
    const NamedSection& s = find(f_.sections, name, "section");
    const GHBundle& b = f_.bundles.at(s.bundle);
    const Cover& c = b.cover();
    std::vector<RatFunc> f;
    std::string label;
    if (fn.is_string()) {
      f.assign(c.size(), parse_in(fn.get<std::string>(), c.vars()));
      label = fn.get<std::string>();
    } else if (fn.is_array() && static_cast<int>(fn.size()) == c.size()) {
      for (const auto& e : fn) {
        if (!e.is_string()) bad_request("function entries must be strings");
        f.push_back(parse_in(e.get<std::string>(), c.vars()));
        label += (label.empty() ? "" : " | ") + e.get<std::string>();
      }
    } else {
      bad_request("\"function\" must be a string or one string per chart");
    }
    Builder r("poisson-module", name + " " + label);
    const BundleSection out = poisson_module_bracket(f, s.section, b);
    for (std::size_t i = 0; i < out.local.size(); ++i) r.add("bracket(" + std::to_string(i) + ")", fmt(out.local[i]));
    // {f, g s} = {f, g} s + g {f, s} with g = f on each chart.
    bool leibniz = true;
    for (int i = 0; i < c.size(); ++i) {
      const ModelChart& ch = c.chart(i);
      const RatFunc ff = poisson_bracket(f[i], f[i], ch);
      for (std::size_t a = 0; a < s.section.local[i].size(); ++a) {
        const RatFunc& x = s.section.local[i][a];
        if (!(poisson_bracket(f[i], f[i] * x, ch) == ff * x + f[i] * out.local[i][a])) leibniz = false;
      }
    }
    const auto glue = section_mismatch(out, b);
    r.flag("glues", !glue);
    r.flag("leibniz", leibniz);
    if (glue) r.witness(*glue);
    return r.done(!glue && leibniz ? "pass" : "fail");
  }

  Result on_bundle(const std::string& cmd, const std::string& name) {
    const GHBundle& b = find(f_.bundles, name, "bundle");
    if (cmd == "validate-bundle") return validate(name, b);
    if (cmd == "jet") return jet(name, b);
    if (cmd == "atiyah-cech") return cech(name, b);
    if (cmd == "atiyah-jet") return jet_splitting(name, b);
    if (cmd == "atiyah-liepair") return liepair(name, b);
    bad_request("unknown command \"" + cmd + "\"");
  }

  Result validate(const std::string& name, const GHBundle& b) {
    Builder r("validate-bundle", name);
    r.add("rank", std::to_string(b.rank()));
    r.add("charts", std::to_string(b.cover().size()));
    const BundleReport rep = validate_bundle(b, opt_.samples);
    for (const auto& f : rep.failures) r.witness(f.where + ": " + f.what);
    return r.done(rep.ok() ? "pass" : "fail");
  }

  Result jet(const std::string& name, const GHBundle& b) {
    Builder r("jet", name);
    const JetBundle j = jet_bundle(b);
    for (auto [i, k] : b.cover().overlap_list())
      r.add("phi(" + std::to_string(i) + "," + std::to_string(k) + ")", fmt(j.jet.phi(i, k)));
    const JetReport rep = check_jet(j, opt_.samples);
    r.flag("cocycle", rep.cocycle);
    r.flag("composition_zero", rep.composition_zero);
    r.flag("inclusion_intertwines", rep.inclusion_intertwines);
    r.flag("projection_intertwines", rep.projection_intertwines);
    r.flag("exact_at_points", rep.exact_at_points);
    for (const auto& f : rep.failures) r.witness(f);
    return r.done(rep.ok() ? "pass" : "fail");
  }

  void search_header(Builder& r, const AnsatzSpace& a) {
    r.add("window", std::to_string(a.window));
  }

  // Verdict for a failed search on another route: the Cech degree argument,
  // when it applies, proves the class nonzero.
  Result unsolved(Builder& r, const GHBundle& b, const AnsatzSpace& a) {
    const CechSolution s = coboundary_solve(atiyah_cech(b, opt_.samples), b, a);
    r.add("verdict", verdict_name(s.verdict == Verdict::Vanishing ? Verdict::Inconclusive : s.verdict));
    if (s.verdict == Verdict::NonVanishing) {
      r.witness(s.certificate);
      return r.done("infeasible");
    }
    if (s.verdict == Verdict::Vanishing) r.witness("the cech route solves at this window; this route found no solution");
    return r.done("inconclusive");
  }

  Result cech(const std::string& name, const GHBundle& b) {
    Builder r("atiyah-cech", name);
    const AnsatzSpace a = ansatz(b);
    search_header(r, a);
    const CechCochain alpha = atiyah_cech(b, opt_.samples);
    r.cochain("alpha", alpha);
    r.flag("cocycle_closed", cech_d(alpha, b).is_zero());
    const CechSolution s = coboundary_solve(alpha, b, a);
    r.add("unknowns", std::to_string(s.unknowns));
    r.add("verdict", verdict_name(s.verdict));
    if (s.verdict == Verdict::NonVanishing) {
      r.witness(s.certificate);
      return r.done("infeasible");
    }
    if (s.verdict == Verdict::Inconclusive) return r.done("inconclusive");
    r.cochain("theta", *s.theta);
    const Connection d = assemble_connection(*s.theta, b);
    r.connection(d);
    const ConnectionReport rep = check_connection(d, b);
    r.flag("glues", rep.glues);
    r.flag("holomorphic_coefficients", rep.holomorphic_coefficients);
    r.flag("leibniz", rep.leibniz);
    r.flag("preserves_sections", rep.preserves_sections);
    for (const auto& f : rep.failures) r.witness(f);
    return r.done(rep.ok() ? "pass" : "fail");
  }

  Result jet_splitting(const std::string& name, const GHBundle& b) {
    Builder r("atiyah-jet", name);
    const AnsatzSpace a = ansatz(b);
    search_header(r, a);
    const JetBundle j = jet_bundle(b);
    const auto s = splitting_solve(j, a);
    if (!s) return unsolved(r, b, a);
    r.add("verdict", verdict_name(Verdict::Vanishing));
    for (std::size_t i = 0; i < s->local.size(); ++i) r.add("S(" + std::to_string(i) + ")", fmt(s->local[i]));
    const Connection d = connection_from_splitting(*s, j);
    r.connection(d);
    const SplittingResult back = splitting_tests(j, d);
    const bool round_trip = back.ok() && back.s.local == s->local;
    const ConnectionReport rep = check_connection(d, b);
    r.flag("homomorphism", back.homomorphism);
    r.flag("right_inverse", back.right_inverse);
    r.flag("round_trip", round_trip);
    r.flag("connection_checks", rep.ok());
    for (const auto& f : rep.failures) r.witness(f);
    return r.done(round_trip && rep.ok() ? "pass" : "fail");
  }

  // Round trip of a connection from the file through its jet splitting.
  Result given_connection(const std::string& name) {
    const NamedConnection& nc = find(f_.connections, name, "connection");
    const GHBundle& b = f_.bundles.at(nc.bundle);
    Builder r("atiyah-jet", "connection " + name);
    const JetBundle j = jet_bundle(b);
    const SplittingResult s = splitting_tests(j, nc.connection);
    for (std::size_t i = 0; i < s.s.local.size(); ++i) r.add("S(" + std::to_string(i) + ")", fmt(s.s.local[i]));
    const ConnectionReport rep = check_connection(nc.connection, b);
    bool round_trip = false;
    if (s.right_inverse) round_trip = connection_from_splitting(s.s, j).a == nc.connection.a;
    r.flag("connection_checks", rep.ok());
    r.flag("homomorphism", s.homomorphism);
    r.flag("right_inverse", s.right_inverse);
    r.flag("round_trip", round_trip);
    for (const auto& f : rep.failures) r.witness(f);
    return r.done(rep.ok() && s.ok() && round_trip ? "pass" : "fail");
  }

  Result liepair(const std::string& name, const GHBundle& b) {
    Builder r("atiyah-liepair", name);
    const AnsatzSpace a = ansatz(b);
    search_header(r, a);
    const auto ext = flat_extension_solve(b, a);
    if (!ext) return unsolved(r, b, a);
    r.add("verdict", verdict_name(Verdict::Vanishing));
    bool ok = true;
    for (std::size_t i = 0; i < ext->size(); ++i) {
      const LiePairData& d = (*ext)[i];
      const std::string tag = "(" + std::to_string(i) + ")";
      for (std::size_t l = 0; l < d.gamma.size(); ++l) r.add("gamma" + tag + ".u" + std::to_string(l + 1), fmt(d.gamma[l]));
      const LieTensor rr = liepair_cocycle(d);
      const bool flat = is_zero(rr);
      const bool closed = is_zero(lie_d1(d, rr));
      bool curvature = true;
      for (const auto& row : flat_curvature(d))
        for (const auto& m : row) curvature = curvature && m.is_zero();
      r.flag("cocycle_vanishes" + tag, flat);
      r.flag("cocycle_closed" + tag, closed);
      r.flag("flat_part_flat" + tag, curvature);
      if (!flat) r.witness("chart " + std::to_string(i) + ": extension cocycle is nonzero");
      ok = ok && flat && closed && curvature;
    }
    return r.done(ok ? "pass" : "fail");
  }
};

}  // namespace

Report run(const ProblemFile& f, const RunOptions& opt) {
  if (!opt.command.empty() && std::find(kCommands.begin(), kCommands.end(), opt.command) == kCommands.end())
    fail(ErrorCode::ParseError, "unknown command \"" + opt.command + "\"");
  if (opt.command == "examples") fail(ErrorCode::ParseError, "examples takes no input file");
  Runner runner(f, opt);
  Report rep;
  auto timed = [&](const std::function<std::vector<Result>()>& job) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Result> out = job();
    if (opt.timings) {
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      for (auto& r : out) r.millis = ms / static_cast<double>(std::max<std::size_t>(out.size(), 1));
    }
    rep.results.insert(rep.results.end(), out.begin(), out.end());
  };
  bool matched = false;
  for (const auto& req : f.requests)
    if (opt.command.empty() || req.at("command") == opt.command) {
      matched = true;
      timed([&] { return runner.request(req); });
    }
  if (!opt.command.empty() && !matched) {
    timed([&] { return runner.all(opt.command); });
  } else if (opt.command.empty() && f.requests.empty()) {
    for (const auto& c : kCommands)
      if (c != "examples") timed([&] { return runner.all(c); });
  }
  return rep;
}

std::string Report::text() const {
  std::ostringstream out;
  for (const auto& r : results) {
    out << "[" << r.command << "] " << r.target << ": " << r.status << "\n";
    for (const auto& [k, v] : r.fields) out << "  " << k << " = " << v << "\n";
    for (const auto& w : r.witnesses) out << "  witness: " << w << "\n";
    if (r.millis) {
      std::ostringstream ms;
      ms.precision(3);
      ms << std::fixed << *r.millis;
      out << "  time_ms = " << ms.str() << "\n";
    }
  }
  return out.str();
}

OrderedJson Report::structured() const {
  OrderedJson j;
  j["version"] = "gcx-report/1";
  j["results"] = OrderedJson::array();
  for (const auto& r : results) {
    OrderedJson e;
    e["command"] = r.command;
    e["target"] = r.target;
    e["status"] = r.status;
    OrderedJson fields = OrderedJson::object();
    for (const auto& [k, v] : r.fields) fields[k] = v;
    e["fields"] = fields;
    e["witnesses"] = r.witnesses;
    if (r.millis) e["time_ms"] = *r.millis;
    j["results"].push_back(e);
  }
  return j;
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownVariable:
      return 2;
    case ErrorCode::SolverFailure:
      return 4;
    default:
      return 3;
  }
}

}  // namespace gcx::cli
