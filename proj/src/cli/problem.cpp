#include <set>

#include "gcx/cli/cli.hpp"
#include "gcx/error.hpp"
#include "gcx/scalar/parse.hpp"

namespace gcx::cli {

namespace {

constexpr const char* kVersion = "gcx-problem/1";

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorCode::ParseError, where + ": " + what);
}

void allow_keys(const Json& j, const std::string& where, std::set<std::string> keys) {
  if (!j.is_object()) bad(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!keys.count(it.key())) bad(where, "unknown key \"" + it.key() + "\"");
}

const Json& field(const Json& j, const std::string& where, const std::string& key) {
  if (!j.contains(key)) bad(where, "missing \"" + key + "\"");
  return j.at(key);
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

RatFunc expr(const Json& j, const ChartVars& c, const std::string& where) {
  const std::string s = text(j, where);
  try {
    return parse_ratfunc(s, c);
  } catch (const Error& e) {
    bad(where, e.what());
  }
}

RMatrix matrix(const Json& j, const ChartVars& c, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad(where, "expected a nonempty array of rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  RMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) bad(where, "rows of unequal length");
    for (std::size_t s = 0; s < cols; ++s) m(r, s) = expr(j[r][s], c, where);
  }
  return m;
}

template <class T>
const T& lookup(const std::map<std::string, T>& m, const Json& name, const std::string& where) {
  const std::string n = text(name, where);
  auto it = m.find(n);
  if (it == m.end()) bad(where, "unknown name \"" + n + "\"");
  return it->second;
}

std::pair<Var, Var> var_pair(const std::string& key, const std::string& where) {
  auto comma = key.find(',');
  if (comma == std::string::npos) bad(where, "expected a key of the form \"a,b\"");
  auto a = parse_var(key.substr(0, comma)), b = parse_var(key.substr(comma + 1));
  if (!a || !b) bad(where, "unknown variable in \"" + key + "\"");
  return {*a, *b};
}

ModelChart parse_chart(const Json& j, const std::string& where) {
  allow_keys(j, where, {"kind", "k", "m", "pi", "b_field"});
  const std::string kind = text(field(j, where, "kind"), where + ".kind");
  int k = 0, m = 0;
  if (kind == "complex") {
    k = integer(field(j, where, "k"), where + ".k");
  } else if (kind == "symplectic") {
    m = integer(field(j, where, "m"), where + ".m");
  } else if (kind == "darboux" || kind == "holomorphic-poisson") {
    k = j.contains("k") ? integer(j["k"], where + ".k") : 0;
    m = j.contains("m") ? integer(j["m"], where + ".m") : 0;
  } else {
    bad(where + ".kind", "unknown chart kind \"" + kind + "\"");
  }
  if (k < 0 || m < 0 || k + m < 1) bad(where, "chart dimension must be positive");
  const ChartVars vars(k, m);
  ModelChart chart = ModelChart::darboux(k, m);
  if (kind == "holomorphic-poisson") {
    RMatrix pi(k, k);
    if (j.contains("pi")) {
      if (!j["pi"].is_object()) bad(where + ".pi", "expected an object");
      for (auto it = j["pi"].begin(); it != j["pi"].end(); ++it) {
        auto [a, b] = var_pair(it.key(), where + ".pi");
        if (a.kind != VarKind::Z || b.kind != VarKind::Z || a.index > k || b.index > k || a.index == b.index)
          bad(where + ".pi", "entries are indexed by two distinct z variables");
        const RatFunc f = expr(it.value(), vars, where + ".pi." + it.key());
        pi(a.index - 1, b.index - 1) = f;
        pi(b.index - 1, a.index - 1) = -f;
      }
    }
    chart = ModelChart::holomorphic_poisson(k, m, pi);
  } else if (j.contains("pi")) {
    bad(where, "\"pi\" requires kind holomorphic-poisson");
  }
  if (j.contains("b_field")) {
    KForm b(vars, 2);
    const Json& bj = j["b_field"];
    if (!bj.is_object()) bad(where + ".b_field", "expected an object");
    for (auto it = bj.begin(); it != bj.end(); ++it) {
      auto [a, c] = var_pair(it.key(), where + ".b_field");
      if (!vars.contains(a) || !vars.contains(c)) bad(where + ".b_field", "variable outside the chart");
      b += KForm::monomial(vars, {a, c}, expr(it.value(), vars, where + ".b_field." + it.key()));
    }
    chart = chart.b_transformed(b);
  }
  return chart;
}

CoordinateChange parse_change(const Json& j, const ChartVars& c, const std::string& where) {
  allow_keys(j, where, {"z", "p", "q"});
  CoordinateChange t = CoordinateChange::identity(c);
  auto list = [&](const char* key, std::vector<RatFunc>& out, int n) {
    if (!j.contains(key)) return;
    const Json& a = j[key];
    if (!a.is_array() || static_cast<int>(a.size()) != n) bad(where + "." + key, "expected " + std::to_string(n) + " expressions");
    for (int i = 0; i < n; ++i) out[i] = expr(a[i], c, where + "." + key);
  };
  list("z", t.z, c.k());
  list("p", t.p, c.m());
  list("q", t.q, c.m());
  return t;
}

std::pair<int, int> between(const Json& j, int size, const std::string& where) {
  const Json& b = field(j, where, "between");
  if (!b.is_array() || b.size() != 2) bad(where + ".between", "expected two chart indices");
  const int i = integer(b[0], where + ".between"), k = integer(b[1], where + ".between");
  if (i < 0 || k < 0 || i >= size || k >= size || i == k) bad(where + ".between", "chart index out of range");
  return {i, k};
}

Cover parse_cover(const Json& j, const std::map<std::string, ModelChart>& charts, const std::string& where) {
  allow_keys(j, where, {"builtin", "charts", "overlaps", "triples"});
  if (j.contains("builtin")) {
    const std::string b = text(j["builtin"], where + ".builtin");
    if (j.size() != 1) bad(where, "a builtin cover takes no other keys");
    if (b == "projective-line") return projective_line_cover();
    if (b == "three-chart") return three_chart_cover();
    bad(where + ".builtin", "unknown builtin cover \"" + b + "\"");
  }
  const Json& names = field(j, where, "charts");
  if (!names.is_array() || names.empty()) bad(where + ".charts", "expected a nonempty array of chart names");
  std::vector<ModelChart> cs;
  for (const auto& n : names) cs.push_back(lookup(charts, n, where + ".charts"));
  Cover c(cs);
  const ChartVars& v = c.vars();
  if (j.contains("overlaps")) {
    if (!j["overlaps"].is_array()) bad(where + ".overlaps", "expected an array");
    int n = 0;
    for (const auto& o : j["overlaps"]) {
      const std::string w = where + ".overlaps[" + std::to_string(n++) + "]";
      allow_keys(o, w, {"between", "forward", "backward"});
      auto [a, b] = between(o, c.size(), w);
      c.add_overlap(a, b, parse_change(field(o, w, "forward"), v, w + ".forward"),
                    parse_change(field(o, w, "backward"), v, w + ".backward"));
    }
  }
  if (j.contains("triples")) {
    if (!j["triples"].is_array()) bad(where + ".triples", "expected an array");
    for (const auto& t : j["triples"]) {
      if (!t.is_array() || t.size() != 3) bad(where + ".triples", "expected three chart indices");
      c.add_triple(integer(t[0], where), integer(t[1], where), integer(t[2], where));
    }
  }
  return c;
}

GHBundle parse_bundle(const Json& j, const std::map<std::string, Cover>& covers, const std::string& where) {
  allow_keys(j, where, {"builtin", "n", "cover", "rank", "transitions"});
  if (j.contains("builtin")) {
    const std::string b = text(j["builtin"], where + ".builtin");
    if (b == "projective") return projective_line_bundle(integer(field(j, where, "n"), where + ".n"));
    const Cover& c = lookup(covers, field(j, where, "cover"), where + ".cover");
    if (b == "cotangent") return gstar_bundle(c);
    if (b == "tangent") return g_bundle(c);
    if (b == "trivial") return GHBundle::trivial(c, integer(field(j, where, "rank"), where + ".rank"));
    bad(where + ".builtin", "unknown builtin bundle \"" + b + "\"");
  }
  const Cover& c = lookup(covers, field(j, where, "cover"), where + ".cover");
  const int rank = integer(field(j, where, "rank"), where + ".rank");
  if (rank < 1) bad(where + ".rank", "rank must be positive");
  GHBundle b(c, rank);
  if (j.contains("transitions")) {
    if (!j["transitions"].is_array()) bad(where + ".transitions", "expected an array");
    int n = 0;
    for (const auto& t : j["transitions"]) {
      const std::string w = where + ".transitions[" + std::to_string(n++) + "]";
      allow_keys(t, w, {"between", "phi", "inverse"});
      auto [a, d] = between(t, c.size(), w);
      if (!c.overlaps(a, d)) bad(w, "charts do not overlap");
      RMatrix phi = matrix(field(t, w, "phi"), c.vars(), w + ".phi");
      if (static_cast<int>(phi.rows()) != rank || static_cast<int>(phi.cols()) != rank) bad(w + ".phi", "expected a rank x rank matrix");
      if (t.contains("inverse")) {
        RMatrix inv = matrix(t["inverse"], c.vars(), w + ".inverse");
        if (static_cast<int>(inv.rows()) != rank || static_cast<int>(inv.cols()) != rank) bad(w + ".inverse", "expected a rank x rank matrix");
        b.set_transition(a, d, phi, inv);
      } else {
        b.set_transition(a, d, phi);
      }
    }
  }
  return b;
}

NamedSection parse_section(const Json& j, const std::map<std::string, GHBundle>& bundles, const std::string& where) {
  allow_keys(j, where, {"bundle", "local", "chart0"});
  NamedSection s;
  s.bundle = text(field(j, where, "bundle"), where + ".bundle");
  const GHBundle& b = lookup(bundles, j["bundle"], where + ".bundle");
  const ChartVars& v = b.cover().vars();
  auto vec = [&](const Json& a, const std::string& w) {
    if (!a.is_array() || static_cast<int>(a.size()) != b.rank()) bad(w, "expected one expression per fiber coordinate");
    std::vector<RatFunc> out;
    for (const auto& e : a) out.push_back(expr(e, v, w));
    return out;
  };
  if (j.contains("chart0") == j.contains("local")) bad(where, "give exactly one of \"local\" and \"chart0\"");
  if (j.contains("chart0")) {
    s.section = section_from_chart0(vec(j["chart0"], where + ".chart0"), b);
  } else {
    const Json& l = j["local"];
    if (!l.is_array() || static_cast<int>(l.size()) != b.cover().size()) bad(where + ".local", "expected one vector per chart");
    for (std::size_t i = 0; i < l.size(); ++i) s.section.local.push_back(vec(l[i], where + ".local"));
  }
  return s;
}

NamedConnection parse_connection(const Json& j, const std::map<std::string, GHBundle>& bundles, const std::string& where) {
  allow_keys(j, where, {"bundle", "coefficients"});
  NamedConnection d;
  d.bundle = text(field(j, where, "bundle"), where + ".bundle");
  const GHBundle& b = lookup(bundles, j["bundle"], where + ".bundle");
  const Json& cs = field(j, where, "coefficients");
  const int k = b.cover().type();
  if (!cs.is_array() || static_cast<int>(cs.size()) != b.cover().size())
    bad(where + ".coefficients", "expected one list of matrices per chart");
  for (const auto& chart : cs) {
    if (!chart.is_array() || static_cast<int>(chart.size()) != k)
      bad(where + ".coefficients", "expected one matrix per dz component");
    std::vector<RMatrix> a;
    for (const auto& m : chart) {
      RMatrix x = matrix(m, b.cover().vars(), where + ".coefficients");
      if (static_cast<int>(x.rows()) != b.rank() || static_cast<int>(x.cols()) != b.rank())
        bad(where + ".coefficients", "expected rank x rank matrices");
      a.push_back(std::move(x));
    }
    d.connection.a.push_back(std::move(a));
  }
  return d;
}

template <class F>
void each(const Json& j, const char* key, F f) {
  if (!j.contains(key)) return;
  if (!j[key].is_object()) bad(key, "expected an object keyed by name");
  for (auto it = j[key].begin(); it != j[key].end(); ++it) f(it.key(), it.value(), std::string(key) + "." + it.key());
}

}  // namespace

ProblemFile parse_problem(const std::string& text_in) {
  Json j;
  try {
    j = Json::parse(text_in);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return parse_problem(j);
}

ProblemFile parse_problem(const Json& j) {
  allow_keys(j, "problem", {"version", "charts", "covers", "bundles", "sections", "connections", "functions",
                            "ansatz_window", "commands"});
  if (text(field(j, "problem", "version"), "version") != kVersion)
    bad("version", std::string("expected \"") + kVersion + "\"");
  ProblemFile f;
  each(j, "charts", [&](const std::string& n, const Json& v, const std::string& w) { f.charts.emplace(n, parse_chart(v, w)); });
  each(j, "covers", [&](const std::string& n, const Json& v, const std::string& w) {
    f.covers.emplace(n, parse_cover(v, f.charts, w));
  });
  each(j, "bundles", [&](const std::string& n, const Json& v, const std::string& w) {
    f.bundles.emplace(n, parse_bundle(v, f.covers, w));
  });
  each(j, "sections", [&](const std::string& n, const Json& v, const std::string& w) {
    f.sections.emplace(n, parse_section(v, f.bundles, w));
  });
  each(j, "connections", [&](const std::string& n, const Json& v, const std::string& w) {
    f.connections.emplace(n, parse_connection(v, f.bundles, w));
  });
  if (j.contains("functions")) {
    if (!j["functions"].is_array()) bad("functions", "expected an array of expressions");
    for (const auto& e : j["functions"]) {
      const std::string s = text(e, "functions");
      try {
        parse_ratfunc(s);
      } catch (const Error& err) {
        bad("functions", err.what());
      }
      f.functions.push_back(s);
    }
  }
  if (j.contains("ansatz_window")) f.ansatz_window = integer(j["ansatz_window"], "ansatz_window");
  if (j.contains("commands")) {
    if (!j["commands"].is_array()) bad("commands", "expected an array");
    for (const auto& r : j["commands"]) {
      const std::string c = text(field(r, "commands", "command"), "commands.command");
      if (std::find(kCommands.begin(), kCommands.end(), c) == kCommands.end() || c == "examples")
        bad("commands", "unknown command \"" + c + "\"");
    }
    f.requests = j["commands"];
  }
  return f;
}

OrderedJson gallery_problem() {
  OrderedJson g;
  g["version"] = kVersion;
  g["charts"] = {
      {"complex", {{"kind", "complex"}, {"k", 1}}},
      {"symplectic", {{"kind", "symplectic"}, {"m", 1}}},
      {"holomorphic-poisson", {{"kind", "holomorphic-poisson"}, {"k", 2}, {"pi", {{"z1,z2", "1"}}}}},
      {"complex-b", {{"kind", "complex"}, {"k", 1}, {"b_field", {{"z1,zbar1", "i"}}}}},
  };
  g["covers"] = {
      {"projective-line", {{"builtin", "projective-line"}}},
      {"three-chart", {{"builtin", "three-chart"}}},
      {"symplectic-chart", {{"charts", {"symplectic"}}}},
      {"poisson-chart", {{"charts", {"holomorphic-poisson"}}}},
  };
  OrderedJson bundles;
  for (int n = -2; n <= 2; ++n)
    bundles["projective-z^" + std::to_string(n)] = {{"builtin", "projective"}, {"n", n}};
  bundles["trivial"] = {{"builtin", "trivial"}, {"cover", "projective-line"}, {"rank", 1}};
  bundles["cotangent"] = {{"builtin", "cotangent"}, {"cover", "projective-line"}};
  auto rank2 = [](std::vector<std::vector<std::string>> phi) {
    OrderedJson t;
    t["between"] = {0, 1};
    t["phi"] = phi;
    OrderedJson b;
    b["cover"] = "projective-line";
    b["rank"] = 2;
    b["transitions"] = OrderedJson::array({t});
    return b;
  };
  bundles["unipotent"] = rank2({{"1", "z1"}, {"0", "1"}});
  bundles["sum-z^1-z^-1"] = rank2({{"z1", "0"}, {"0", "1/z1"}});
  bundles["cotangent-three-chart"] = {{"builtin", "cotangent"}, {"cover", "three-chart"}};
  bundles["symplectic-trivial"] = {{"builtin", "trivial"}, {"cover", "symplectic-chart"}, {"rank", 2}};
  bundles["poisson-trivial"] = {{"builtin", "trivial"}, {"cover", "poisson-chart"}, {"rank", 1}};
  g["bundles"] = bundles;
  auto section = [](const char* bundle, std::vector<std::string> chart0) {
    OrderedJson s;
    s["bundle"] = bundle;
    s["chart0"] = chart0;
    return s;
  };
  OrderedJson sections;
  sections["unit-trivial"] = section("trivial", {"1"});
  sections["linear-z^1"] = section("projective-z^1", {"1 + z1"});
  sections["unipotent-frame"] = section("unipotent", {"z1", "1"});
  sections["poisson-z2"] = section("poisson-trivial", {"z2"});
  g["sections"] = sections;
  OrderedJson zero;
  zero["bundle"] = "trivial";
  zero["coefficients"] = OrderedJson::array({OrderedJson::array({OrderedJson::array({OrderedJson::array({"0"})})}),
                                             OrderedJson::array({OrderedJson::array({OrderedJson::array({"0"})})})});
  g["connections"]["zero-trivial"] = zero;
  OrderedJson uni;
  uni["bundle"] = "unipotent";
  const std::vector<std::vector<std::string>> a0 = {{"0", "-1"}, {"0", "0"}}, a1 = {{"0", "0"}, {"0", "0"}};
  uni["coefficients"] = OrderedJson::array({OrderedJson::array({a0}), OrderedJson::array({a1})});
  g["connections"]["unipotent-glued"] = uni;
  g["functions"] = {"1", "z1", "zbar1", "z1*z2", "p1"};
  g["ansatz_window"] = 8;
  auto request = [](const char* command, std::initializer_list<std::pair<const char*, OrderedJson>> params) {
    OrderedJson r;
    r["command"] = command;
    for (const auto& [k, v] : params) r[k] = v;
    return r;
  };
  auto gsection = [](std::initializer_list<std::pair<const char*, std::pair<const char*, const char*>>> parts) {
    OrderedJson s = OrderedJson::object();
    for (const auto& [kind, entry] : parts) s[kind][entry.first] = entry.second;
    return s;
  };
  OrderedJson requests = OrderedJson::array();
  requests.push_back(request("check-function", {{"chart", "symplectic"}, {"function", "z1"}}));
  requests.push_back(request("check-function", {{"chart", "complex"}, {"function", "z1^3 + 2*z1"}}));
  requests.push_back(request("courant", {{"chart", "complex"},
                                         {"a", gsection({{"vector", {"z1", "z1"}}})},
                                         {"b", gsection({{"vector", {"zbar1", "1"}}, {"form", {"z1", "zbar1"}}})},
                                         {"c", gsection({{"form", {"zbar1", "z1^2"}}})}}));
  requests.push_back(request("poisson-module", {{"section", "poisson-z2"}, {"function", "z1"}}));
  g["commands"] = requests;
  return g;
}

}  // namespace gcx::cli
