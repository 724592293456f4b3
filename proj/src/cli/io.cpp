#include "lls/cli/io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lls::cli {

using exactalg::FieldSpec;
using exactalg::Scalar;
using exactalg::Vector;
using multidegrees::Multidegree;

namespace {

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

Scalar parse_scalar(const json& j, const FieldSpec& f) {
  try {
    if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
    if (j.is_string()) return f.parse(j.get<std::string>());
  } catch (const exactalg::FieldError& e) {
    throw InputError(e.what());
  }
  throw InputError("field elements must be integers or \"num/den\" strings, got " + j.dump());
}

long parse_long(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer, got " + j.dump());
  return j.get<long>();
}

std::size_t vertex_index(const graphs::DualGraph& g, const std::string& label, const std::string& where) {
  auto idx = g.index_of(label);
  if (!idx) throw InputError(where + ": unknown vertex \"" + label + "\"");
  return *idx;
}

}  // namespace

FieldSpec parse_field(const json& j) {
  auto kind = need(j, "kind", "field").get<std::string>();
  if (kind == "rational") return FieldSpec::rationals();
  if (kind == "prime") {
    long p = parse_long(need(j, "p", "field"), "field.p");
    try {
      return FieldSpec::prime(static_cast<std::uint32_t>(p));
    } catch (const exactalg::FieldError& e) {
      throw InputError(e.what());
    }
  }
  throw InputError("field.kind must be \"rational\" or \"prime\"");
}

json field_to_json(const FieldSpec& f) {
  if (f.is_prime()) return json{{"kind", "prime"}, {"p", f.characteristic()}};
  return json{{"kind", "rational"}};
}

Multidegree parse_multidegree(const json& j, const graphs::DualGraph& g) {
  Multidegree w;
  w.weights.assign(g.num_vertices(), 0);
  const auto& vw = need(j, "vertex_weights", "multidegree");
  if (!vw.is_object()) throw InputError("vertex_weights must map vertex labels to integers");
  std::vector<bool> seen(g.num_vertices(), false);
  for (const auto& [label, val] : vw.items()) {
    auto v = vertex_index(g, label, "vertex_weights");
    w.weights[v] = parse_long(val, "vertex_weights." + label);
    seen[v] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw InputError("vertex_weights must list every vertex");
  const auto& mu = need(j, "mu", "multidegree");
  if (!mu.is_array() || mu.size() != g.num_edges()) throw InputError("mu needs one entry per edge");
  for (const auto& x : mu) w.mu.push_back(static_cast<int>(parse_long(x, "mu")));
  return w;
}

json multidegree_to_json(const Multidegree& w, const graphs::DualGraph& g) {
  json vw = json::object();
  for (std::size_t v = 0; v < g.num_vertices(); ++v) vw[g.label(v)] = w.weights[v];
  return json{{"vertex_weights", vw}, {"mu", w.mu}};
}

Multidegree parse_compact_multidegree(const std::string& s, const multidegrees::ChainedGraph& cg) {
  Multidegree w;
  auto bar = s.find('|');
  auto read = [&](const std::string& part, auto& out) {
    std::stringstream ss(part);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
      if (tok.empty()) continue;
      try {
        out.push_back(static_cast<typename std::decay_t<decltype(out)>::value_type>(std::stol(tok)));
      } catch (const std::exception&) {
        throw InputError("bad integer \"" + tok + "\" in multidegree \"" + s + "\"");
      }
    }
  };
  read(s.substr(0, bar), w.weights);
  if (bar != std::string::npos) read(s.substr(bar + 1), w.mu);
  if (w.mu.empty()) w.mu.assign(cg.num_edges(), 0);
  if (!multidegrees::is_well_formed(cg, w)) throw InputError("multidegree \"" + s + "\" does not fit the graph");
  return w;
}

json matrix_to_json(const exactalg::Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

json vectors_to_json(const std::vector<Vector>& vs) {
  json rows = json::array();
  for (const auto& v : vs) {
    json row = json::array();
    for (const auto& x : v) row.push_back(x.to_string());
    rows.push_back(row);
  }
  return rows;
}

std::vector<Vector> parse_vectors(const json& j, const FieldSpec& f, std::size_t len) {
  if (!j.is_array()) throw InputError("expected a list of rows");
  std::vector<Vector> out;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != len)
      throw InputError("each row needs " + std::to_string(len) + " entries, got " + row.dump());
    Vector v;
    for (const auto& x : row) v.push_back(parse_scalar(x, f));
    out.push_back(std::move(v));
  }
  return out;
}

exactalg::Matrix parse_matrix(const json& j, const FieldSpec& f, std::size_t rows, std::size_t cols) {
  auto vs = parse_vectors(j, f, cols);
  if (vs.size() != rows) throw InputError("expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  return exactalg::Matrix::from_rows(f, cols, vs);
}

json tuple_to_json(const multidegrees::ConcentratedTuple& t, const multidegrees::ChainedGraph& cg) {
  const auto& g = cg.graph();
  json w = json::object();
  for (std::size_t v = 0; v < t.w.size(); ++v) w[g.label(v)] = multidegree_to_json(t.w[v], g);
  json b = json::array();
  for (std::size_t ce = 0; ce < t.b.size(); ++ce) {
    const auto& e = cg.collapsed().edges[ce];
    b.push_back(json{{"a", g.label(e.a)}, {"b", g.label(e.b)}, {"count", t.b[ce]}});
  }
  return json{{"w", w}, {"b", b}};
}

InstanceFile parse_instance(const json& j) {
  if (!j.is_object()) throw InputError("instance must be a JSON object");
  if (!j.contains("schema") || j.at("schema") != kInstanceSchema)
    throw InputError(std::string("instance schema must be \"") + kInstanceSchema + "\"");
  InstanceFile out;
  auto F = parse_field(need(j, "field", "instance"));
  const auto& vs = need(j, "vertices", "instance");
  if (!vs.is_array() || vs.empty()) throw InputError("vertices must be a nonempty list of labels");
  std::vector<std::string> labels;
  for (const auto& v : vs) {
    if (!v.is_string()) throw InputError("vertex labels must be strings");
    labels.push_back(v.get<std::string>());
  }
  std::sort(labels.begin(), labels.end());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!index.emplace(labels[i], i).second) throw InputError("duplicate vertex label \"" + labels[i] + "\"");
  std::vector<curves::EdgeSpec> edges;
  const auto& es = need(j, "edges", "instance");
  if (!es.is_array()) throw InputError("edges must be a list");
  for (std::size_t e = 0; e < es.size(); ++e) {
    std::string where = "edge " + std::to_string(e);
    const auto& ej = es[e];
    auto label = [&](const char* key) {
      const auto& x = need(ej, key, where);
      if (!x.is_string() || !index.count(x.get<std::string>()))
        throw InputError(where + ": unknown vertex " + x.dump());
      return index.at(x.get<std::string>());
    };
    curves::EdgeSpec spec;
    spec.tail = label("tail");
    spec.head = label("head");
    spec.n = ej.contains("n") ? static_cast<int>(parse_long(ej.at("n"), where + ".n")) : 1;
    spec.tail_coord = parse_scalar(need(ej, "tail_coord", where), F);
    spec.head_coord = parse_scalar(need(ej, "head_coord", where), F);
    spec.lambda = ej.contains("lambda") ? parse_scalar(ej.at("lambda"), F) : F.one();
    edges.push_back(spec);
  }
  // Build the graph once to read multidegrees against it.
  std::vector<graphs::Edge> raw;
  graphs::ChainStructure ns;
  for (const auto& e : edges) {
    raw.push_back({e.tail, e.head});
    ns.push_back(e.n);
  }
  graphs::DualGraph g(labels, raw);
  auto gd = graphs::validate(g);
  if (!gd.ok) throw InputError(gd.problems.front());
  for (std::size_t e = 0; e < ns.size(); ++e)
    if (ns[e] < 1) throw InputError("edge " + std::to_string(e) + ": n must be at least 1");
  auto w0 = parse_multidegree(need(j, "w0", "instance"), g);
  try {
    out.instance = curves::make_instance(F, labels, edges, w0);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const auto& cg = *out.instance.graph;
  if (j.contains("tuple")) {
    if (!cg.multitree()) throw InputError("a concentrated tuple is only meaningful on multitrees");
    const auto& tj = j.at("tuple");
    multidegrees::ConcentratedTuple t;
    const auto& wj = need(tj, "w", "tuple");
    t.w.resize(g.num_vertices());
    std::vector<bool> seen(g.num_vertices(), false);
    for (const auto& [label, m] : wj.items()) {
      auto v = vertex_index(g, label, "tuple.w");
      t.w[v] = parse_multidegree(m, g);
      seen[v] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw InputError("tuple.w must list every vertex");
    t.b.assign(cg.collapsed().edges.size(), 0);
    std::vector<bool> bseen(t.b.size(), false);
    for (const auto& bj : need(tj, "b", "tuple")) {
      auto a = vertex_index(g, need(bj, "a", "tuple.b").get<std::string>(), "tuple.b");
      auto b = vertex_index(g, need(bj, "b", "tuple.b").get<std::string>(), "tuple.b");
      auto ce = cg.collapsed().between(a, b);
      if (!ce) throw InputError("tuple.b: vertices are not adjacent");
      long count = parse_long(need(bj, "count", "tuple.b"), "tuple.b.count");
      t.b[*ce] = count;
      bseen[*ce] = true;
    }
    if (std::find(bseen.begin(), bseen.end(), false) != bseen.end())
      throw InputError("tuple.b must list every pair of adjacent vertices");
    auto td = multidegrees::validate_concentrated_tuple(cg, t);
    if (!td.ok) throw InputError("tuple: " + td.problems.front());
    out.instance.tuple = t;
    out.tuple_given = true;
  }
  if (j.contains("candidates")) {
    for (const auto& cj : j.at("candidates")) {
      llseries::Candidate c;
      c.r = parse_long(need(cj, "r", "candidate"), "candidate.r");
      c.V.resize(g.num_vertices());
      const auto& V = need(cj, "V", "candidate");
      std::vector<bool> seen(g.num_vertices(), false);
      for (const auto& [label, rows] : V.items()) {
        auto v = vertex_index(g, label, "candidate.V");
        const auto& wv = out.instance.tuple.w[v];
        long deg = wv.weights[v];
        c.V[v] = parse_vectors(rows, F, deg < 0 ? 0 : static_cast<std::size_t>(deg + 1));
        seen[v] = true;
      }
      if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw InputError("candidate.V must list every vertex");
      out.candidates.push_back(std::move(c));
    }
  }
  return out;
}

json candidate_to_json(const llseries::Candidate& c, const graphs::DualGraph& g) {
  json V = json::object();
  for (std::size_t v = 0; v < c.V.size(); ++v) V[g.label(v)] = vectors_to_json(c.V[v]);
  return json{{"r", c.r}, {"V", V}};
}

json instance_to_json(const InstanceFile& f) {
  const auto& inst = f.instance;
  const auto& cg = *inst.graph;
  const auto& g = cg.graph();
  json out;
  out["schema"] = kInstanceSchema;
  out["field"] = field_to_json(inst.field);
  out["vertices"] = g.labels();
  json edges = json::array();
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    edges.push_back(json{{"tail", g.label(g.edge(e).tail)},
                         {"head", g.label(g.edge(e).head)},
                         {"n", cg.n(e)},
                         {"tail_coord", inst.tail_coord[e].to_string()},
                         {"head_coord", inst.head_coord[e].to_string()},
                         {"lambda", inst.lambda[e].to_string()}});
  out["edges"] = edges;
  out["w0"] = multidegree_to_json(inst.w0, g);
  if (cg.multitree()) out["tuple"] = tuple_to_json(inst.tuple, cg);
  if (!f.candidates.empty()) {
    json cs = json::array();
    for (const auto& c : f.candidates) cs.push_back(candidate_to_json(c, g));
    out["candidates"] = cs;
  }
  return out;
}

json verdict_to_json(const llseries::Verdict& v, const graphs::DualGraph& g) {
  json out;
  out["method"] = v.method;
  out["member"] = v.member;
  out["window_bounded"] = v.window_bounded;
  out["r"] = v.r;
  out["d"] = v.d;
  out["g"] = v.g;
  out["rho"] = v.rho;
  json degs = json::object();
  for (std::size_t u = 0; u < v.component_degrees.size(); ++u) degs[g.label(u)] = v.component_degrees[u];
  out["component_degrees"] = degs;
  if (!v.kernel_dims.empty()) {
    json ks = json::array();
    for (const auto& [w, k] : v.kernel_dims) ks.push_back(json{{"w", multidegree_to_json(w, g)}, {"kernel_dim", k}});
    out["kernel_dims"] = ks;
  }
  if (!v.edges.empty()) {
    json es = json::array();
    for (const auto& e : v.edges) {
      json steps = json::array();
      for (const auto& s : e.steps)
        steps.push_back(json{{"j", s.j},
                             {"l1", s.l1},
                             {"l2", s.l2},
                             {"l3", s.l3},
                             {"l4", s.l4},
                             {"rank", s.rank},
                             {"overlap", s.overlap},
                             {"required", s.required}});
      json fails = json::array();
      for (const auto& [l, j] : e.failures_I) fails.push_back(json{{"l", l}, {"j", j}});
      es.push_back(json{{"v", g.label(e.v)},
                        {"v_prime", g.label(e.v2)},
                        {"b", e.b},
                        {"a_v", e.a1.a},
                        {"a_v_prime", e.a2.a},
                        {"terminal", e.a1.terminal || e.a2.terminal},
                        {"critical", e.critical},
                        {"condition_I", e.cond_I},
                        {"condition_I_symmetric", e.cond_I_symmetric},
                        {"failures_I", fails},
                        {"condition_II", e.cond_II_checked ? json(e.cond_II) : json(nullptr)},
                        {"steps", steps}});
    }
    out["edges"] = es;
  }
  return out;
}

ChainFile parse_chain(const json& j) {
  if (!j.is_object() || !j.contains("schema") || j.at("schema") != kChainSchema)
    throw InputError(std::string("chain schema must be \"") + kChainSchema + "\"");
  ChainFile out;
  auto& c = out.chain;
  c.field = parse_field(need(j, "field", "chain"));
  long d = parse_long(need(j, "d", "chain"), "chain.d");
  long n = parse_long(need(j, "n", "chain"), "chain.n");
  if (d < 0 || n < 1) throw InputError("chain needs d >= 0 and n >= 1");
  c.d = static_cast<std::size_t>(d);
  c.n = static_cast<std::size_t>(n);
  c.s = parse_scalar(need(j, "s", "chain"), c.field);
  const auto& f = need(j, "f", "chain");
  const auto& fb = need(j, "fback", "chain");
  if (!f.is_array() || !fb.is_array() || f.size() != c.n - 1 || fb.size() != c.n - 1)
    throw InputError("f and fback need n-1 matrices each");
  for (std::size_t i = 0; i + 1 < c.n; ++i) {
    c.f.push_back(parse_matrix(f[i], c.field, c.d, c.d));
    c.fback.push_back(parse_matrix(fb[i], c.field, c.d, c.d));
  }
  if (j.contains("flags")) {
    const auto& fl = j.at("flags");
    linkedet::FlagPair p;
    long r = parse_long(need(fl, "r", "flags"), "flags.r");
    if (r < 0) throw InputError("flags.r must be nonnegative");
    p.r = static_cast<std::size_t>(r);
    p.F1 = parse_vectors(need(fl, "F1", "flags"), c.field, c.d);
    p.Fn = parse_vectors(need(fl, "Fn", "flags"), c.field, c.d);
    if (exactalg::span_basis(c.field, c.d, p.F1).size() != p.r || exactalg::span_basis(c.field, c.d, p.Fn).size() != p.r)
      throw InputError("flags must have full row rank r");
    out.flags = p;
  }
  return out;
}

json chain_to_json(const linkedet::LinkedChain& c, const std::optional<linkedet::FlagPair>& flags) {
  json out;
  out["schema"] = kChainSchema;
  out["field"] = field_to_json(c.field);
  out["d"] = c.d;
  out["n"] = c.n;
  out["s"] = c.s.to_string();
  json f = json::array(), fb = json::array();
  for (const auto& m : c.f) f.push_back(matrix_to_json(m));
  for (const auto& m : c.fback) fb.push_back(matrix_to_json(m));
  out["f"] = f;
  out["fback"] = fb;
  if (flags) out["flags"] = json{{"r", flags->r}, {"F1", vectors_to_json(flags->F1)}, {"Fn", vectors_to_json(flags->Fn)}};
  return out;
}

}  // namespace lls::cli
