#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lls/cli/corpus.hpp"
#include "lls/cli/io.hpp"

using namespace lls;
using lls::cli::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInvalid = 2, kDisagree = 3 };

struct Output {
  std::string format = "text";
  bool timings = false;
  std::uint64_t seed = 0;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli::InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw cli::InputError(path + ": " + e.what());
  }
}

int emit(const Output& o, const std::string& command, const json& result, const std::string& text, int code,
         double seconds) {
  if (o.format == "json") {
    json rep;
    rep["schema"] = cli::kReportSchema;
    rep["command"] = command;
    rep["seed"] = o.seed;
    rep["exit_code"] = code;
    rep["result"] = result;
    if (o.timings) rep["timings"] = json{{"seconds", seconds}};
    std::cout << rep.dump(2) << "\n";
  } else {
    std::cout << text;
    if (o.timings) std::cout << "time: " << seconds << " s\n";
  }
  return code;
}

std::string yes_no(bool b) { return b ? "member" : "non-member"; }

std::string render_w(const multidegrees::Multidegree& w) { return w.to_string(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit linear series on nodal curves not of compact type"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_option("--format", out.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timings", out.timings, "Include wall-clock timings (makes output run-dependent)");
  app.add_option("--seed", out.seed, "Random seed");

  std::string path;
  auto* validate = app.add_subcommand("validate", "Check an instance file");
  validate->add_option("instance", path)->required();

  std::string counts_text;
  bool negative = false;
  auto* twist = app.add_subcommand("twist", "Apply a twist multiset to w0");
  twist->add_option("instance", path)->required();
  twist->add_option("--counts", counts_text, "label=count,... (missing labels mean 0)")->required();
  twist->add_flag("--negative", negative, "Apply negative twists instead");

  std::string vertex_label;
  auto* conc = app.add_subcommand("concentrate", "Concentrate w0 at a vertex");
  conc->add_option("instance", path)->required();
  conc->add_option("--vertex", vertex_label)->required();

  auto* barg = app.add_subcommand("bar-g", "Enumerate the bounded tree of multidegrees");
  barg->add_option("instance", path)->required();

  std::string w_text;
  auto* sections = app.add_subcommand("sections", "Global sections in one multidegree");
  sections->add_option("instance", path)->required();
  sections->add_option("--w", w_text, "Multidegree as w1,w2,...|mu1,... in sorted label order (default w0)");

  std::string method = "both";
  int window = -1;
  auto* check = app.add_subcommand("lls-check", "Decide membership of the instance's candidates");
  check->add_option("instance", path)->required();
  auto* method_opt = check->add_option("--method", method)->check(CLI::IsMember({"kernel", "eh", "both"}));
  check->add_option("--window", window,
                    "Extra twists around the bounded tree (multitrees) or around w0 (other graphs)");

  auto* linked = app.add_subcommand("linked-det", "Linked determinantal loci");
  linked->require_subcommand(1);
  linked->fallthrough();
  auto* lvalidate = linked->add_subcommand("validate", "Check the s-linked conditions");
  lvalidate->add_option("chain", path)->required();
  auto* lcheck = linked->add_subcommand("check", "Linked determinantal membership of the flags");
  lcheck->add_option("chain", path)->required();
  auto* lcomplete = linked->add_subcommand("complete", "Complete the flags to a linked Grassmannian point");
  lcomplete->add_option("chain", path)->required();
  std::uint32_t gen_p = 2;
  std::size_t gen_d = 2, gen_n = 2;
  long gen_s = 0;
  std::vector<std::size_t> gen_ranks;
  auto* lgen = linked->add_subcommand("gen", "Random s-linked chain");
  lgen->add_option("--p", gen_p, "Prime field size");
  lgen->add_option("--d", gen_d);
  lgen->add_option("--n", gen_n);
  lgen->add_option("--s", gen_s);
  lgen->add_option("--ranks", gen_ranks, "Rank of each forward map (s = 0)");

  std::string edge_text;
  long extra = -1;
  auto* bridge = app.add_subcommand("bridge", "Chain of augmented section spaces plus cross-check");
  bridge->add_option("instance", path)->required();
  bridge->add_option("--edge", edge_text, "Adjacent pair a,b (default: every pair)");
  bridge->add_option("--extra", extra, "Degree added on every component (default: smallest that works)");

  std::string suite;
  int count = -1;
  auto* corpus = app.add_subcommand("corpus", "Run a cross-validation suite");
  corpus->add_option("suite", suite)
      ->required()
      ->check(CLI::IsMember({"two-component", "multitree", "window", "tuples", "concentration", "twists",
                             "sections", "linked", "bridge", "classical"}));
  corpus->add_option("--count", count, "Number of random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kInvalid;
  }

  auto t0 = std::chrono::steady_clock::now();
  auto secs = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  try {
    if (linked->parsed()) {
      if (lgen->parsed()) {
        auto F = exactalg::FieldSpec::prime(gen_p);
        auto c = linkedet::gen_random_chain(out.seed, F, gen_d, gen_n, F.from_int(gen_s), gen_ranks);
        auto j = cli::chain_to_json(c);
        return emit(out, "linked-det gen", j, j.dump(2) + "\n", kOk, secs());
      }
      auto file = cli::parse_chain(read_json(path));
      auto diag = linkedet::validate_s_linked(file.chain);
      json problems = diag.problems;
      if (lvalidate->parsed()) {
        std::string text = diag.ok ? "chain is s-linked\n" : "";
        for (const auto& p : diag.problems) text += "violation: " + p + "\n";
        return emit(out, "linked-det validate", json{{"ok", diag.ok}, {"problems", problems}}, text,
                    diag.ok ? kOk : kNegative, secs());
      }
      if (!diag.ok) {
        for (const auto& p : diag.problems) std::cerr << "invalid chain: " << p << "\n";
        return kInvalid;
      }
      if (!file.flags) throw cli::InputError("chain file has no flags");
      if (lcheck->parsed()) {
        auto m = linkedet::linked_det_membership(file.chain, *file.flags);
        std::ostringstream t;
        t << yes_no(m.member) << "\nranks:";
        for (auto r : m.ranks) t << " " << r;
        t << " (bound d - r = " << file.chain.d - file.flags->r << ")\n";
        return emit(out, "linked-det check", json{{"member", m.member}, {"ranks", m.ranks}}, t.str(),
                    m.member ? kOk : kNegative, secs());
      }
      auto comp = linkedet::complete_flags(file.chain, *file.flags);
      json res{{"ok", comp.ok}};
      std::ostringstream t;
      if (comp.ok) {
        json fs = json::array();
        for (std::size_t k = 0; k < comp.F.size(); ++k) {
          fs.push_back(cli::vectors_to_json(comp.F[k]));
          t << "F_" << k + 1 << " = " << cli::vectors_to_json(comp.F[k]).dump() << "\n";
        }
        res["F"] = fs;
        auto v = linkedet::validate_linked_grassmannian(file.chain, comp.F, file.flags->r);
        res["containments_ok"] = v.ok;
        t << "containments " << (v.ok ? "hold" : "FAIL") << "\n";
      } else {
        res["reason"] = comp.reason;
        t << "no completion: " << comp.reason << "\n";
      }
      return emit(out, "linked-det complete", res, t.str(), comp.ok ? kOk : kNegative, secs());
    }

    if (corpus->parsed()) {
      cli::SuiteReport rep;
      auto n = [&](int dflt) { return count > 0 ? count : dflt; };
      if (suite == "two-component") rep = cli::run_two_component_equivalence({2, 3}, 3);
      if (suite == "multitree") rep = cli::run_multitree_equivalence(5, n(500), out.seed);
      if (suite == "window") rep = cli::run_window_stability(5, n(200), 3, out.seed);
      if (suite == "tuples") rep = cli::run_tuple_independence(5, n(100), out.seed);
      if (suite == "concentration") rep = cli::run_concentration(5, n(500), out.seed);
      if (suite == "twists") rep = cli::run_twist_calculus(n(100), 10, out.seed);
      if (suite == "sections") rep = cli::run_section_dimensions(5, n(100), out.seed);
      if (suite == "linked") rep = cli::run_linked_det_exhaustive(2, 2, {2, 3}, 1);
      if (suite == "bridge") rep = cli::run_bridge(5, n(100), out.seed);
      if (suite == "classical") rep = cli::run_classical_specialization(5, n(100), out.seed);
      json notes = json::object();
      for (const auto& [k, v] : rep.notes) notes[k] = v;
      json res{{"suite", rep.name},   {"cases", rep.cases},   {"agreements", rep.agreements},
               {"members", rep.members}, {"notes", notes}, {"counterexamples", rep.counterexamples}};
      std::ostringstream t;
      t << rep.name << ": " << rep.agreements << "/" << rep.cases << " agree (" << rep.members << " members)\n";
      for (const auto& [k, v] : rep.notes) t << "  " << k << ": " << v << "\n";
      for (const auto& c : rep.counterexamples) t << "  counterexample: " << c << "\n";
      return emit(out, "corpus " + suite, res, t.str(), rep.passed() ? kOk : kDisagree, secs());
    }

    auto file = cli::parse_instance(read_json(path));
    const auto& inst = file.instance;
    const auto& cg = *inst.graph;
    const auto& g = cg.graph();
    curves::CurveModel model(inst);

    if (validate->parsed()) {
      json problems = json::array();
      for (std::size_t i = 0; i < file.candidates.size(); ++i) {
        auto d = llseries::validate_candidate(model, inst.tuple, file.candidates[i]);
        for (const auto& p : d.problems) problems.push_back("candidate " + std::to_string(i) + ": " + p);
      }
      json res{{"ok", problems.empty()},
               {"vertices", g.num_vertices()},
               {"edges", g.num_edges()},
               {"genus", model.genus()},
               {"degree", model.degree()},
               {"multitree", cg.multitree()},
               {"tuple", cg.multitree() ? cli::tuple_to_json(inst.tuple, cg) : json(nullptr)},
               {"tuple_derived", !file.tuple_given},
               {"problems", problems}};
      std::ostringstream t;
      t << (problems.empty() ? "valid" : "invalid") << ": " << g.num_vertices() << " components, " << g.num_edges()
        << " nodes, genus " << model.genus() << ", degree " << model.degree()
        << (cg.multitree() ? ", multitree\n" : ", not a multitree\n");
      for (const auto& p : problems) {
        std::cerr << p.get<std::string>() << "\n";
      }
      return emit(out, "validate", res, t.str(), problems.empty() ? kOk : kInvalid, secs());
    }

    if (twist->parsed()) {
      multidegrees::TwistMultiset counts(g.num_vertices(), 0);
      std::stringstream ss(counts_text);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw cli::InputError("counts must look like label=count");
        auto v = g.index_of(tok.substr(0, eq));
        if (!v) throw cli::InputError("unknown vertex \"" + tok.substr(0, eq) + "\"");
        counts[*v] = std::stol(tok.substr(eq + 1));
        if (counts[*v] < 0) throw cli::InputError("counts must be nonnegative");
      }
      auto w = inst.w0;
      for (std::size_t v = 0; v < counts.size(); ++v)
        for (long k = 0; k < counts[v]; ++k)
          w = negative ? multidegrees::negative_twist(cg, w, v) : multidegrees::twist(cg, w, v);
      json res{{"w", cli::multidegree_to_json(w, g)}};
      return emit(out, "twist", res, render_w(w) + "\n", kOk, secs());
    }

    if (conc->parsed()) {
      auto v = g.index_of(vertex_label);
      if (!v) throw cli::InputError("unknown vertex \"" + vertex_label + "\"");
      auto c = multidegrees::concentrate(cg, inst.w0, *v);
      auto order = multidegrees::is_concentrated(cg, c.w, *v);
      json ord = json::array();
      if (order)
        for (auto x : *order) ord.push_back(g.label(x));
      json tw = json::object();
      for (std::size_t x = 0; x < c.twists.size(); ++x) tw[g.label(x)] = c.twists[x];
      json res{{"w", cli::multidegree_to_json(c.w, g)}, {"twists", tw}, {"witness_order", ord}};
      std::ostringstream t;
      t << render_w(c.w) << "\nwitness order:";
      for (const auto& x : ord) t << " " << x.get<std::string>();
      t << "\n";
      return emit(out, "concentrate", res, t.str(), kOk, secs());
    }

    if (barg->parsed()) {
      if (!cg.multitree()) throw cli::InputError("the bounded tree needs a multitree");
      auto bar = multidegrees::enumerate_bar_G(cg, inst.tuple);
      json nodes = json::array(), arcs = json::array();
      std::ostringstream t;
      for (const auto& w : bar.nodes) {
        nodes.push_back(cli::multidegree_to_json(w, g));
        t << render_w(w) << "\n";
      }
      for (const auto& a : bar.arcs) {
        const auto& e = cg.collapsed().edges[a.ce];
        arcs.push_back(json{{"from", a.from},
                            {"to", a.to},
                            {"edge", json::array({g.label(e.a), g.label(e.b)})},
                            {"at", g.label(a.v)}});
      }
      t << bar.nodes.size() << " multidegrees, " << bar.arcs.size() << " arcs\n";
      return emit(out, "bar-g", json{{"nodes", nodes}, {"arcs", arcs}}, t.str(), kOk, secs());
    }

    if (sections->parsed()) {
      auto w = w_text.empty() ? inst.w0 : cli::parse_compact_multidegree(w_text, cg);
      auto S = model.section_space(w);
      json res{{"w", cli::multidegree_to_json(w, g)},
               {"dim", S->dim()},
               {"expected_generic", model.degree() + 1 - model.genus()},
               {"ambient_dim", S->ambient_dim},
               {"basis", cli::matrix_to_json(S->basis)}};
      std::ostringstream t;
      t << "dim Gamma(L_w) = " << S->dim() << " at " << render_w(w) << " (d + 1 - g = "
        << model.degree() + 1 - model.genus() << ")\n";
      return emit(out, "sections", res, t.str(), kOk, secs());
    }

    if (check->parsed()) {
      if (file.candidates.empty()) throw cli::InputError("instance has no candidates to check");
      for (std::size_t i = 0; i < file.candidates.size(); ++i) {
        auto d = llseries::validate_candidate(model, inst.tuple, file.candidates[i]);
        if (!d.ok) throw cli::InputError("candidate " + std::to_string(i) + ": " + d.problems.front());
      }
      std::optional<std::vector<multidegrees::Multidegree>> win;
      if (!cg.multitree()) {
        if (method != "kernel") {
          if (method_opt->count() > 0) throw cli::InputError("off multitrees only --method kernel is available");
          std::cerr << "note: not a multitree, using the kernel method only\n";
          method = "kernel";
        }
        win = multidegrees::twist_ball(cg, {inst.w0}, window < 0 ? 2 : window);
      } else if (window > 0) {
        win = multidegrees::twist_ball(cg, multidegrees::enumerate_bar_G(cg, inst.tuple).nodes, window);
      }
      llseries::KernelChecker checker(model, inst.tuple);
      json results = json::array();
      std::ostringstream t;
      bool all = true, disagree = false;
      for (std::size_t i = 0; i < file.candidates.size(); ++i) {
        const auto& c = file.candidates[i];
        json entry;
        std::optional<bool> k, e;
        t << "candidate " << i << " (r = " << c.r << "):";
        if (method != "eh") {
          auto v = llseries::is_lls_kernel(checker, c, win);
          k = v.member;
          entry["kernel"] = cli::verdict_to_json(v, g);
          entry["rho"] = v.rho;
          entry["g"] = v.g;
          t << " kernel " << yes_no(v.member) << (v.window_bounded ? " (window-bounded)" : "");
        }
        if (method != "kernel") {
          auto v = llseries::is_lls_eh(model, inst.tuple, c);
          e = v.member;
          entry["eh"] = cli::verdict_to_json(v, g);
          entry["rho"] = v.rho;
          entry["g"] = v.g;
          t << " eh " << yes_no(v.member);
        }
        t << " rho = " << entry["rho"].get<long>() << "\n";
        bool member = k.value_or(true) && e.value_or(true);
        if (k && e && *k != *e) {
          disagree = true;
          json bundle{{"instance", cli::instance_to_json(file)}, {"candidate_index", i}, {"entry", entry}};
          std::ofstream("lls-bug-report.json") << bundle.dump(2) << "\n";
          std::cerr << "methods disagree on candidate " << i << "; details written to lls-bug-report.json\n";
        }
        entry["member"] = member;
        all = all && member;
        results.push_back(entry);
      }
      int code = disagree ? kDisagree : (all ? kOk : kNegative);
      return emit(out, "lls-check", json{{"candidates", results}}, t.str(), code, secs());
    }

    if (bridge->parsed()) {
      if (!cg.multitree()) throw cli::InputError("the bridge needs a multitree");
      if (file.candidates.empty()) throw cli::InputError("instance has no candidates");
      std::vector<std::size_t> ces;
      if (edge_text.empty()) {
        for (std::size_t ce = 0; ce < cg.collapsed().edges.size(); ++ce) ces.push_back(ce);
      } else {
        auto comma = edge_text.find(',');
        if (comma == std::string::npos) throw cli::InputError("--edge expects a,b");
        auto a = g.index_of(edge_text.substr(0, comma)), b = g.index_of(edge_text.substr(comma + 1));
        if (!a || !b) throw cli::InputError("unknown vertex in --edge");
        auto ce = cg.collapsed().between(*a, *b);
        if (!ce) throw cli::InputError("--edge vertices are not adjacent");
        ces.push_back(*ce);
      }
      json results = json::array();
      std::ostringstream t;
      bool agree = true, all = true;
      for (std::size_t i = 0; i < file.candidates.size(); ++i)
        for (auto ce : ces) {
          const auto& c = file.candidates[i];
          auto br = extra >= 0 ? linkedet::curve_to_chain(model, c, ce, std::vector<long>(g.num_vertices(), extra),
                                                          out.seed)
                               : linkedet::curve_to_chain_auto(model, c, ce, 8, out.seed);
          auto diag = linkedet::validate_s_linked(br.chain);
          auto mem = linkedet::linked_det_membership(br.chain, br.flags);
          auto pk = llseries::pairwise_kernel_check(model, inst.tuple, c, ce);
          bool pairwise = std::all_of(pk.begin(), pk.end(), [&](long k) { return k >= c.r + 1; });
          agree = agree && pairwise == mem.member;
          all = all && mem.member;
          const auto& e = cg.collapsed().edges[ce];
          results.push_back(json{{"candidate", i},
                                 {"edge", json::array({g.label(e.a), g.label(e.b)})},
                                 {"extra", br.extra},
                                 {"dim", br.expected_dim},
                                 {"s_linked", diag.ok},
                                 {"problems", diag.problems},
                                 {"linked_member", mem.member},
                                 {"ranks", mem.ranks},
                                 {"pairwise_kernel_dims", pk},
                                 {"pairwise_member", pairwise},
                                 {"chain", cli::chain_to_json(br.chain, br.flags)}});
          t << "candidate " << i << " edge " << g.label(e.a) << "-" << g.label(e.b) << ": chain of " << br.chain.n
            << " spaces of dimension " << br.expected_dim << ", " << (diag.ok ? "s-linked" : "not s-linked")
            << ", linked-det " << yes_no(mem.member) << ", pairwise " << yes_no(pairwise) << "\n";
        }
      int code = agree ? (all ? kOk : kNegative) : kDisagree;
      return emit(out, "bridge", json{{"results", results}}, t.str(), code, secs());
    }
  } catch (const cli::InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const exactalg::FieldError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const linkedet::BridgeError& e) {
    std::cerr << "bridge: " << e.what() << "\n";
    return kNegative;
  }
  return kOk;
}
