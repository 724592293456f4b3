#include "lls/cli/corpus.hpp"

#include "lls/linkedet/linked.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace lls::cli {

using curves::CurveModel;
using curves::EdgeSpec;
using exactalg::Scalar;
using exactalg::Vector;
using multidegrees::ChainedGraph;
using multidegrees::ConcentratedTuple;
using multidegrees::Multidegree;

unsigned worker_count() {
  if (const char* env = std::getenv("LLS_WORKERS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace {

std::string tuple_key(const ConcentratedTuple& t) {
  std::string s;
  for (const auto& w : t.w) s += w.to_string();
  for (auto b : t.b) s += "/" + std::to_string(b);
  return s;
}

std::string describe_instance(const CurveInstance& inst) {
  std::ostringstream os;
  const auto& g = inst.graph->graph();
  os << inst.field.describe() << " edges:";
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    os << " " << g.label(g.edge(e).tail) << "->" << g.label(g.edge(e).head) << "[n=" << inst.graph->n(e)
       << ",p=" << inst.tail_coord[e].to_string() << ",q=" << inst.head_coord[e].to_string()
       << ",l=" << inst.lambda[e].to_string() << "]";
  os << " w0=" << inst.w0.to_string();
  return os.str();
}

// All tuples of nonzero field elements of the given length.
std::vector<std::vector<Scalar>> nonzero_tuples(const FieldSpec& F, std::size_t len) {
  std::vector<std::vector<Scalar>> out{{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<std::vector<Scalar>> next;
    for (const auto& prefix : out)
      for (std::uint32_t k = 1; k < F.characteristic(); ++k) {
        auto t = prefix;
        t.push_back(F.element(k));
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::string render_candidate(const Candidate& c) {
  std::ostringstream os;
  os << "r=" << c.r;
  for (std::size_t v = 0; v < c.V.size(); ++v) {
    os << " V" << v << "=[";
    for (std::size_t i = 0; i < c.V[v].size(); ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < c.V[v][i].size(); ++j) os << (j ? "," : "") << c.V[v][i][j].to_string();
      os << "]";
    }
    os << "]";
  }
  return os.str();
}

std::vector<CurveInstance> two_component_instances(const FieldSpec& F, const std::vector<int>& chain_lengths,
                                                   long max_degree) {
  const std::size_t m = chain_lengths.size();
  std::vector<EdgeSpec> edges;
  for (std::size_t e = 0; e < m; ++e)
    edges.push_back(EdgeSpec{0, 1, chain_lengths[e], F.from_int(static_cast<long>(e)), F.from_int(static_cast<long>(e)),
                             F.one()});
  // Distinct tuples first (they do not depend on the gluing scalars).
  std::vector<Multidegree> reps;
  std::set<std::string> seen;
  std::vector<std::vector<int>> mus{{}};
  for (std::size_t e = 0; e < m; ++e) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : mus)
      for (int x = 0; x < chain_lengths[e]; ++x) {
        auto t = prefix;
        t.push_back(x);
        next.push_back(std::move(t));
      }
    mus = std::move(next);
  }
  for (long x = 0; x <= max_degree; ++x)
    for (long y = -static_cast<long>(m) - 1; y <= max_degree; ++y)
      for (const auto& mu : mus) {
        Multidegree w0{{x, y}, mu};
        auto inst = curves::make_instance(F, {"1", "2"}, edges, w0);
        const auto& t = inst.tuple;
        long d1 = t.w[0].weights[0], d2 = t.w[1].weights[1];
        if (d1 < 0 || d2 < 0 || d1 > max_degree || d2 > max_degree) continue;
        if (seen.insert(tuple_key(t)).second) reps.push_back(w0);
      }
  std::vector<CurveInstance> out;
  for (const auto& w0 : reps)
    for (const auto& lambdas : nonzero_tuples(F, m)) {
      auto es = edges;
      for (std::size_t e = 0; e < m; ++e) es[e].lambda = lambdas[e];
      out.push_back(curves::make_instance(F, {"1", "2"}, es, w0));
    }
  return out;
}

CurveInstance random_multitree_instance(const FieldSpec& F, const RandomInstanceOptions& opts, std::mt19937_64& rng) {
  auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    auto k = static_cast<std::size_t>(pick(opts.min_vertices, opts.max_vertices));
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < k; ++v) labels.push_back("C" + std::to_string(v + 1));
    std::vector<std::pair<std::size_t, std::size_t>> tree;
    for (std::size_t v = 1; v < k; ++v) tree.emplace_back(static_cast<std::size_t>(pick(0, static_cast<long>(v) - 1)), v);
    std::vector<std::size_t> tails, heads;
    std::vector<int> ns;
    for (auto [a, b] : tree) {
      long copies = opts.tree_only ? 1 : pick(1, opts.max_parallel);
      for (long c = 0; c < copies; ++c) {
        bool flip = pick(0, 1) == 1;
        tails.push_back(flip ? b : a);
        heads.push_back(flip ? a : b);
        ns.push_back(opts.trivial_chains ? 1 : static_cast<int>(pick(1, opts.max_chain)));
      }
    }
    std::size_t E = tails.size();
    // Distinct node coordinates on each component.
    std::vector<std::vector<std::size_t>> incident(k);
    for (std::size_t e = 0; e < E; ++e) {
      incident[tails[e]].push_back(e);
      incident[heads[e]].push_back(e);
    }
    bool too_crowded = false;
    for (const auto& inc : incident)
      if (F.is_prime() && inc.size() > F.characteristic()) too_crowded = true;
    if (too_crowded) continue;
    std::vector<Scalar> tc(E), hc(E);
    for (std::size_t v = 0; v < k; ++v) {
      std::vector<long> pool;
      long range = F.is_prime() ? static_cast<long>(F.characteristic()) : 7;
      for (long x = 0; x < range; ++x) pool.push_back(x);
      std::shuffle(pool.begin(), pool.end(), rng);
      for (std::size_t i = 0; i < incident[v].size(); ++i) {
        auto e = incident[v][i];
        (tails[e] == v ? tc[e] : hc[e]) = F.from_int(pool[i]);
      }
    }
    std::vector<EdgeSpec> edges;
    for (std::size_t e = 0; e < E; ++e) {
      Scalar lam = F.is_prime() ? F.random_nonzero(rng) : F.from_int(pick(1, 5));
      edges.push_back(EdgeSpec{tails[e], heads[e], ns[e], tc[e], hc[e], lam});
    }
    for (int tries = 0; tries < 50; ++tries) {
      Multidegree w0;
      for (std::size_t v = 0; v < k; ++v) w0.weights.push_back(pick(-1, 2));
      for (std::size_t e = 0; e < E; ++e) w0.mu.push_back(static_cast<int>(pick(0, ns[e] - 1)));
      auto inst = curves::make_instance(F, labels, edges, w0);
      bool ok = true;
      for (std::size_t v = 0; v < k; ++v) {
        long d = inst.tuple.w[v].weights[v];
        if (d < 0 || d > opts.max_component_degree) ok = false;
      }
      if (ok) return inst;
    }
  }
  throw std::runtime_error("random_multitree_instance: no admissible instance found");
}

CurveInstance random_graph_instance(const FieldSpec& F, const RandomInstanceOptions& opts, std::mt19937_64& rng) {
  auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    auto k = static_cast<std::size_t>(pick(opts.min_vertices, opts.max_vertices));
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < k; ++v) labels.push_back("C" + std::to_string(v + 1));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t v = 1; v < k; ++v) pairs.emplace_back(static_cast<std::size_t>(pick(0, static_cast<long>(v) - 1)), v);
    long extra = pick(0, static_cast<long>(k));
    for (long i = 0; i < extra && k > 1; ++i) {
      auto a = static_cast<std::size_t>(pick(0, static_cast<long>(k) - 1));
      auto b = static_cast<std::size_t>(pick(0, static_cast<long>(k) - 1));
      if (a != b) pairs.emplace_back(a, b);
    }
    std::vector<std::vector<std::size_t>> incident(k);
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      incident[pairs[e].first].push_back(e);
      incident[pairs[e].second].push_back(e);
    }
    bool crowded = false;
    for (const auto& inc : incident)
      if (F.is_prime() && inc.size() > F.characteristic()) crowded = true;
    if (crowded) continue;
    std::vector<Scalar> tc(pairs.size()), hc(pairs.size());
    for (std::size_t v = 0; v < k; ++v) {
      std::vector<long> pool;
      long range = F.is_prime() ? static_cast<long>(F.characteristic()) : 7;
      for (long x = 0; x < range; ++x) pool.push_back(x);
      std::shuffle(pool.begin(), pool.end(), rng);
      for (std::size_t i = 0; i < incident[v].size(); ++i) {
        auto e = incident[v][i];
        (pairs[e].first == v ? tc[e] : hc[e]) = F.from_int(pool[i]);
      }
    }
    std::vector<EdgeSpec> edges;
    Multidegree w0;
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      int n = opts.trivial_chains ? 1 : static_cast<int>(pick(1, opts.max_chain));
      Scalar lam = F.is_prime() ? F.random_nonzero(rng) : F.from_int(pick(1, 5));
      edges.push_back(EdgeSpec{pairs[e].first, pairs[e].second, n, tc[e], hc[e], lam});
      w0.mu.push_back(static_cast<int>(pick(0, n - 1)));
    }
    for (std::size_t v = 0; v < k; ++v) w0.weights.push_back(pick(-1, 2));
    return curves::make_instance(F, labels, edges, w0);
  }
  throw std::runtime_error("random_graph_instance: no admissible instance found");
}

std::optional<Candidate> constructed_candidate(const CurveModel& model, long r, std::mt19937_64& rng) {
  const auto& t = model.instance().tuple;
  auto bar = multidegrees::enumerate_bar_G(model.graph(), t);
  const auto& wstar = bar.nodes[std::uniform_int_distribution<std::size_t>(0, bar.nodes.size() - 1)(rng)];
  auto S = model.section_space(wstar);
  if (static_cast<long>(S->dim()) < r + 1) return std::nullopt;
  auto W = exactalg::random_subspace(model.field(), S->dim(), static_cast<std::size_t>(r + 1), rng);
  Candidate c{r, {}};
  for (std::size_t v = 0; v < t.w.size(); ++v) {
    auto R = model.restrict_to_component(wstar, v, t.w[v]);
    std::vector<Vector> img;
    for (const auto& x : W) img.push_back(R.apply(x));
    auto basis = exactalg::span_basis(model.field(), R.rows(), img);
    if (static_cast<long>(basis.size()) != r + 1) return std::nullopt;
    c.V.push_back(std::move(basis));
  }
  return c;
}

std::optional<Candidate> random_candidate(const CurveModel& model, long r, std::mt19937_64& rng) {
  const auto& t = model.instance().tuple;
  Candidate c{r, {}};
  for (std::size_t v = 0; v < t.w.size(); ++v) {
    long deg = t.w[v].weights[v];
    if (deg < r) return std::nullopt;
    c.V.push_back(exactalg::random_subspace(model.field(), static_cast<std::size_t>(deg + 1),
                                            static_cast<std::size_t>(r + 1), rng));
  }
  return c;
}

namespace {

struct Partial {
  long cases = 0, agreements = 0, members = 0;
  std::vector<std::string> counterexamples;
  std::map<std::string, long> notes;

  void merge(const Partial& o) {
    cases += o.cases;
    agreements += o.agreements;
    members += o.members;
    for (const auto& c : o.counterexamples)
      if (counterexamples.size() < 5) counterexamples.push_back(c);
    for (const auto& [k, v] : o.notes) notes[k] += v;
  }
};

SuiteReport finish(std::string name, const std::vector<Partial>& parts,
                   std::chrono::steady_clock::time_point start) {
  Partial total;
  for (const auto& p : parts) total.merge(p);
  SuiteReport rep;
  rep.name = std::move(name);
  rep.cases = total.cases;
  rep.agreements = total.agreements;
  rep.members = total.members;
  rep.counterexamples = total.counterexamples;
  for (const auto& [k, v] : total.notes) rep.notes.emplace_back(k, v);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

void record(Partial& part, bool a, bool b, bool member, const std::function<std::string()>& describe) {
  ++part.cases;
  if (a == b) ++part.agreements;
  else if (part.counterexamples.size() < 5) part.counterexamples.push_back(describe());
  if (member) ++part.members;
}

void note_eh(Partial& part, const llseries::Verdict& v) {
  bool I = true, II = true;
  for (const auto& e : v.edges) {
    I = I && e.cond_I;
    II = II && (!e.cond_II_checked || e.cond_II);
  }
  if (I && !II) part.notes["(I) holds but (II) fails"] += 1;
  if (!I) part.notes["(I) fails"] += 1;
}

// Candidate mix for the random suites: constructed, perturbed and random.
std::vector<Candidate> sample_candidates(const CurveModel& model, long r, std::mt19937_64& rng, int count) {
  std::vector<Candidate> out;
  for (int i = 0; i < 4 * count && static_cast<int>(out.size()) < count; ++i) {
    std::optional<Candidate> c;
    switch (i % 4) {
      case 0:
      case 1:
        c = constructed_candidate(model, r, rng);
        break;
      case 2: {
        c = constructed_candidate(model, r, rng);
        if (c) {
          auto other = random_candidate(model, r, rng);
          if (other) {
            auto v = std::uniform_int_distribution<std::size_t>(0, c->V.size() - 1)(rng);
            c->V[v] = other->V[v];
          }
        }
        break;
      }
      default:
        c = random_candidate(model, r, rng);
    }
    if (c) out.push_back(std::move(*c));
  }
  return out;
}

long max_rank(const CurveModel& model) {
  const auto& t = model.instance().tuple;
  long lo = 1;
  for (std::size_t v = 0; v < t.w.size(); ++v) lo = std::min(lo, t.w[v].weights[v]);
  return lo;
}

}  // namespace

SuiteReport run_two_component_equivalence(const std::vector<std::uint32_t>& primes, long max_degree) {
  auto start = std::chrono::steady_clock::now();
  struct Job {
    CurveInstance inst;
    long r;
  };
  std::vector<Job> jobs;
  for (auto p : primes) {
    auto F = FieldSpec::prime(p);
    for (const auto& chains : std::vector<std::vector<int>>{{1}, {2}, {1, 1}, {1, 2}, {2, 2}})
      for (auto& inst : two_component_instances(F, chains, max_degree))
        for (long r : {0L, 1L}) jobs.push_back({inst, r});
  }
  auto parts = parallel_map<Partial>(jobs.size(), [&](std::size_t i) {
    Partial part;
    const auto& job = jobs[i];
    CurveModel model(job.inst);
    const auto& t = model.instance().tuple;
    long d1 = t.w[0].weights[0], d2 = t.w[1].weights[1];
    if (d1 < job.r || d2 < job.r) return part;
    const auto& F = model.field();
    auto S1 = exactalg::enumerate_subspaces(F, static_cast<std::size_t>(d1 + 1), static_cast<std::size_t>(job.r + 1));
    auto S2 = exactalg::enumerate_subspaces(F, static_cast<std::size_t>(d2 + 1), static_cast<std::size_t>(job.r + 1));
    llseries::KernelChecker checker(model, t);
    auto window = checker.default_window();
    for (const auto& V1 : S1)
      for (const auto& V2 : S2) {
        Candidate c{job.r, {V1, V2}};
        bool k = llseries::is_lls_kernel(checker, c, window).member;
        auto ev = llseries::is_lls_eh(model, t, c);
        bool e = ev.member;
        note_eh(part, ev);
        record(part, k, e, k, [&] {
          return describe_instance(job.inst) + " " + render_candidate(c) + " kernel=" + (k ? "member" : "non-member") +
                 " eh=" + (e ? "member" : "non-member");
        });
      }
    return part;
  });
  return finish("two-component equivalence", parts, start);
}

SuiteReport run_multitree_equivalence(std::uint32_t p, int instances, std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  auto F = FieldSpec::prime(p);
  auto parts = parallel_map<Partial>(static_cast<std::size_t>(instances), [&](std::size_t i) {
    Partial part;
    std::mt19937_64 rng(seed + i);
    RandomInstanceOptions opts;
    auto inst = random_multitree_instance(F, opts, rng);
    CurveModel model(inst);
    long r = std::uniform_int_distribution<long>(0, max_rank(model))(rng);
    llseries::KernelChecker checker(model, inst.tuple);
    for (const auto& c : sample_candidates(model, r, rng, 6)) {
      bool k = llseries::is_lls_kernel(checker, c).member;
      auto ev = llseries::is_lls_eh(model, inst.tuple, c);
      bool e = ev.member;
      note_eh(part, ev);
      record(part, k, e, k, [&] { return describe_instance(inst) + " " + render_candidate(c); });
    }
    return part;
  });
  return finish("multitree equivalence", parts, start);
}

SuiteReport run_window_stability(std::uint32_t p, int instances, int radius, std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  auto F = FieldSpec::prime(p);
  auto parts = parallel_map<Partial>(static_cast<std::size_t>(instances), [&](std::size_t i) {
    Partial part;
    std::mt19937_64 rng(seed + i);
    RandomInstanceOptions opts;
    opts.max_vertices = 4;
    opts.max_component_degree = 2;
    auto inst = random_multitree_instance(F, opts, rng);
    CurveModel model(inst);
    long r = std::uniform_int_distribution<long>(0, max_rank(model))(rng);
    llseries::KernelChecker checker(model, inst.tuple);
    auto base = checker.default_window();
    auto wide = multidegrees::twist_ball(model.graph(), base, radius);
    part.notes["window multidegrees"] += static_cast<long>(wide.size());
    for (const auto& c : sample_candidates(model, r, rng, 3)) {
      bool a = llseries::is_lls_kernel(checker, c, base).member;
      bool b = llseries::is_lls_kernel(checker, c, wide).member;
      record(part, a, b, a, [&] { return describe_instance(inst) + " " + render_candidate(c); });
    }
    return part;
  });
  return finish("window stability", parts, start);
}

SuiteReport run_tuple_independence(std::uint32_t p, int instances, std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  auto F = FieldSpec::prime(p);
  auto parts = parallel_map<Partial>(static_cast<std::size_t>(instances), [&](std::size_t i) {
    Partial part;
    std::mt19937_64 rng(seed + i);
    RandomInstanceOptions opts;
    opts.max_vertices = 4;
    opts.max_component_degree = 2;
    auto inst = random_multitree_instance(F, opts, rng);
    CurveModel model(inst);
    const auto& cg = model.graph();
    std::vector<ConcentratedTuple> tuples{inst.tuple};
    std::set<std::string> distinct{tuple_key(inst.tuple)};
    for (int k = 0; k < 2; ++k) {
      multidegrees::TupleOptions topts;
      topts.root = std::uniform_int_distribution<std::size_t>(0, cg.num_vertices() - 1)(rng);
      for (std::size_t ce = 0; ce < cg.collapsed().edges.size(); ++ce)
        topts.extra.push_back(std::uniform_int_distribution<long>(0, 2)(rng));
      tuples.push_back(multidegrees::derive_tuple(cg, inst.w0, topts));
      distinct.insert(tuple_key(tuples.back()));
    }
    part.notes["instances with 3 distinct tuples"] += distinct.size() == 3 ? 1 : 0;
    long r = std::uniform_int_distribution<long>(0, max_rank(model))(rng);
    for (const auto& c : sample_candidates(model, r, rng, 3)) {
      bool base = llseries::is_lls_kernel(model, inst.tuple, c).member;
      bool same = true;
      for (std::size_t k = 1; k < tuples.size(); ++k) {
        auto c2 = llseries::transport_candidate(model, inst.tuple, tuples[k], c);
        if (!c2) {
          part.notes["transport lost dimension"] += 1;
          if (base) same = false;
          continue;
        }
        bool other = llseries::is_lls_kernel(model, tuples[k], *c2).member;
        bool other_eh = llseries::is_lls_eh(model, tuples[k], *c2).member;
        if (other != base || other_eh != base) same = false;
      }
      record(part, true, same, base, [&] { return describe_instance(inst) + " " + render_candidate(c); });
    }
    return part;
  });
  return finish("tuple independence", parts, start);
}

namespace {

std::vector<exactalg::Matrix> all_invertible(const FieldSpec& F, std::size_t d) {
  std::vector<exactalg::Matrix> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < d * d; ++i) total *= F.characteristic();
  for (std::size_t code = 0; code < total; ++code) {
    exactalg::Matrix M(F, d, d);
    std::size_t x = code;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        M.at(i, j) = F.element(static_cast<std::uint32_t>(x % F.characteristic()));
        x /= F.characteristic();
      }
    if (exactalg::rank(M) == d) out.push_back(std::move(M));
  }
  return out;
}

}  // namespace

SuiteReport run_linked_det_exhaustive(std::uint32_t p, std::size_t d, const std::vector<std::size_t>& lengths,
                                      std::size_t r) {
  auto start = std::chrono::steady_clock::now();
  auto F = FieldSpec::prime(p);
  using Link = std::pair<exactalg::Matrix, exactalg::Matrix>;
  auto gl = all_invertible(F, d);
  // Generator grid: degenerate links for every P, Q and rank, plus s = 1 links.
  std::vector<Link> zero_links, unit_links;
  std::set<std::string> seen;
  for (std::size_t d1 = 0; d1 <= d; ++d1)
    for (const auto& P : gl)
      for (const auto& Q : gl) {
        auto link = linkedet::degenerate_link(P, Q, d1);
        if (seen.insert(link.first.to_string() + link.second.to_string()).second) zero_links.push_back(link);
      }
  for (const auto& A : gl) unit_links.push_back({A, *exactalg::inverse(A)});
  std::vector<linkedet::LinkedChain> chains;
  for (auto n : lengths) {
    for (int unit = 0; unit < 2; ++unit) {
      const auto& links = unit ? unit_links : zero_links;
      std::vector<std::vector<std::size_t>> picks{{}};
      for (std::size_t k = 0; k + 1 < n; ++k) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& pre : picks)
          for (std::size_t l = 0; l < links.size(); ++l) {
            auto t = pre;
            t.push_back(l);
            next.push_back(std::move(t));
          }
        picks = std::move(next);
      }
      for (const auto& pick : picks) {
        linkedet::LinkedChain c{F, d, n, unit ? F.one() : F.zero(), {}, {}};
        for (auto l : pick) {
          c.f.push_back(links[l].first);
          c.fback.push_back(links[l].second);
        }
        if (linkedet::validate_s_linked(c).ok) chains.push_back(std::move(c));
      }
    }
  }
  auto flags_all = exactalg::enumerate_subspaces(F, d, r);
  auto parts = parallel_map<Partial>(chains.size(), [&](std::size_t i) {
    Partial part;
    const auto& c = chains[i];
    if (!linkedet::validate_s_linked(linkedet::reversed(c)).ok) part.notes["reversed chain fails validation"] += 1;
    for (const auto& F1 : flags_all)
      for (const auto& Fn : flags_all) {
        linkedet::FlagPair fl{r, F1, Fn};
        auto mem = linkedet::linked_det_membership(c, fl);
        auto comp = linkedet::complete_flags(c, fl);
        bool valid = !comp.ok || linkedet::validate_linked_grassmannian(c, comp.F, r).ok;
        if (!valid) part.notes["completion fails containments"] += 1;
        record(part, mem.member, comp.ok && valid, mem.member, [&] {
          return "chain " + std::to_string(i) + " member=" + (mem.member ? "yes" : "no") +
                 " completion=" + (comp.ok ? "ok" : comp.reason);
        });
      }
    return part;
  });
  auto rep = finish("linked determinantal completion", parts, start);
  rep.notes.emplace_back("chains", static_cast<long>(chains.size()));
  return rep;
}

SuiteReport run_bridge(std::uint32_t p, int instances, std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  auto F = FieldSpec::prime(p);
  auto parts = parallel_map<Partial>(static_cast<std::size_t>(instances), [&](std::size_t i) {
    Partial part;
    std::mt19937_64 rng(seed + i);
    RandomInstanceOptions opts;
    opts.min_vertices = opts.max_vertices = 2;
    auto inst = random_multitree_instance(F, opts, rng);
    CurveModel model(inst);
    long r = std::uniform_int_distribution<long>(0, max_rank(model))(rng);
    for (const auto& c : sample_candidates(model, r, rng, 3)) {
      auto br = linkedet::curve_to_chain_auto(model, c, 0, 8, seed + i);
      const auto& ch = br.chain;
      bool exact_I = true;
      for (std::size_t k = 0; k + 1 < ch.n; ++k)
        if (!(ch.f[k] * ch.fback[k]).is_zero() || !(ch.fback[k] * ch.f[k]).is_zero()) exact_I = false;
      if (!exact_I) part.notes["(I) fails on a curve chain"] += 1;
      auto diag = linkedet::validate_s_linked(ch);
      bool II = true, III = true;
      for (const auto& pr : diag.problems) {
        if (pr.find("(II)") != std::string::npos) II = false;
        if (pr.find("(III)") != std::string::npos) III = false;
      }
      part.notes[II ? "(II) holds" : "(II) fails"] += 1;
      part.notes[III ? "(III) holds" : "(III) fails"] += 1;
      bool linked = linkedet::linked_det_membership(ch, br.flags).member;
      bool pairwise = true;
      for (long k : llseries::pairwise_kernel_check(model, inst.tuple, c, 0))
        if (k < c.r + 1) pairwise = false;
      record(part, linked && exact_I, pairwise && exact_I, pairwise, [&] {
        return describe_instance(inst) + " " + render_candidate(c) + " linked=" + (linked ? "member" : "non-member") +
               " pairwise=" + (pairwise ? "member" : "non-member");
      });
    }
    return part;
  });
  return finish("bridge", parts, start);
}

SuiteReport run_classical_specialization(std::uint32_t p, int instances, std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  auto F = FieldSpec::prime(p);
  auto parts = parallel_map<Partial>(static_cast<std::size_t>(instances), [&](std::size_t i) {
    Partial part;
    std::mt19937_64 rng(seed + i);
    RandomInstanceOptions opts;
    opts.min_vertices = 2;
    opts.max_vertices = 4;
    opts.trivial_chains = true;
    opts.tree_only = true;
    auto inst = random_multitree_instance(F, opts, rng);
    // Degree d on the first component and 0 elsewhere: every member of the
    // derived tuple then has all of its degree on its own component.
    const long d = std::uniform_int_distribution<long>(1, 3)(rng);
    inst.w0.weights.assign(inst.w0.weights.size(), 0);
    inst.w0.weights[0] = d;
    inst.tuple = multidegrees::derive_tuple(*inst.graph, inst.w0);
    CurveModel model(inst);
    long r = std::uniform_int_distribution<long>(0, max_rank(model))(rng);
    for (const auto& c : sample_candidates(model, r, rng, 3)) {
      auto v = llseries::is_lls_eh(model, inst.tuple, c);
      bool shape = true;
      for (std::size_t u = 0; u < inst.tuple.w.size(); ++u)
        for (std::size_t x = 0; x < inst.tuple.w.size(); ++x)
          if (inst.tuple.w[u].weights[x] != (x == u ? d : 0)) shape = false;
      for (const auto& e : v.edges) {
        bool classical = true;
        // b = d, D_i = iP and every index is critical.
        if (e.b != d || static_cast<long>(e.critical.size()) != d + 1) shape = false;
        for (long j = 0; j <= c.r; ++j)
          if (e.a1.a[static_cast<std::size_t>(j)] + e.a2.a[static_cast<std::size_t>(c.r - j)] < d) classical = false;
        if (e.cond_I != classical || e.cond_I_symmetric != classical) shape = false;
      }
      record(part, true, shape, v.member, [&] { return describe_instance(inst) + " " + render_candidate(c); });
    }
    return part;
  });
  return finish("classical specialization", parts, start);
}

SuiteReport run_concentration(std::uint32_t p, int instances, std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  auto F = FieldSpec::prime(p);
  auto parts = parallel_map<Partial>(static_cast<std::size_t>(instances), [&](std::size_t i) {
    Partial part;
    std::mt19937_64 rng(seed + i);
    RandomInstanceOptions opts;
    opts.min_vertices = 2;
    auto inst = random_graph_instance(F, opts, rng);
    CurveModel model(inst);
    const auto& cg = model.graph();
    auto v = std::uniform_int_distribution<std::size_t>(0, cg.num_vertices() - 1)(rng);
    auto conc = multidegrees::concentrate(cg, inst.w0, v);
    bool concentrated = multidegrees::is_concentrated(cg, conc.w, v).has_value() && conc.twists[v] == 0 &&
                        multidegrees::apply_multiset(cg, inst.w0, conc.twists) == conc.w;
    bool injective = true;
    if (concentrated) {
      auto R = model.restrict_to_component(conc.w, v, conc.w);
      injective = exactalg::rank(R) == model.section_space(conc.w)->dim();
      if (!cg.multitree()) part.notes["graphs with cycles in the collapsed graph"] += 1;
    }
    record(part, true, concentrated && injective, true, [&] {
      return describe_instance(inst) + " v=" + std::to_string(v) + (concentrated ? " restriction not injective"
                                                                                 : " not concentrated");
    });
    return part;
  });
  return finish("concentration and injectivity", parts, start);
}

SuiteReport run_twist_calculus(int graphs, int pairs, std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  auto F = FieldSpec::prime(7);
  auto parts = parallel_map<Partial>(static_cast<std::size_t>(graphs), [&](std::size_t i) {
    Partial part;
    std::mt19937_64 rng(seed + i);
    RandomInstanceOptions opts;
    opts.min_vertices = 2;
    auto inst = random_graph_instance(F, opts, rng);
    const auto& cg = *inst.graph;
    const std::size_t N = cg.num_vertices();
    auto w = inst.w0;
    auto all = multidegrees::twist_set(cg, w, std::vector<bool>(N, true));
    record(part, true, all == w, false, [&] { return describe_instance(inst) + " twisting everywhere moved w0"; });
    record(part, true, multidegrees::laplacian_kernel_check(cg), false,
           [&] { return describe_instance(inst) + " Laplacian kernel is too big"; });
    for (int k = 0; k < pairs; ++k) {
      multidegrees::TwistMultiset a(N), b(N);
      for (auto& x : a) x = std::uniform_int_distribution<long>(0, 3)(rng);
      int mode = std::uniform_int_distribution<int>(0, 2)(rng);
      long shift = std::uniform_int_distribution<long>(0, 2)(rng);
      for (std::size_t v = 0; v < N; ++v) b[v] = mode == 0 ? std::uniform_int_distribution<long>(0, 3)(rng) : a[v] + shift;
      if (mode == 2) b[std::uniform_int_distribution<std::size_t>(0, N - 1)(rng)] += 1;
      bool brute = multidegrees::apply_multiset(cg, w, a) == multidegrees::apply_multiset(cg, w, b);
      bool fast = multidegrees::same_endpoint(a, b);
      record(part, brute, fast, brute, [&] { return describe_instance(inst) + " same_endpoint mismatch"; });
    }
    return part;
  });
  return finish("twist calculus", parts, start);
}

SuiteReport run_section_dimensions(std::uint32_t p, int instances, std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  auto F = FieldSpec::prime(p);
  auto parts = parallel_map<Partial>(static_cast<std::size_t>(instances), [&](std::size_t i) {
    Partial part;
    std::mt19937_64 rng(seed + i);
    RandomInstanceOptions opts;
    opts.min_vertices = 2;
    opts.max_vertices = 4;
    auto inst = random_graph_instance(F, opts, rng);
    CurveModel model(inst);
    const auto& cg = model.graph();
    const long expected = model.degree() + 1 - model.genus();
    auto ball = multidegrees::twist_ball(cg, {inst.w0}, 2);
    for (const auto& w : ball) {
      long dim = static_cast<long>(model.section_space(w)->dim());
      record(part, true, dim >= expected, false,
             [&] { return describe_instance(inst) + " dim at " + w.to_string() + " below d+1-g"; });
      part.notes[dim == expected ? "multidegrees at d+1-g" : "multidegrees above d+1-g"] += 1;
    }
    // Path independence: the direct map vs. two random orderings of the minimal multiset.
    for (int k = 0; k < 3; ++k) {
      const auto& w = ball[std::uniform_int_distribution<std::size_t>(0, ball.size() - 1)(rng)];
      const auto& target = ball[std::uniform_int_distribution<std::size_t>(0, ball.size() - 1)(rng)];
      auto path = multidegrees::minimal_path(cg, w, target);
      if (!path) continue;
      std::vector<std::size_t> order;
      for (std::size_t v = 0; v < path->counts.size(); ++v)
        for (long c = 0; c < path->counts[v]; ++c) order.push_back(v);
      auto direct = model.twist_map(w, target);
      for (int rep = 0; rep < 2; ++rep) {
        std::shuffle(order.begin(), order.end(), rng);
        bool same = model.twist_map_along(w, order) == direct;
        record(part, true, same, false, [&] {
          return describe_instance(inst) + " twist map from " + w.to_string() + " to " + target.to_string() +
                 " depends on the ordering";
        });
      }
    }
    return part;
  });
  return finish("section dimensions and path independence", parts, start);
}

}  // namespace lls::cli
