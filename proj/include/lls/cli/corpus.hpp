#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lls/curves/curve.hpp"
#include "lls/llseries/lls.hpp"

namespace lls::cli {

using curves::CurveInstance;
using exactalg::FieldSpec;
using llseries::Candidate;

/// Two components joined by m edges (tail on the first component), node
/// coordinates 0..m-1 on both sides. One instance per nonzero gluing choice
/// and per distinct concentrated tuple with both component degrees in [0, max_degree].
std::vector<CurveInstance> two_component_instances(const FieldSpec& field, const std::vector<int>& chain_lengths,
                                                   long max_degree);

struct RandomInstanceOptions {
  int min_vertices = 3, max_vertices = 5;
  int max_parallel = 2;      // edges per collapsed edge
  int max_chain = 3;         // n(e) drawn from 1..max_chain
  long max_component_degree = 3;
  bool trivial_chains = false;
  bool tree_only = false;    // compact type: one edge per collapsed edge
};

/// Random multitree instance; the degrees of the tuple members stay within
/// [0, max_component_degree] (resampled until they do).
CurveInstance random_multitree_instance(const FieldSpec& field, const RandomInstanceOptions& opts, std::mt19937_64& rng);

/// Random connected graph (cycles and parallel edges allowed) with random
/// chain structure and w0; no tuple is derived.
CurveInstance random_graph_instance(const FieldSpec& field, const RandomInstanceOptions& opts, std::mt19937_64& rng);

/// Candidate of rank r built from an (r+1)-dimensional space of global
/// sections at a random multidegree of the bounded tree; empty if some
/// restriction drops rank.
std::optional<Candidate> constructed_candidate(const curves::CurveModel& model, long r, std::mt19937_64& rng);
/// Independent uniformly random subspaces on every component.
std::optional<Candidate> random_candidate(const curves::CurveModel& model, long r, std::mt19937_64& rng);

/// Agreement counts for one cross-validation suite.
struct SuiteReport {
  std::string name;
  long cases = 0;
  long agreements = 0;
  long members = 0;
  std::vector<std::string> counterexamples;  // first few, rendered
  std::vector<std::pair<std::string, long>> notes;  // extra tallies
  double seconds = 0;
  bool passed() const { return cases > 0 && cases == agreements; }
};

/// Number of workers from LLS_WORKERS (default: hardware concurrency, at least 1).
unsigned worker_count();

/// Runs job(i) for i in [0, count) on the worker pool; results come back in index order.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& job);

/// Kernel method vs. the vanishing-sequence conditions on the exhaustive
/// two-component corpus over the given primes, r in {0, 1}.
SuiteReport run_two_component_equivalence(const std::vector<std::uint32_t>& primes, long max_degree);

/// Same comparison on random multitrees with constructed and random candidates.
SuiteReport run_multitree_equivalence(std::uint32_t p, int instances, std::uint64_t seed);

/// Verdicts over the bounded tree vs. the window widened by `radius` twists.
SuiteReport run_window_stability(std::uint32_t p, int instances, int radius, std::uint64_t seed);

/// Verdicts under three independently derived concentrated tuples.
SuiteReport run_tuple_independence(std::uint32_t p, int instances, std::uint64_t seed);

/// Linked determinantal membership vs. flag completion over every chain
/// produced by the generator grid (all invertible P, Q and link ranks) and all flags.
SuiteReport run_linked_det_exhaustive(std::uint32_t p, std::size_t d, const std::vector<std::size_t>& lengths,
                                      std::size_t r);

/// Curve-derived chains: (I) holds exactly and membership matches the
/// pairwise kernel condition; (II)/(III) outcomes are tallied in the notes.
SuiteReport run_bridge(std::uint32_t p, int instances, std::uint64_t seed);

/// Compact-type instances: condition (I) coincides with the classical
/// inequality a^v_j + a^{v'}_{r-j} >= d on every edge.
SuiteReport run_classical_specialization(std::uint32_t p, int instances, std::uint64_t seed);

/// concentrate() always yields concentrated multidegrees, and restriction to
/// Z_v at a multidegree concentrated at v is injective.
SuiteReport run_concentration(std::uint32_t p, int instances, std::uint64_t seed);

/// Twisting at every vertex is the identity; same_endpoint matches brute-force
/// application; the subdivided Laplacian has only constants in its kernel.
SuiteReport run_twist_calculus(int graphs, int pairs, std::uint64_t seed);

/// dim Gamma(L_w) >= d + 1 - g and twist maps agree along different orderings
/// of the same minimal twist multiset.
SuiteReport run_section_dimensions(std::uint32_t p, int instances, std::uint64_t seed);

std::string render_candidate(const Candidate& c);

}  // namespace lls::cli

#include "lls/cli/parallel.ipp"
