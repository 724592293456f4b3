#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lls/curves/curve.hpp"

namespace lls::llseries {

using curves::CurveModel;
using curves::DivisorSeq;
using exactalg::FieldSpec;
using exactalg::Matrix;
using exactalg::Scalar;
using exactalg::Vector;
using multidegrees::ConcentratedTuple;
using multidegrees::Multidegree;

/// Rank r plus an (r+1)-dimensional subspace of each Gamma(Z_v, L^v), given by
/// basis rows of polynomial coefficients (low degree first).
struct Candidate {
  long r = 0;
  std::vector<std::vector<Vector>> V;
};

struct CandidateDiagnostics {
  bool ok = true;
  std::vector<std::string> problems;
};

CandidateDiagnostics validate_candidate(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c);

std::vector<long> critical_indices(const DivisorSeq& D);

struct Multivanishing {
  std::vector<long> a;        // nondecreasing, r+1 entries
  bool terminal = false;      // some entries came from V(-D_{b+1}) != 0
};

/// Multivanishing sequence of span(V) (polynomials of degree < len) along D.
Multivanishing multivanishing_sequence(const FieldSpec& field, std::size_t len, const std::vector<Vector>& V,
                                       const DivisorSeq& D);
/// deg D_i for the largest i with s in V(-D_i).
long order_of_vanishing(const FieldSpec& field, std::size_t len, const Vector& s, const DivisorSeq& D);
/// V(-D_i) inside polynomials of degree < len.
std::vector<Vector> vanishing_subspace(const FieldSpec& field, std::size_t len, const std::vector<Vector>& V,
                                       const DivisorSeq& D, std::size_t i);

struct CriticalStep {
  long j = 0;
  long l1 = 0, l2 = 0, l3 = 0, l4 = 0;
  long rank = 0;      // r_j: rank of the two-sided jet map
  long image1 = 0;    // dim of the image of V^v(-D_j)
  long image2 = 0;    // dim of the image of V^{v'}(-D'_{b-j})
  long overlap = 0;   // image1 + image2 - rank
  long required = 0;  // #{l : l1 <= l <= l2, l3 <= r-l <= l4}
};

struct EdgeReport {
  std::size_t ce = 0, v = 0, v2 = 0;
  long b = 0;
  Multivanishing a1, a2;
  std::vector<long> critical;
  bool cond_I = true;
  bool cond_I_symmetric = true;
  std::vector<std::pair<long, long>> failures_I;  // (l, j)
  bool cond_II = true;
  bool cond_II_checked = false;
  std::vector<CriticalStep> steps;
};

struct Verdict {
  std::string method;
  bool member = false;
  bool window_bounded = false;
  long r = 0, d = 0, g = 0, rho = 0;
  std::vector<std::pair<Multidegree, long>> kernel_dims;
  std::vector<EdgeReport> edges;
  std::vector<long> component_degrees;  // deg L^v
};

long brill_noether_rho(long g, long r, long d);

/// Per-instance cache of restriction matrices so many candidates can be
/// checked against one curve cheaply.
class KernelChecker {
 public:
  KernelChecker(const CurveModel& model, const ConcentratedTuple& t);
  const CurveModel& model() const { return model_; }
  const ConcentratedTuple& tuple() const { return tuple_; }

  /// Restriction matrices Gamma(L_w) -> Gamma(Z_v, L^v) for every v.
  const std::vector<Matrix>& restrictions(const Multidegree& w);
  long kernel_dimension_at(const Candidate& c, const Multidegree& w);
  /// Kernel dimension with precomputed annihilators of each V^v.
  long kernel_dimension_at(const std::vector<Matrix>& annihilators, const Multidegree& w);
  /// Default window: the vertices of the bounded tree of multidegrees.
  std::vector<Multidegree> default_window() const;

 private:
  const CurveModel& model_;
  ConcentratedTuple tuple_;
  std::map<Multidegree, std::vector<Matrix>> cache_;
};

std::vector<Matrix> annihilators(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c);

long kernel_dimension_at(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c,
                         const Multidegree& w);

/// Kernel method. With no explicit window the bounded tree is used (multitrees
/// only); an explicit window on a non-multitree yields a window-bounded verdict.
Verdict is_lls_kernel(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c,
                      const std::optional<std::vector<Multidegree>>& window = std::nullopt);
Verdict is_lls_kernel(KernelChecker& checker, const Candidate& c,
                      const std::optional<std::vector<Multidegree>>& window = std::nullopt);

/// Kernel dimensions of the two-sided jet-matching map for i = 0..b along
/// collapsed edge ce, read from its smaller endpoint.
std::vector<long> pairwise_kernel_check(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c,
                                        std::size_t ce);

/// Conditions (I) and (II) for the pair (ce, v): v is the smaller endpoint.
EdgeReport eh_conditions(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c, std::size_t ce);
bool eh_condition_I(const EdgeReport& report);
bool eh_condition_II(const EdgeReport& report);

Verdict is_lls_eh(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c);

/// Carries V^v from L^v (tuple t) to L'^v (tuple t2) through the injection
/// induced by a twist path avoiding v; if the path from t.w[v] to t2.w[v]
/// twists at v, the inverse direction is used and the result is the preimage.
/// Empty when the preimage loses dimension (only possible for non-members).
std::optional<Candidate> transport_candidate(const CurveModel& model, const ConcentratedTuple& t,
                                             const ConcentratedTuple& t2, const Candidate& c);

/// Membership verdicts agree across the given tuples (candidate transported to each).
bool check_indep_of_wv(const CurveModel& model, const ConcentratedTuple& t, const Candidate& c,
                       const std::vector<ConcentratedTuple>& alternatives);

}  // namespace lls::llseries
