#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lls/curves/curve.hpp"
#include "lls/exactalg/matrix.hpp"
#include "lls/llseries/lls.hpp"

namespace lls::linkedet {

using exactalg::FieldSpec;
using exactalg::Matrix;
using exactalg::Scalar;
using exactalg::Vector;

/// A chain E_1, ..., E_n of d-dimensional spaces with forward maps
/// f[i]: E_{i+1} -> E_{i+2} and backward maps fback[i]: E_{i+2} -> E_{i+1}
/// (zero-based i), all acting on column vectors.
struct LinkedChain {
  FieldSpec field = FieldSpec::rationals();
  std::size_t d = 0;
  std::size_t n = 0;
  Scalar s;
  std::vector<Matrix> f;
  std::vector<Matrix> fback;
};

/// Row bases of r-dimensional subspaces of E_1 and E_n.
struct FlagPair {
  std::size_t r = 0;
  std::vector<Vector> F1;
  std::vector<Vector> Fn;
};

struct ChainDiagnostics {
  bool ok = true;
  std::vector<std::string> problems;
};

ChainDiagnostics validate_s_linked(const LinkedChain& chain);

/// Reverses the direction of the chain (E_n first), swapping forward and backward maps.
LinkedChain reversed(const LinkedChain& chain);

struct Membership {
  bool member = false;
  std::vector<long> ranks;                   // rank of E_i -> E_1/F_1 + E_n/F_n, i = 1..n
  std::vector<std::vector<Vector>> kernels;  // the corresponding kernels K_i
};

Membership linked_det_membership(const LinkedChain& chain, const FlagPair& flags);

struct Completion {
  bool ok = false;
  std::vector<std::vector<Vector>> F;  // F_1, ..., F_n (RREF row bases)
  std::string reason;
};

/// Fills in F_2..F_{n-1}; fails exactly when membership fails.
Completion complete_flags(const LinkedChain& chain, const FlagPair& flags);

/// f_i(F_i) in F_{i+1}, f^i(F_{i+1}) in F_i, each F_i of dimension r.
ChainDiagnostics validate_linked_grassmannian(const LinkedChain& chain, const std::vector<std::vector<Vector>>& F,
                                              std::size_t r);

/// One link A = P diag(1^{d1}, 0) Q, B = Q^{-1} diag(0, 1^{d-d1}) P^{-1}.
std::pair<Matrix, Matrix> degenerate_link(const Matrix& P, const Matrix& Q, std::size_t d1);

Matrix random_invertible(const FieldSpec& field, std::size_t d, std::mt19937_64& rng);

/// Random s-linked chain. For s = 0, ranks[i] is the rank d1 of the i-th
/// forward map; for s != 0 each forward map is invertible and the backward
/// map is s times its inverse. Links are resampled until (III) holds.
LinkedChain gen_random_chain(std::uint64_t seed, const FieldSpec& field, std::size_t d, std::size_t n, const Scalar& s,
                             const std::vector<std::size_t>& ranks);

/// Chain of augmented section spaces along a collapsed edge, with the flags
/// induced by a candidate.
struct Bridge {
  LinkedChain chain;
  FlagPair flags;
  std::vector<curves::Multidegree> segment;  // w_v = w^(0), ..., w^(b) = w_{v'}
  std::vector<long> extra;                    // degree added on each original component
  std::vector<exactalg::Poly> divisor;        // h_v, nonvanishing at the nodes of Z_v
  long expected_dim = 0;                      // d + deg D + 1 - g
  bool flags_full_rank = true;                // F_1 and F_n have rank r + 1
};

struct BridgeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Builds the bridge with the given extra degrees (throws BridgeError when the
/// augmented section spaces do not all have the expected dimension).
Bridge curve_to_chain(const curves::CurveModel& model, const llseries::Candidate& c, std::size_t ce,
                      const std::vector<long>& extra, std::uint64_t seed = 0);
/// Tries extra = k on every component for k = 0..max_extra.
Bridge curve_to_chain_auto(const curves::CurveModel& model, const llseries::Candidate& c, std::size_t ce,
                           long max_extra = 8, std::uint64_t seed = 0);

}  // namespace lls::linkedet
