#pragma once

#include <string>
#include <vector>

#include "lls/curves/curve.hpp"
#include "lls/llseries/lls.hpp"

namespace lls::testing {

using curves::CurveInstance;
using curves::CurveModel;
using curves::EdgeSpec;
using exactalg::FieldSpec;
using exactalg::Scalar;
using exactalg::Vector;
using multidegrees::Multidegree;

inline Vector ints(const FieldSpec& F, std::vector<long> xs) {
  Vector v;
  for (auto x : xs) v.push_back(F.from_int(x));
  return v;
}

inline EdgeSpec edge(const FieldSpec& F, std::size_t t, std::size_t h, int n, long tc, long hc, long lambda) {
  return EdgeSpec{t, h, n, F.from_int(tc), F.from_int(hc), F.from_int(lambda)};
}

/// Two rational components meeting at 0 on both, lambda = 1, w0 = (1, 0).
inline CurveInstance worked_instance(const FieldSpec& F = FieldSpec::rationals()) {
  return curves::make_instance(F, {"1", "2"}, {edge(F, 0, 1, 1, 0, 0, 1)}, Multidegree{{1, 0}, {0}});
}

inline llseries::Candidate candidate(const FieldSpec& F, long r, std::vector<std::vector<std::vector<long>>> V) {
  llseries::Candidate c;
  c.r = r;
  for (auto& rows : V) {
    std::vector<Vector> vs;
    for (auto& row : rows) vs.push_back(ints(F, row));
    c.V.push_back(std::move(vs));
  }
  return c;
}

}  // namespace lls::testing
