#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lls/exactalg/matrix.hpp"
#include "lls/exactalg/poly.hpp"
#include "lls/multidegrees/multidegree.hpp"
#include "lls/multidegrees/tuple.hpp"

namespace lls::curves {

using exactalg::FieldSpec;
using exactalg::Matrix;
using exactalg::Poly;
using exactalg::Scalar;
using exactalg::Vector;
using multidegrees::ChainedGraph;
using multidegrees::ConcentratedTuple;
using multidegrees::Multidegree;

/// Raised when a computed map fails to land where the model says it must.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// User-facing description of a nodal curve with rational components.
struct CurveInstance {
  FieldSpec field = FieldSpec::rationals();
  std::shared_ptr<const ChainedGraph> graph;
  std::vector<Scalar> tail_coord;  // node coordinate on the tail component, per edge
  std::vector<Scalar> head_coord;  // node coordinate on the head component, per edge
  std::vector<Scalar> lambda;      // gluing scalar per edge
  Multidegree w0;
  ConcentratedTuple tuple;         // b is empty off multitrees
};

struct InstanceDiagnostics {
  bool ok = true;
  std::vector<std::string> problems;
};

InstanceDiagnostics validate_instance(const CurveInstance& inst);

struct EdgeSpec {
  std::size_t tail = 0, head = 0;
  int n = 1;
  Scalar tail_coord, head_coord, lambda;
};

/// Assembles an instance and derives its concentrated tuple; off multitrees
/// only the w_v are filled in (throws std::invalid_argument on malformed input).
CurveInstance make_instance(const FieldSpec& field, std::vector<std::string> labels, const std::vector<EdgeSpec>& edges,
                            const Multidegree& w0, const multidegrees::TupleOptions& opts = {});

/// Global sections of the line bundle in one multidegree. Coordinates live in
/// the "ambient" space: for each component of the subdivided curve, the
/// coefficients of a polynomial of degree at most its weight.
struct SectionSpace {
  Multidegree w;
  std::vector<long> weights;          // per subdivided component
  std::vector<std::size_t> offset;    // start of each component's block in ambient coordinates
  std::size_t ambient_dim = 0;
  Matrix basis;                       // rows: RREF basis of the section space
  std::vector<std::size_t> pivots;
  std::vector<Scalar> gluing;         // per subdivided edge
  std::vector<long> firing;           // subdivided multiset taking w0 to w

  std::size_t dim() const { return basis.rows(); }
  std::size_t block_size(std::size_t z) const { return weights[z] < 0 ? 0 : static_cast<std::size_t>(weights[z] + 1); }
  /// The polynomial on component z of the section with ambient coordinates x.
  Poly component(const Vector& x, std::size_t z) const;
  /// Ambient vector of the section with basis coordinates c.
  Vector to_ambient(const Vector& c) const;
  /// Basis coordinates of an ambient vector, throwing ModelError if it is not a section.
  Vector coordinates(const Vector& ambient) const;
};

/// Divisor sequence D_0 <= ... <= D_{b+1} on Z_v for the pair (ce, v),
/// as multiplicities of the nodes over ce.
struct DivisorSeq {
  std::vector<std::size_t> nodes;             // original edge ids over ce
  std::vector<Scalar> points;                 // their coordinates on Z_v
  std::vector<std::vector<int>> mult;         // mult[i][k] = multiplicity of nodes[k] in D_i
  long degree(std::size_t i) const;
  std::size_t length() const { return mult.size(); }  // b + 2
};

/// The two sides of the gluing comparison at a critical index.
struct JetMap {
  std::vector<std::size_t> nodes;  // original edge ids in supp(D_{j+1} - D_j)
  Matrix v_side;                   // rows: one functional per node on sections of L^v
  Matrix w_side;                   // rows: one functional per node on sections of L^{v'}
};

/// The line bundle model: subdivided curve, enriched structure and all
/// derived maps. Section spaces are cached per multidegree.
class CurveModel {
 public:
  explicit CurveModel(CurveInstance inst);

  const CurveInstance& instance() const { return inst_; }
  const ChainedGraph& graph() const { return *inst_.graph; }
  const FieldSpec& field() const { return inst_.field; }
  long genus() const { return graph().graph().betti(); }
  long degree() const;

  /// Coordinate of the subdivided edge `se` on its tail / head component.
  const Scalar& node_point(std::size_t se, bool tail_side) const;
  /// Restriction of the enriched section s_u to component z.
  const Poly& s_restricted(std::size_t u, std::size_t z) const { return s_[u][z]; }
  /// Gluing scalar of the twisting bundle O_u at subdivided edge se.
  const Scalar& enriched_gluing(std::size_t u, std::size_t se) const { return enriched_[u][se]; }

  std::shared_ptr<const SectionSpace> section_space(const Multidegree& w) const;

  /// Multiplier on component z induced by the subdivided firing multiset k.
  Poly multiplier(const std::vector<long>& k, std::size_t z) const;

  /// Matrix (target dim x source dim) of f_{w,w'}.
  Matrix twist_map(const Multidegree& w, const Multidegree& target) const;
  /// Composite of single twists along an explicit ordering of vertices.
  Matrix twist_map_along(const Multidegree& w, const std::vector<std::size_t>& order) const;

  /// Z_v-part of f_{w, w_v}: ((deg of L^v)+1) x dim Gamma(L_w), with w_v taken from `tuple`.
  Matrix restrict_to_component(const Multidegree& w, std::size_t v, const Multidegree& wv) const;
  /// Degree of L^v = w_v(v) for the given tuple multidegree.
  long component_degree(const Multidegree& wv, std::size_t v) const { return wv.weights.at(v); }

  DivisorSeq divisor_sequence(const ConcentratedTuple& t, std::size_t ce, std::size_t v) const;
  /// m_{e,v}(w) for each edge endpoint: vanishing order of the image of
  /// Gamma(L_w) at that node inside L^v.
  std::map<std::pair<std::size_t, std::size_t>, int> vanishing_orders(const ConcentratedTuple& t,
                                                                       const Multidegree& w) const;
  JetMap jet_map(const ConcentratedTuple& t, std::size_t ce, std::size_t v, long j) const;

 private:
  CurveInstance inst_;
  std::vector<Scalar> sub_tail_point_, sub_head_point_, sub_lambda_;
  std::vector<std::vector<Poly>> s_;            // s_[u][z]
  std::vector<std::vector<Scalar>> enriched_;   // enriched_[u][se]
  mutable std::mutex cache_mutex_;
  mutable std::map<Multidegree, std::shared_ptr<const SectionSpace>> cache_;
};

/// Subspace V(-D) of polynomials of degree < len: vanishing to order mult[k] at points[k].
std::vector<Vector> subspace_vanishing(const FieldSpec& field, std::size_t len, const std::vector<Vector>& V,
                                       const std::vector<Scalar>& points, const std::vector<int>& mult);

}  // namespace lls::curves
