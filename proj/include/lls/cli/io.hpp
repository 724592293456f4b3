#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lls/curves/curve.hpp"
#include "lls/linkedet/linked.hpp"
#include "lls/llseries/lls.hpp"

namespace lls::cli {

using nlohmann::json;

/// Malformed input files (schema violations, unknown labels, bad scalars).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceFile {
  curves::CurveInstance instance;
  bool tuple_given = false;
  std::vector<llseries::Candidate> candidates;
};

inline constexpr const char* kInstanceSchema = "lls-instance/1";
inline constexpr const char* kChainSchema = "lls-chain/1";
inline constexpr const char* kReportSchema = "lls-report/1";

exactalg::FieldSpec parse_field(const json& j);
json field_to_json(const exactalg::FieldSpec& f);

/// Vertices are reordered by label so derived data does not depend on file order.
InstanceFile parse_instance(const json& j);
json instance_to_json(const InstanceFile& f);

multidegrees::Multidegree parse_multidegree(const json& j, const graphs::DualGraph& g);
json multidegree_to_json(const multidegrees::Multidegree& w, const graphs::DualGraph& g);
/// Compact form "w1,w2,...|mu1,mu2,..." in vertex order.
multidegrees::Multidegree parse_compact_multidegree(const std::string& s, const multidegrees::ChainedGraph& cg);

json matrix_to_json(const exactalg::Matrix& m);
exactalg::Matrix parse_matrix(const json& j, const exactalg::FieldSpec& f, std::size_t rows, std::size_t cols);
json vectors_to_json(const std::vector<exactalg::Vector>& vs);
std::vector<exactalg::Vector> parse_vectors(const json& j, const exactalg::FieldSpec& f, std::size_t len);

json tuple_to_json(const multidegrees::ConcentratedTuple& t, const multidegrees::ChainedGraph& cg);
json candidate_to_json(const llseries::Candidate& c, const graphs::DualGraph& g);
json verdict_to_json(const llseries::Verdict& v, const graphs::DualGraph& g);

struct ChainFile {
  linkedet::LinkedChain chain;
  std::optional<linkedet::FlagPair> flags;
};
ChainFile parse_chain(const json& j);
json chain_to_json(const linkedet::LinkedChain& c, const std::optional<linkedet::FlagPair>& flags = std::nullopt);

}  // namespace lls::cli
