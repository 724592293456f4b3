#include <doctest.h>

#include "../support/builders.hpp"
#include "lls/cli/corpus.hpp"
#include "lls/cli/io.hpp"

using namespace lls;
using namespace lls::testing;
using cli::json;

namespace {

json worked_json() {
  return json::parse(R"({
    "schema": "lls-instance/1",
    "field": {"kind": "rational"},
    "vertices": ["2", "1"],
    "edges": [{"tail": "1", "head": "2", "tail_coord": "0", "head_coord": "0", "lambda": "1"}],
    "w0": {"vertex_weights": {"1": 1, "2": 0}, "mu": [0]},
    "candidates": [{"r": 0, "V": {"1": [["0", "1"]], "2": [["0", "1"]]}}]
  })");
}

}  // namespace

TEST_CASE("instance files") {
  auto f = cli::parse_instance(worked_json());
  const auto& g = f.instance.graph->graph();
  CHECK(g.labels() == std::vector<std::string>{"1", "2"});
  CHECK_FALSE(f.tuple_given);
  CHECK(f.instance.tuple.b == std::vector<long>{1});
  REQUIRE(f.candidates.size() == 1);
  CurveModel m(f.instance);
  CHECK(llseries::is_lls_kernel(m, f.instance.tuple, f.candidates[0]).member);

  // round trip keeps everything, including the explicit tuple
  auto again = cli::parse_instance(cli::instance_to_json(f));
  CHECK(again.tuple_given);
  CHECK(again.instance.w0 == f.instance.w0);
  CHECK(again.instance.tuple.w == f.instance.tuple.w);
  CHECK(again.instance.tuple.b == f.instance.tuple.b);
  CHECK(again.candidates[0].V == f.candidates[0].V);
  CHECK(cli::instance_to_json(again) == cli::instance_to_json(f));
}

TEST_CASE("random instances survive a round trip") {
  std::mt19937_64 rng(23);
  cli::RandomInstanceOptions opts;
  for (auto F : {FieldSpec::prime(5), FieldSpec::rationals()}) {
    for (int trial = 0; trial < 20; ++trial) {
      cli::InstanceFile f;
      f.instance = cli::random_multitree_instance(F, opts, rng);
      CurveModel m(f.instance);
      if (auto c = cli::constructed_candidate(m, 1, rng)) f.candidates.push_back(*c);
      auto j = cli::instance_to_json(f);
      auto back = cli::parse_instance(json::parse(j.dump()));
      CHECK(cli::instance_to_json(back) == j);
    }
  }
}

TEST_CASE("malformed instance files are rejected") {
  auto bad = [](auto edit) {
    auto j = worked_json();
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(cli::parse_instance(bad([](json& j) { j["schema"] = "other"; })), cli::InputError);
  CHECK_THROWS_AS(cli::parse_instance(bad([](json& j) { j.erase("w0"); })), cli::InputError);
  CHECK_THROWS_AS(cli::parse_instance(bad([](json& j) { j["field"] = {{"kind", "prime"}, {"p", 6}}; })),
                  cli::InputError);
  CHECK_THROWS_AS(cli::parse_instance(bad([](json& j) { j["edges"][0]["head"] = "9"; })), cli::InputError);
  CHECK_THROWS_AS(cli::parse_instance(bad([](json& j) { j["candidates"][0]["V"]["1"] = {{"0", "1", "2"}}; })),
                  cli::InputError);
  CHECK_THROWS_AS(cli::parse_instance(bad([](json& j) { j["edges"][0]["lambda"] = "x"; })), std::exception);
  CHECK_THROWS_AS(cli::parse_instance(bad([](json& j) { j["edges"][0]["head"] = "1"; })), std::exception);
}

TEST_CASE("chain files") {
  auto F = FieldSpec::prime(3);
  auto c = linkedet::gen_random_chain(1, F, 2, 3, F.zero(), {1, 1});
  linkedet::FlagPair flags{1, {ints(F, {1, 0})}, {ints(F, {0, 1})}};
  auto j = cli::chain_to_json(c, flags);
  CHECK(j["schema"] == cli::kChainSchema);
  auto back = cli::parse_chain(json::parse(j.dump()));
  CHECK(back.chain.f == c.f);
  CHECK(back.chain.fback == c.fback);
  REQUIRE(back.flags.has_value());
  CHECK(back.flags->F1 == flags.F1);
  CHECK(back.flags->Fn == flags.Fn);
  CHECK(cli::chain_to_json(back.chain, back.flags) == j);
  auto broken = j;
  broken["f"][0] = {{"1"}};
  CHECK_THROWS_AS(cli::parse_chain(broken), cli::InputError);
}
