#include "entdist/io.hpp"
#include "helpers.hpp"

using namespace testing;

TEST_CASE("state documents round trip") {
  const DensityMatrix r = random_mixed({2, 3}, 4, 1);
  const DensityMatrix back = state_from_json(Json::parse(state_to_json(r).dump()));
  CHECK(back.dims() == r.dims());
  CHECK(max_abs_diff(back.matrix(), r.matrix()) == 0);

  const Json pure = Json::parse(R"({"dims": [2, 2], "vector": [0.7071067811865476, 0, 0, [0, 0.7071067811865476]]})");
  const DensityMatrix p = state_from_json(pure);
  CHECK(p.purity() == doctest::Approx(1));
  CHECK(std::abs(p.matrix()(0, 3) - Complex(0, -0.5)) < 1e-15);
}

TEST_CASE("invalid state documents") {
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"matrix": [[1]]})")), InvalidInput);
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"dims": [2], "matrix": [[1, 0], [0, 1]]})")), InvalidInput);
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"dims": [2], "matrix": [[1, 0], [0]]})")), InvalidInput);
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"dims": [2], "vector": [1, "x"]})")), InvalidInput);
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"dims": [2]})")), InvalidInput);
  CHECK_THROWS_AS(read_state("/nonexistent/state.json"), InvalidInput);
}

TEST_CASE("channel documents") {
  const KrausChannel p = channel_from_json(Json::parse(R"({"pauli": [0.9, 0.1, 0, 0]})"));
  CHECK(p.kraus().size() == 4);
  CHECK(channel_from_json(Json::parse(R"({"identity": 2})")).is_identity());
  std::mt19937_64 rng(3);
  const KrausChannel ch = random_channel(2, 2, rng);
  const KrausChannel back = channel_from_json(channel_to_json(ch));
  CHECK(back.label() == ch.label());
  CHECK(max_abs_diff(back.kraus()[1], ch.kraus()[1]) == 0);
  CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"pauli": [0.5, 0.6, 0, 0]})")), InvalidInput);
  CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"kraus": [[[0.5, 0], [0, 0.5]]]})")), InvalidInput);
  CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"label": "x"})")), InvalidInput);
}

TEST_CASE("result documents") {
  MeasureResult m;
  m.value = 0.25;
  m.kind = BoundKind::UpperBound;
  const Json j = to_json(m);
  CHECK(j["kind"] == "upper-bound");
  CHECK(j["value"] == 0.25);

  const Json rec = run_record({"entdist", "measure"}, OptimizerConfig{});
  CHECK(rec["version"] == ENTDIST_VERSION);
  CHECK(rec["seed"] == 12345);
  CHECK(rec["config"]["restarts"] == 20);
}
