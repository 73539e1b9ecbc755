#include <catch_amalgamated.hpp>

#include "gitstab/corpus.hpp"
#include "gitstab/error.hpp"
#include "gitstab/io.hpp"

#include <fstream>

using namespace gitstab;

namespace {

std::string schema_message(const Json& j) {
  try {
    config_from_json(j);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Schema);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal configuration parses") {
  const Json j = Json::parse(R"({"n": 2, "d": 1, "items": [{"weight": "1", "basis": [["1", "0"]]}]})");
  const auto c = config_from_json(j);
  CHECK(c.n() == 2);
  CHECK(c.size() == 1);
  CHECK(config_from_json(to_json(c)) == c);
}

TEST_CASE("schema errors carry field paths") {
  CHECK(schema_message(Json::parse(R"({"n": 2, "items": [{"weight": "0", "basis": [["1", "0"]]}]})"))
            .find("items[0].weight") != std::string::npos);
  CHECK(schema_message(Json::parse(R"({"n": 2, "items": [{"weight": "1", "basis": [["1", "0", "0"]]}]})"))
            .find("items[0].basis[0]") != std::string::npos);
  CHECK(schema_message(Json::parse(R"({"n": 2, "items": [{"weight": "1", "basis": [["1", "0"], ["2", "0"]]}]})"))
            .find("linearly dependent") != std::string::npos);
  CHECK(schema_message(Json::parse(R"({"n": 2, "items": []})")).find("items") != std::string::npos);
  CHECK(schema_message(Json::parse(R"({"items": []})")).find("n") != std::string::npos);
  CHECK(schema_message(Json::parse(R"({"n": 2, "items": [{"weight": "a/b", "basis": []}]})"))
            .find("items[0].weight") != std::string::npos);
}

TEST_CASE("bases are canonicalized on load") {
  const Json a = Json::parse(R"({"n": 2, "items": [{"weight": "1/2", "basis": [["2", "4"]]}]})");
  const Json b = Json::parse(R"({"n": 2, "items": [{"weight": "1/2", "basis": [["-1", "-2"]]}]})");
  CHECK(config_from_json(a) == config_from_json(b));
}

TEST_CASE("bundle round trip") {
  const Json j = Json::parse(R"({"N": 2, "weights": [1], "ranks": [1],
    "points": [{"volume": 0.5, "frames": [[[[1, 0], [0, 0]]]]},
               {"volume": 0.5, "frames": [[[[0, 0], [1, 0]]]]}]})");
  const SampledBundleConfig b = bundle_from_json(j);
  CHECK(b.frames.size() == 2);
  CHECK(bundle_moment_map(b).norm() < 1e-15);
  CHECK(bundle_from_json(to_json(b)).frames == b.frames);
  Json bad = j;
  bad["points"][0]["frames"][0][0][0] = Json::array({2, 0});
  CHECK_THROWS_AS(bundle_from_json(bad), Error);
}

TEST_CASE("m-filtration round trip") {
  const Json j = Json::parse(R"({"n": 2, "filtrations": [{"steps": [[["1", "0"]]], "weights": ["1"]}]})");
  const MFiltration f = mfiltration_from_json(j);
  CHECK(f.m() == 1);
  CHECK(to_json(mfiltration_from_json(to_json(f))) == to_json(f));
}

TEST_CASE("extras accept lists, objects and verdicts") {
  const Json list = Json::parse(R"([[["1", "1"]]])");
  CHECK(extras_from_json(list, 2).size() == 1);
  const Json obj = Json::parse(R"({"subspaces": [[["1", "1"]], [["0", "1"]]]})");
  CHECK(extras_from_json(obj, 2).size() == 2);

  const auto c = make_config(2, 1, {{{{1, 0}}, 1}});
  const Json verdict = to_json(decide(c));
  const auto extra = extras_from_json(verdict, 2);
  REQUIRE(extra.size() == 1);
  DecideOptions opts;
  opts.extra = extra;
  CHECK(verify_certificate(c, decide(c, opts)));
}

TEST_CASE("parse_config dispatches on keys") {
  const std::string path = "parse_config_dispatch.json";
  {
    std::ofstream out(path);
    out << R"({"n": 1, "filtrations": []})";
  }
  CHECK(std::holds_alternative<MFiltration>(parse_config(path)));
  {
    std::ofstream out(path);
    out << R"({"n": 1, "items": [{"weight": 1, "basis": [[1]]}]})";
  }
  CHECK(std::holds_alternative<WeightedConfiguration>(parse_config(path)));
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(parse_config(path), Error);
  std::remove(path.c_str());
}

TEST_CASE("verdict serialization") {
  const auto c = make_config(2, 1, {{{{1, 0}}, 1}, {{{0, 1}}, 1}});
  const Json v = to_json(decide(c));
  CHECK(v["status"] == "StrictlySemistable");
  CHECK(v["slope_total"] == "1");
  CHECK(v["confidence"] == "ExactComplete");
}
