#include "rtf/config.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace rtf;
using nlohmann::json;

namespace {

std::string error_field(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.field;
  }
  return "";
}

}  // namespace

TEST_CASE("core of a fundamental discriminant") {
  CHECK(core_of_discriminant(-4) == -1);
  CHECK(core_of_discriminant(-3) == -3);
  CHECK(core_of_discriminant(5) == 5);
  CHECK(core_of_discriminant(8) == 2);
  CHECK(core_of_discriminant(-8) == -2);
  CHECK(core_of_discriminant(12) == 3);
  CHECK_THROWS_AS(core_of_discriminant(1), DomainError);
  CHECK_THROWS_AS(core_of_discriminant(-1), DomainError);
  CHECK_THROWS_AS(core_of_discriminant(3), DomainError);
}

TEST_CASE("empty config gives the defaults") {
  const RunConfig c = parse_config(json::object());
  const RunConfig d;
  CHECK(c.discriminant == d.discriminant);
  CHECK(c.t0s == d.t0s);
  CHECK(c.Ts == d.Ts);
  CHECK(c.depth == 4);
  CHECK(c.field() == QuadAlg(-1));
  CHECK(c.test_function().S().empty());
  CHECK(to_json(c) == to_json(d));
}

TEST_CASE("config round trip") {
  const json j = json::parse(R"({
    "field": {"discriminant": 5},
    "test_function": {
      "infinity": {"center": [1.5, 0, 0.25, 0], "radius": 2, "profile": "cubic", "amplitude": 3},
      "finite": [{"prime": 3, "level": 2, "balls": [{"center": ["3/2", 1, 0, 0], "value": "1/2"}]},
                 {"prime": 7, "basic": true}]
    },
    "data": {"t0": ["3/2", 0, "-1"]},
    "T": [2, 6],
    "depth": 6,
    "volumes": {"mb": 2.5},
    "seed": 7,
    "cones": {"function": "gamma", "lo": "-1/2", "hi": 3, "steps": 4},
    "zeta": {"sign": -1, "s": [1.5]},
    "tori": {"models": [{"N": 6, "d": 2}], "cores": [-1, 3]}
  })");
  const RunConfig c = parse_config(j);
  CHECK(c.field() == QuadAlg(5));
  CHECK(c.profile == Profile::cubic);
  REQUIRE(c.finite.size() == 2);
  CHECK(!c.finite[0].basic);
  CHECK(c.finite[0].balls[0].alpha == rat(3, 2));
  CHECK(c.finite[0].balls[0].value == rat(1, 2));
  CHECK(c.finite[1].basic);
  CHECK(c.t0s == std::vector<Rational>{rat(3, 2), Rational(0), Rational(-1)});
  CHECK(c.vol.mb == 2.5);
  CHECK(c.cones.lo == rat(-1, 2));
  CHECK(c.zeta.sign == -1);
  CHECK(c.test_function().S() == std::vector<long long>{3});
  CHECK(c.expansion_options().depth == 6);

  const json again = to_json(c);
  CHECK(to_json(parse_config(again)) == again);
}

TEST_CASE("config errors carry the field path") {
  CHECK(error_field(json::parse(R"({"bogus": 1})")) == "bogus");
  CHECK(error_field(json::parse(R"({"field": {"discriminant": 3}})")) == "field.discriminant");
  CHECK(error_field(json::parse(R"({"test_function": {"infinity": {"radius": -1}}})")) ==
        "test_function.infinity.radius");
  CHECK(error_field(json::parse(R"({"test_function": {"infinity": {"center": [1, 0, 0]}}})")) ==
        "test_function.infinity.center");
  CHECK(error_field(json::parse(R"({"test_function": {"finite": [{"prime": 3}, {"prime": 4}]}})")) ==
        "test_function.finite[1].prime");
  CHECK(error_field(json::parse(R"({"test_function": {"finite": [{"prime": 3}, {"prime": 3}]}})")) ==
        "test_function.finite[1].prime");
  CHECK(error_field(json::parse(R"({"data": {"t0": [1, "x/2"]}})")) == "data.t0[1]");
  CHECK(error_field(json::parse(R"({"depth": 5})")) == "depth");
  CHECK(error_field(json::parse(R"({"zeta": {"s": [2, 1]}})")) == "zeta.s[1]");
  CHECK(error_field(json::parse(R"({"cones": {"P": "G", "Q": "B"}})")) == "cones.P");
  CHECK(error_field(json::parse(R"({"tori": {"models": [{"N": 6, "d": 4}]}})")) == "tori.models[0].d");
  CHECK(error_field(json::parse("[1, 2]")) == "<root>");
}

TEST_CASE("config files allow comments") {
  const std::string path = "rtf_test_config.jsonc";
  {
    std::ofstream out(path);
    out << "{\n  // comment\n  \"depth\": 8\n}\n";
  }
  CHECK(load_config(path).depth == 8);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config("does/not/exist.json"), ConfigError);
}

TEST_CASE("numeric values record their provenance") {
  const json n = numeric(1.5, "integrals", 1e-10, 3e-12);
  CHECK(n["value"] == 1.5);
  CHECK(n["module"] == "integrals");
  CHECK(n["tolerance_requested"] == 1e-10);
  CHECK(n["tolerance_achieved"] == 3e-12);
}
