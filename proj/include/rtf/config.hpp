#pragma once

#include "rtf/expansion.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtf {

// Schema violation; what() starts with the offending field path.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& path, const std::string& msg)
      : std::runtime_error(path + ": " + msg), field(path) {}
  std::string field;
};

struct FinitePlaceSpec {
  long long prime = 2;
  bool basic = true;
  int level = 1;
  std::vector<Ball> balls;
};

struct ConesRequest {
  std::string function = "sigma";  // rint | epsilon | tau | tau_hat | sigma | gamma
  std::string P = "B", Q = "G";
  Rational lo = -5, hi = 5;
  int steps = 20;
};

struct ZetaRequest {
  int sign = 1;
  std::vector<double> s{2.0, 3.0};
};

struct ToriModelSpec {
  long long N = 12, d = -1;
};

struct RunConfig {
  long long discriminant = -4;
  RPoint center{1, 0, 0, 0};
  double radius = 3.2;
  Profile profile = Profile::bump;
  double amplitude = 1;
  std::vector<FinitePlaceSpec> finite;
  std::vector<Rational> t0s{Rational(0), Rational(1), Rational(-1), Rational(2)};
  std::vector<double> Ts{3, 4, 5};
  double tolerance = 1e-10;
  int depth = 4;
  VolumeSymbols vol;
  std::uint64_t seed = 20240607;
  ConesRequest cones;
  ZetaRequest zeta;
  std::vector<ToriModelSpec> tori_models{{12, -1}, {15, 2}, {8, 3}, {20, 5}, {9, -3}};
  std::vector<long long> tori_cores{-1, 2, 3, -2, 5, -3, 6, 7};

  QuadAlg field() const;
  GlobalTestFn test_function() const;
  ExpansionOptions expansion_options() const;
};

// Squarefree core of a fundamental discriminant (DomainError otherwise).
long long core_of_discriminant(long long disc);

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);

// Rationals travel as "p/q" strings; integers may also be bare numbers.
Rational parse_rational(const nlohmann::json& v, const std::string& path);

// A number together with where it came from.
nlohmann::json numeric(double value, const std::string& module, double requested, double achieved);

}  // namespace rtf
