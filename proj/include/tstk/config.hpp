#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tstk/fields.hpp"

namespace tstk {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int m = 2;
  int N = 16;
  double L = 2 * kPi;
  Deriv deriv = Deriv::spectral;
  double tol_alg = kTolAlgebraic;
  double tol_deriv = kTolDerivative;
  std::uint64_t seed = 20240611;
  std::vector<std::string> suites = {"clifford", "geometry", "torsion", "twist", "action"};
  bool m3 = false;
  std::string report;  // output path; empty = stdout only
};

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s = {"clifford", "geometry", "torsion", "twist", "action"};
  return s;
}

// Applies one key=value pair; throws ConfigError on unknown keys or bad values.
void apply_setting(RunConfig& c, const std::string& key, const std::string& value);
// Flat key=value file; '#' starts a comment, blank lines ignored.
void load_config_file(RunConfig& c, const std::string& path);
// Tolerances >= 0, N >= 4 and even, L > 0, m in {1, 2, 3}, known suites.
void validate(const RunConfig& c);
nlohmann::ordered_json to_json(const RunConfig& c);
std::string to_string(Deriv d);

}  // namespace tstk
