#include "tstk/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tstk {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: " + key + " expects a number, got '" + v + "'");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError("config: " + key + " expects an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("config: " + key + " expects a boolean, got '" + v + "'");
}

}  // namespace

std::string to_string(Deriv d) { return d == Deriv::spectral ? "spectral" : "fd2"; }

void apply_setting(RunConfig& c, const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in), value = trim(value_in);
  if (key == "m") {
    c.m = static_cast<int>(to_int(key, value));
  } else if (key == "N" || key == "n") {
    c.N = static_cast<int>(to_int(key, value));
  } else if (key == "L") {
    c.L = to_double(key, value);
  } else if (key == "deriv") {
    if (value == "spectral") c.deriv = Deriv::spectral;
    else if (value == "fd2") c.deriv = Deriv::fd2;
    else throw ConfigError("config: deriv must be spectral or fd2, got '" + value + "'");
  } else if (key == "tol_alg") {
    c.tol_alg = to_double(key, value);
  } else if (key == "tol_deriv") {
    c.tol_deriv = to_double(key, value);
  } else if (key == "tol") {
    c.tol_alg = c.tol_deriv = to_double(key, value);
  } else if (key == "seed") {
    const long long s = to_int(key, value);
    if (s < 0) throw ConfigError("config: seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "suites") {
    c.suites.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) c.suites.push_back(item);
    }
  } else if (key == "m3") {
    c.m3 = to_bool(key, value);
  } else if (key == "report") {
    c.report = value;
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

void load_config_file(RunConfig& c, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: " + path + ":" + std::to_string(lineno) + ": expected key=value");
    apply_setting(c, line.substr(0, eq), line.substr(eq + 1));
  }
}

void validate(const RunConfig& c) {
  if (c.m < 1 || c.m > 3) throw ConfigError("config: m must be 1, 2 or 3");
  if (c.N < 4 || c.N % 2 != 0) throw ConfigError("config: N must be even and at least 4");
  if (!(c.L > 0)) throw ConfigError("config: L must be positive");
  if (!(c.tol_alg >= 0) || !(c.tol_deriv >= 0)) throw ConfigError("config: tolerances must be non-negative");
  if (c.suites.empty()) throw ConfigError("config: no suites selected");
  for (const auto& s : c.suites)
    if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
      throw ConfigError("config: unknown suite '" + s + "'");
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["m"] = c.m;
  j["N"] = c.N;
  j["L"] = c.L;
  j["deriv"] = to_string(c.deriv);
  j["tol_alg"] = c.tol_alg;
  j["tol_deriv"] = c.tol_deriv;
  j["seed"] = c.seed;
  j["suites"] = c.suites;
  j["m3"] = c.m3;
  return j;
}

}  // namespace tstk
