#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace tstk {

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr int kReportSchemaVersion = 1;

struct Check {
  std::string name;
  std::string anchor;
  double max_abs_error = 0;
  double tolerance = 0;
  bool pass = false;
  std::string notes;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  // pass iff err <= tol (NaN fails).
  Check& add(std::string name, std::string anchor, double err, double tol, std::string notes = {});
  // Boolean outcome: error 0 on success, 1 on failure, tolerance 0.
  Check& add_flag(std::string name, std::string anchor, bool ok, std::string notes = {});
  void pin(const std::string& key, nlohmann::ordered_json value) { pinned_[key] = std::move(value); }
  void set_config(nlohmann::ordered_json c) { config_ = std::move(c); }
  void set_result(const std::string& key, nlohmann::ordered_json value) { results_[key] = std::move(value); }

  const std::vector<Check>& checks() const { return checks_; }
  bool pass() const;
  nlohmann::ordered_json to_json() const;
  std::string dump() const { return to_json().dump(2) + "\n"; }
  // Writes to `path` (or nothing if empty); throws on I/O failure.
  void write(const std::string& path) const;

 private:
  std::string command_;
  nlohmann::ordered_json config_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json pinned_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json results_ = nlohmann::ordered_json::object();
  std::vector<Check> checks_;
};

}  // namespace tstk
