#include "tstk/report.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace tstk {

Check& Report::add(std::string name, std::string anchor, double err, double tol, std::string notes) {
  Check c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.max_abs_error = err;
  c.tolerance = tol;
  c.pass = std::isfinite(err) && err <= tol;
  c.notes = std::move(notes);
  checks_.push_back(std::move(c));
  return checks_.back();
}

Check& Report::add_flag(std::string name, std::string anchor, bool ok, std::string notes) {
  return add(std::move(name), std::move(anchor), ok ? 0.0 : 1.0, 0.0, std::move(notes));
}

bool Report::pass() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

namespace {
// JSON has no representation for non-finite numbers.
nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}
}  // namespace

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = "tstk";
  j["tool_version"] = kToolVersion;
  j["command"] = command_;
  j["config"] = config_;
  j["pinned_signs"] = pinned_;
  auto arr = nlohmann::ordered_json::array();
  std::size_t failed = 0;
  for (const auto& c : checks_) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["paper_anchor"] = c.anchor;
    e["max_abs_error"] = number(c.max_abs_error);
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    e["notes"] = c.notes;
    arr.push_back(std::move(e));
    if (!c.pass) ++failed;
  }
  j["checks"] = std::move(arr);
  if (!results_.empty()) j["results"] = results_;
  j["summary"] = {{"checks", checks_.size()}, {"failed", failed}, {"pass", failed == 0}};
  return j;
}

void Report::write(const std::string& path) const {
  if (path.empty()) return;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open report file " + path);
  os << dump();
  if (!os) throw std::runtime_error("failed writing report file " + path);
}

}  // namespace tstk
