#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "csys/core.hpp"

namespace csys {

// Machine-readable record of one command run. Identical inputs and flags
// produce identical reports except for wall_time_ms.
struct RunReport {
  struct Check {
    std::string name;
    bool pass = false;
    std::uint64_t checked = 0;
    std::uint64_t skipped = 0;
    std::vector<std::string> details;
  };

  std::string command;
  std::map<std::string, std::string> inputs;  // path -> content hash
  int depth = -1;
  std::vector<Check> checks;
  nlohmann::json extra = nlohmann::json::object();
  double wall_time_ms = 0.0;

  void add_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    inputs[path] = fnv1a_hex(buf.str());
  }

  // Folds a Report in, keeping at most 20 violation details.
  void add_check(const std::string& name, const Report& rep) {
    Check c;
    c.name = name;
    c.pass = rep.ok();
    c.checked = rep.checked;
    c.skipped = rep.skipped;
    for (std::size_t i = 0; i < rep.violations.size() && i < 20; ++i)
      c.details.push_back(rep.violations[i]);
    if (rep.violations.size() > 20)
      c.details.push_back(
          txt("... and ", rep.violations.size() - 20, " more"));
    checks.push_back(std::move(c));
  }

  void add_flag_check(const std::string& name, bool pass,
                      const std::string& detail = "") {
    Check c;
    c.name = name;
    c.pass = pass;
    c.checked = 1;
    if (!detail.empty()) c.details.push_back(detail);
    checks.push_back(std::move(c));
  }

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["inputs"] = inputs;
    if (depth >= 0) j["depth"] = depth;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json cj;
      cj["name"] = c.name;
      cj["status"] = c.pass ? "pass" : "fail";
      cj["checked"] = c.checked;
      cj["skipped"] = c.skipped;
      if (!c.details.empty()) cj["details"] = c.details;
      j["checks"].push_back(cj);
    }
    if (!extra.empty()) j["extra"] = extra;
    j["pass"] = pass();
    j["wall_time_ms"] = wall_time_ms;
    return j;
  }
};

class WallClock {
 public:
  WallClock() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace csys
