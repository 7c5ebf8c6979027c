#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace levy2d {

#ifndef LEVY2D_BUILD_ID
#define LEVY2D_BUILD_ID "unknown"
#endif

inline const char* build_id() { return LEVY2D_BUILD_ID; }

// One structured result object per CLI run. Serialized as JSON on stdout;
// doubles round-trip losslessly (shortest-representation printing).
struct RunReport {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  double value = 0.0;
  double error = 0.0;
  long long samples_or_evals = 0;
  double wall_time_s = 0.0;
  std::string git_or_build_id = build_id();
  std::optional<std::uint64_t> seed;
  nlohmann::json details = nlohmann::json::object();

  bool operator==(const RunReport&) const = default;
};

inline constexpr const char* kReportSchema = "levy2d-report/1";

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j{{"schema", kReportSchema},
                   {"command", r.command},
                   {"parameters", r.parameters},
                   {"value", r.value},
                   {"error", r.error},
                   {"samples_or_evals", r.samples_or_evals},
                   {"wall_time_s", r.wall_time_s},
                   {"git_or_build_id", r.git_or_build_id},
                   {"details", r.details}};
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

inline RunReport report_from_json(const nlohmann::json& j) {
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.parameters = j.at("parameters");
  r.value = j.at("value").get<double>();
  r.error = j.at("error").get<double>();
  r.samples_or_evals = j.at("samples_or_evals").get<long long>();
  r.wall_time_s = j.at("wall_time_s").get<double>();
  r.git_or_build_id = j.at("git_or_build_id").get<std::string>();
  if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
  r.details = j.at("details");
  return r;
}

class WallClock {
 public:
  WallClock() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace levy2d
