#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "fixpt/center.hpp"
#include "fixpt/config.hpp"
#include "fixpt/example34.hpp"
#include "fixpt/orbit.hpp"
#include "fixpt/verify.hpp"

namespace fixpt {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const HypothesisReport& r);
nlohmann::json to_json(const CenterResult& c);
nlohmann::json to_json(const PipelineVerdict& v);
nlohmann::json to_json(const Example34Report& r);

/// schema_version, tool_version, seed and the config echo.
nlohmann::json report_header(const std::map<std::string, std::string>& config_echo,
                             std::uint64_t seed);

/// Writes `doc` with a fresh UTC `timestamp` field. Everything else in the
/// file is a pure function of the inputs.
void write_report(const std::string& path, nlohmann::json doc);

/// Columns: n, residual, distance_to_limit, x1..x8 (as many as the dimension).
void write_orbit_csv(const std::string& path, const Orbit& orbit,
                     const std::optional<Vector>& limit);

/// Columns: iteration, value.
void write_center_csv(const std::string& path, const CenterResult& center);

}  // namespace fixpt
