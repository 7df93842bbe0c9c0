#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "netdef/defense.hpp"
#include "netdef/sweep.hpp"

namespace netdef {

inline constexpr const char* kSweepCsvHeader = "beta,strategy,network_seed,attack_seed,G,B,E,rho_g,rho_b";

/// One row per record under kSweepCsvHeader. Reals use the shortest round-trip representation.
std::string sweep_csv(const std::vector<SweepRecord>& records);

/// Columns value,beta_b,stderr,note; missing values are left empty.
std::string trends_csv(const std::vector<TrendPoint>& points);

nlohmann::json to_json(const CrossoverResult& result);
nlohmann::json to_json(const std::vector<CurvePoint>& curve);
nlohmann::json to_json(const AttackPlan& plan);
nlohmann::json to_json(const DefenseAllocation& alloc);

/// Writes `content` next to `path` under a temporary name, then renames it into place.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Shortest round-trip decimal form of a double.
std::string format_real(double x);

}  // namespace netdef
