// report_io.hpp — simulation report serialization (per-replication CSV, summary JSON).
#pragma once

#include <string>

#include "ecdm/monte_carlo.hpp"

namespace ecdm {

// One row per replication, full 17-significant-digit doubles, flags as 0/1.
void write_replication_table_csv(const SimReport& report, const std::string& path);

// Aggregates, scenario echo, oracle values, and density-overlay constants.
// Undefined quantities are JSON null, never NaN.
std::string summary_json_string(const SimReport& report);
void write_summary_json(const SimReport& report, const std::string& path);

}  // namespace ecdm
