#ifndef MOPG_RUN_IO_HPP
#define MOPG_RUN_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mopg/algorithms.hpp"

namespace mopg {

// Shortest round-trip decimal form of a double; identical doubles always
// serialize to identical bytes, which is what the determinism checks compare.
std::string format_double(double value);

// Renders the samples table: step, dash-joined encoding, one column per
// objective, reward, temperature, then any target columns.
std::string samples_csv(const RunRecord& record);

// Writes are temp-file-then-rename so a file is either fully written or absent.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j);

// Persists samples.csv, front.json, metrics.json under `dir`.
void write_run(const std::filesystem::path& dir, const RunRecord& record,
               const nlohmann::json& metrics);

// FNV-1a hash of a canonical JSON rendering, as fixed-width hex.
std::string fingerprint(const nlohmann::json& j);

} // namespace mopg

#endif
