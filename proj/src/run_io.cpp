#include "mopg/run_io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <system_error>

namespace mopg {

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    require(ec == std::errc(), "format_double: conversion failed");
    return std::string(buf, ptr);
}

std::string samples_csv(const RunRecord& record) {
    std::string out = "step,encoding";
    for (const auto& name : record.objective_spec.names) out += "," + name;
    out += ",reward,temperature";
    for (const auto& name : record.target_names) out += "," + name;
    out += "\n";

    for (const auto& row : record.samples) {
        out += std::to_string(row.step);
        out += ',';
        for (std::size_t t = 0; t < row.encoding.size(); ++t) {
            if (t) out += '-';
            out += std::to_string(row.encoding[t]);
        }
        for (double v : row.objectives) {
            out += ',';
            out += format_double(v);
        }
        out += ',';
        out += format_double(row.reward);
        out += ',';
        out += format_double(row.temperature);
        for (double v : row.targets) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        require(f.good(), "write_file_atomic: cannot open " + tmp.string());
        f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        f.flush();
        require(f.good(), "write_file_atomic: write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j) {
    write_file_atomic(path, j.dump(2) + "\n");
}

void write_run(const std::filesystem::path& dir, const RunRecord& record,
               const nlohmann::json& metrics) {
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "samples.csv", samples_csv(record));
    write_json_atomic(dir / "front.json", archive_to_json(record.final_front));
    write_json_atomic(dir / "metrics.json", metrics);
}

std::string fingerprint(const nlohmann::json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

} // namespace mopg
