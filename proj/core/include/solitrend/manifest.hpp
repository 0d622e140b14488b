#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "solitrend/errors.hpp"

namespace solitrend {

/// Reproducibility record written once per CLI run, success or failure.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;  // everything after the program name
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> scheme_versions;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
    std::vector<std::string> outputs;
    double wall_time_s = 0.0;
    std::string status;  // "ok", "validation-error", "numeric-error"
};

/// FNV-1a 64-bit content digest, hex-encoded.
std::string fnv1a64_hex(const std::string& bytes);
std::string digest_file(const std::string& path);

void write_manifest(const std::string& path, const RunManifest& manifest);
RunManifest read_manifest(const std::string& path);

}  // namespace solitrend
