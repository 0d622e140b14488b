#include "solitrend/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace solitrend {

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("digest_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a64_hex(ss.str());
}

void write_manifest(const std::string& path, const RunManifest& m) {
    nlohmann::ordered_json j;
    j["command"] = m.command;
    j["argv"] = m.argv;
    j["parameters"] = m.parameters;
    j["seed"] = m.seed;
    j["scheme_versions"] = m.scheme_versions;
    j["inputs"] = nlohmann::ordered_json::array();
    for (const auto& [p, digest] : m.inputs)
        j["inputs"].push_back({{"path", p}, {"digest", digest}});
    j["outputs"] = m.outputs;
    j["wall_time_s"] = m.wall_time_s;
    j["status"] = m.status;
    std::ofstream out(path);
    if (!out) throw validation_error("write_manifest: cannot open " + path);
    out << j.dump(2) << "\n";
}

RunManifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("read_manifest: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error("read_manifest: malformed JSON in " + path + ": " + e.what());
    }
    RunManifest m;
    m.command = j.value("command", "");
    if (j.contains("argv")) m.argv = j["argv"].get<std::vector<std::string>>();
    if (j.contains("parameters"))
        m.parameters = j["parameters"].get<std::map<std::string, std::string>>();
    m.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("scheme_versions"))
        m.scheme_versions = j["scheme_versions"].get<std::map<std::string, std::string>>();
    if (j.contains("inputs"))
        for (const auto& entry : j["inputs"])
            m.inputs.emplace_back(entry.value("path", ""), entry.value("digest", ""));
    if (j.contains("outputs")) m.outputs = j["outputs"].get<std::vector<std::string>>();
    m.wall_time_s = j.value("wall_time_s", 0.0);
    m.status = j.value("status", "");
    return m;
}

}  // namespace solitrend
