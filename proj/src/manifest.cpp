#include "oa/manifest.hpp"

#include <ctime>
#include <fstream>

#include <json.hpp>

namespace oa {

void RunManifest::add_input(const std::string& path) {
    inputs.emplace_back(path, hex64(fnv1a64_file(path)));
}

void RunManifest::stamp_now() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    created_at = buf;
}

std::string RunManifest::digest() const {
    std::string material = tool_version + "\n" + subcommand + "\n";
    for (const auto& [path, dig] : inputs) material += path + "=" + dig + "\n";
    if (policy_digest) material += "policy=" + *policy_digest + "\n";
    if (seed) material += "seed=" + std::to_string(*seed) + "\n";
    return hex64(fnv1a64(material));
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["tool_version"] = tool_version;
    j["subcommand"] = subcommand;
    j["inputs"] = nlohmann::json::array();
    for (const auto& [path, dig] : inputs)
        j["inputs"].push_back({{"path", path}, {"digest", dig}});
    if (policy_digest) j["policy_digest"] = *policy_digest;
    if (seed) j["seed"] = *seed;
    j["created_at"] = created_at;
    j["digest"] = digest();
    return j.dump(2) + "\n";
}

Result<bool> RunManifest::write(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) return Error{Err::Io, "cannot write manifest " + path};
    out << to_json();
    return true;
}

}  // namespace oa
