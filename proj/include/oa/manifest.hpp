#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oa/util.hpp"

namespace oa {

inline constexpr const char* kToolVersion = "0.1.0";

/// Reproducibility record written next to every report. The digest
/// covers tool version, subcommand, input digests and seed — not the
/// timestamp — so re-runs on identical inputs carry the same digest.
struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
    std::optional<std::string> policy_digest;
    std::optional<std::uint64_t> seed;
    std::string created_at;  // ISO-8601 UTC

    void add_input(const std::string& path);
    void stamp_now();
    std::string digest() const;
    std::string to_json() const;
    Result<bool> write(const std::string& path) const;
};

}  // namespace oa
