#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oa/records.hpp"
#include "oa/util.hpp"

namespace oa {

enum class LicenceClass { OA, NonOA, Unclear };
enum class LicenceStatus { OA, NonOA, Unclear, None };
enum class DelayStatus { Delayed, NotDelayed, Unknown };

const char* to_string(LicenceClass c);
const char* to_string(LicenceStatus s);
const char* to_string(DelayStatus d);
std::optional<LicenceStatus> parse_licence_status(const std::string& s);
std::optional<DelayStatus> parse_delay_status(const std::string& s);

/// Scheme unified to https, host lowered, trailing slash and fragment
/// removed. Idempotent; non-URL text is returned trimmed.
std::string normalize_licence_url(const std::string& url);

/// Ordered OA / non-OA URL prefix lists; matching is by longest
/// matching prefix over normalized URLs.
class LicencePolicy {
public:
    LicencePolicy() = default;

    /// Parses the line-oriented policy format:
    ///   OA <url-prefix>
    ///   NONOA <url-prefix>
    /// with '#' comments. Prefixes are normalized on load; a prefix in
    /// both lists is an error.
    static Result<LicencePolicy> parse(const std::string& text);
    static Result<LicencePolicy> load(const std::string& path);

    /// Creative Commons prefixes as OA, nothing as non-OA.
    static LicencePolicy default_policy();

    void add_oa(const std::string& prefix);
    void add_nonoa(const std::string& prefix);

    const std::vector<std::string>& oa_patterns() const { return oa_; }
    const std::vector<std::string>& nonoa_patterns() const { return nonoa_; }

    LicenceClass classify(const std::string& normalized_url) const;

private:
    std::vector<std::string> oa_;
    std::vector<std::string> nonoa_;
};

LicenceClass classify_licence_url(const std::string& url, const LicencePolicy& policy);

/// Embargo in whole days: delay_in_days when present, else the gap
/// between issue date and licence start (clamped at 0), else unset.
std::optional<int> compute_delay(const LicenceEntry& entry,
                                 const std::optional<Date>& issued);

/// The single per-publication status after collapsing all licence rows.
struct ResolvedLicence {
    LicenceStatus status = LicenceStatus::None;
    DelayStatus delayed = DelayStatus::Unknown;
    int distinct_urls = 0;
    std::optional<int> max_delay_days;
};

struct ResolveConfig {
    int grace_days = 0;  // delays above this count as Delayed
};

/// Collapses licence rows to one status: dedupe by normalized URL, any
/// OA wins, else any non-OA wins, else Unclear; empty input is None.
/// One undelayed licence makes the publication NotDelayed.
ResolvedLicence resolve_licences(const std::vector<LicenceEntry>& entries,
                                 const std::optional<Date>& issued,
                                 const LicencePolicy& policy,
                                 const ResolveConfig& config = {});

}  // namespace oa
