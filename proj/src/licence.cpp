#include "oa/licence.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace oa {

const char* to_string(LicenceClass c) {
    switch (c) {
        case LicenceClass::OA: return "OA";
        case LicenceClass::NonOA: return "NonOA";
        case LicenceClass::Unclear: return "Unclear";
    }
    return "Unclear";
}

const char* to_string(LicenceStatus s) {
    switch (s) {
        case LicenceStatus::OA: return "OA";
        case LicenceStatus::NonOA: return "NonOA";
        case LicenceStatus::Unclear: return "Unclear";
        case LicenceStatus::None: return "None";
    }
    return "None";
}

const char* to_string(DelayStatus d) {
    switch (d) {
        case DelayStatus::Delayed: return "Delayed";
        case DelayStatus::NotDelayed: return "NotDelayed";
        case DelayStatus::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::optional<LicenceStatus> parse_licence_status(const std::string& s) {
    if (s == "OA") return LicenceStatus::OA;
    if (s == "NonOA") return LicenceStatus::NonOA;
    if (s == "Unclear") return LicenceStatus::Unclear;
    if (s == "None") return LicenceStatus::None;
    return std::nullopt;
}

std::optional<DelayStatus> parse_delay_status(const std::string& s) {
    if (s == "Delayed") return DelayStatus::Delayed;
    if (s == "NotDelayed") return DelayStatus::NotDelayed;
    if (s == "Unknown") return DelayStatus::Unknown;
    return std::nullopt;
}

std::string normalize_licence_url(const std::string& url) {
    std::string s = trim(url);
    if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    auto sep = s.find("://");
    if (sep != std::string::npos) {
        std::string scheme = to_lower(s.substr(0, sep));
        if (scheme == "http") scheme = "https";
        std::string rest = s.substr(sep + 3);
        auto host_end = rest.find_first_of("/?");
        if (host_end == std::string::npos) host_end = rest.size();
        std::string host = to_lower(rest.substr(0, host_end));
        s = scheme + "://" + host + rest.substr(host_end);
    }
    while (!s.empty() &&
           (s.back() == '/' || std::isspace(static_cast<unsigned char>(s.back()))))
        s.pop_back();
    return s;
}

Result<LicencePolicy> LicencePolicy::parse(const std::string& text) {
    LicencePolicy policy;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto space = s.find_first_of(" \t");
        if (space == std::string::npos)
            return Error{Err::Unparsable,
                         "policy line " + std::to_string(line_no) + ": expected '<KIND> <prefix>'"};
        std::string kind = to_upper(s.substr(0, space));
        std::string prefix = normalize_licence_url(trim(s.substr(space + 1)));
        if (prefix.empty())
            return Error{Err::Unparsable, "policy line " + std::to_string(line_no) + ": empty prefix"};
        if (kind == "OA") policy.add_oa(prefix);
        else if (kind == "NONOA") policy.add_nonoa(prefix);
        else
            return Error{Err::Unparsable,
                         "policy line " + std::to_string(line_no) + ": unknown kind " + kind};
    }
    for (const auto& p : policy.oa_)
        if (std::find(policy.nonoa_.begin(), policy.nonoa_.end(), p) != policy.nonoa_.end())
            return Error{Err::Unparsable, "prefix in both OA and NONOA lists: " + p};
    return policy;
}

Result<LicencePolicy> LicencePolicy::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return Error{Err::Io, "cannot open policy file " + path};
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

LicencePolicy LicencePolicy::default_policy() {
    LicencePolicy p;
    p.add_oa("https://creativecommons.org/licenses");
    p.add_oa("https://creativecommons.org/publicdomain");
    return p;
}

void LicencePolicy::add_oa(const std::string& prefix) {
    oa_.push_back(normalize_licence_url(prefix));
}

void LicencePolicy::add_nonoa(const std::string& prefix) {
    nonoa_.push_back(normalize_licence_url(prefix));
}

LicenceClass LicencePolicy::classify(const std::string& normalized_url) const {
    std::size_t best_len = 0;
    LicenceClass best = LicenceClass::Unclear;
    auto scan = [&](const std::vector<std::string>& patterns, LicenceClass cls) {
        for (const auto& p : patterns) {
            // equal-length matches are the same prefix (lists are disjoint)
            if (p.size() > best_len && normalized_url.rfind(p, 0) == 0) {
                best_len = p.size();
                best = cls;
            }
        }
    };
    scan(oa_, LicenceClass::OA);
    scan(nonoa_, LicenceClass::NonOA);
    return best;
}

LicenceClass classify_licence_url(const std::string& url, const LicencePolicy& policy) {
    return policy.classify(normalize_licence_url(url));
}

std::optional<int> compute_delay(const LicenceEntry& entry,
                                 const std::optional<Date>& issued) {
    if (entry.delay_in_days) return *entry.delay_in_days;
    if (entry.start_date && issued) {
        long days = days_between(*issued, *entry.start_date);
        return static_cast<int>(std::max(0L, days));
    }
    return std::nullopt;
}

ResolvedLicence resolve_licences(const std::vector<LicenceEntry>& entries,
                                 const std::optional<Date>& issued,
                                 const LicencePolicy& policy,
                                 const ResolveConfig& config) {
    ResolvedLicence out;
    if (entries.empty()) return out;

    std::set<std::string> urls;
    bool any_oa = false, any_nonoa = false;
    std::set<int> delays;
    for (const auto& entry : entries) {
        std::string url = normalize_licence_url(entry.url);
        urls.insert(url);
        switch (policy.classify(url)) {
            case LicenceClass::OA: any_oa = true; break;
            case LicenceClass::NonOA: any_nonoa = true; break;
            case LicenceClass::Unclear: break;
        }
        if (auto d = compute_delay(entry, issued)) delays.insert(*d);
    }
    out.distinct_urls = static_cast<int>(urls.size());
    if (any_oa) out.status = LicenceStatus::OA;
    else if (any_nonoa) out.status = LicenceStatus::NonOA;
    else out.status = LicenceStatus::Unclear;

    if (!delays.empty()) {
        out.max_delay_days = *delays.rbegin();
        // one undelayed licence is enough to count as not delayed
        if (*delays.begin() <= config.grace_days)
            out.delayed = DelayStatus::NotDelayed;
        else
            out.delayed = DelayStatus::Delayed;
    }
    return out;
}

}  // namespace oa
