#pragma once

#include <chrono>
#include <deque>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "oa/ingest.hpp"
#include "oa/records.hpp"
#include "oa/util.hpp"

namespace oa {

struct RetryPolicy {
    int max_attempts = 4;
    std::chrono::milliseconds base_backoff{500};
    std::chrono::milliseconds max_backoff{8000};
    double requests_per_second = 2.0;

    bool valid() const {
        return max_attempts >= 1 && base_backoff <= max_backoff &&
               requests_per_second > 0;
    }
};

/// Sliding 1-second window limiter: at most floor(rate) requests in any
/// window of one second. The single serialization point for concurrent
/// callers.
class RateLimiter {
public:
    explicit RateLimiter(double requests_per_second);

    /// Blocks until a request may be sent, then records it.
    void acquire();

private:
    std::size_t limit_;
    std::mutex mu_;
    std::deque<std::chrono::steady_clock::time_point> sent_;
};

struct HttpResponse {
    int status = 0;
    std::string body;
    std::optional<double> retry_after_s;  // server-provided retry delay
};

/// Returns nullopt on transport failure (timeout, connection error).
using Transport = std::function<std::optional<HttpResponse>(const std::string& path)>;

/// GET with rate limiting and exponential backoff + jitter on 429, 5xx
/// and transport errors. The inter-attempt delay sequence is
/// non-decreasing up to max_backoff; a server retry-delay extends but
/// never shortens the computed backoff.
class RetryingHttp {
public:
    RetryingHttp(RetryPolicy policy, Transport transport);

    Result<HttpResponse> get(const std::string& path);

    /// Delays actually slept before each retry, for inspection.
    const std::vector<std::chrono::milliseconds>& last_delays() const {
        return delays_;
    }

private:
    RetryPolicy policy_;
    Transport transport_;
    RateLimiter limiter_;
    std::vector<std::chrono::milliseconds> delays_;
    std::uint64_t jitter_state_;
};

/// Transport over a real HTTP endpoint ("http://host:port").
Transport http_transport(const std::string& base_url,
                         std::chrono::milliseconds timeout = std::chrono::seconds(30));

/// DOI-keyed response cache with a TTL; avoids re-fetch storms.
class DiskCache {
public:
    DiskCache(std::string dir, std::chrono::seconds ttl);

    std::optional<std::string> get(const Doi& doi) const;
    void put(const Doi& doi, const std::string& body) const;

private:
    std::string path_for(const Doi& doi) const;
    std::string dir_;
    std::chrono::seconds ttl_;
};

class CrossrefClient {
public:
    /// Endpoint shape: GET {base}/works/{doi}.
    CrossrefClient(RetryPolicy policy, Transport transport, const DiskCache* cache = nullptr);

    Result<CrossrefWork> fetch(const Doi& doi);

private:
    RetryingHttp http_;
    const DiskCache* cache_;
};

class UnpaywallClient {
public:
    /// Endpoint shape: GET {base}/v2/{doi}?email={contact}.
    UnpaywallClient(RetryPolicy policy, Transport transport, std::string contact_email,
                    const DiskCache* cache = nullptr);

    Result<UnpaywallRecord> fetch(const Doi& doi);

private:
    RetryingHttp http_;
    std::string email_;
    const DiskCache* cache_;
};

}  // namespace oa
