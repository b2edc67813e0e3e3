#ifndef COREAD_FETCH_HPP_
#define COREAD_FETCH_HPP_

#include <array>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "coread/dataset.hpp"
#include "coread/summary.hpp"

namespace coread {

// Where in the endpoint's JSON payload each piece lives, as JSON pointers.
// The concrete API schema is deployment-specific, so it is configuration.
// A pointer that resolves to nothing simply leaves that dimension absent.
struct FieldMap {
    std::string doc_type = "/type"; // optional "article"/"review" string
    std::array<std::string, 3> dimensions = {
        "/readers/discipline", "/readers/status", "/readers/country"};
};

struct FetchConfig {
    std::string base_url;                        // e.g. http://host:port
    std::string path_template = "/readership?doi={doi}";
    std::string auth_token_env = "COREAD_API_TOKEN";
    double max_requests_per_second = 5.0;        // > 0
    unsigned max_retries = 3;                    // extra attempts on 429/5xx
    std::chrono::milliseconds backoff_base{100}; // doubles per retry
    std::filesystem::path cache_dir;             // one file per DOI
    unsigned max_in_flight = 4;                  // concurrent requests
    FieldMap field_map;
};

enum class FetchStatus { found, not_found, failed };
enum class Provenance { cache, network };

struct FetchOutcome {
    FetchStatus status = FetchStatus::failed;
    Provenance provenance = Provenance::network;
    std::optional<ReaderRecord> record; // set iff status == found
    std::string reason;                 // set iff status == failed
    std::size_t zero_dropped = 0;
    std::chrono::system_clock::time_point timestamp;
};

struct BatchResult {
    Dataset dataset;                    // Found records, input order
    std::vector<FetchOutcome> outcomes; // one per input DOI, input order
    double match_rate = 0.0;            // |found| / |dois|
    SummaryStats summary;
};

// Paces callers so grants are at least 1/rate (plus a small scheduling
// margin) apart, across threads.
class RateLimiter {
public:
    explicit RateLimiter(double max_per_second);
    void acquire();

private:
    std::chrono::steady_clock::duration period_;
    std::chrono::steady_clock::time_point next_slot_;
    std::mutex mu_;
};

class FetchClient {
public:
    explicit FetchClient(FetchConfig cfg);

    // Cache first; on miss, GET with rate limiting, retrying 429/5xx and
    // transport errors up to max_retries with exponential backoff. 404 is
    // cached as NotFound; successful payloads are parsed and cached
    // atomically; unparseable payloads fail (and are not cached).
    FetchOutcome fetch_one(const std::string& doi);

    // Fetches every distinct DOI (case-insensitive) with bounded
    // concurrency; duplicates share one outcome. Never aborts on per-DOI
    // failures. Found records are added in input order.
    BatchResult fetch_batch(const std::vector<std::string>& dois);

    // Actual HTTP attempts made by this client (0 on a warm cache).
    std::size_t network_requests() const { return network_requests_.load(); }

private:
    struct RawResponse {
        int status = 0;
        std::string body;
    };

    std::filesystem::path cache_path(const std::string& doi) const;
    std::optional<FetchOutcome> from_cache(const std::string& doi);
    void store_cache(const std::string& doi, int status, const std::string& body);
    RawResponse perform_get(const std::string& doi);
    FetchOutcome parse_payload(const std::string& doi, const std::string& body,
                               Provenance prov);

    FetchConfig cfg_;
    std::string token_;
    RateLimiter limiter_;
    std::atomic<std::size_t> network_requests_{0};
};

// Percent-encodes everything outside RFC 3986 unreserved characters;
// doubles as the cache file key.
std::string percent_encode(std::string_view s);

FetchOutcome fetch_one(const std::string& doi, const FetchConfig& cfg);
BatchResult fetch_batch(const std::vector<std::string>& dois,
                        const FetchConfig& cfg);

} // namespace coread

#endif // COREAD_FETCH_HPP_
