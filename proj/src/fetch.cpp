#include "coread/fetch.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <httplib.h>
#include <json.hpp>

#include "coread/error.hpp"

namespace coread {

namespace {

using nlohmann::json;

std::string now_iso8601() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Payload counts object -> sorted CategoryCount list; zero counts dropped.
void counts_from_json(const json& obj, std::vector<CategoryCount>& out,
                      std::size_t& zero_dropped) {
    if (!obj.is_object())
        throw Error("dimension value is not an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const json& v = it.value();
        if (!v.is_number_integer() && !v.is_number_unsigned())
            throw Error("count is not an integer");
        auto n = v.get<std::int64_t>();
        if (n < 0 || n > UINT32_MAX)
            throw Error("count out of range");
        if (n == 0) {
            ++zero_dropped;
            continue;
        }
        out.push_back({it.key(), static_cast<std::uint32_t>(n)});
    }
    std::sort(out.begin(), out.end(),
              [](const CategoryCount& a, const CategoryCount& b) {
                  return a.label < b.label;
              });
}

} // namespace

std::string percent_encode(std::string_view s) {
    static const char hex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
            (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' ||
            c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xF];
        }
    }
    return out;
}

RateLimiter::RateLimiter(double max_per_second) {
    if (!(max_per_second > 0))
        throw Error("max_requests_per_second must be positive");
    using namespace std::chrono;
    // A small margin keeps server-observed spacing above 1/rate even when
    // thread wakeup jitter compresses gaps.
    period_ = duration_cast<steady_clock::duration>(
        duration<double>(1.0 / max_per_second) + milliseconds(2));
    next_slot_ = steady_clock::now();
}

void RateLimiter::acquire() {
    std::chrono::steady_clock::time_point slot;
    {
        std::lock_guard lock(mu_);
        auto now = std::chrono::steady_clock::now();
        slot = std::max(now, next_slot_);
        next_slot_ = slot + period_;
    }
    std::this_thread::sleep_until(slot);
}

FetchClient::FetchClient(FetchConfig cfg)
    : cfg_(std::move(cfg)), limiter_(cfg_.max_requests_per_second) {
    if (cfg_.base_url.empty())
        throw Error("base_url is empty");
    if (cfg_.cache_dir.empty())
        throw Error("cache_dir is empty");
    std::filesystem::create_directories(cfg_.cache_dir);
    if (!cfg_.auth_token_env.empty()) {
        if (const char* tok = std::getenv(cfg_.auth_token_env.c_str()))
            token_ = tok;
    }
    if (cfg_.max_in_flight == 0)
        cfg_.max_in_flight = 1;
}

std::filesystem::path FetchClient::cache_path(const std::string& doi) const {
    return cfg_.cache_dir / (percent_encode(fold_case(doi)) + ".json");
}

std::optional<FetchOutcome> FetchClient::from_cache(const std::string& doi) {
    std::ifstream in(cache_path(doi), std::ios::binary);
    if (!in)
        return std::nullopt;
    json j;
    try {
        in >> j;
        int status = j.at("status").get<int>();
        if (status == 404) {
            FetchOutcome out;
            out.status = FetchStatus::not_found;
            out.provenance = Provenance::cache;
            out.timestamp = std::chrono::system_clock::now();
            return out;
        }
        return parse_payload(doi, j.at("body").get<std::string>(),
                             Provenance::cache);
    } catch (const json::exception&) {
        return std::nullopt; // corrupt cache entry: refetch
    }
}

void FetchClient::store_cache(const std::string& doi, int status,
                              const std::string& body) {
    json j = {{"doi", doi},
              {"status", status},
              {"body", body},
              {"fetched_at", now_iso8601()}};
    auto final_path = cache_path(doi);
    auto tmp_path = final_path;
    tmp_path += ".tmp";
    {
        std::ofstream out(tmp_path, std::ios::binary);
        if (!out)
            throw IoError("cannot write cache file " + tmp_path.string());
        out << j.dump();
        if (!out)
            throw IoError("failed writing cache file " + tmp_path.string());
    }
    std::filesystem::rename(tmp_path, final_path);
}

FetchClient::RawResponse FetchClient::perform_get(const std::string& doi) {
    std::string path = cfg_.path_template;
    const std::string placeholder = "{doi}";
    if (auto pos = path.find(placeholder); pos != std::string::npos)
        path.replace(pos, placeholder.size(), percent_encode(doi));

    limiter_.acquire();
    network_requests_.fetch_add(1);

    httplib::Client cli(cfg_.base_url);
    cli.set_connection_timeout(5, 0);
    cli.set_read_timeout(30, 0);
    httplib::Headers headers;
    if (!token_.empty())
        headers.emplace("Authorization", "Bearer " + token_);
    auto res = cli.Get(path, headers);
    if (!res)
        throw Error("transport: " + httplib::to_string(res.error()));
    return {res->status, res->body};
}

FetchOutcome FetchClient::parse_payload(const std::string& doi,
                                        const std::string& body,
                                        Provenance prov) {
    FetchOutcome out;
    out.provenance = prov;
    out.timestamp = std::chrono::system_clock::now();
    try {
        json j = json::parse(body);
        ReaderRecord rec;
        rec.paper_id = doi;
        if (!cfg_.field_map.doc_type.empty()) {
            json::json_pointer p(cfg_.field_map.doc_type);
            if (j.contains(p)) {
                auto dt = doc_type_from_string(j.at(p).get<std::string>());
                if (!dt)
                    throw Error("unknown doc type");
                rec.doc_type = *dt;
            }
        }
        for (Dimension d : kAllDimensions) {
            const auto& path = cfg_.field_map.dimensions[static_cast<int>(d)];
            if (path.empty())
                continue;
            json::json_pointer p(path);
            if (!j.contains(p))
                continue;
            counts_from_json(j.at(p), rec.counts_for(d), out.zero_dropped);
        }
        out.status = FetchStatus::found;
        out.record = std::move(rec);
    } catch (const std::exception&) {
        out.status = FetchStatus::failed;
        out.reason = "parse";
    }
    return out;
}

FetchOutcome FetchClient::fetch_one(const std::string& doi) {
    if (auto cached = from_cache(doi))
        return *cached;

    std::string last_reason = "unreachable";
    for (unsigned attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(cfg_.backoff_base * (1u << (attempt - 1)));
        RawResponse res;
        try {
            res = perform_get(doi);
        } catch (const Error& e) {
            last_reason = e.what();
            continue; // transport errors are retried
        }
        if (res.status == 200) {
            FetchOutcome out = parse_payload(doi, res.body, Provenance::network);
            if (out.status == FetchStatus::found)
                store_cache(doi, res.status, res.body);
            return out;
        }
        if (res.status == 404) {
            store_cache(doi, 404, "");
            FetchOutcome out;
            out.status = FetchStatus::not_found;
            out.provenance = Provenance::network;
            out.timestamp = std::chrono::system_clock::now();
            return out;
        }
        last_reason = "HTTP " + std::to_string(res.status);
        if (res.status != 429 && res.status < 500) {
            break; // other client errors are not retryable
        }
    }
    FetchOutcome out;
    out.status = FetchStatus::failed;
    out.provenance = Provenance::network;
    out.reason = last_reason;
    out.timestamp = std::chrono::system_clock::now();
    return out;
}

BatchResult FetchClient::fetch_batch(const std::vector<std::string>& dois) {
    if (dois.empty())
        throw Error("fetch_batch needs at least one DOI");

    // Distinct DOIs (case-insensitive); duplicates share the outcome of
    // the first occurrence.
    std::vector<std::size_t> unique_positions;
    std::vector<std::size_t> owner(dois.size());
    {
        std::unordered_map<std::string, std::size_t> seen;
        for (std::size_t i = 0; i < dois.size(); ++i) {
            auto [it, inserted] = seen.emplace(fold_case(dois[i]), i);
            owner[i] = it->second;
            if (inserted)
                unique_positions.push_back(i);
        }
    }

    std::vector<FetchOutcome> unique_outcomes(unique_positions.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t k = next.fetch_add(1);
            if (k >= unique_positions.size())
                return;
            unique_outcomes[k] = fetch_one(dois[unique_positions[k]]);
        }
    };
    unsigned nthreads = static_cast<unsigned>(std::min<std::size_t>(
        cfg_.max_in_flight, unique_positions.size()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t)
            threads.emplace_back(worker);
        for (auto& t : threads)
            t.join();
    }

    std::unordered_map<std::size_t, std::size_t> slot; // first position -> k
    for (std::size_t k = 0; k < unique_positions.size(); ++k)
        slot.emplace(unique_positions[k], k);

    BatchResult result;
    result.outcomes.reserve(dois.size());
    std::size_t found = 0;
    for (std::size_t i = 0; i < dois.size(); ++i)
        result.outcomes.push_back(unique_outcomes[slot.at(owner[i])]);
    for (std::size_t k = 0; k < unique_positions.size(); ++k) {
        const FetchOutcome& out = unique_outcomes[k];
        switch (out.status) {
        case FetchStatus::found:
            result.dataset.add_record(*out.record);
            result.dataset.counters.zero_count_entries_dropped += out.zero_dropped;
            break;
        case FetchStatus::not_found:
            ++result.dataset.counters.not_found;
            break;
        case FetchStatus::failed:
            ++result.dataset.counters.failed;
            break;
        }
    }
    for (const auto& out : result.outcomes)
        if (out.status == FetchStatus::found)
            ++found;
    result.match_rate = static_cast<double>(found) / static_cast<double>(dois.size());
    result.dataset.source_note = "fetched from " + cfg_.base_url;
    result.summary = dataset_summary(result.dataset);
    return result;
}

FetchOutcome fetch_one(const std::string& doi, const FetchConfig& cfg) {
    FetchClient client(cfg);
    return client.fetch_one(doi);
}

BatchResult fetch_batch(const std::vector<std::string>& dois,
                        const FetchConfig& cfg) {
    FetchClient client(cfg);
    return client.fetch_batch(dois);
}

} // namespace coread
