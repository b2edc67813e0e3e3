// Acceptance gate: one PASS/FAIL line per criterion, exit code = number of
// failures. Tolerances are pinned here, next to each check.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "coread/centrality.hpp"
#include "coread/coupling.hpp"
#include "coread/error.hpp"
#include "coread/fetch.hpp"
#include "coread/graph.hpp"
#include "coread/louvain.hpp"
#include "coread/netstats.hpp"
#include "coread/pajek.hpp"
#include "coread/parse.hpp"
#include "mock_api.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(bool ok, const std::string& name) {
    std::printf("%s — %s\n", ok ? "PASS" : "FAIL", name.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Workspace {
    fs::path dir;
    Workspace() {
        dir = fs::temp_directory_path() /
              ("coread_accept_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Workspace() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
};

Workspace workspace;

std::map<std::string, std::string> run_cli_kv(const std::string& args, int& code) {
    fs::path out_path = workspace.dir / "cli_stdout.txt";
    std::string cmd = std::string(COREAD_CLI_PATH) + " " + args + " > " +
                      out_path.string() + " 2> /dev/null";
    int rc = std::system(cmd.c_str());
    code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::map<std::string, std::string> kv;
    std::ifstream in(out_path);
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq != std::string::npos)
            kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

// Peak resident set of this process, in bytes, from /proc/self/status.
std::size_t peak_rss_bytes() {
    std::ifstream in("/proc/self/status");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            std::size_t kb = 0;
            std::sscanf(line.c_str(), "VmHWM: %zu kB", &kb);
            return kb * 1024;
        }
    }
    return 0;
}

// --- 1. Table-1 status column on a synthetic complete 13-group fixture ---

void criterion_status_column() {
    const char* labels[13] = {
        "Student PhD",          "Student Master",
        "Postdoc",              "Professor",
        "Associate Professor",  "Assistant Professor",
        "Lecturer",             "Senior Lecturer",
        "Researcher (academic)",
        "Researcher (non-academic)",
        "Student (bachelor)",   "Other Professional",
        "Librarian"};

    fs::path input = workspace.dir / "status13.jsonl";
    {
        std::ofstream out(input, std::ios::binary);
        // Three papers read once by every group: every pair co-reads.
        for (int p = 0; p < 3; ++p) {
            out << R"({"doi":"10.5/all)" << p << R"(","type":"article","readers":{"status":{)";
            for (int c = 0; c < 13; ++c)
                out << (c ? "," : "") << '"' << labels[c] << "\":1";
            out << "}}}\n";
        }
        // One paper per group with two same-group readers: a self-loop each.
        for (int c = 0; c < 13; ++c)
            out << R"({"doi":"10.5/solo)" << c
                << R"(","type":"article","readers":{"status":{")" << labels[c]
                << "\":2}}}\n";
    }

    auto t0 = Clock::now();
    int code = -1;
    auto kv = run_cli_kv("analyze --dimension status --report kv --input " +
                             input.string(),
                         code);
    double elapsed = seconds_since(t0);

    const double tol = 1e-9;
    auto near = [&](const std::string& key, double want) {
        auto it = kv.find(key);
        return it != kv.end() && std::fabs(std::stod(it->second) - want) <= tol;
    };
    bool ok = code == 0 && elapsed < 1.0;
    ok = ok && kv["number_of_vertices"] == "13";
    ok = ok && near("average_degree", 13.0);
    ok = ok && near("degree_centralization", 0.0);
    ok = ok && near("density", 1.0);
    ok = ok && near("closure", 1.0);
    ok = ok && near("average_distance", 1.0);
    ok = ok && near("standard_deviation_of_average_distance", 0.0);
    ok = ok && kv["diameter"] == "1";
    ok = ok && near("compactness", 1.0);
    ok = ok && near("modularity", 0.0);
    ok = ok && kv["communities"] == "1";
    report(ok, "status-column reconstruction: 13 groups, degree 13.00, "
               "density 1.00, diameter 1, modularity 0.00 via the CLI in < 1 s");
}

// --- 2. Coupling equals the brute-force pairwise counter ----------------

void criterion_coupling_oracle() {
    testutil::Rng rng(2024);
    auto t0 = Clock::now();
    bool ok = true;
    coread::CouplingOptions opts;
    opts.dimension = coread::Dimension::discipline;
    for (int variant = 0; variant < 3 && ok; ++variant) {
        opts.min_count_threshold = 1 + 2 * variant; // 1, 3, 5
        opts.loop_min_readers = 2 + variant;
        auto ds = testutil::random_dataset(rng, 1000, 20,
                                           coread::Dimension::discipline, 6, 7);
        auto g = coread::build_coupling(ds, opts);
        ok = ok && oracle::matches(g, oracle::brute_coupling(ds, opts));
    }
    double elapsed = seconds_since(t0);
    ok = ok && elapsed < 5.0;
    report(ok, "coupling oracle: 1000 random records (<= 20 categories) match "
               "the brute-force counter exactly in < 5 s");
}

// --- 3. Modularity equals the direct double sum --------------------------

void criterion_modularity_oracle() {
    testutil::Rng rng(77);
    bool ok = true;
    int checked = 0;
    while (checked < 200) {
        std::size_t n = 2 + rng.below(7); // 2..8
        auto g = testutil::random_graph(rng, n, 0.5, 4, 0.3);
        if (g.total_weight() == 0.0)
            continue;
        coread::Partition p;
        p.community.resize(n);
        for (auto& c : p.community)
            c = static_cast<std::uint32_t>(rng.below(n));
        double got = coread::modularity(g, p);
        double want = oracle::modularity_double_sum(g, p);
        if (std::fabs(got - want) > 1e-12)
            ok = false;
        ++checked;
    }
    report(ok, "modularity oracle: 200 random (graph, partition) pairs "
               "(n <= 8) match the double-sum formula to 1e-12");
}

// --- 4. Louvain on separable fixtures ------------------------------------

void criterion_louvain() {
    auto t0 = Clock::now();

    // Two disjoint triangles: the optimum over all 203 partitions is 0.5.
    coread::Graph g = testutil::empty_graph(6);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 1.0);
    g.add_edge(0, 2, 1.0);
    g.add_edge(3, 4, 1.0);
    g.add_edge(4, 5, 1.0);
    g.add_edge(3, 5, 1.0);
    double best = -1.0;
    oracle::for_each_partition(6, [&](const std::vector<std::uint32_t>& blocks) {
        coread::Partition p;
        p.community = blocks;
        best = std::max(best, coread::modularity(g, p));
    });
    auto part = coread::louvain(g);
    bool ok = std::fabs(best - 0.5) <= 1e-12 && std::fabs(part.q - 0.5) <= 1e-12;

    // Planted 4 x 10 partition, intra 0.9 / inter 0.05: recover >= 95/100.
    int recovered = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        testutil::Rng rng(seed * 2654435761ULL + 17);
        std::vector<std::uint32_t> truth(40);
        coread::Graph pg = testutil::empty_graph(40);
        for (std::size_t v = 0; v < 40; ++v)
            truth[v] = static_cast<std::uint32_t>(v / 10);
        for (std::size_t u = 0; u < 40; ++u)
            for (std::size_t v = u + 1; v < 40; ++v) {
                double p = truth[u] == truth[v] ? 0.9 : 0.05;
                if (rng.chance(p))
                    pg.add_edge(static_cast<coread::VertexId>(u),
                                static_cast<coread::VertexId>(v), 1.0);
            }
        coread::LouvainConfig lcfg;
        lcfg.seed = seed;
        auto found = coread::louvain(pg, lcfg);
        if (oracle::same_partition(found.community, truth))
            ++recovered;
    }
    double elapsed = seconds_since(t0);
    ok = ok && recovered >= 95 && elapsed < 30.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "louvain: disjoint triangles hit the exhaustive optimum 0.5; "
                  "planted 4-community graphs recovered for %d/100 seeds in < 30 s",
                  recovered);
    report(ok, buf);
}

// --- 5. Eigenvector centrality vs dense eigensolver ----------------------

void criterion_centrality() {
    testutil::Rng rng(555);
    bool ok = true;
    for (int iter = 0; iter < 100 && ok; ++iter) {
        std::size_t n = 2 + rng.below(29); // 2..30
        auto g = testutil::random_connected_graph(rng, n, 0.15, 5, 0.25);
        bool weighted = iter % 2 == 0;
        auto r = coread::eigenvector_centrality(g, weighted);
        auto want = oracle::principal_eigenvector(g, weighted);
        if (!r.converged)
            ok = false;
        for (std::size_t v = 0; v < n && ok; ++v)
            if (std::fabs(r.scores[v] - want[v]) > 1e-6)
                ok = false;
    }
    for (std::size_t n : {2, 3, 7, 13, 30}) {
        auto r = coread::eigenvector_centrality(testutil::complete_graph(n));
        double want = 1.0 / std::sqrt(static_cast<double>(n));
        for (double s : r.scores)
            if (std::fabs(s - want) > 1e-12)
                ok = false;
    }
    report(ok, "centrality oracle: power iteration matches the dense "
               "eigensolver on 100 graphs (n <= 30) within 1e-6; K_n gives "
               "1/sqrt(n) to 1e-12");
}

// --- 6. Spearman vs tied-rank reference ----------------------------------

void criterion_spearman() {
    testutil::Rng rng(31337);
    bool ok = true;
    int checked = 0;
    while (checked < 1000) {
        std::size_t n = 3 + rng.below(60);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = static_cast<double>(rng.below(8)); // ties guaranteed
            y[i] = static_cast<double>(rng.below(8));
        }
        auto constant = [](const std::vector<double>& v) {
            for (double e : v)
                if (e != v[0])
                    return false;
            return true;
        };
        if (constant(x) || constant(y))
            continue;
        double want = static_cast<double>(oracle::spearman_reference(x, y));
        if (std::fabs(coread::spearman(x, y) - want) > 1e-12)
            ok = false;
        ++checked;
    }
    std::vector<double> xs = {1, 2, 5, 9, 12, 40};
    std::vector<double> up = {2, 4, 8, 9, 30, 41};
    std::vector<double> down = {41, 30, 9, 8, 4, 2};
    ok = ok && std::fabs(coread::spearman(xs, up) - 1.0) <= 1e-12;
    ok = ok && std::fabs(coread::spearman(xs, down) + 1.0) <= 1e-12;
    report(ok, "spearman oracle: 1000 tied random vectors match the "
               "reference to 1e-12; monotone -> 1.0, antitone -> -1.0");
}

// --- 7. BFS distances vs Floyd-Warshall ----------------------------------

void criterion_distances() {
    testutil::Rng rng(4242);
    bool ok = true;
    for (int iter = 0; iter < 100 && ok; ++iter) {
        std::size_t n = 1 + rng.below(50); // 1..50, disconnected allowed
        auto g = testutil::random_graph(rng, n, 0.08, 3, 0.2);
        auto got = coread::all_pairs_distances(g);
        auto want = oracle::floyd_warshall(g);
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) {
                double w = want[i][j];
                if (w < 0) {
                    if (got[i][j] != coread::kUnreachable)
                        ok = false;
                } else if (static_cast<double>(got[i][j]) != w) {
                    ok = false;
                }
            }
    }
    report(ok, "distance oracle: all-pairs BFS equals Floyd-Warshall on "
               "100 random graphs (n <= 50) exactly");
}

// --- 8. Pajek round-trip, byte-stable ------------------------------------

void criterion_pajek() {
    testutil::Rng rng(808);
    bool ok = true;
    for (int iter = 0; iter < 100 && ok; ++iter) {
        std::size_t n = 1 + rng.below(35);
        auto g = testutil::random_graph(rng, n, 0.2, 6, 0.3);
        std::string text = coread::write_pajek(g);
        coread::Graph back = coread::read_pajek(text);
        if (!(back == g))
            ok = false;
        if (coread::write_pajek(back) != text || coread::write_pajek(g) != text)
            ok = false;
    }
    report(ok, "format round-trip: read_pajek(write_pajek(g)) = g on "
               "100 random graphs, byte-stable across runs");
}

// --- 9. Scale: 1.1M records over 465 categories ---------------------------

void criterion_scale() {
    fs::path input = workspace.dir / "big.jsonl";
    {
        // Streamed generation keeps the generator's own footprint out of
        // the measured pipeline.
        std::ofstream out(input, std::ios::binary);
        testutil::Rng rng(99);
        std::vector<int> pool(465);
        for (int i = 0; i < 465; ++i)
            pool[i] = i;
        char buf[64];
        for (std::size_t r = 0; r < 1100000; ++r) {
            std::snprintf(buf, sizeof buf, R"({"doi":"10.9/p%06zu",)", r);
            out << buf << R"("type":"article","readers":{"status":{)";
            std::size_t k = 1 + rng.below(6);
            for (std::size_t i = 0; i < k; ++i) {
                std::size_t j = i + rng.below(465 - i);
                std::swap(pool[i], pool[j]);
            }
            for (std::size_t i = 0; i < k; ++i) {
                std::snprintf(buf, sizeof buf, "%s\"cat%03d\":%llu",
                              i ? "," : "", pool[i],
                              static_cast<unsigned long long>(1 + rng.below(5)));
                out << buf;
            }
            out << "}}}\n";
        }
    }

    auto t0 = Clock::now();
    coread::Dataset ds =
        coread::parse_records_file(input, coread::RecordFormat::json_lines);

    auto t_coupling = Clock::now();
    coread::CouplingOptions opts;
    opts.dimension = coread::Dimension::status;
    coread::Graph g = coread::build_coupling(ds, opts);
    double coupling_s = seconds_since(t_coupling);

    auto split = coread::largest_component(g);
    auto part = coread::louvain(split.component);
    auto stats = coread::full_report(split.component, part);
    std::string rendered = coread::render_text(stats) + coread::render_kv(stats);
    double pipeline_s = seconds_since(t0);
    std::size_t peak = peak_rss_bytes();

    bool ok = ds.record_count() == 1100000 && g.vertex_count() == 465 &&
              !rendered.empty() && stats.n_vertices == split.component.vertex_count();
    ok = ok && coupling_s < 60.0;
    ok = ok && pipeline_s < 300.0;
    ok = ok && peak > 0 && peak < 2ull * 1024 * 1024 * 1024;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "scale: 1.1M records / 465 categories — coupling %.1f s "
                  "(< 60), pipeline %.1f s (< 300), peak rss %.2f GB (< 2)",
                  coupling_s, pipeline_s,
                  static_cast<double>(peak) / (1024.0 * 1024.0 * 1024.0));
    report(ok, buf);
    std::error_code ec;
    fs::remove(input, ec);
}

// --- 10. Fetch client against the mock server ----------------------------

void criterion_fetch() {
    const char* payload =
        R"({"type":"article","readers":{"status":{"PhD":3,"Postdoc":1}}})";
    bool ok = true;

    // 429 -> retry -> success transcript.
    {
        testutil::MockApi api;
        api.set_body("10.7/busy", payload);
        api.set_script("10.7/busy", {429});
        coread::FetchConfig cfg;
        cfg.base_url = api.url();
        cfg.cache_dir = workspace.dir / "cache_retry";
        cfg.max_requests_per_second = 200.0;
        cfg.backoff_base = std::chrono::milliseconds(5);
        cfg.auth_token_env.clear();
        coread::FetchClient client(cfg);
        auto out = client.fetch_one("10.7/busy");
        ok = ok && out.status == coread::FetchStatus::found &&
             api.hit_count() == 2;
    }

    // Rate limit honored over every 1-second window (10 DOIs at 5/s).
    {
        testutil::MockApi api;
        std::vector<std::string> dois;
        for (int i = 0; i < 10; ++i) {
            std::string doi = "10.7/rate" + std::to_string(i);
            api.set_body(doi, payload);
            dois.push_back(doi);
        }
        coread::FetchConfig cfg;
        cfg.base_url = api.url();
        cfg.cache_dir = workspace.dir / "cache_rate";
        cfg.max_requests_per_second = 5.0;
        cfg.auth_token_env.clear();
        auto t0 = Clock::now();
        auto result = coread::fetch_batch(dois, cfg);
        double elapsed = seconds_since(t0);
        ok = ok && result.match_rate == 1.0 && elapsed >= 1.8 &&
             testutil::respects_rate(api.hits(), 5);

        // Warm-cache rerun: zero requests, byte-identical dataset.
        coread::FetchClient warm(cfg);
        auto again = warm.fetch_batch(dois);
        ok = ok && warm.network_requests() == 0 && api.hit_count() == 10;
        ok = ok &&
             coread::serialize_records(again.dataset, coread::RecordFormat::json_lines) ==
                 coread::serialize_records(result.dataset, coread::RecordFormat::json_lines);
    }
    report(ok, "fetch client: rate limit audited over sliding windows, "
               "429->retry->success transcript, warm-cache rerun hits the "
               "network zero times");
}

} // namespace

int main() {
    criterion_status_column();
    criterion_coupling_oracle();
    criterion_modularity_oracle();
    criterion_louvain();
    criterion_centrality();
    criterion_spearman();
    criterion_distances();
    criterion_pajek();
    criterion_scale();
    criterion_fetch();
    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
