#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coread/centrality.hpp"
#include "coread/coupling.hpp"
#include "coread/error.hpp"
#include "coread/fetch.hpp"
#include "coread/louvain.hpp"
#include "coread/netstats.hpp"
#include "coread/pajek.hpp"
#include "coread/parse.hpp"
#include "coread/summary.hpp"
#include "coread/vosviewer.hpp"

namespace {

using coread::Error;
using coread::IoError;

// --- key=value configuration file -------------------------------------

const std::set<std::string>& known_config_keys() {
    static const std::set<std::string> keys = {
        "input",       "format",      "dimension",   "min-count",
        "loop-min-readers", "seed",   "report",      "pajek-out",
        "vos-map-out", "vos-net-out", "partition-out", "partition",
        "normalize-countries", "dois", "base-url",   "cache-dir",
        "out",         "rate",        "retries",     "backoff-ms",
        "token-env",   "max-in-flight"};
    return keys;
}

std::map<std::string, std::string> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file " + path);
    std::map<std::string, std::string> values;
    std::string line;
    std::size_t no = 0;
    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        std::size_t e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw IoError("config line " + std::to_string(no) +
                          ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (!known_config_keys().contains(key))
            throw IoError("config line " + std::to_string(no) +
                          ": unknown key \"" + key + "\"");
        values[key] = value;
    }
    return values;
}

// Command-line flags win; config fills in only options never given.
class ConfigOverlay {
public:
    explicit ConfigOverlay(std::map<std::string, std::string> values)
        : values_(std::move(values)) {}

    void str(const CLI::Option* opt, const std::string& key, std::string& var) const {
        if (const std::string* v = lookup(opt, key))
            var = *v;
    }
    template <typename T>
    void num(const CLI::Option* opt, const std::string& key, T& var) const {
        if (const std::string* v = lookup(opt, key)) {
            try {
                std::size_t used = 0;
                unsigned long long n = std::stoull(*v, &used);
                if (used != v->size())
                    throw std::invalid_argument("");
                var = static_cast<T>(n);
            } catch (const std::exception&) {
                throw IoError("config: \"" + key + "\" needs a non-negative integer, got \"" +
                              *v + "\"");
            }
        }
    }
    void fp(const CLI::Option* opt, const std::string& key, double& var) const {
        if (const std::string* v = lookup(opt, key)) {
            try {
                std::size_t used = 0;
                var = std::stod(*v, &used);
                if (used != v->size())
                    throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw IoError("config: \"" + key + "\" needs a number, got \"" + *v + "\"");
            }
        }
    }
    void boolean(const CLI::Option* opt, const std::string& key, bool& var) const {
        if (const std::string* v = lookup(opt, key)) {
            if (*v == "true" || *v == "1")
                var = true;
            else if (*v == "false" || *v == "0")
                var = false;
            else
                throw IoError("config: \"" + key + "\" needs true/false, got \"" + *v + "\"");
        }
    }

private:
    const std::string* lookup(const CLI::Option* opt, const std::string& key) const {
        if (opt != nullptr && opt->count() > 0)
            return nullptr; // flag given explicitly
        auto it = values_.find(key);
        return it == values_.end() ? nullptr : &it->second;
    }

    std::map<std::string, std::string> values_;
};

// --- shared option plumbing --------------------------------------------

coread::RecordFormat resolve_format(const std::string& format,
                                    const std::string& input) {
    if (!format.empty()) {
        auto f = coread::record_format_from_string(format);
        if (!f)
            throw IoError("unknown format \"" + format + "\" (use jsonl or csv)");
        return *f;
    }
    auto f = coread::record_format_from_path(input);
    if (!f)
        throw IoError("cannot infer format of " + input + "; pass --format");
    return *f;
}

coread::Dimension resolve_dimension(const std::string& name) {
    auto d = coread::dimension_from_string(name);
    if (!d)
        throw IoError("unknown dimension \"" + name +
                      "\" (use discipline, status, or country)");
    return *d;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

std::string join_sizes(const std::vector<std::size_t>& sizes) {
    std::string out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i)
            out += ", ";
        out += std::to_string(sizes[i]);
    }
    return out;
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out)
        throw IoError("failed writing " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --- subcommand state ----------------------------------------------------

struct SummarizeArgs {
    std::string input, format;
    bool normalize_countries = false;
    CLI::Option *input_opt = nullptr, *format_opt = nullptr, *norm_opt = nullptr;
};

struct AnalyzeArgs {
    std::string input, format, dimension;
    std::uint32_t min_count = 1;
    std::uint32_t loop_min_readers = 2;
    std::uint64_t seed = 0;
    std::string report = "text";
    std::string pajek_out, vos_map_out, vos_net_out, partition_out;
    bool normalize_countries = true;
    CLI::Option *input_opt = nullptr, *format_opt = nullptr, *dimension_opt = nullptr,
                *min_count_opt = nullptr, *loop_opt = nullptr, *seed_opt = nullptr,
                *report_opt = nullptr, *pajek_opt = nullptr, *vos_map_opt = nullptr,
                *vos_net_opt = nullptr, *partition_opt = nullptr, *norm_opt = nullptr;
};

struct ExportArgs {
    std::string input, partition;
    std::string pajek_out, vos_map_out, vos_net_out;
    CLI::Option *input_opt = nullptr, *partition_opt = nullptr, *pajek_opt = nullptr,
                *vos_map_opt = nullptr, *vos_net_opt = nullptr;
};

struct FetchArgs {
    std::string dois_file, base_url, cache_dir, out, format;
    std::string token_env = "COREAD_API_TOKEN";
    double rate = 5.0;
    unsigned retries = 3;
    unsigned backoff_ms = 100;
    unsigned max_in_flight = 4;
    CLI::Option *dois_opt = nullptr, *base_opt = nullptr, *cache_opt = nullptr,
                *out_opt = nullptr, *format_opt = nullptr, *token_opt = nullptr,
                *rate_opt = nullptr, *retries_opt = nullptr, *backoff_opt = nullptr,
                *flight_opt = nullptr;
};

int run_summarize(SummarizeArgs& a, const ConfigOverlay& cfg) {
    cfg.str(a.input_opt, "input", a.input);
    cfg.str(a.format_opt, "format", a.format);
    cfg.boolean(a.norm_opt, "normalize-countries", a.normalize_countries);
    if (a.input.empty())
        throw IoError("summarize needs --input");
    coread::Dataset ds =
        coread::parse_records_file(a.input, resolve_format(a.format, a.input));
    if (a.normalize_countries)
        ds = coread::normalize_countries(ds);
    std::cout << coread::render_summary(coread::dataset_summary(ds));
    return 0;
}

int run_analyze(AnalyzeArgs& a, const ConfigOverlay& cfg) {
    cfg.str(a.input_opt, "input", a.input);
    cfg.str(a.format_opt, "format", a.format);
    cfg.str(a.dimension_opt, "dimension", a.dimension);
    cfg.num(a.min_count_opt, "min-count", a.min_count);
    cfg.num(a.loop_opt, "loop-min-readers", a.loop_min_readers);
    cfg.num(a.seed_opt, "seed", a.seed);
    cfg.str(a.report_opt, "report", a.report);
    cfg.str(a.pajek_opt, "pajek-out", a.pajek_out);
    cfg.str(a.vos_map_opt, "vos-map-out", a.vos_map_out);
    cfg.str(a.vos_net_opt, "vos-net-out", a.vos_net_out);
    cfg.str(a.partition_opt, "partition-out", a.partition_out);
    cfg.boolean(a.norm_opt, "normalize-countries", a.normalize_countries);

    if (a.input.empty())
        throw IoError("analyze needs --input");
    if (a.dimension.empty())
        throw IoError("analyze needs --dimension");
    if (a.min_count < 1)
        throw IoError("--min-count must be at least 1");
    if (a.loop_min_readers < 2)
        throw IoError("--loop-min-readers must be at least 2");
    if (a.report != "text" && a.report != "kv")
        throw IoError("unknown report style \"" + a.report + "\" (use text or kv)");
    coread::Dimension dim = resolve_dimension(a.dimension);

    coread::Dataset ds =
        coread::parse_records_file(a.input, resolve_format(a.format, a.input));
    if (dim == coread::Dimension::country && a.normalize_countries)
        ds = coread::normalize_countries(ds);

    coread::CouplingOptions opts;
    opts.dimension = dim;
    opts.min_count_threshold = a.min_count;
    opts.loop_min_readers = a.loop_min_readers;
    coread::Graph g = coread::build_coupling(ds, opts);

    coread::ComponentSplit split = coread::largest_component(g);
    coread::LouvainConfig lcfg;
    lcfg.seed = a.seed;
    coread::Partition part = coread::louvain(split.component, lcfg);
    coread::StatsReport report = coread::full_report(split.component, part);
    std::vector<std::size_t> sizes = coread::community_sizes(part);

    if (!a.partition_out.empty())
        write_text(coread::write_partition(split.component, part), a.partition_out);
    if (!a.pajek_out.empty())
        write_text(coread::write_pajek(split.component), a.pajek_out);
    if (!a.vos_map_out.empty() || !a.vos_net_out.empty()) {
        if (a.vos_map_out.empty() || a.vos_net_out.empty())
            throw IoError("--vos-map-out and --vos-net-out go together");
        coread::write_vosviewer_files(split.component, part, a.vos_map_out,
                                      a.vos_net_out);
    }

    if (a.report == "kv") {
        std::cout << "records=" << ds.record_count() << '\n'
                  << "dimension=" << coread::to_string(dim) << '\n'
                  << "graph_vertices=" << g.vertex_count() << '\n'
                  << "graph_edges=" << g.nonloop_edge_count() << '\n'
                  << "graph_loops=" << g.loop_count() << '\n'
                  << "component_vertices=" << split.component.vertex_count() << '\n'
                  << "dropped_labels=" << join(split.dropped_labels, ";") << '\n'
                  << "communities=" << sizes.size() << '\n';
        std::string sz;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (i)
                sz += ';';
            sz += std::to_string(sizes[i]);
        }
        std::cout << "community_sizes=" << sz << '\n' << coread::render_kv(report);
    } else {
        std::cout << "records: " << ds.record_count() << '\n'
                  << "dimension: " << coread::to_string(dim) << '\n'
                  << "graph: " << g.vertex_count() << " vertices, "
                  << g.nonloop_edge_count() << " edges, " << g.loop_count()
                  << " loops\n"
                  << "largest component: " << split.component.vertex_count()
                  << " vertices";
        if (!split.dropped_labels.empty())
            std::cout << " (dropped: " << join(split.dropped_labels, "; ") << ")";
        std::cout << '\n'
                  << "communities: " << sizes.size()
                  << " (sizes: " << join_sizes(sizes) << ")\n"
                  << coread::render_text(report);
    }
    return 0;
}

int run_export(ExportArgs& a, const ConfigOverlay& cfg) {
    cfg.str(a.input_opt, "input", a.input);
    cfg.str(a.partition_opt, "partition", a.partition);
    cfg.str(a.pajek_opt, "pajek-out", a.pajek_out);
    cfg.str(a.vos_map_opt, "vos-map-out", a.vos_map_out);
    cfg.str(a.vos_net_opt, "vos-net-out", a.vos_net_out);

    if (a.input.empty())
        throw IoError("export needs --input (a Pajek .net file)");
    if (a.pajek_out.empty() && a.vos_map_out.empty() && a.vos_net_out.empty())
        throw IoError("export needs at least one of --pajek-out, --vos-map-out, --vos-net-out");

    coread::Graph g = coread::read_pajek(read_text(a.input));
    if (!a.pajek_out.empty())
        write_text(coread::write_pajek(g), a.pajek_out);

    if (!a.vos_map_out.empty() || !a.vos_net_out.empty()) {
        if (a.vos_map_out.empty() || a.vos_net_out.empty())
            throw IoError("--vos-map-out and --vos-net-out go together");
        if (a.partition.empty())
            throw IoError("VOSviewer export needs --partition");
        coread::Partition part;
        try {
            part = coread::read_partition(g, read_text(a.partition));
        } catch (const coread::ParseError&) {
            throw;
        } catch (const Error& e) {
            throw IoError(e.what()); // mismatched partition is an input problem
        }
        coread::write_vosviewer_files(g, part, a.vos_map_out, a.vos_net_out);
    }
    return 0;
}

int run_fetch(FetchArgs& a, const ConfigOverlay& cfg) {
    cfg.str(a.dois_opt, "dois", a.dois_file);
    cfg.str(a.base_opt, "base-url", a.base_url);
    cfg.str(a.cache_opt, "cache-dir", a.cache_dir);
    cfg.str(a.out_opt, "out", a.out);
    cfg.str(a.format_opt, "format", a.format);
    cfg.str(a.token_opt, "token-env", a.token_env);
    cfg.fp(a.rate_opt, "rate", a.rate);
    cfg.num(a.retries_opt, "retries", a.retries);
    cfg.num(a.backoff_opt, "backoff-ms", a.backoff_ms);
    cfg.num(a.flight_opt, "max-in-flight", a.max_in_flight);

    if (a.dois_file.empty())
        throw IoError("fetch needs --dois (a file with one DOI per line)");
    if (a.base_url.empty())
        throw IoError("fetch needs --base-url");
    if (a.cache_dir.empty())
        throw IoError("fetch needs --cache-dir");
    if (!(a.rate > 0))
        throw IoError("--rate must be positive");

    std::vector<std::string> dois;
    {
        std::ifstream in(a.dois_file);
        if (!in)
            throw IoError("cannot open " + a.dois_file);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            std::size_t b = line.find_first_not_of(" \t");
            if (b == std::string::npos)
                continue;
            std::size_t e = line.find_last_not_of(" \t");
            dois.push_back(line.substr(b, e - b + 1));
        }
    }
    if (dois.empty())
        throw IoError(a.dois_file + " contains no DOIs");

    coread::FetchConfig fc;
    fc.base_url = a.base_url;
    fc.cache_dir = a.cache_dir;
    fc.auth_token_env = a.token_env;
    fc.max_requests_per_second = a.rate;
    fc.max_retries = a.retries;
    fc.backoff_base = std::chrono::milliseconds(a.backoff_ms);
    fc.max_in_flight = a.max_in_flight;

    coread::BatchResult result = coread::fetch_batch(dois, fc);
    if (!a.out.empty()) {
        auto fmt = a.format.empty() ? coread::record_format_from_path(a.out)
                                    : coread::record_format_from_string(a.format);
        coread::write_records_file(result.dataset, a.out,
                                   fmt.value_or(coread::RecordFormat::json_lines));
    }

    std::size_t found = 0, not_found = 0, failed = 0;
    for (const auto& out : result.outcomes) {
        switch (out.status) {
        case coread::FetchStatus::found: ++found; break;
        case coread::FetchStatus::not_found: ++not_found; break;
        case coread::FetchStatus::failed: ++failed; break;
        }
    }
    char rate_buf[32];
    std::snprintf(rate_buf, sizeof rate_buf, "%g", result.match_rate);
    std::cout << "dois: " << dois.size() << '\n'
              << "found: " << found << '\n'
              << "not found: " << not_found << '\n'
              << "failed: " << failed << '\n'
              << "match rate: " << rate_buf << '\n'
              << coread::render_summary(result.summary);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Co-readership network toolkit: ingest reader counts, build "
                 "bookmark-coupling networks, detect communities, export to "
                 "Pajek and VOSviewer."};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file");

    SummarizeArgs sa;
    CLI::App* summarize = app.add_subcommand("summarize", "Describe a records file");
    summarize->fallthrough(); // `coread <sub> --config ...` reaches the app option
    sa.input_opt = summarize->add_option("--input", sa.input, "records file");
    sa.format_opt = summarize->add_option("--format", sa.format, "jsonl or csv");
    sa.norm_opt = summarize->add_flag("--normalize-countries", sa.normalize_countries,
                                      "map country labels to ISO codes first");

    AnalyzeArgs aa;
    CLI::App* analyze =
        app.add_subcommand("analyze", "Coupling network, communities, statistics");
    analyze->fallthrough();
    aa.input_opt = analyze->add_option("--input", aa.input, "records file");
    aa.format_opt = analyze->add_option("--format", aa.format, "jsonl or csv");
    aa.dimension_opt = analyze->add_option("--dimension", aa.dimension,
                                           "discipline, status, or country");
    aa.min_count_opt = analyze->add_option("--min-count", aa.min_count,
                                           "readers needed to count a category (>=1)");
    aa.loop_opt = analyze->add_option("--loop-min-readers", aa.loop_min_readers,
                                      "same-category readers for a self-loop (>=2)");
    aa.seed_opt = analyze->add_option("--seed", aa.seed, "community detection seed");
    aa.report_opt = analyze->add_option("--report", aa.report, "text or kv");
    aa.pajek_opt = analyze->add_option("--pajek-out", aa.pajek_out,
                                       "write the component as a Pajek .net file");
    aa.vos_map_opt = analyze->add_option("--vos-map-out", aa.vos_map_out,
                                         "write a VOSviewer map file");
    aa.vos_net_opt = analyze->add_option("--vos-net-out", aa.vos_net_out,
                                         "write a VOSviewer network file");
    aa.partition_opt = analyze->add_option("--partition-out", aa.partition_out,
                                           "write the community assignment");
    aa.norm_opt = analyze->add_flag("!--no-normalize-countries", aa.normalize_countries,
                                    "keep country labels verbatim");

    ExportArgs ea;
    CLI::App* exp = app.add_subcommand("export", "Convert a Pajek network");
    exp->fallthrough();
    ea.input_opt = exp->add_option("--input", ea.input, "Pajek .net file");
    ea.partition_opt = exp->add_option("--partition", ea.partition,
                                       "community assignment file");
    ea.pajek_opt = exp->add_option("--pajek-out", ea.pajek_out, "normalized Pajek output");
    ea.vos_map_opt = exp->add_option("--vos-map-out", ea.vos_map_out, "VOSviewer map file");
    ea.vos_net_opt = exp->add_option("--vos-net-out", ea.vos_net_out,
                                     "VOSviewer network file");

    FetchArgs fa;
    CLI::App* fetch = app.add_subcommand("fetch", "Pull readership records from an API");
    fetch->fallthrough();
    fa.dois_opt = fetch->add_option("--dois", fa.dois_file, "file with one DOI per line");
    fa.base_opt = fetch->add_option("--base-url", fa.base_url, "API origin");
    fa.cache_opt = fetch->add_option("--cache-dir", fa.cache_dir, "response cache directory");
    fa.out_opt = fetch->add_option("--out", fa.out, "write fetched records here");
    fa.format_opt = fetch->add_option("--format", fa.format, "jsonl or csv");
    fa.token_opt = fetch->add_option("--token-env", fa.token_env,
                                     "environment variable holding the bearer token");
    fa.rate_opt = fetch->add_option("--rate", fa.rate, "max requests per second");
    fa.retries_opt = fetch->add_option("--retries", fa.retries, "retries on 429/5xx");
    fa.backoff_opt = fetch->add_option("--backoff-ms", fa.backoff_ms,
                                       "base retry backoff in milliseconds");
    fa.flight_opt = fetch->add_option("--max-in-flight", fa.max_in_flight,
                                      "concurrent requests");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        ConfigOverlay cfg(config_path.empty()
                              ? std::map<std::string, std::string>{}
                              : load_config(config_path));
        if (summarize->parsed())
            return run_summarize(sa, cfg);
        if (analyze->parsed())
            return run_analyze(aa, cfg);
        if (exp->parsed())
            return run_export(ea, cfg);
        if (fetch->parsed())
            return run_fetch(fa, cfg);
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
