#include "coread/louvain.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <unordered_map>

#include "coread/error.hpp"
#include "coread/netstats.hpp"
#include "text_util.hpp"

namespace coread {

namespace {

// Deterministic across platforms, unlike std::shuffle with a std engine.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

void shuffle_order(std::vector<std::uint32_t>& order, SplitMix64& rng) {
    for (std::size_t i = order.size(); i > 1; --i) {
        std::size_t j = rng.next() % i;
        std::swap(order[i - 1], order[j]);
    }
}

// Working copy of one aggregation level. Loops are stored once at (v, v);
// k holds the modularity strength (loops counted twice), two_w = sum(k).
struct LevelGraph {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
    std::vector<double> k;
    std::vector<double> self_w;
    double two_w = 0.0;

    std::size_t n() const { return adj.size(); }
};

LevelGraph from_graph(const Graph& g) {
    LevelGraph lg;
    const auto n = g.vertex_count();
    lg.adj.resize(n);
    lg.k.resize(n);
    lg.self_w.resize(n);
    for (VertexId v = 0; v < n; ++v) {
        auto nbs = g.neighbors(v);
        lg.adj[v].assign(nbs.begin(), nbs.end());
        double loop = g.loop_weight(v);
        lg.self_w[v] = loop;
        lg.k[v] = g.strength(v) + loop;
        lg.two_w += lg.k[v];
    }
    return lg;
}

// One round of local moving. Returns the community assignment (ids not yet
// renumbered) after no pass improves Q by more than min_gain.
std::vector<std::uint32_t> local_move(const LevelGraph& lg, SplitMix64& rng,
                                      double min_gain, double resolution) {
    const auto n = lg.n();
    std::vector<std::uint32_t> node2com(n);
    std::vector<double> tot(lg.k);
    for (std::uint32_t v = 0; v < n; ++v)
        node2com[v] = v;

    std::vector<std::uint32_t> order(n);
    for (std::uint32_t v = 0; v < n; ++v)
        order[v] = v;
    shuffle_order(order, rng);

    // Scratch: weight from the current vertex to each touched community.
    std::vector<double> w_to_com(n, 0.0);
    std::vector<std::uint32_t> touched;

    bool moved_any;
    double pass_gain;
    do {
        moved_any = false;
        pass_gain = 0.0;
        for (std::uint32_t v : order) {
            std::uint32_t c_old = node2com[v];

            touched.clear();
            for (const auto& [nb, w] : lg.adj[v]) {
                if (nb == v)
                    continue; // the loop travels with v, irrelevant to gains
                std::uint32_t c = node2com[nb];
                if (w_to_com[c] == 0.0)
                    touched.push_back(c);
                w_to_com[c] += w;
            }
            if (w_to_com[c_old] == 0.0)
                touched.push_back(c_old); // staying is always a candidate

            tot[c_old] -= lg.k[v];

            // ascending ids with strict improvement: equal gains keep the
            // lowest community id
            std::sort(touched.begin(), touched.end());
            double kv = lg.k[v];
            auto score = [&](std::uint32_t c) {
                return w_to_com[c] - resolution * tot[c] * kv / lg.two_w;
            };
            double stay_score = score(c_old);
            double best_score = stay_score;
            std::uint32_t best_c = c_old;
            for (std::uint32_t c : touched) {
                double s = score(c);
                if (s > best_score || (s == best_score && c < best_c)) {
                    best_score = s;
                    best_c = c;
                }
            }

            tot[best_c] += lg.k[v];
            node2com[v] = best_c;
            if (best_c != c_old) {
                moved_any = true;
                pass_gain += 2.0 * (best_score - stay_score) / lg.two_w;
            }

            for (std::uint32_t c : touched)
                w_to_com[c] = 0.0;
        }
    } while (moved_any && pass_gain > min_gain);

    return node2com;
}

// Renumbers community ids contiguously by first occurrence in vertex order.
std::uint32_t renumber(std::vector<std::uint32_t>& assign) {
    std::unordered_map<std::uint32_t, std::uint32_t> map;
    map.reserve(assign.size());
    for (auto& c : assign) {
        auto [it, fresh] = map.emplace(c, static_cast<std::uint32_t>(map.size()));
        c = it->second;
    }
    return static_cast<std::uint32_t>(map.size());
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::uint32_t>& assign,
                     std::uint32_t ncomm) {
    LevelGraph agg;
    agg.adj.resize(ncomm);
    agg.k.assign(ncomm, 0.0);
    agg.self_w.assign(ncomm, 0.0);

    std::unordered_map<std::uint64_t, double> cross;
    for (std::uint32_t u = 0; u < lg.n(); ++u) {
        for (const auto& [v, w] : lg.adj[u]) {
            if (v < u)
                continue; // visit each edge once
            std::uint32_t cu = assign[u], cv = assign[v];
            if (cu == cv) {
                agg.self_w[cu] += w;
            } else {
                std::uint64_t key = (static_cast<std::uint64_t>(std::min(cu, cv)) << 32) |
                                    std::max(cu, cv);
                cross[key] += w;
            }
        }
    }

    std::vector<std::pair<std::uint64_t, double>> edges(cross.begin(), cross.end());
    std::sort(edges.begin(), edges.end());
    for (const auto& [key, w] : edges) {
        auto a = static_cast<std::uint32_t>(key >> 32);
        auto b = static_cast<std::uint32_t>(key & 0xffffffffULL);
        agg.adj[a].emplace_back(b, w);
        agg.adj[b].emplace_back(a, w);
    }
    for (std::uint32_t c = 0; c < ncomm; ++c) {
        if (agg.self_w[c] > 0.0)
            agg.adj[c].emplace_back(c, agg.self_w[c]);
        std::sort(agg.adj[c].begin(), agg.adj[c].end());
        double s = 0.0;
        for (const auto& [nb, w] : agg.adj[c])
            s += w;
        agg.k[c] = s + agg.self_w[c];
        agg.two_w += agg.k[c];
    }
    return agg;
}

} // namespace

Partition louvain(const Graph& g, const LouvainConfig& cfg) {
    const auto n = g.vertex_count();
    if (n == 0)
        throw Error("cannot run community detection on the empty graph");

    Partition out;
    out.community.resize(n);
    for (VertexId v = 0; v < n; ++v)
        out.community[v] = v;

    if (g.total_weight() > 0.0) {
        SplitMix64 rng{cfg.seed ^ 0x6a09e667f3bcc909ULL};
        LevelGraph level = from_graph(g);
        for (int depth = 0; depth < cfg.max_levels; ++depth) {
            auto assign = local_move(level, rng, cfg.min_gain, cfg.resolution);
            std::uint32_t ncomm = renumber(assign);
            for (VertexId v = 0; v < n; ++v)
                out.community[v] = assign[out.community[v]];
            if (ncomm == level.n())
                break; // no merge happened, the level is stable
            level = aggregate(level, assign, ncomm);
        }
        renumber(out.community);
        out.q = modularity(g, out);
    } else {
        out.q = 0.0; // edgeless graph: singletons, Q has no null model
    }
    return out;
}

std::vector<std::size_t> community_sizes(const Partition& p) {
    std::vector<std::size_t> counts(p.community_count(), 0);
    for (auto c : p.community)
        ++counts[c];
    std::vector<std::pair<std::size_t, std::uint32_t>> order;
    order.reserve(counts.size());
    for (std::uint32_t c = 0; c < counts.size(); ++c)
        order.emplace_back(counts[c], c);
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first)
            return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<std::size_t> out;
    out.reserve(order.size());
    for (const auto& [size, id] : order)
        out.push_back(size);
    return out;
}

std::string write_partition(const Graph& g, const Partition& p) {
    if (p.community.size() != g.vertex_count())
        throw Error("partition does not cover every vertex of the graph");
    std::ostringstream os;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        os << detail::quote_label(g.label(v)) << '\t' << p.community[v] << '\n';
    return os.str();
}

Partition read_partition(const Graph& g, const std::string& text) {
    Partition p;
    p.community.assign(g.vertex_count(), UINT32_MAX);

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::size_t assigned = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto trimmed = detail::trim(line);
        if (trimmed.empty())
            continue;
        std::size_t pos = 0;
        std::string label;
        if (!detail::parse_quoted_label(trimmed, pos, label))
            throw ParseError(lineno, "expected a quoted label");
        auto rest = detail::trim(trimmed.substr(pos));
        std::uint32_t comm = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), comm);
        if (ec != std::errc() || ptr != rest.data() + rest.size())
            throw ParseError(lineno, "expected a community id after the label");
        auto v = g.find_vertex(label);
        if (!v)
            throw ParseError(lineno, "label \"" + label + "\" is not a vertex of the graph");
        if (p.community[*v] != UINT32_MAX)
            throw ParseError(lineno, "label \"" + label + "\" assigned twice");
        p.community[*v] = comm;
        ++assigned;
    }
    if (assigned != g.vertex_count())
        throw Error("partition does not cover every vertex of the graph");

    // normalize ids to the contiguous 0-based invariant
    std::unordered_map<std::uint32_t, std::uint32_t> map;
    for (auto& c : p.community) {
        auto [it, fresh] = map.emplace(c, static_cast<std::uint32_t>(map.size()));
        c = it->second;
    }
    p.q = g.total_weight() > 0.0 ? modularity(g, p) : 0.0;
    return p;
}

} // namespace coread
