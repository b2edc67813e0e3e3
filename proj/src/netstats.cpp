#include "coread/netstats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <queue>
#include <sstream>

#include "coread/error.hpp"

namespace coread {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_fixed2(double v) {
    if (std::fabs(v) < 5e-13)
        v = 0.0; // avoid "-0.00"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

double density(const Graph& g) {
    const auto n = g.vertex_count();
    if (n < 2)
        throw Error("density undefined for graphs with fewer than 2 vertices");
    double pairs = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
    return static_cast<double>(g.nonloop_edge_count()) / pairs;
}

double average_degree(const Graph& g) {
    const auto n = g.vertex_count();
    if (n < 1)
        throw Error("average degree undefined for the empty graph");
    std::size_t total = 0;
    for (VertexId v = 0; v < n; ++v)
        total += g.degree(v);
    return static_cast<double>(total) / static_cast<double>(n);
}

double degree_centralization(const Graph& g) {
    const auto n = g.vertex_count();
    if (n < 3)
        throw Error("degree centralization undefined for graphs with fewer than 3 vertices");
    std::vector<std::size_t> deg(n);
    for (VertexId v = 0; v < n; ++v)
        deg[v] = g.nonloop_degree(v);
    std::size_t dmax = *std::max_element(deg.begin(), deg.end());
    std::size_t sum = 0;
    for (auto d : deg)
        sum += dmax - d;
    double denom = static_cast<double>(n - 1) * static_cast<double>(n - 2);
    return static_cast<double>(sum) / denom;
}

double closure(const Graph& g) {
    const auto n = g.vertex_count();
    if (n < 3)
        throw Error("closure undefined for graphs with fewer than 3 vertices");

    // Triangles via neighbor-list intersection on the canonical edge list.
    std::uint64_t triangles3 = 0; // 3 * triangle count, one hit per edge
    g.for_each_edge([&](VertexId u, VertexId v, double) {
        if (u == v)
            return;
        auto nu = g.neighbors(u);
        auto nv = g.neighbors(v);
        auto a = nu.begin();
        auto b = nv.begin();
        while (a != nu.end() && b != nv.end()) {
            if (a->first == b->first) {
                if (a->first != u && a->first != v)
                    ++triangles3;
                ++a;
                ++b;
            } else if (a->first < b->first) {
                ++a;
            } else {
                ++b;
            }
        }
    });

    std::uint64_t triples = 0;
    for (VertexId v = 0; v < n; ++v) {
        std::uint64_t d = g.nonloop_degree(v);
        if (d >= 2)
            triples += d * (d - 1) / 2;
    }
    if (triples == 0)
        return 0.0;
    return static_cast<double>(triangles3) / static_cast<double>(triples);
}

std::vector<std::vector<std::uint32_t>> all_pairs_distances(const Graph& g) {
    const auto n = g.vertex_count();
    std::vector<std::vector<std::uint32_t>> dist(n, std::vector<std::uint32_t>(n, kUnreachable));
    std::vector<VertexId> queue(n);
    for (VertexId s = 0; s < n; ++s) {
        auto& row = dist[s];
        row[s] = 0;
        std::size_t head = 0, tail = 0;
        queue[tail++] = s;
        while (head < tail) {
            VertexId u = queue[head++];
            std::uint32_t du = row[u];
            for (const auto& [v, w] : g.neighbors(u)) {
                if (v != u && row[v] == kUnreachable) {
                    row[v] = du + 1;
                    queue[tail++] = v;
                }
            }
        }
    }
    return dist;
}

DistanceStats distance_stats(const Graph& g) {
    const auto n = g.vertex_count();
    if (n == 0)
        throw Error("distance statistics undefined for the empty graph");
    auto dist = all_pairs_distances(g);

    DistanceStats out;
    double sum = 0.0, sumsq = 0.0;
    std::size_t pairs = 0;
    for (VertexId i = 0; i < n; ++i) {
        for (VertexId j = i + 1; j < n; ++j) {
            if (dist[i][j] == kUnreachable)
                throw Error("graph is disconnected; extract the largest component first");
            double d = dist[i][j];
            sum += d;
            sumsq += d * d;
            ++pairs;
            out.diameter = std::max<std::size_t>(out.diameter, dist[i][j]);
        }
    }
    if (pairs == 0)
        return out; // single vertex
    out.average = sum / static_cast<double>(pairs);
    double var = sumsq / static_cast<double>(pairs) - out.average * out.average;
    out.stddev = std::sqrt(std::max(var, 0.0));
    return out;
}

double compactness(const Graph& g) {
    const auto n = g.vertex_count();
    if (n < 2)
        throw Error("compactness undefined for graphs with fewer than 2 vertices");
    auto dist = all_pairs_distances(g);
    double sum = 0.0;
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j)
            if (dist[i][j] != kUnreachable)
                sum += 1.0 / static_cast<double>(dist[i][j]);
    double pairs = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
    return sum / pairs;
}

double modularity(const Graph& g, const Partition& p) {
    const auto n = g.vertex_count();
    if (p.community.size() != n)
        throw Error("partition does not cover every vertex of the graph");
    double W = g.total_weight();
    if (W <= 0.0)
        throw Error("modularity undefined for a graph without edges");

    std::uint32_t ncomm = p.community_count();
    std::vector<double> intra(ncomm, 0.0);    // W_c
    std::vector<double> strength(ncomm, 0.0); // S_c, loops twice
    g.for_each_edge([&](VertexId u, VertexId v, double w) {
        if (p.community[u] == p.community[v])
            intra[p.community[u]] += w;
    });
    for (VertexId v = 0; v < n; ++v)
        strength[p.community[v]] += g.strength(v) + g.loop_weight(v);

    double q = 0.0;
    for (std::uint32_t c = 0; c < ncomm; ++c) {
        double frac = strength[c] / (2.0 * W);
        q += intra[c] / W - frac * frac;
    }
    return q;
}

StatsReport full_report(const Graph& g, const std::optional<Partition>& p) {
    if (g.vertex_count() == 0)
        throw Error("cannot report statistics for the empty graph");
    if (p && p->community.size() != g.vertex_count())
        throw Error("partition does not cover every vertex of the graph");

    auto split = largest_component(g);
    const Graph& lc = split.component;

    StatsReport r;
    r.n_vertices = lc.vertex_count();
    r.avg_degree = average_degree(lc);
    r.degree_centralization = degree_centralization(lc);
    r.density = density(lc);
    r.closure = closure(lc);
    auto ds = distance_stats(lc);
    r.avg_distance = ds.average;
    r.std_distance = ds.stddev;
    r.diameter = ds.diameter;
    r.compactness = compactness(lc);

    if (p) {
        // Restrict the partition to the component, renumbering community
        // ids contiguously by first occurrence.
        Partition sub;
        sub.community.resize(lc.vertex_count());
        std::unordered_map<std::uint32_t, std::uint32_t> renumber;
        for (VertexId v = 0; v < lc.vertex_count(); ++v) {
            std::uint32_t c = p->community[split.original_ids[v]];
            auto [it, fresh] = renumber.emplace(c, static_cast<std::uint32_t>(renumber.size()));
            sub.community[v] = it->second;
        }
        r.modularity = modularity(lc, sub);
    }
    return r;
}

std::string render_text(const StatsReport& r) {
    // Row labels follow the conventional Pajek report wording so output can
    // be compared side by side with published tables.
    struct Row {
        const char* name;
        std::string value;
    };
    std::vector<Row> rows = {
        {"Number of vertices", std::to_string(r.n_vertices)},
        {"Average degree", format_fixed2(r.avg_degree)},
        {"Degree centralization", format_fixed2(r.degree_centralization)},
        {"Density", format_fixed2(r.density)},
        {"Closure", format_fixed2(r.closure)},
        {"Average distance", format_fixed2(r.avg_distance)},
        {"Standard deviation of average distance", format_fixed2(r.std_distance)},
        {"Diameter", std::to_string(r.diameter)},
        {"Compactness", format_fixed2(r.compactness)},
    };
    if (r.modularity)
        rows.push_back({"Modularity", format_fixed2(*r.modularity)});

    std::size_t width = 0;
    for (const auto& row : rows)
        width = std::max(width, std::string_view(row.name).size());
    std::ostringstream os;
    for (const auto& row : rows) {
        os << row.name;
        for (std::size_t i = std::string_view(row.name).size(); i < width + 2; ++i)
            os << ' ';
        os << row.value << '\n';
    }
    return os.str();
}

std::string render_kv(const StatsReport& r) {
    std::ostringstream os;
    os << "number_of_vertices=" << r.n_vertices << '\n';
    os << "average_degree=" << format_double(r.avg_degree) << '\n';
    os << "degree_centralization=" << format_double(r.degree_centralization) << '\n';
    os << "density=" << format_double(r.density) << '\n';
    os << "closure=" << format_double(r.closure) << '\n';
    os << "average_distance=" << format_double(r.avg_distance) << '\n';
    os << "standard_deviation_of_average_distance=" << format_double(r.std_distance) << '\n';
    os << "diameter=" << r.diameter << '\n';
    os << "compactness=" << format_double(r.compactness) << '\n';
    if (r.modularity)
        os << "modularity=" << format_double(*r.modularity) << '\n';
    return os.str();
}

} // namespace coread
