#include "coread/coupling.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>
#include <vector>

#include "coread/error.hpp"
#include "text_util.hpp"

namespace coread {

Graph build_coupling(const Dataset& ds, const CouplingOptions& opts) {
    if (opts.loop_min_readers < 2)
        throw Error("loop_min_readers must be at least 2");
    if (opts.min_count_threshold < 1)
        throw Error("min_count_threshold must be at least 1");

    const Dimension dim = opts.dimension;
    bool dimension_seen = false;

    // Pass 1: which categories ever pass the presence threshold, and the
    // all-papers reader total per category.
    std::unordered_map<std::string_view, std::uint64_t> totals;
    std::unordered_map<std::string_view, bool> present;
    for (const auto& rec : ds.records()) {
        const auto& counts = rec.counts_for(dim);
        if (!counts.empty())
            dimension_seen = true;
        for (const auto& cc : counts) {
            totals[cc.label] += cc.count;
            if (cc.count >= opts.min_count_threshold)
                present[cc.label] = true;
        }
    }
    if (!dimension_seen)
        throw Error(std::string("no record carries the ") +
                    std::string(to_string(dim)) + " dimension");

    std::vector<std::string_view> labels;
    labels.reserve(present.size());
    for (const auto& [label, _] : present)
        labels.push_back(label);
    std::sort(labels.begin(), labels.end());

    Graph g;
    std::unordered_map<std::string_view, VertexId> index;
    index.reserve(labels.size());
    for (auto label : labels) {
        VertexId v = g.add_vertex(std::string(label));
        g.set_size(v, totals[label]);
        index.emplace(label, v);
    }

    // A self-loop needs the category present on the paper too, so cranking
    // min_count_threshold up empties the graph entirely.
    const std::uint32_t loop_threshold =
        std::max(opts.loop_min_readers, opts.min_count_threshold);

    // Pass 2: per-paper events, accumulated off-graph and inserted sorted.
    std::unordered_map<std::uint64_t, double> weights;
    std::vector<VertexId> s;
    for (const auto& rec : ds.records()) {
        s.clear();
        for (const auto& cc : rec.counts_for(dim)) {
            if (cc.count < opts.min_count_threshold)
                continue;
            VertexId v = index.find(cc.label)->second;
            s.push_back(v);
            if (cc.count >= loop_threshold)
                weights[(std::uint64_t(v) << 32) | v] += 1.0;
        }
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                auto [a, b] = std::minmax(s[i], s[j]);
                weights[(std::uint64_t(a) << 32) | b] += 1.0;
            }
    }

    std::vector<std::pair<std::uint64_t, double>> edges(weights.begin(),
                                                        weights.end());
    std::sort(edges.begin(), edges.end());
    for (const auto& [key, w] : edges)
        g.add_edge(static_cast<VertexId>(key >> 32),
                   static_cast<VertexId>(key & 0xFFFFFFFFu), w);
    return g;
}

std::string coupling_report(const Graph& g, std::size_t top_k) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu vertices, %zu edges, %zu loops\n",
                  g.vertex_count(), g.nonloop_edge_count(), g.loop_count());
    std::string out = buf;

    std::vector<VertexId> order(g.vertex_count());
    for (VertexId v = 0; v < order.size(); ++v)
        order[v] = v;
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        if (g.size(a) != g.size(b))
            return g.size(a) > g.size(b);
        return g.label(a) < g.label(b);
    });
    if (order.size() > top_k)
        order.resize(top_k);
    for (VertexId v : order) {
        out += g.label(v);
        out += '\t';
        out += detail::format_weight(g.size(v));
        out += '\n';
    }
    return out;
}

} // namespace coread
