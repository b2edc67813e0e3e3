#include "coread/graph.hpp"

#include <algorithm>
#include <queue>

#include "coread/error.hpp"

namespace coread {

VertexId Graph::add_vertex(std::string_view label) {
    auto it = index_.find(label);
    if (it != index_.end())
        return it->second;
    auto id = static_cast<VertexId>(labels_.size());
    labels_.emplace_back(label);
    sizes_.push_back(0.0);
    adj_.emplace_back();
    index_.emplace(labels_.back(), id);
    return id;
}

std::optional<VertexId> Graph::find_vertex(std::string_view label) const {
    auto it = index_.find(label);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

void Graph::add_edge(VertexId u, VertexId v, double w) {
    check_vertex(u);
    check_vertex(v);
    if (!(w > 0.0))
        throw Error("edge weight must be positive, got " + std::to_string(w));

    auto insert = [](std::vector<std::pair<VertexId, double>>& list, VertexId nb,
                     double weight) -> bool {
        auto it = std::lower_bound(list.begin(), list.end(), nb,
                                   [](const auto& p, VertexId x) { return p.first < x; });
        if (it != list.end() && it->first == nb) {
            it->second += weight;
            return false;
        }
        list.insert(it, {nb, weight});
        return true;
    };

    bool fresh = insert(adj_[u], v, w);
    if (u != v)
        insert(adj_[v], u, w);
    if (fresh) {
        ++edge_count_;
        if (u == v)
            ++loop_count_;
    }
    total_weight_ += w;
}

void Graph::add_edge(std::string_view u, std::string_view v, double w) {
    VertexId ui = add_vertex(u);
    VertexId vi = add_vertex(v);
    add_edge(ui, vi, w);
}

void Graph::check_vertex(VertexId v) const {
    if (v >= labels_.size())
        throw Error("unknown vertex index " + std::to_string(v));
}

const std::string& Graph::label(VertexId v) const {
    check_vertex(v);
    return labels_[v];
}

double Graph::size(VertexId v) const {
    check_vertex(v);
    return sizes_[v];
}

void Graph::set_size(VertexId v, double s) {
    check_vertex(v);
    sizes_[v] = s;
}

void Graph::add_size(VertexId v, double s) {
    check_vertex(v);
    sizes_[v] += s;
}

std::span<const std::pair<VertexId, double>> Graph::neighbors(VertexId v) const {
    check_vertex(v);
    return adj_[v];
}

double Graph::edge_weight(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& list = adj_[u];
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const auto& p, VertexId x) { return p.first < x; });
    if (it != list.end() && it->first == v)
        return it->second;
    return 0.0;
}

std::size_t Graph::degree(VertexId v) const {
    check_vertex(v);
    return adj_[v].size();
}

std::size_t Graph::nonloop_degree(VertexId v) const {
    check_vertex(v);
    std::size_t d = adj_[v].size();
    if (edge_weight(v, v) > 0.0)
        --d;
    return d;
}

std::vector<std::size_t> Graph::degree_vector() const {
    std::vector<std::size_t> out(vertex_count());
    for (VertexId v = 0; v < vertex_count(); ++v)
        out[v] = adj_[v].size();
    return out;
}

double Graph::strength(VertexId v) const {
    check_vertex(v);
    double s = 0.0;
    for (const auto& [nb, w] : adj_[v])
        s += w;
    return s;
}

void Graph::for_each_edge(const std::function<void(VertexId, VertexId, double)>& f) const {
    for (VertexId u = 0; u < vertex_count(); ++u)
        for (const auto& [v, w] : adj_[u])
            if (v >= u)
                f(u, v, w);
}

std::vector<std::uint32_t> Graph::component_ids() const {
    const auto n = vertex_count();
    std::vector<std::uint32_t> comp(n, UINT32_MAX);
    std::uint32_t next = 0;
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < n; ++s) {
        if (comp[s] != UINT32_MAX)
            continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            for (const auto& [v, w] : adj_[u]) {
                if (comp[v] == UINT32_MAX) {
                    comp[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    return comp;
}

bool Graph::operator==(const Graph& other) const {
    return labels_ == other.labels_ && sizes_ == other.sizes_ && adj_ == other.adj_;
}

std::uint32_t Partition::community_count() const {
    std::uint32_t mx = 0;
    for (auto c : community)
        mx = std::max(mx, c + 1);
    return mx;
}

ComponentSplit largest_component(const Graph& g) {
    ComponentSplit out;
    const auto n = g.vertex_count();
    if (n == 0)
        return out;

    auto comp = g.component_ids();
    std::uint32_t ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::size_t> sizes(ncomp, 0);
    for (auto c : comp)
        ++sizes[c];

    // Components are numbered by discovery from ascending vertex indices, so
    // the first maximum is the tie-break winner (smallest minimum index).
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < ncomp; ++c)
        if (sizes[c] > sizes[best])
            best = c;

    std::vector<VertexId> remap(n, UINT32_MAX);
    for (VertexId v = 0; v < n; ++v) {
        if (comp[v] == best) {
            remap[v] = static_cast<VertexId>(out.original_ids.size());
            out.original_ids.push_back(v);
            VertexId nv = out.component.add_vertex(g.label(v));
            out.component.set_size(nv, g.size(v));
        } else {
            out.dropped_labels.push_back(g.label(v));
        }
    }
    g.for_each_edge([&](VertexId u, VertexId v, double w) {
        if (remap[u] != UINT32_MAX && remap[v] != UINT32_MAX)
            out.component.add_edge(remap[u], remap[v], w);
    });
    std::sort(out.dropped_labels.begin(), out.dropped_labels.end());
    return out;
}

} // namespace coread
