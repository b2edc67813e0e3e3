#ifndef COREAD_GRAPH_HPP_
#define COREAD_GRAPH_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace coread {

using VertexId = std::uint32_t;

// Undirected weighted graph with optional self-loops. Vertices carry a
// string label (unique) and a numeric size attribute. At most one edge
// exists per unordered vertex pair; repeated insertions accumulate weight.
// Adjacency lists are kept sorted by neighbor id, so iteration order is
// deterministic; a self-loop appears exactly once in its vertex's list.
class Graph {
public:
    Graph() = default;

    // Returns the id for `label`, creating the vertex on first sight.
    VertexId add_vertex(std::string_view label);
    std::optional<VertexId> find_vertex(std::string_view label) const;

    // Accumulates `w` onto the unordered pair (u, v); u == v makes a loop.
    // Weights must be positive.
    void add_edge(VertexId u, VertexId v, double w);
    void add_edge(std::string_view u, std::string_view v, double w);

    std::size_t vertex_count() const noexcept { return labels_.size(); }
    // Number of distinct unordered pairs with an edge, loops included.
    std::size_t edge_count() const noexcept { return edge_count_; }
    std::size_t nonloop_edge_count() const noexcept { return edge_count_ - loop_count_; }
    std::size_t loop_count() const noexcept { return loop_count_; }
    bool empty() const noexcept { return labels_.empty(); }

    const std::string& label(VertexId v) const;
    double size(VertexId v) const;
    void set_size(VertexId v, double s);
    void add_size(VertexId v, double s);

    // Sorted by neighbor id; a loop shows up as the pair (v, w).
    std::span<const std::pair<VertexId, double>> neighbors(VertexId v) const;

    double edge_weight(VertexId u, VertexId v) const; // 0 when absent
    double loop_weight(VertexId v) const { return edge_weight(v, v); }

    // Count of incident non-loop edges, plus 1 if v has a self-loop.
    std::size_t degree(VertexId v) const;
    std::size_t nonloop_degree(VertexId v) const;
    std::vector<std::size_t> degree_vector() const;

    // Sum of incident edge weights, a loop contributing its weight once.
    double strength(VertexId v) const;

    // Sum of all edge weights, loops counted once.
    double total_weight() const noexcept { return total_weight_; }

    // Visits every edge as (u, v, w) with u <= v, ordered by (u, v).
    void for_each_edge(const std::function<void(VertexId, VertexId, double)>& f) const;

    // Connected-component labels (loops irrelevant), 0-based by discovery.
    std::vector<std::uint32_t> component_ids() const;

    bool operator==(const Graph& other) const;

private:
    struct StringHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };

    void check_vertex(VertexId v) const;

    std::vector<std::string> labels_;
    std::vector<double> sizes_;
    std::vector<std::vector<std::pair<VertexId, double>>> adj_;
    std::unordered_map<std::string, VertexId, StringHash, std::equal_to<>> index_;
    std::size_t edge_count_ = 0;
    std::size_t loop_count_ = 0;
    double total_weight_ = 0.0;
};

// Assignment of every vertex to a community; ids are 0-based and contiguous.
// `q` caches the modularity of this partition on its graph.
struct Partition {
    std::vector<std::uint32_t> community;
    double q = 0.0;

    std::uint32_t community_count() const;
};

struct ComponentSplit {
    Graph component;
    std::vector<VertexId> original_ids;      // kept vertices, ascending
    std::vector<std::string> dropped_labels; // excluded vertices, label order
};

// Induced subgraph on the largest connected vertex set. Ties are broken in
// favor of the component containing the smallest vertex index. Indices are
// re-densified in original relative order; labels and sizes are preserved.
ComponentSplit largest_component(const Graph& g);

} // namespace coread

#endif // COREAD_GRAPH_HPP_
