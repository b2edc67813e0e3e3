#ifndef COREAD_NETSTATS_HPP_
#define COREAD_NETSTATS_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "coread/graph.hpp"

namespace coread {

// Whole-network statistics suite. All distance-based measures run on the
// unweighted topology (every edge length 1); self-loops are ignored by
// density, closure, centralization, and distances, and enter only the
// average degree (counted once) and modularity (diagonal 2w).

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

struct DistanceStats {
    double average = 0.0;
    double stddev = 0.0; // population standard deviation
    std::size_t diameter = 0;
};

struct StatsReport {
    std::size_t n_vertices = 0;
    double avg_degree = 0.0;
    double degree_centralization = 0.0;
    double density = 0.0;
    double closure = 0.0;
    double avg_distance = 0.0;
    double std_distance = 0.0;
    std::size_t diameter = 0;
    double compactness = 0.0;
    std::optional<double> modularity;
};

// |non-loop edges| / (n(n-1)/2). Requires n >= 2.
double density(const Graph& g);

// Mean of the degree vector, loops counted once. Requires n >= 1.
double average_degree(const Graph& g);

// Freeman centralization sum(d_max - d_i) / ((n-1)(n-2)), loops excluded.
// Requires n >= 3.
double degree_centralization(const Graph& g);

// Global transitivity: 3 * triangles / connected triples, loops ignored;
// 0 when there are no connected triples. Requires n >= 3.
double closure(const Graph& g);

// Geodesic distance matrix by BFS from every vertex; kUnreachable marks
// disconnected pairs.
std::vector<std::vector<std::uint32_t>> all_pairs_distances(const Graph& g);

// Average/std/max geodesic distance over unordered distinct pairs.
// Requires a connected graph; run on the largest component first.
DistanceStats distance_stats(const Graph& g);

// Mean reciprocal distance over unordered distinct pairs, 1/inf = 0.
// Requires n >= 2.
double compactness(const Graph& g);

// Weighted Newman modularity Q = sum_c [W_c/W - (S_c/2W)^2]; a loop of
// weight w contributes w to W and W_c and 2w to its endpoint's strength.
double modularity(const Graph& g, const Partition& p);

// Runs the whole suite on the largest component of g. When a partition is
// given it must cover g; it is restricted to the component and its
// modularity is reported.
StatsReport full_report(const Graph& g, const std::optional<Partition>& p = std::nullopt);

// Aligned plain-text rendering with one row per statistic.
std::string render_text(const StatsReport& r);

// Machine-readable key=value lines, full precision.
std::string render_kv(const StatsReport& r);

} // namespace coread

#endif // COREAD_NETSTATS_HPP_
