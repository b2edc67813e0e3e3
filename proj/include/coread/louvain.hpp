#ifndef COREAD_LOUVAIN_HPP_
#define COREAD_LOUVAIN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "coread/graph.hpp"

namespace coread {

struct LouvainConfig {
    std::uint64_t seed = 0;    // vertex-visit shuffling
    double min_gain = 1e-9;    // per-pass stop threshold on Q improvement
    int max_levels = 32;
    double resolution = 1.0;   // multiplies the null-model term in gains
};

// Multilevel modularity maximization: iterated local moving followed by
// community aggregation, repeated until a level yields no change. Vertices
// are visited in a seeded shuffled order; equal-gain ties go to the lowest
// community id, so a given seed always yields the same partition. The
// returned q is re-evaluated directly on the input graph.
Partition louvain(const Graph& g, const LouvainConfig& cfg = {});

// Community sizes in descending order, ties by ascending community id.
std::vector<std::size_t> community_sizes(const Partition& p);

// Two-column text export: quoted label, then community id, one vertex
// per line in vertex order.
std::string write_partition(const Graph& g, const Partition& p);

// Inverse of write_partition against the labels of g.
Partition read_partition(const Graph& g, const std::string& text);

} // namespace coread

#endif // COREAD_LOUVAIN_HPP_
