#ifndef COREAD_CENTRALITY_HPP_
#define COREAD_CENTRALITY_HPP_

#include <span>
#include <string>
#include <vector>

#include "coread/graph.hpp"

namespace coread {

struct CentralityResult {
    std::vector<double> scores; // per vertex, non-negative, unit 2-norm
    int iterations = 0;
    bool converged = false;
};

// Principal-eigenvector scores of the adjacency matrix by power iteration.
// Loops contribute 2w on the diagonal; `weighted` selects edge weights or
// binary adjacency. Each iterate is averaged with its predecessor, which
// damps the oscillation on bipartite graphs. Requires a connected graph
// with at least one edge.
CentralityResult eigenvector_centrality(const Graph& g, bool weighted = true,
                                        double tol = 1e-10, int max_iter = 10000);

// Spearman rank correlation with average-rank tie handling: Pearson
// correlation of the two rank vectors. Requires equal lengths >= 3 and
// non-constant inputs.
double spearman(std::span<const double> x, std::span<const double> y);

// (label, score, size) rows sorted by descending score, ties by label.
std::string render_centrality_table(const Graph& g, const CentralityResult& r);

} // namespace coread

#endif // COREAD_CENTRALITY_HPP_
