#ifndef COREAD_COUPLING_HPP_
#define COREAD_COUPLING_HPP_

#include <cstdint>
#include <string>

#include "coread/dataset.hpp"
#include "coread/graph.hpp"

namespace coread {

struct CouplingOptions {
    Dimension dimension = Dimension::discipline;
    // Readers in the same category on one paper needed for a self-loop event.
    std::uint32_t loop_min_readers = 2; // >= 2
    // Minimum readers for a category to count as present on a paper.
    std::uint32_t min_count_threshold = 1; // >= 1
};

// Bookmark-coupling network over one dimension. Per paper, every unordered
// pair of categories passing min_count_threshold gets one co-bookmarking
// event (weight 1); a category with at least loop_min_readers readers gets
// one self-loop event. Reader magnitudes beyond the thresholds do not
// scale weights. Vertex size = the category's readers summed over all
// papers. Vertices are ordered by label, so the result does not depend on
// record order.
Graph build_coupling(const Dataset& ds, const CouplingOptions& opts);

// "N vertices, M edges, L loops" plus the top vertices by size
// (descending, ties by label).
std::string coupling_report(const Graph& g, std::size_t top_k = 20);

} // namespace coread

#endif // COREAD_COUPLING_HPP_
