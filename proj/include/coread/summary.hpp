#ifndef COREAD_SUMMARY_HPP_
#define COREAD_SUMMARY_HPP_

#include <array>
#include <cstdint>
#include <string>

#include "coread/dataset.hpp"

namespace coread {

// Availability and volume of one breakdown dimension within one doc type.
struct DimensionSummary {
    std::size_t records_with = 0; // records carrying the dimension
    double share = 0.0;           // records_with / records, 0 when empty
    std::uint64_t readers_total = 0;

    bool operator==(const DimensionSummary&) const = default;
};

struct DocTypeSummary {
    std::size_t records = 0;
    std::array<DimensionSummary, 3> dims;

    bool operator==(const DocTypeSummary&) const = default;
};

struct SummaryStats {
    std::array<DocTypeSummary, 2> by_doc_type;   // indexed by DocType
    std::array<std::size_t, 3> distinct_categories = {0, 0, 0};
    IngestCounters counters;

    const DocTypeSummary& for_type(DocType t) const {
        return by_doc_type[static_cast<int>(t)];
    }
    bool operator==(const SummaryStats&) const = default;
};

SummaryStats dataset_summary(const Dataset& ds);

// Plain-text block, one stanza per doc type plus registry and counter lines.
std::string render_summary(const SummaryStats& s);

} // namespace coread

#endif // COREAD_SUMMARY_HPP_
