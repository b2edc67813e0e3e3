#include "coread/summary.hpp"

#include <cstdio>

namespace coread {

SummaryStats dataset_summary(const Dataset& ds) {
    SummaryStats s;
    s.counters = ds.counters;
    for (const auto& rec : ds.records()) {
        auto& dt = s.by_doc_type[static_cast<int>(rec.doc_type)];
        ++dt.records;
        for (Dimension d : kAllDimensions) {
            const auto& counts = rec.counts_for(d);
            if (counts.empty())
                continue;
            auto& dim = dt.dims[static_cast<int>(d)];
            ++dim.records_with;
            for (const auto& cc : counts)
                dim.readers_total += cc.count;
        }
    }
    for (auto& dt : s.by_doc_type) {
        for (auto& dim : dt.dims)
            dim.share = dt.records == 0
                            ? 0.0
                            : static_cast<double>(dim.records_with) /
                                  static_cast<double>(dt.records);
    }
    for (Dimension d : kAllDimensions)
        s.distinct_categories[static_cast<int>(d)] = ds.registry(d).size();
    return s;
}

std::string render_summary(const SummaryStats& s) {
    std::string out;
    char buf[160];
    for (DocType t : {DocType::article, DocType::review}) {
        const auto& dt = s.for_type(t);
        std::snprintf(buf, sizeof buf, "%s records: %zu\n",
                      std::string(to_string(t)).c_str(), dt.records);
        out += buf;
        for (Dimension d : kAllDimensions) {
            const auto& dim = dt.dims[static_cast<int>(d)];
            std::snprintf(buf, sizeof buf,
                          "  %s: %zu records (%.1f%%), %llu readers\n",
                          std::string(to_string(d)).c_str(), dim.records_with,
                          dim.share * 100.0,
                          static_cast<unsigned long long>(dim.readers_total));
            out += buf;
        }
    }
    for (Dimension d : kAllDimensions) {
        std::snprintf(buf, sizeof buf, "distinct %s categories: %zu\n",
                      std::string(to_string(d)).c_str(),
                      s.distinct_categories[static_cast<int>(d)]);
        out += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "dropped zero-count entries: %zu\n"
                  "unrecognized country labels: %zu\n",
                  s.counters.zero_count_entries_dropped,
                  s.counters.unrecognized_country_labels);
    out += buf;
    if (s.counters.not_found || s.counters.failed) {
        std::snprintf(buf, sizeof buf, "not found: %zu\nfailed: %zu\n",
                      s.counters.not_found, s.counters.failed);
        out += buf;
    }
    return out;
}

} // namespace coread
