#ifndef COREAD_DATASET_HPP_
#define COREAD_DATASET_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace coread {

// The three breakdown dimensions a paper's readership can be reported by.
enum class Dimension : int { discipline = 0, status = 1, country = 2 };

inline constexpr std::array<Dimension, 3> kAllDimensions = {
    Dimension::discipline, Dimension::status, Dimension::country};

enum class DocType : int { article = 0, review = 1 };

std::string_view to_string(Dimension d);
std::string_view to_string(DocType t);
std::optional<Dimension> dimension_from_string(std::string_view s);
std::optional<DocType> doc_type_from_string(std::string_view s);

struct CategoryCount {
    std::string label;
    std::uint32_t count = 0;

    bool operator==(const CategoryCount&) const = default;
};

// One paper's readership: DOI, document type, and per-dimension category
// counts. Counts are kept sorted by label; an empty vector means the
// dimension was not reported. Every stored count is >= 1.
struct ReaderRecord {
    std::string paper_id;
    DocType doc_type = DocType::article;
    std::array<std::vector<CategoryCount>, 3> counts;

    const std::vector<CategoryCount>& counts_for(Dimension d) const {
        return counts[static_cast<int>(d)];
    }
    std::vector<CategoryCount>& counts_for(Dimension d) {
        return counts[static_cast<int>(d)];
    }
    bool has_dimension(Dimension d) const { return !counts_for(d).empty(); }

    bool operator==(const ReaderRecord&) const = default;
};

// Tallies of inputs that were dropped or could not be matched on the way in.
struct IngestCounters {
    std::size_t zero_count_entries_dropped = 0;
    std::size_t unrecognized_country_labels = 0; // distinct labels
    std::size_t not_found = 0;                   // DOIs the API had no record for
    std::size_t failed = 0;                      // DOIs that errored out

    bool operator==(const IngestCounters&) const = default;
};

// An ordered collection of ReaderRecords with unique paper ids
// (case-insensitive) and per-dimension registries of observed labels in
// first-observation order. Immutable once built; safe to share across
// threads for reading.
class Dataset {
public:
    // Appends a record, updating the registries. Throws on duplicate id.
    void add_record(ReaderRecord rec);
    bool contains(std::string_view paper_id) const;

    const std::vector<ReaderRecord>& records() const { return records_; }
    const std::vector<std::string>& registry(Dimension d) const {
        return registry_[static_cast<int>(d)];
    }
    std::size_t record_count() const { return records_.size(); }

    std::string source_note;
    IngestCounters counters;

private:
    std::vector<ReaderRecord> records_;
    std::array<std::vector<std::string>, 3> registry_;
    std::array<std::unordered_set<std::string>, 3> registry_index_;
    std::unordered_set<std::string> id_index_; // lowercased DOIs
};

// Lowercased copy, for the case-insensitive DOI key.
std::string fold_case(std::string_view s);

// Rewrites country labels to ISO alpha-2 codes, merging categories that
// normalize to the same code (counts add). Unrecognized labels are kept
// verbatim and tallied in the counters.
Dataset normalize_countries(const Dataset& ds);

} // namespace coread

#endif // COREAD_DATASET_HPP_
