#include "coread/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "coread/country.hpp"
#include "coread/error.hpp"

namespace coread {

std::string_view to_string(Dimension d) {
    switch (d) {
    case Dimension::discipline: return "discipline";
    case Dimension::status: return "status";
    case Dimension::country: return "country";
    }
    return "";
}

std::string_view to_string(DocType t) {
    return t == DocType::article ? "article" : "review";
}

std::optional<Dimension> dimension_from_string(std::string_view s) {
    for (Dimension d : kAllDimensions)
        if (s == to_string(d))
            return d;
    return std::nullopt;
}

std::optional<DocType> doc_type_from_string(std::string_view s) {
    if (s == "article")
        return DocType::article;
    if (s == "review")
        return DocType::review;
    return std::nullopt;
}

std::string fold_case(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

void Dataset::add_record(ReaderRecord rec) {
    if (rec.paper_id.empty())
        throw Error("record has an empty paper id");
    std::string key = fold_case(rec.paper_id);
    if (!id_index_.insert(std::move(key)).second)
        throw Error("duplicate paper id: " + rec.paper_id);
    for (Dimension d : kAllDimensions) {
        auto idx = static_cast<int>(d);
        for (const auto& cc : rec.counts[idx]) {
            if (registry_index_[idx].insert(cc.label).second)
                registry_[idx].push_back(cc.label);
        }
    }
    records_.push_back(std::move(rec));
}

bool Dataset::contains(std::string_view paper_id) const {
    return id_index_.contains(fold_case(paper_id));
}

Dataset normalize_countries(const Dataset& ds) {
    Dataset out;
    out.source_note = ds.source_note;
    out.counters = ds.counters;
    std::unordered_set<std::string> unrecognized;
    for (const auto& rec : ds.records()) {
        ReaderRecord copy = rec;
        auto& counts = copy.counts_for(Dimension::country);
        if (!counts.empty()) {
            std::map<std::string, std::uint64_t> merged;
            for (const auto& cc : counts) {
                NormalizedCountry norm = normalize_country(cc.label);
                if (!norm.recognized)
                    unrecognized.insert(norm.value);
                merged[std::move(norm.value)] += cc.count;
            }
            counts.clear();
            counts.reserve(merged.size());
            for (auto& [label, count] : merged)
                counts.push_back({label, static_cast<std::uint32_t>(count)});
        }
        out.add_record(std::move(copy));
    }
    out.counters.unrecognized_country_labels = unrecognized.size();
    return out;
}

} // namespace coread
