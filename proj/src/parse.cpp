#include "coread/parse.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "coread/error.hpp"

namespace coread {

namespace {

using nlohmann::json;

void insert_count(std::vector<CategoryCount>& counts, std::string label,
                  std::uint32_t count, std::size_t line_no) {
    auto it = std::lower_bound(counts.begin(), counts.end(), label,
                               [](const CategoryCount& cc, const std::string& l) {
                                   return cc.label < l;
                               });
    if (it != counts.end() && it->label == label)
        throw ParseError(line_no, "repeated category \"" + label + "\"");
    counts.insert(it, {std::move(label), count});
}

std::uint32_t parse_count_json(const json& v, const std::string& label,
                               std::size_t line_no) {
    if (!v.is_number_integer() && !v.is_number_unsigned())
        throw ParseError(line_no, "count for \"" + label + "\" is not an integer");
    auto n = v.get<std::int64_t>();
    if (n < 0)
        throw ParseError(line_no, "negative count for \"" + label + "\"");
    if (n > UINT32_MAX)
        throw ParseError(line_no, "count for \"" + label + "\" is out of range");
    return static_cast<std::uint32_t>(n);
}

ReaderRecord record_from_json(const json& j, std::size_t line_no,
                              std::size_t& zero_dropped) {
    if (!j.is_object())
        throw ParseError(line_no, "expected a JSON object");
    ReaderRecord rec;
    auto doi = j.find("doi");
    if (doi == j.end() || !doi->is_string())
        throw ParseError(line_no, "missing or non-string \"doi\"");
    rec.paper_id = doi->get<std::string>();
    auto type = j.find("type");
    if (type == j.end() || !type->is_string())
        throw ParseError(line_no, "missing or non-string \"type\"");
    auto dt = doc_type_from_string(type->get<std::string>());
    if (!dt)
        throw ParseError(line_no,
                         "unknown type \"" + type->get<std::string>() + "\"");
    rec.doc_type = *dt;
    auto readers = j.find("readers");
    if (readers == j.end())
        return rec;
    if (!readers->is_object())
        throw ParseError(line_no, "\"readers\" is not an object");
    for (auto it = readers->begin(); it != readers->end(); ++it) {
        auto dim = dimension_from_string(it.key());
        if (!dim)
            throw ParseError(line_no, "unknown dimension \"" + it.key() + "\"");
        if (!it.value().is_object())
            throw ParseError(line_no, "dimension \"" + it.key() + "\" is not an object");
        auto& counts = rec.counts_for(*dim);
        for (auto cit = it.value().begin(); cit != it.value().end(); ++cit) {
            std::uint32_t n = parse_count_json(cit.value(), cit.key(), line_no);
            if (n == 0) {
                ++zero_dropped;
                continue;
            }
            insert_count(counts, cit.key(), n, line_no);
        }
    }
    return rec;
}

Dataset parse_json_lines(std::istream& in) {
    Dataset ds;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(line_no, e.what());
        }
        ReaderRecord rec =
            record_from_json(j, line_no, ds.counters.zero_count_entries_dropped);
        try {
            ds.add_record(std::move(rec));
        } catch (const Error& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return ds;
}

// --- CSV ---

// One RFC-4180 record: fields split on commas, quoted fields may contain
// commas, doubled quotes, and newlines. Advances line_no across embedded
// newlines; returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields,
                     std::size_t& line_no) {
    fields.clear();
    int c = in.get();
    if (c == EOF)
        return false;
    ++line_no;
    std::string field;
    bool quoted = false;
    while (true) {
        if (c == EOF) {
            fields.push_back(std::move(field));
            if (quoted)
                throw ParseError(line_no, "unterminated quoted field");
            return true;
        }
        char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                int next = in.get();
                if (next == '"') {
                    field.push_back('"');
                } else {
                    quoted = false;
                    c = next;
                    continue;
                }
            } else {
                if (ch == '\n')
                    ++line_no;
                field.push_back(ch);
            }
        } else if (ch == '"') {
            if (!field.empty())
                throw ParseError(line_no, "quote inside unquoted field");
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            if (!field.empty() && field.back() == '\r')
                field.pop_back();
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(ch);
        }
        c = in.get();
    }
}

std::uint32_t parse_count_csv(const std::string& s, std::size_t line_no) {
    std::uint64_t n = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(line_no, "count \"" + s + "\" is not a non-negative integer");
    if (n > UINT32_MAX)
        throw ParseError(line_no, "count \"" + s + "\" is out of range");
    return static_cast<std::uint32_t>(n);
}

Dataset parse_csv(std::istream& in) {
    Dataset ds;
    std::vector<std::string> fields;
    std::size_t line_no = 0;
    if (!read_csv_record(in, fields, line_no))
        throw ParseError(1, "missing header");
    if (!fields.empty() && fields[0].starts_with("\xEF\xBB\xBF"))
        fields[0].erase(0, 3);
    const std::vector<std::string> header = {"doi", "type", "dimension",
                                             "category", "count"};
    if (fields != header)
        throw ParseError(line_no,
                         "expected header doi,type,dimension,category,count");

    ReaderRecord current;
    bool have_current = false;
    auto flush = [&](std::size_t at_line) {
        if (!have_current)
            return;
        try {
            ds.add_record(std::move(current));
        } catch (const Error& e) {
            throw ParseError(at_line, e.what());
        }
        current = {};
        have_current = false;
    };

    while (read_csv_record(in, fields, line_no)) {
        if (fields.size() == 1 && fields[0].empty())
            continue; // blank line
        if (fields.size() != 5)
            throw ParseError(line_no, "expected 5 fields, got " +
                                          std::to_string(fields.size()));
        const std::string& doi = fields[0];
        if (doi.empty())
            throw ParseError(line_no, "empty doi");
        auto dt = doc_type_from_string(fields[1]);
        if (!dt)
            throw ParseError(line_no, "unknown type \"" + fields[1] + "\"");
        if (!have_current || current.paper_id != doi) {
            flush(line_no);
            current.paper_id = doi;
            current.doc_type = *dt;
            have_current = true;
        } else if (current.doc_type != *dt) {
            throw ParseError(line_no, "conflicting type for " + doi);
        }
        if (fields[2].empty() && fields[3].empty() && fields[4].empty())
            continue; // breakdown-free record marker
        auto dim = dimension_from_string(fields[2]);
        if (!dim)
            throw ParseError(line_no, "unknown dimension \"" + fields[2] + "\"");
        if (fields[3].empty())
            throw ParseError(line_no, "empty category");
        std::uint32_t n = parse_count_csv(fields[4], line_no);
        if (n == 0) {
            ++ds.counters.zero_count_entries_dropped;
            continue;
        }
        insert_count(current.counts_for(*dim), fields[3], n, line_no);
    }
    flush(line_no);
    return ds;
}

void csv_append_field(std::string& out, std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
}

std::string serialize_json_lines(const Dataset& ds) {
    std::string out;
    for (const auto& rec : ds.records()) {
        json readers = json::object();
        for (Dimension d : kAllDimensions) {
            const auto& counts = rec.counts_for(d);
            if (counts.empty())
                continue;
            json obj = json::object();
            for (const auto& cc : counts)
                obj[cc.label] = cc.count;
            readers[std::string(to_string(d))] = std::move(obj);
        }
        json j = {{"doi", rec.paper_id},
                  {"type", std::string(to_string(rec.doc_type))},
                  {"readers", std::move(readers)}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string serialize_csv(const Dataset& ds) {
    std::string out = "doi,type,dimension,category,count\n";
    for (const auto& rec : ds.records()) {
        bool any = false;
        for (Dimension d : kAllDimensions) {
            for (const auto& cc : rec.counts_for(d)) {
                any = true;
                csv_append_field(out, rec.paper_id);
                out += ',';
                out += to_string(rec.doc_type);
                out += ',';
                out += to_string(d);
                out += ',';
                csv_append_field(out, cc.label);
                out += ',';
                out += std::to_string(cc.count);
                out += '\n';
            }
        }
        if (!any) {
            csv_append_field(out, rec.paper_id);
            out += ',';
            out += to_string(rec.doc_type);
            out += ",,,\n";
        }
    }
    return out;
}

} // namespace

std::optional<RecordFormat> record_format_from_string(std::string_view s) {
    if (s == "jsonl" || s == "json_lines" || s == "json-lines")
        return RecordFormat::json_lines;
    if (s == "csv")
        return RecordFormat::csv;
    return std::nullopt;
}

std::optional<RecordFormat> record_format_from_path(const std::filesystem::path& p) {
    auto ext = p.extension().string();
    if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json")
        return RecordFormat::json_lines;
    if (ext == ".csv")
        return RecordFormat::csv;
    return std::nullopt;
}

Dataset parse_records(std::istream& in, RecordFormat format) {
    return format == RecordFormat::json_lines ? parse_json_lines(in)
                                              : parse_csv(in);
}

Dataset parse_records_file(const std::filesystem::path& path, RecordFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    Dataset ds = parse_records(in, format);
    ds.source_note = path.string();
    return ds;
}

std::string serialize_records(const Dataset& ds, RecordFormat format) {
    return format == RecordFormat::json_lines ? serialize_json_lines(ds)
                                              : serialize_csv(ds);
}

void write_records_file(const Dataset& ds, const std::filesystem::path& path,
                        RecordFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << serialize_records(ds, format);
    if (!out)
        throw IoError("failed writing " + path.string());
}

} // namespace coread
