#ifndef COREAD_PARSE_HPP_
#define COREAD_PARSE_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "coread/dataset.hpp"

namespace coread {

enum class RecordFormat { json_lines, csv };

std::optional<RecordFormat> record_format_from_string(std::string_view s);

// Infers the format from a file extension: .jsonl/.ndjson/.json -> JSON
// Lines, .csv -> CSV.
std::optional<RecordFormat> record_format_from_path(const std::filesystem::path& p);

// Reads records from a UTF-8 stream. Zero counts are dropped (and tallied
// in the counters); malformed input raises ParseError with the offending
// line number; a repeated paper id raises an error naming the DOI.
Dataset parse_records(std::istream& in, RecordFormat format);

Dataset parse_records_file(const std::filesystem::path& path, RecordFormat format);

// Deterministic inverse of parse_records: parsing the output yields the
// same records and registries. LF line endings in both formats.
std::string serialize_records(const Dataset& ds, RecordFormat format);

void write_records_file(const Dataset& ds, const std::filesystem::path& path,
                        RecordFormat format);

} // namespace coread

#endif // COREAD_PARSE_HPP_
