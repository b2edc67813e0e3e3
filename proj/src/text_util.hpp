#ifndef COREAD_SRC_TEXT_UTIL_HPP_
#define COREAD_SRC_TEXT_UTIL_HPP_

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>

namespace coread::detail {

// Double-quoted label with internal quotes escaped by doubling ("" for ").
inline std::string quote_label(std::string_view label) {
    std::string out;
    out.reserve(label.size() + 2);
    out.push_back('"');
    for (char c : label) {
        out.push_back(c);
        if (c == '"')
            out.push_back('"');
    }
    out.push_back('"');
    return out;
}

// Reads a quoted label starting at `pos` (which must point at the opening
// quote). Returns false on malformed input; on success `pos` is left one
// past the closing quote.
inline bool parse_quoted_label(std::string_view line, std::size_t& pos, std::string& out) {
    if (pos >= line.size() || line[pos] != '"')
        return false;
    out.clear();
    ++pos;
    while (pos < line.size()) {
        char c = line[pos];
        if (c == '"') {
            if (pos + 1 < line.size() && line[pos + 1] == '"') {
                out.push_back('"');
                pos += 2;
            } else {
                ++pos;
                return true;
            }
        } else {
            out.push_back(c);
            ++pos;
        }
    }
    return false; // unterminated
}

// Shortest decimal representation that round-trips through double.
inline std::string format_weight(double w) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
    return std::string(buf, ptr);
}

inline std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n'))
        ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n'))
        --e;
    return s.substr(b, e - b);
}

} // namespace coread::detail

#endif // COREAD_SRC_TEXT_UTIL_HPP_
