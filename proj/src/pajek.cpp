#include "coread/pajek.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "coread/error.hpp"
#include "text_util.hpp"

namespace coread {

namespace {

struct Line {
    std::string_view text;
    std::size_t no;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t start = 0, no = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        ++no;
        lines.push_back({line, no});
        if (nl == std::string_view::npos)
            break;
        start = nl + 1;
    }
    return lines;
}

bool blank_or_comment(std::string_view s) {
    std::size_t i = s.find_first_not_of(" \t");
    return i == std::string_view::npos || s[i] == '%';
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Next whitespace-separated token; advances pos past it.
std::string_view next_token(std::string_view s, std::size_t& pos) {
    pos = s.find_first_not_of(" \t", pos);
    if (pos == std::string_view::npos) {
        pos = s.size();
        return {};
    }
    std::size_t end = s.find_first_of(" \t", pos);
    if (end == std::string_view::npos)
        end = s.size();
    std::string_view tok = s.substr(pos, end - pos);
    pos = end;
    return tok;
}

std::uint64_t parse_index(std::string_view tok, std::size_t line_no) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line_no, "expected a vertex index, got \"" +
                                      std::string(tok) + "\"");
    return v;
}

double parse_weight(std::string_view tok, std::size_t line_no) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line_no,
                         "expected a weight, got \"" + std::string(tok) + "\"");
    return v;
}

// Label starting at pos: either a double-quoted string with doubled inner
// quotes or a bare token.
std::string parse_label(std::string_view s, std::size_t& pos,
                        std::size_t line_no) {
    pos = s.find_first_not_of(" \t", pos);
    if (pos == std::string_view::npos) {
        pos = s.size();
        return {};
    }
    if (s[pos] != '"')
        return std::string(next_token(s, pos));
    std::string label;
    ++pos;
    while (true) {
        if (pos >= s.size())
            throw ParseError(line_no, "unterminated quoted label");
        char c = s[pos];
        if (c == '"') {
            if (pos + 1 < s.size() && s[pos + 1] == '"') {
                label.push_back('"');
                pos += 2;
            } else {
                ++pos;
                return label;
            }
        } else {
            label.push_back(c);
            ++pos;
        }
    }
}

} // namespace

std::string write_pajek(const Graph& g) {
    std::string out = "*Vertices " + std::to_string(g.vertex_count()) + "\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out += std::to_string(v + 1);
        out += ' ';
        out += detail::quote_label(g.label(v));
        out += '\n';
    }
    out += "*Edges\n";
    g.for_each_edge([&](VertexId u, VertexId v, double w) {
        out += std::to_string(u + 1);
        out += ' ';
        out += std::to_string(v + 1);
        out += ' ';
        out += detail::format_weight(w);
        out += '\n';
    });
    return out;
}

Graph read_pajek(std::string_view text) {
    auto lines = split_lines(text);
    std::size_t li = 0;
    auto skip_blank = [&] {
        while (li < lines.size() && blank_or_comment(lines[li].text))
            ++li;
    };

    skip_blank();
    if (li >= lines.size())
        throw ParseError(lines.empty() ? 1 : lines.back().no,
                         "missing *Vertices section");
    {
        std::size_t pos = 0;
        std::string_view head = next_token(lines[li].text, pos);
        if (lower(head) != "*vertices")
            throw ParseError(lines[li].no, "expected *Vertices, got \"" +
                                               std::string(head) + "\"");
        std::string_view count_tok = next_token(lines[li].text, pos);
        std::uint64_t n = parse_index(count_tok, lines[li].no);
        ++li;

        std::vector<std::string> labels(n);
        std::vector<bool> defined(n, false);
        while (li < lines.size()) {
            if (blank_or_comment(lines[li].text)) {
                ++li;
                continue;
            }
            if (lines[li].text.find_first_not_of(" \t") != std::string_view::npos &&
                lines[li].text[lines[li].text.find_first_not_of(" \t")] == '*')
                break;
            std::size_t p = 0;
            std::uint64_t idx =
                parse_index(next_token(lines[li].text, p), lines[li].no);
            if (idx == 0)
                throw ParseError(lines[li].no,
                                 "vertex index 0 (indices are 1-based)");
            if (idx > n)
                throw ParseError(lines[li].no, "vertex index " +
                                                   std::to_string(idx) +
                                                   " exceeds declared count");
            if (defined[idx - 1])
                throw ParseError(lines[li].no, "vertex " + std::to_string(idx) +
                                                   " defined twice");
            defined[idx - 1] = true;
            std::string label = parse_label(lines[li].text, p, lines[li].no);
            labels[idx - 1] = label.empty() ? std::to_string(idx) : label;
            ++li;
        }
        for (std::uint64_t i = 0; i < n; ++i)
            if (!defined[i])
                labels[i] = std::to_string(i + 1);

        Graph g;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (g.find_vertex(labels[i]))
                throw ParseError(lines[li - 1].no,
                                 "duplicate vertex label \"" + labels[i] + "\"");
            g.add_vertex(labels[i]);
        }

        while (li < lines.size()) {
            skip_blank();
            if (li >= lines.size())
                break;
            std::size_t p = 0;
            std::string_view head2 = next_token(lines[li].text, p);
            std::string section = lower(head2);
            if (section != "*edges" && section != "*arcs")
                throw ParseError(lines[li].no, "unsupported section \"" +
                                                   std::string(head2) + "\"");
            ++li;
            while (li < lines.size()) {
                if (blank_or_comment(lines[li].text)) {
                    ++li;
                    continue;
                }
                std::size_t fn = lines[li].text.find_first_not_of(" \t");
                if (lines[li].text[fn] == '*')
                    break;
                std::size_t q = 0;
                std::uint64_t a =
                    parse_index(next_token(lines[li].text, q), lines[li].no);
                std::string_view btok = next_token(lines[li].text, q);
                if (btok.empty())
                    throw ParseError(lines[li].no, "expected `i j [w]`");
                std::uint64_t b = parse_index(btok, lines[li].no);
                if (a == 0 || b == 0)
                    throw ParseError(lines[li].no,
                                     "vertex index 0 (indices are 1-based)");
                if (a > n || b > n)
                    throw ParseError(lines[li].no,
                                     "edge references undeclared vertex");
                std::string_view wtok = next_token(lines[li].text, q);
                double w = wtok.empty() ? 1.0 : parse_weight(wtok, lines[li].no);
                if (!(w > 0))
                    throw ParseError(lines[li].no, "edge weight must be positive");
                g.add_edge(static_cast<VertexId>(a - 1),
                           static_cast<VertexId>(b - 1), w);
                ++li;
            }
        }
        return g;
    }
}

void write_pajek_file(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << write_pajek(g);
    if (!out)
        throw IoError("failed writing " + path.string());
}

Graph read_pajek_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_pajek(ss.str());
}

} // namespace coread
