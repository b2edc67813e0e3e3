#include "coread/vosviewer.hpp"

#include <fstream>

#include "coread/error.hpp"
#include "text_util.hpp"

namespace coread {

namespace {

void append_sanitized(std::string& out, std::string_view label) {
    for (char c : label)
        out += (c == '\t' || c == '\n' || c == '\r') ? ' ' : c;
}

void write_text_file(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out)
        throw IoError("failed writing " + path.string());
}

} // namespace

VosExport write_vosviewer(const Graph& g, const Partition& p) {
    if (p.community.size() != g.vertex_count())
        throw Error("partition does not cover the graph");

    VosExport ex;
    ex.map_lines = "id\tlabel\tcluster\tweight\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        ex.map_lines += std::to_string(v + 1);
        ex.map_lines += '\t';
        append_sanitized(ex.map_lines, g.label(v));
        ex.map_lines += '\t';
        ex.map_lines += std::to_string(p.community[v] + 1);
        ex.map_lines += '\t';
        ex.map_lines += detail::format_weight(g.size(v));
        ex.map_lines += '\n';
    }
    g.for_each_edge([&](VertexId u, VertexId v, double w) {
        if (u == v)
            return;
        ex.network_lines += std::to_string(u + 1);
        ex.network_lines += '\t';
        ex.network_lines += std::to_string(v + 1);
        ex.network_lines += '\t';
        ex.network_lines += detail::format_weight(w);
        ex.network_lines += '\n';
    });
    return ex;
}

void write_vosviewer_files(const Graph& g, const Partition& p,
                           const std::filesystem::path& map_path,
                           const std::filesystem::path& network_path) {
    VosExport ex = write_vosviewer(g, p);
    write_text_file(ex.map_lines, map_path);
    write_text_file(ex.network_lines, network_path);
}

} // namespace coread
