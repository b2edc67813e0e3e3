#ifndef COREAD_VOSVIEWER_HPP_
#define COREAD_VOSVIEWER_HPP_

#include <filesystem>
#include <string>

#include "coread/graph.hpp"

namespace coread {

// Paired VOSviewer map/network files. Ids are 1-based and consistent
// across both.
struct VosExport {
    std::string map_lines;     // id\tlabel\tcluster\tweight header + rows
    std::string network_lines; // id1\tid2\tweight rows
};

// Map rows carry cluster = community id + 1 and weight = vertex size.
// Self-loops are excluded from the network file (VOSviewer links connect
// distinct items). Rows sorted by id, LF endings, UTF-8. Tabs inside
// labels are replaced with spaces to keep the columns intact.
VosExport write_vosviewer(const Graph& g, const Partition& p);

void write_vosviewer_files(const Graph& g, const Partition& p,
                           const std::filesystem::path& map_path,
                           const std::filesystem::path& network_path);

} // namespace coread

#endif // COREAD_VOSVIEWER_HPP_
