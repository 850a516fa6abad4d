#pragma once

#include <iosfwd>
#include <string>

#include "gsent/graph.hpp"

namespace gsent {

// Graph file: first line `n <N>`, then `e <i> <j>` with 1-indexed vertices.
// `#` starts a comment.
Graph parse_graph(std::istream& in, const std::string& filename);
Graph load_graph(const std::string& path);

// Partition file: lines `p <vertex> <part>` with 1-indexed vertices and parts.
Partition parse_partition(std::istream& in, const std::string& filename, int vertex_count);
Partition load_partition(const std::string& path, int vertex_count);

// Inline partition: parts separated by '|', vertices by ',' or spaces,
// 1-indexed, e.g. "1|2,3,4". Unlisted vertices join the last part.
Partition parse_inline_partition(const std::string& spec, int vertex_count);

}  // namespace gsent
