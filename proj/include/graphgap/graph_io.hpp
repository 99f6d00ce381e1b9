#pragma once

#include <string>

#include "graphgap/multigraph.hpp"

namespace graphgap {

// Text format:
//   { "edges": [[u, v, mult], ...], "labels": [...],
//     "transitive": bool, "vertex_count": n }
// with 0-based vertex indices and loops written as [u, u, mult].
// Serialization is canonical, so save/load round-trips are byte-exact.
std::string graph_to_json(const Multigraph& g);
Multigraph graph_from_json(const std::string& text);

void save_graph(const Multigraph& g, const std::string& path);
Multigraph load_graph(const std::string& path);

/// Writes content to path atomically (temp file + rename).
void atomic_write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace graphgap
