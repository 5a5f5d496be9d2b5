#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "coxpart/coxgraph.hpp"

namespace coxpart {

/// Built-in graphs in the usual numbering with vertices "1".."n":
/// An, Bn, Dn, E6, E7, E8, F4, H3, H4, I2(m), I2(inf), A3~ (the square).
/// Returns nullopt for an unrecognised name.
std::optional<CoxeterGraph> named_graph(std::string_view name);
std::vector<std::string> named_graph_examples();

/// Text format: `vertex <id>` and `edge <id> <id> <m|inf>` lines; `#` starts a comment.
CoxeterGraph parse_graph_text(std::string_view text);
std::string graph_to_text(const CoxeterGraph& g);

/// JSON format: {"vertices": [...], "edges": [{"i":..,"j":..,"m": int or "inf"}]}.
CoxeterGraph parse_graph_json(std::string_view text);
std::string graph_to_json(const CoxeterGraph& g);

/// Accepts a built-in name, or a file path in either format (JSON if it starts with '{').
CoxeterGraph load_graph(const std::string& spec);
/// Same as above for in-memory content.
CoxeterGraph parse_graph(std::string_view text);

/// Reads a whole file; throws InvalidInput when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace coxpart
