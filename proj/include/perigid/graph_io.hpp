#pragma once

// Text format for quotient graphs, one record per line:
//
//   periodic-quotient-graph v1
//   # free-form comment
//   dimension 2
//   vertices 2
//   weights 2 1                         (optional; plate dimension per vertex)
//   lattice 1 0 0 1                     (optional; Λ row-major, rationals)
//   edge 1 2 gain 1 0 q_tail 0 0 q_head 1/2 -3/4
//
// Vertices and edges are numbered from 1 in the file. Endpoints are
// optional, but come as a pair. Rationals are written "p/q" in lowest terms.

#include "perigid/gain_graph.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace perigid {

class ParseError : public std::invalid_argument {
public:
    ParseError(int line, std::string field, const std::string& message);
    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    int line_;
    std::string field_;
};

struct GraphFile {
    QuotientGraph graph;
    std::optional<RationalMatrix> lattice;
    std::vector<std::string> comments;
};

/// Throws ParseError (with line and field) on any malformed input,
/// including structural errors the graph constructor would raise.
GraphFile parse_graph(std::string_view text);

/// Canonical text: header, comments, dimension, vertices, weights, lattice,
/// edges. parse_graph(write_graph(f)) reproduces f exactly.
std::string write_graph(const GraphFile& file);
std::string write_graph(const QuotientGraph& g);

/// File helpers; read errors surface as std::runtime_error.
GraphFile read_graph_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace perigid
