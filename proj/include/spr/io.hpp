#ifndef SPR_IO_HPP
#define SPR_IO_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "spr/graph.hpp"

namespace spr {

// Graph with the string labels it was parsed from (or assigned by a
// generator). Vertex ids are dense, in order of first appearance.
struct LabeledGraph {
    WeightedGraph graph;
    TerminalSet terminals;
    std::vector<std::string> labels;
    std::unordered_map<std::string, Vertex> index;

    [[nodiscard]] const std::string& label_of(Vertex v) const {
        graph.check_vertex(v);
        return labels[static_cast<size_t>(v)];
    }
};

// Text format, shared by inputs and emitted minors:
//   line 1: n m k
//   m lines: <label-u> <label-v> <weight>
//   k lines: <terminal-label>
// '#' starts a comment line; blank lines are ignored. Every one of the n
// vertices must appear somewhere (an isolated vertex could not carry a
// terminal and would be unreachable anyway). Errors carry file:line.
LabeledGraph parse_graph_text(const std::string& text, const std::string& name);
LabeledGraph parse_graph_file(const std::string& path);

std::string write_graph_text(const LabeledGraph& lg);
void write_graph_file(const LabeledGraph& lg, const std::string& path);

// Shortest round-trip decimal form of a double (exact re-parse).
std::string format_double(double x);

// Assigns decimal-id labels "0".."n-1".
LabeledGraph with_default_labels(WeightedGraph g, TerminalSet terminals);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace spr

#endif  // SPR_IO_HPP
