#ifndef TESTS_FIXTURES_HPP
#define TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "spr/graph.hpp"
#include "spr/io.hpp"

namespace fixtures {

using spr::LabeledGraph;
using spr::TerminalSet;
using spr::Vertex;
using spr::WeightedGraph;

// a - b - c, unit weights, K = {a, c}.
inline LabeledGraph path3() {
    return spr::parse_graph_text("3 2 2\na b 1\nb c 1\na\nc\n", "path3");
}

// Center c with unit spokes to t1, t2, t3; K = the leaves.
inline LabeledGraph star4() {
    return spr::parse_graph_text("4 3 3\nc t1 1\nc t2 1\nc t3 1\nt1\nt2\nt3\n", "star4");
}

// Triangle with one heavy edge: the 5-edge is never on a shortest path.
inline WeightedGraph triangle115() {
    WeightedGraph g(3);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 1.0);
    g.add_edge(0, 2, 5.0);
    return g;
}

inline WeightedGraph cycle4() {
    WeightedGraph g(4);
    for (int v = 0; v < 4; ++v) g.add_edge(v, (v + 1) % 4, 1.0);
    return g;
}

inline WeightedGraph unit_grid(int w, int h) {
    WeightedGraph g(w * h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            int v = r * w + c;
            if (c + 1 < w) g.add_edge(v, v + 1, 1.0);
            if (r + 1 < h) g.add_edge(v, v + w, 1.0);
        }
    return g;
}

inline WeightedGraph unit_path(int n) {
    WeightedGraph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, 1.0);
    return g;
}

inline std::vector<Vertex> all_vertices(const WeightedGraph& g) {
    std::vector<Vertex> out(static_cast<size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) out[static_cast<size_t>(v)] = v;
    return out;
}

}  // namespace fixtures

#endif  // TESTS_FIXTURES_HPP
