#ifndef SPR_GRAPH_HPP
#define SPR_GRAPH_HPP

#include <optional>
#include <vector>

#include "spr/errors.hpp"

namespace spr {

using Vertex = int;

struct Edge {
    Vertex to;
    double weight;
};

// Canonical edge record with u < v.
struct EdgeRecord {
    Vertex u;
    Vertex v;
    double weight;
};

// Undirected graph with strictly positive edge weights.
//
// Self-loops are rejected. Zero or negative weights are rejected: a
// zero-weight edge would make vertex contraction and distance scaling
// ambiguous, so degenerate inputs fail loudly at construction. Parallel
// edges collapse to the minimum weight, which is the only part of a
// multigraph that shortest-path distances can see.
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(int n);

    [[nodiscard]] int vertex_count() const { return static_cast<int>(adj_.size()); }
    [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }

    // Returns false when the edge already existed and was collapsed.
    bool add_edge(Vertex u, Vertex v, double w);

    [[nodiscard]] const std::vector<Edge>& neighbors(Vertex v) const {
        check_vertex(v);
        return adj_[static_cast<size_t>(v)];
    }

    [[nodiscard]] int degree(Vertex v) const {
        check_vertex(v);
        return static_cast<int>(adj_[static_cast<size_t>(v)].size());
    }

    [[nodiscard]] const std::vector<EdgeRecord>& edges() const { return edges_; }

    [[nodiscard]] bool has_edge(Vertex u, Vertex v) const;
    [[nodiscard]] std::optional<double> edge_weight(Vertex u, Vertex v) const;

    void check_vertex(Vertex v) const {
        if (v < 0 || v >= vertex_count())
            throw InputError("vertex id out of range: " + std::to_string(v));
    }

private:
    std::vector<std::vector<Edge>> adj_;
    std::vector<EdgeRecord> edges_;
};

// Sorted, duplicate-free set of terminal vertices.
class TerminalSet {
public:
    TerminalSet() = default;
    TerminalSet(const WeightedGraph& g, std::vector<Vertex> terminals);

    [[nodiscard]] int size() const { return static_cast<int>(vertices_.size()); }
    [[nodiscard]] bool empty() const { return vertices_.empty(); }
    [[nodiscard]] const std::vector<Vertex>& vertices() const { return vertices_; }
    [[nodiscard]] Vertex at(int i) const { return vertices_[static_cast<size_t>(i)]; }

    [[nodiscard]] bool contains(Vertex v) const {
        return v >= 0 && v < static_cast<int>(member_.size()) && member_[static_cast<size_t>(v)];
    }

    // Position in the sorted order, or -1.
    [[nodiscard]] int index_of(Vertex v) const;

private:
    std::vector<Vertex> vertices_;
    std::vector<char> member_;
};

struct Path {
    std::vector<Vertex> vertices;

    [[nodiscard]] bool empty() const { return vertices.empty(); }
    [[nodiscard]] int hop_count() const {
        return vertices.empty() ? 0 : static_cast<int>(vertices.size()) - 1;
    }
};

// Sum of edge weights along the path; throws InputError on a non-edge hop.
double path_length(const WeightedGraph& g, const Path& p);

// Largest single edge weight on the path, 0 for paths without edges.
double path_max_edge(const WeightedGraph& g, const Path& p);

}  // namespace spr

#endif  // SPR_GRAPH_HPP
