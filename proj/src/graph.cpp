#include "spr/graph.hpp"

#include <algorithm>
#include <unordered_map>

namespace spr {

WeightedGraph::WeightedGraph(int n) {
    if (n < 0) throw InputError("vertex count must be non-negative");
    adj_.resize(static_cast<size_t>(n));
}

bool WeightedGraph::add_edge(Vertex u, Vertex v, double w) {
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        throw InputError("self-loop rejected at vertex " + std::to_string(u));
    if (!(w > 0.0))
        throw InputError("edge weight must be strictly positive, got " +
                         std::to_string(w) + " on edge " + std::to_string(u) + "-" +
                         std::to_string(v));
    if (u > v) std::swap(u, v);

    auto& au = adj_[static_cast<size_t>(u)];
    for (Edge& e : au) {
        if (e.to == v) {
            if (w < e.weight) {
                e.weight = w;
                for (Edge& back : adj_[static_cast<size_t>(v)])
                    if (back.to == u) back.weight = w;
                for (EdgeRecord& rec : edges_)
                    if (rec.u == u && rec.v == v) rec.weight = w;
            }
            return false;
        }
    }
    au.push_back({v, w});
    adj_[static_cast<size_t>(v)].push_back({u, w});
    edges_.push_back({u, v, w});
    return true;
}

bool WeightedGraph::has_edge(Vertex u, Vertex v) const {
    return edge_weight(u, v).has_value();
}

std::optional<double> WeightedGraph::edge_weight(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return std::nullopt;
    for (const Edge& e : adj_[static_cast<size_t>(u)])
        if (e.to == v) return e.weight;
    return std::nullopt;
}

TerminalSet::TerminalSet(const WeightedGraph& g, std::vector<Vertex> terminals) {
    member_.assign(static_cast<size_t>(g.vertex_count()), 0);
    for (Vertex t : terminals) {
        g.check_vertex(t);
        if (member_[static_cast<size_t>(t)])
            throw InputError("duplicate terminal: " + std::to_string(t));
        member_[static_cast<size_t>(t)] = 1;
    }
    std::sort(terminals.begin(), terminals.end());
    vertices_ = std::move(terminals);
}

int TerminalSet::index_of(Vertex v) const {
    if (!contains(v)) return -1;
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    return static_cast<int>(it - vertices_.begin());
}

double path_length(const WeightedGraph& g, const Path& p) {
    double len = 0.0;
    for (size_t i = 0; i + 1 < p.vertices.size(); ++i) {
        auto w = g.edge_weight(p.vertices[i], p.vertices[i + 1]);
        if (!w)
            throw InputError("path uses non-edge " + std::to_string(p.vertices[i]) +
                             "-" + std::to_string(p.vertices[i + 1]));
        len += *w;
    }
    return len;
}

double path_max_edge(const WeightedGraph& g, const Path& p) {
    double mx = 0.0;
    for (size_t i = 0; i + 1 < p.vertices.size(); ++i) {
        auto w = g.edge_weight(p.vertices[i], p.vertices[i + 1]);
        if (!w)
            throw InputError("path uses non-edge " + std::to_string(p.vertices[i]) +
                             "-" + std::to_string(p.vertices[i + 1]));
        mx = std::max(mx, *w);
    }
    return mx;
}

}  // namespace spr
