#include "spr/graph_ops.hpp"

#include <algorithm>
#include <queue>

#include "spr/shortest_paths.hpp"

namespace spr {

WeightedGraph prune_heavy_edges(const WeightedGraph& g, double delta) {
    if (!(delta > 0.0)) throw InputError("pruning threshold must be positive");
    WeightedGraph out(g.vertex_count());
    for (const EdgeRecord& e : g.edges())
        if (e.weight <= delta) out.add_edge(e.u, e.v, e.weight);
    return out;
}

InducedSubgraph induced_subgraph(const WeightedGraph& g, const std::vector<Vertex>& members) {
    InducedSubgraph out;
    out.to_sub.assign(static_cast<size_t>(g.vertex_count()), -1);
    out.to_host = members;
    std::sort(out.to_host.begin(), out.to_host.end());
    for (size_t i = 0; i < out.to_host.size(); ++i) {
        Vertex h = out.to_host[i];
        g.check_vertex(h);
        if (out.to_sub[static_cast<size_t>(h)] != -1)
            throw InputError("duplicate vertex in subgraph member list: " + std::to_string(h));
        out.to_sub[static_cast<size_t>(h)] = static_cast<Vertex>(i);
    }
    out.graph = WeightedGraph(static_cast<int>(out.to_host.size()));
    for (const EdgeRecord& e : g.edges()) {
        Vertex su = out.to_sub[static_cast<size_t>(e.u)];
        Vertex sv = out.to_sub[static_cast<size_t>(e.v)];
        if (su != -1 && sv != -1) out.graph.add_edge(su, sv, e.weight);
    }
    return out;
}

std::vector<int> connected_components(const WeightedGraph& g) {
    std::vector<int> comp(static_cast<size_t>(g.vertex_count()), -1);
    int next = 0;
    std::queue<Vertex> q;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (comp[static_cast<size_t>(s)] != -1) continue;
        comp[static_cast<size_t>(s)] = next;
        q.push(s);
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (const Edge& e : g.neighbors(u)) {
                if (comp[static_cast<size_t>(e.to)] == -1) {
                    comp[static_cast<size_t>(e.to)] = next;
                    q.push(e.to);
                }
            }
        }
        ++next;
    }
    return comp;
}

std::optional<double> set_diameter(const WeightedGraph& g, const std::vector<Vertex>& S,
                                   DiameterMode mode) {
    if (S.empty()) throw InputError("set_diameter over an empty set");
    if (mode == DiameterMode::strong) {
        InducedSubgraph sub = induced_subgraph(g, S);
        std::vector<Vertex> all(sub.to_host.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Vertex>(i);
        return set_diameter(sub.graph, all, DiameterMode::weak);
    }
    double diam = 0.0;
    for (Vertex s : S) {
        DistanceMap dm = sssp(g, s);
        for (Vertex t : S) {
            auto d = dm.get(t);
            if (!d) return std::nullopt;
            diam = std::max(diam, *d);
        }
    }
    return diam;
}

NormalizedGraph normalize_scale(const WeightedGraph& g) {
    NormalizedGraph out;
    if (g.edge_count() == 0) {
        out.graph = g;
        out.factor = 1.0;
        out.min_distance = 1.0;
        return out;
    }
    double dmin = kUnreached;
    for (const EdgeRecord& e : g.edges()) dmin = std::min(dmin, e.weight);
    out.min_distance = dmin;
    out.factor = 1.0 / dmin;
    out.graph = WeightedGraph(g.vertex_count());
    for (const EdgeRecord& e : g.edges())
        out.graph.add_edge(e.u, e.v, e.weight / dmin);
    return out;
}

}  // namespace spr
