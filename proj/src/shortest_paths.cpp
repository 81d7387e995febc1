#include "spr/shortest_paths.hpp"

#include <algorithm>
#include <queue>
#include <utility>

namespace spr {

namespace {

using HeapItem = std::pair<double, Vertex>;
using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

DistanceMap run_dijkstra(const WeightedGraph& g, const std::vector<Vertex>& sources,
                         const std::vector<char>* alive, double radius) {
    DistanceMap dm(g.vertex_count());
    auto& dist = dm.mutable_dist();
    auto& parent = dm.mutable_parent();
    MinHeap heap;
    for (Vertex s : sources) {
        g.check_vertex(s);
        if (alive && !(*alive)[static_cast<size_t>(s)])
            throw InvariantError("masked search started outside the mask at vertex " +
                                 std::to_string(s));
        dist[static_cast<size_t>(s)] = 0.0;
        heap.emplace(0.0, s);
    }
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[static_cast<size_t>(u)]) continue;
        for (const Edge& e : g.neighbors(u)) {
            if (alive && !(*alive)[static_cast<size_t>(e.to)]) continue;
            double nd = d + e.weight;
            if (nd > radius) continue;
            if (nd < dist[static_cast<size_t>(e.to)]) {
                dist[static_cast<size_t>(e.to)] = nd;
                parent[static_cast<size_t>(e.to)] = u;
                heap.emplace(nd, e.to);
            }
        }
    }
    return dm;
}

}  // namespace

DistanceMap sssp(const WeightedGraph& g, Vertex source) {
    return run_dijkstra(g, {source}, nullptr, kUnreached);
}

DistanceMap sssp_bounded(const WeightedGraph& g, Vertex source, double radius) {
    return run_dijkstra(g, {source}, nullptr, radius);
}

DistanceMap sssp_masked(const WeightedGraph& g, Vertex source,
                        const std::vector<char>& alive, double radius) {
    return run_dijkstra(g, {source}, &alive, radius);
}

DistanceMap dist_to_set(const WeightedGraph& g, const std::vector<Vertex>& sources) {
    if (sources.empty()) throw InputError("dist_to_set needs at least one source");
    return run_dijkstra(g, sources, nullptr, kUnreached);
}

Path extract_path(const DistanceMap& dm, Vertex target) {
    if (!dm.reachable(target))
        throw InvariantError("no path to vertex " + std::to_string(target));
    Path p;
    for (Vertex v = target; v != -1; v = dm.parent(v))
        p.vertices.push_back(v);
    std::reverse(p.vertices.begin(), p.vertices.end());
    return p;
}

}  // namespace spr
