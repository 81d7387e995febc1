#ifndef SPR_SHORTEST_PATHS_HPP
#define SPR_SHORTEST_PATHS_HPP

#include <limits>
#include <optional>
#include <vector>

#include "spr/graph.hpp"

namespace spr {

inline constexpr double kUnreached = std::numeric_limits<double>::infinity();

// Distances from one search, with parent pointers for path extraction.
// Unreachable vertices are explicit: at() refuses to hand out a distance
// that does not exist instead of leaking the infinity sentinel.
class DistanceMap {
public:
    DistanceMap() = default;
    explicit DistanceMap(int n)
        : dist_(static_cast<size_t>(n), kUnreached),
          parent_(static_cast<size_t>(n), -1) {}

    [[nodiscard]] int size() const { return static_cast<int>(dist_.size()); }

    [[nodiscard]] bool reachable(Vertex v) const {
        return dist_[static_cast<size_t>(v)] != kUnreached;
    }

    [[nodiscard]] double at(Vertex v) const {
        double d = dist_[static_cast<size_t>(v)];
        if (d == kUnreached)
            throw InvariantError("distance queried for unreachable vertex " +
                                 std::to_string(v));
        return d;
    }

    [[nodiscard]] std::optional<double> get(Vertex v) const {
        double d = dist_[static_cast<size_t>(v)];
        if (d == kUnreached) return std::nullopt;
        return d;
    }

    [[nodiscard]] Vertex parent(Vertex v) const { return parent_[static_cast<size_t>(v)]; }

    // Sentinel-laden raw view for hot loops.
    [[nodiscard]] const std::vector<double>& raw() const { return dist_; }

    std::vector<double>& mutable_dist() { return dist_; }
    std::vector<Vertex>& mutable_parent() { return parent_; }

private:
    std::vector<double> dist_;
    std::vector<Vertex> parent_;
};

// Dijkstra from a single source.
DistanceMap sssp(const WeightedGraph& g, Vertex source);

// Dijkstra that never settles a vertex beyond `radius` (inclusive).
DistanceMap sssp_bounded(const WeightedGraph& g, Vertex source, double radius);

// Dijkstra inside the subgraph induced by alive[v] != 0, optionally bounded.
DistanceMap sssp_masked(const WeightedGraph& g, Vertex source,
                        const std::vector<char>& alive,
                        double radius = kUnreached);

// Multi-source Dijkstra: dist(v, sources) for every v.
DistanceMap dist_to_set(const WeightedGraph& g, const std::vector<Vertex>& sources);

// Walk parent pointers from target back to the search source.
Path extract_path(const DistanceMap& dm, Vertex target);

}  // namespace spr

#endif  // SPR_SHORTEST_PATHS_HPP
