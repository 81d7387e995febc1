#ifndef SPR_CLUSTERING_HPP
#define SPR_CLUSTERING_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spr/graph.hpp"

namespace spr {

// Partition of a vertex set into connected clusters.
struct Clustering {
    std::vector<int> cluster_of;                // vertex -> cluster id
    std::vector<std::vector<Vertex>> members;   // cluster id -> sorted vertices
    std::vector<double> diameter_bound;         // certified strong-diameter upper bound
    double delta = 0.0;                         // budget the clustering was built for

    [[nodiscard]] int cluster_count() const { return static_cast<int>(members.size()); }
};

// Greedy low-diameter clustering: visit vertices in a seed-derived random
// order; each still-unclustered visit grows a shortest-path ball of radius
// delta/2 inside the subgraph induced on unclustered vertices and emits it
// as one cluster.
//
// Shortest-path trees of the ball stay inside it, so every cluster is
// connected and its strong diameter is certified <= 2 * (delta/2) = delta;
// the doubling is exact in floating point, so the certificate cannot drift
// past the budget.
Clustering ball_carving(const WeightedGraph& g, double delta, uint64_t seed);

// Same greedy carve with an explicit visiting order (must be a permutation
// of the vertex ids). ball_carving delegates here after shuffling.
Clustering ball_carving_ordered(const WeightedGraph& g, double delta,
                                const std::vector<Vertex>& order);

// Crossing edge between an ordered pair of clusters: from lives in the first
// cluster, to in the second.
struct CrossingEdge {
    Vertex from;
    Vertex to;
    double weight;
};

// Contraction of a clustering: one supernode per cluster, unweighted edges
// where host edges cross. Also caches, for each ordered supernode pair, the
// lexicographically smallest crossing edge, the deterministic pick used by
// scattered-path construction.
class ClusterGraph {
public:
    ClusterGraph(const WeightedGraph& g, const Clustering& c);

    [[nodiscard]] int cluster_count() const { return static_cast<int>(adj_.size()); }
    [[nodiscard]] const std::vector<int>& neighbors(int cluster) const;
    [[nodiscard]] std::optional<CrossingEdge> crossing_edge(int from_cluster,
                                                            int to_cluster) const;

private:
    std::vector<std::vector<int>> adj_;  // sorted ascending
    std::unordered_map<uint64_t, CrossingEdge> crossing_;
};

ClusterGraph cluster_graph(const WeightedGraph& g, const Clustering& c);

// BFS hop count between supernodes; nullopt when disconnected.
std::optional<int> hop_distance(const ClusterGraph& cg, int a, int b);

// Hop-shortest supernode path a..b. BFS explores ascending cluster ids, so
// the path is deterministic. nullopt when disconnected.
std::optional<std::vector<int>> hop_path(const ClusterGraph& cg, int a, int b);

struct ShortcutOptions {
    // 0 means every vertex is used as a source; otherwise that many sources
    // are drawn by seeded sample.
    int max_sources = 0;
    uint64_t seed = 0;
};

struct ShortcutReport {
    double delta = 0.0;
    // Largest exact strong diameter over clusters; unset when some cluster
    // is internally disconnected (which is itself a violation).
    std::optional<double> max_strong_diameter;
    int worst_hop = 0;
    double realized_kappa = 0.0;
    long long pairs_checked = 0;
    std::vector<std::string> violations;

    [[nodiscard]] bool pass() const { return violations.empty(); }
};

// Checks the clustering against its diameter budget and measures how well
// the cluster graph shortcuts the metric: for vertex pairs in distinct
// clusters, kappa = max over pairs of hop(C_u, C_v) * delta / max(dist, delta).
ShortcutReport verify_shortcut(const WeightedGraph& g, const Clustering& c, double delta,
                               const ShortcutOptions& opts = {});

using ClusteringProvider =
    std::function<Clustering(const WeightedGraph&, double, uint64_t)>;

// Named clustering providers. "ball-carving" is registered by default.
class ProviderRegistry {
public:
    static ProviderRegistry& instance();

    void register_provider(const std::string& name, ClusteringProvider fn);
    [[nodiscard]] ClusteringProvider get(const std::string& name) const;
    [[nodiscard]] std::vector<std::string> names() const;

private:
    std::unordered_map<std::string, ClusteringProvider> providers_;
};

// Structural checks every provider result must pass: ids in range, members
// lists consistent with cluster_of, full partition, connected clusters.
// When exact_diameter is set the strong diameter of every cluster is
// recomputed and checked against delta; otherwise the cached certificates
// are trusted when present (<= delta) and recomputed only where absent.
// Violations raise ProviderError.
void validate_clustering(const WeightedGraph& g, const Clustering& c, double delta,
                         bool exact_diameter);

// Look up, run, and validate a provider.
Clustering run_provider(const std::string& name, const WeightedGraph& g, double delta,
                        uint64_t seed);

}  // namespace spr

#endif  // SPR_CLUSTERING_HPP
