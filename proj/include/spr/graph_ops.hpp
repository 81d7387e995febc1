#ifndef SPR_GRAPH_OPS_HPP
#define SPR_GRAPH_OPS_HPP

#include <optional>
#include <vector>

#include "spr/graph.hpp"

namespace spr {

// Keeps exactly the edges with weight <= delta; vertex set unchanged.
WeightedGraph prune_heavy_edges(const WeightedGraph& g, double delta);

struct InducedSubgraph {
    WeightedGraph graph;
    std::vector<Vertex> to_host;  // sub id -> host id, ascending
    std::vector<Vertex> to_sub;   // host id -> sub id, -1 if absent
};

// Subgraph on the given members (duplicates rejected), edges internal to the set.
InducedSubgraph induced_subgraph(const WeightedGraph& g, const std::vector<Vertex>& members);

// Component id per vertex; ids are assigned in order of smallest contained vertex.
std::vector<int> connected_components(const WeightedGraph& g);

enum class DiameterMode { weak, strong };

// Max pairwise distance within S. Weak mode measures in g, strong mode inside
// the induced subgraph on S. nullopt when some pair is unreachable.
std::optional<double> set_diameter(const WeightedGraph& g, const std::vector<Vertex>& S,
                                   DiameterMode mode);

struct NormalizedGraph {
    WeightedGraph graph;
    double factor;        // multiplier applied to weights (1/min_distance)
    double min_distance;  // smallest pairwise distance of the input
};

// Rescales so the minimum pairwise shortest-path distance is exactly 1.
//
// With strictly positive weights that minimum equals the minimum edge weight:
// any path between distinct vertices contains at least one edge, so its length
// is at least the lightest weight, and the lightest edge's endpoints achieve
// it. Weights are divided by that value, which maps the lightest edge to 1.0
// with no rounding. An edgeless graph is returned unchanged with factor 1.
NormalizedGraph normalize_scale(const WeightedGraph& g);

}  // namespace spr

#endif  // SPR_GRAPH_OPS_HPP
