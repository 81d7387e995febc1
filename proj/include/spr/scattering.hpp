#ifndef SPR_SCATTERING_HPP
#define SPR_SCATTERING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spr/clustering.hpp"
#include "spr/graph.hpp"

namespace spr {

// Clustering of the pruned graph G' (edges <= delta), packaged with
// everything scattered-path construction needs.
struct ScatteringPartition {
    Clustering clusters;
    WeightedGraph pruned;
    double delta = 0.0;
    // Filled by the verifier when invoked through the mutating overload.
    std::optional<double> beta_emp;
    std::optional<int> tau_emp;
};

// Prunes g to G' and clusters G' with the named provider under budget delta.
ScatteringPartition build_scattering_partition(const WeightedGraph& g, double delta,
                                               uint64_t seed,
                                               const std::string& provider = "ball-carving");

struct ScatteredPath {
    Path path;            // in G'
    double length = 0.0;
    double max_edge = 0.0;
    std::vector<int> clusters;  // distinct cluster ids in visit order
};

// Witness path for one vertex pair: walk the hop-shortest cluster-graph
// route, bridging consecutive clusters by their canonical crossing edge and
// crossing each cluster by a shortest internal path of G'[C].
//
// The result touches exactly the route's clusters, uses only G' edges
// (hence every edge <= delta), and has length at most
// 2 * |clusters| * delta: each internal segment is bounded by the strong
// diameter <= delta and each of the |clusters|-1 crossing edges by delta.
// Throws ScatterInfeasibleError when the endpoints' clusters are not
// connected in the cluster graph.
ScatteredPath scattered_path(const ScatteringPartition& sp, const ClusterGraph& cg,
                             Vertex u, Vertex v);

// Convenience overload that builds the cluster graph on the fly.
ScatteredPath scattered_path(const ScatteringPartition& sp, Vertex u, Vertex v);

struct ScatterViolation {
    Vertex u = -1;  // -1 for cluster-level findings
    Vertex v = -1;
    std::string reason;
};

struct VerifyOptions {
    // Exhaustive pair enumeration up to this many vertices; seeded sampling
    // beyond it.
    int max_exhaustive_n = 2000;
    long long sample_pairs = 10000;
    uint64_t seed = 0;
};

struct ScatterReport {
    double delta = 0.0;
    double beta_emp = 0.0;  // max length/delta over checked pairs
    int tau_emp = 0;        // max clusters touched
    long long pairs_checked = 0;
    bool exhaustive = true;
    // Exact in exhaustive mode; absent under sampling (the diameter property
    // is then certified per cluster instead of measured).
    std::optional<double> max_weak_diameter;
    std::vector<ScatterViolation> violations;

    [[nodiscard]] bool pass() const { return violations.empty(); }
};

// Checks the scattering property: every pair with dist_g(u,v) <= delta must
// admit a scattered path, and each constructed path must satisfy the
// guarantees above. Also re-checks every cluster's weak diameter in g
// against delta. Violations are recorded, never thrown.
ScatterReport verify_scattering(const WeightedGraph& g, const ScatteringPartition& sp,
                                const VerifyOptions& opts = {});

// Same, and stores beta_emp / tau_emp into the partition's slots.
ScatterReport verify_scattering(const WeightedGraph& g, ScatteringPartition& sp,
                                const VerifyOptions& opts);

}  // namespace spr

#endif  // SPR_SCATTERING_HPP
