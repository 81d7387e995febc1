#ifndef SPR_SPR_HPP
#define SPR_SPR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spr/graph.hpp"
#include "spr/minor.hpp"

namespace spr {

struct SprConfig {
    double beta = 2.0;  // target scattering stretch
    double tau = 6.0;   // target cluster-intersection count
    std::optional<double> c_override;  // forces zeta = c * beta * tau
    uint64_t seed = 1;
    std::string provider = "ball-carving";
    bool strict = true;        // invariant violations throw instead of warn
    bool check_claims = true;  // evaluate the window and radius checks
    int max_iterations = 64;
    int max_escalations = 2;   // restarts allowed when tau_emp > tau
    // Scattering verification budget per iteration.
    int verify_max_exhaustive = 300;
    long long verify_sample_pairs = 10000;
};

// Scale base for the iteration ladder. Defaults to the smallest value
// satisfying the sufficiency conditions zeta >= 4 and zeta >= (tau+2)*beta+4;
// an explicit c yields zeta = c*beta*tau, validated against zeta > max(3,
// beta) and zeta > 3 + (tau+2)*beta. ConfigError on violation.
double derive_zeta(double beta, double tau, std::optional<double> c_override = {});

// Vertices whose distance to K lies in [zeta^(i-1), zeta^i); i = 0 returns K.
std::vector<Vertex> relevant_vertices(const WeightedGraph& g, const TerminalSet& K,
                                      double zeta, int i);

struct ClusterLevel {
    int level = -1;
    Vertex link_outside = -1;  // linking vertex: already on a leveled side
    Vertex link_inside = -1;   // its neighbor inside the cluster
};

// Levels clusters by BFS from the assigned set over edges of weight <=
// threshold: level j clusters touch a level j-1 cluster (level 0 = assigned
// vertices) through such an edge. The linking pair per cluster is the
// lexicographically smallest (outside, inside) candidate at its level.
// A cluster no round reaches gets an InvariantError with a witness.
std::vector<ClusterLevel> level_and_link(const WeightedGraph& g,
                                         const std::vector<std::vector<Vertex>>& clusters,
                                         const std::vector<char>& assigned,
                                         double threshold);

struct TraceRecord {
    Vertex v;
    int iteration;
    Vertex terminal;
    int level;
};

struct IterationStats {
    int iteration = 0;
    double delta = 0.0;
    int unassigned_before = 0;
    int cluster_count = 0;
    int selected_clusters = 0;
    int assigned = 0;
    double beta_emp = 0.0;
    int tau_emp = 0;
    long long pairs_checked = 0;
    bool exhaustive = true;  // scattering verification mode this iteration
    bool skipped = false;    // no relevant vertices at this scale
};

// Mutable state of the iterative assignment.
struct AssignmentState {
    int iteration = 0;
    std::vector<Vertex> f;  // vertex -> terminal, -1 while unassigned
    int assigned_count = 0;
    std::vector<double> dist_to_k;  // in the graph the state was built for
    std::vector<double> scales;     // scales[i] = zeta^i
    double zeta = 0.0;
    std::vector<TraceRecord> trace;
    std::vector<IterationStats> stats;
    std::vector<std::string> warnings;    // benign notices (escalations, target misses)
    std::vector<std::string> violations;  // invariant breaks recorded in non-strict runs
};

// f_0 = identity on terminals, everything else unassigned.
AssignmentState init_assignment(const WeightedGraph& g, const TerminalSet& K, double zeta);

// One round of the ladder: partition the unassigned subgraph at scale
// zeta^(i-1), keep clusters holding a relevant vertex, level them with
// threshold zeta^i, and assign each cluster to its linking vertex's
// terminal, levels ascending. Throws InputError when nothing is unassigned.
void spr_iteration(const WeightedGraph& g, const TerminalSet& K, AssignmentState& st,
                   const SprConfig& cfg, uint64_t attempt = 0);

struct SprSolution {
    SprMinor minor;
    std::vector<Vertex> assignment;
    double beta = 0.0;   // effective values after any escalation
    double tau = 0.0;
    double zeta = 0.0;
    double scale_factor = 1.0;  // weight multiplier used by normalization
    double min_distance = 1.0;
    int iterations_run = 0;
    int termination_bound = 0;
    int escalations = 0;
    double beta_emp = 0.0;
    int tau_emp = 0;
    std::vector<IterationStats> iteration_stats;
    std::vector<TraceRecord> trace;
    std::vector<std::string> warnings;
    std::vector<std::string> violations;  // empty in strict mode (it throws instead)
    std::vector<std::string> claim_violations;
};

// Full pipeline: validate terminals per component, normalize scale, run the
// ladder to completion (escalating zeta when the measured tau exceeds the
// configured target), contract, and evaluate the window/radius checks.
// In strict mode violations raise InvariantError; otherwise they land in
// warnings/claim_violations.
SprSolution run_spr(const WeightedGraph& g, const TerminalSet& K, const SprConfig& cfg = {});

// Window check: a vertex assigned in iteration i must satisfy
// zeta^(i-1) <= dist(v, K) < zeta^(i+1), distances in g. Iteration-0
// records (terminals) are exempt.
std::vector<std::string> check_assignment_window(const std::vector<TraceRecord>& trace,
                                                 const WeightedGraph& g,
                                                 const TerminalSet& K, double zeta);

// Radius check: dist(v, f(v)) <= 3 * tau * zeta^2 * dist(v, K), distances in g.
std::vector<std::string> check_assignment_radius(const std::vector<Vertex>& f,
                                                 const WeightedGraph& g,
                                                 const TerminalSet& K, double zeta,
                                                 double tau);

}  // namespace spr

#endif  // SPR_SPR_HPP
