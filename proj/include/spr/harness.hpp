#ifndef SPR_HARNESS_HPP
#define SPR_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spr/io.hpp"
#include "spr/minor.hpp"

namespace spr {

enum class Family { path, star, grid, tree, random_planar, outerplanar };

struct WeightSpec {
    enum class Kind { unit, uniform, exponential } kind = Kind::unit;
    double lo = 1.0;    // uniform bounds
    double hi = 1.0;
    double mean = 1.0;  // exponential mean
};

struct TerminalSpec {
    enum class Mode { corners, leaves, random_k } mode = Mode::random_k;
    int k = 2;
};

struct InstanceSpec {
    Family family = Family::grid;
    int n = 0;                   // vertex count (non-grid families)
    int width = 0, height = 0;   // grid dimensions
    WeightSpec weights;
    TerminalSpec terminals;
    uint64_t seed = 1;

    [[nodiscard]] std::string name() const;
};

// Deterministic instance for a fixed spec. Families:
//   path, star, grid       - fixed topology, weights drawn per spec
//   tree                   - random recursive tree
//   random-planar          - Delaunay triangulation of seeded uniform points,
//                            always Euclidean edge lengths
//   outerplanar            - cycle plus seeded non-crossing chords
LabeledGraph generate_instance(const InstanceSpec& spec);

struct MinorCheck {
    std::vector<std::string> failures;
    [[nodiscard]] bool pass() const { return failures.empty(); }
};

// Structural audit of a minor against its host: branch sets partition V,
// each contains its terminal and induces a connected subgraph, V(M) = K,
// every minor edge has a crossing host edge, and every minor weight equals
// the exact host distance of its endpoints.
MinorCheck validate_minor(const WeightedGraph& g, const TerminalSet& K, const SprMinor& m);

struct PairDistortion {
    Vertex t1, t2;
    double dg, dm, ratio;
};

struct DistortionOptions {
    bool sample = false;        // false: all terminal pairs
    long long sample_pairs = 10000;
    uint64_t seed = 0;
};

struct DistortionSummary {
    double alpha = 1.0;
    double mean_ratio = 1.0;
    std::vector<PairDistortion> pairs;
    long long pairs_skipped = 0;  // unreachable in both graphs
    std::vector<std::string> flags;
};

// Ratio dist_M / dist_G per terminal pair; alpha is the maximum. A pair
// reachable in g but not in the minor is a structural impossibility for a
// valid minor and raises InvariantError.
DistortionSummary measure_distortion(const WeightedGraph& g, const TerminalSet& K,
                                     const SprMinor& m, const DistortionOptions& opts = {});

// Exhaustive simple-path enumeration, the oracle behind every small fixture.
// Entry [u][v] is the minimum over simple paths of the left-to-right float
// sum, exactly the value Dijkstra computes. Refuses n > cap.
std::vector<std::vector<double>> brute_force_distances(const WeightedGraph& g, int cap = 10);

// Necessary condition m <= 3n-6 (n >= 3); cheap prefilter.
bool planar_by_euler_bound(const WeightedGraph& g);

// Full combinatorial planarity test.
bool is_planar(const WeightedGraph& g);

}  // namespace spr

#endif  // SPR_HARNESS_HPP
