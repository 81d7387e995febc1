#ifndef SPR_MINOR_HPP
#define SPR_MINOR_HPP

#include <vector>

#include "spr/graph.hpp"

namespace spr {

// Minor of a host graph on its terminal set. Minor vertex i corresponds to
// terminal terminal_of[i] (ascending terminal order), and branch_sets[i] is
// f^-1 of that terminal, sorted by host id.
struct SprMinor {
    WeightedGraph graph;
    std::vector<Vertex> terminal_of;
    std::vector<std::vector<Vertex>> branch_sets;

    [[nodiscard]] int index_of_terminal(Vertex t) const;
};

// Contracts each branch set f^-1(t) into the supernode of t.
//
// Requires f total, f(t) = t on terminals, every branch set connected in g.
// The minor has an edge (t, t') exactly when some g-edge crosses the two
// branch sets, weighted with the exact host distance dist_g(t, t').
// Violations raise MinorValidityError carrying a witness.
SprMinor contract_assignment(const WeightedGraph& g, const TerminalSet& K,
                             const std::vector<Vertex>& assignment);

}  // namespace spr

#endif  // SPR_MINOR_HPP
