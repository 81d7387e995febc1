// Boost's planarity test lives alone in this file; its headers are heavy
// and nothing else needs them.
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "spr/harness.hpp"

namespace spr {

bool is_planar(const WeightedGraph& g) {
    if (!planar_by_euler_bound(g)) return false;
    using BoostGraph =
        boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BoostGraph bg(static_cast<size_t>(g.vertex_count()));
    for (const EdgeRecord& e : g.edges())
        boost::add_edge(static_cast<size_t>(e.u), static_cast<size_t>(e.v), bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

}  // namespace spr
