#include "spr/minor.hpp"

#include <algorithm>
#include <queue>

#include "spr/shortest_paths.hpp"

namespace spr {

int SprMinor::index_of_terminal(Vertex t) const {
    auto it = std::lower_bound(terminal_of.begin(), terminal_of.end(), t);
    if (it == terminal_of.end() || *it != t) return -1;
    return static_cast<int>(it - terminal_of.begin());
}

SprMinor contract_assignment(const WeightedGraph& g, const TerminalSet& K,
                             const std::vector<Vertex>& assignment) {
    const int n = g.vertex_count();
    if (K.empty()) throw InputError("terminal set is empty");
    if (static_cast<int>(assignment.size()) != n)
        throw InputError("assignment is not total: " + std::to_string(assignment.size()) +
                         " entries for " + std::to_string(n) + " vertices");

    SprMinor m;
    m.terminal_of = K.vertices();
    const int k = K.size();
    m.branch_sets.resize(static_cast<size_t>(k));

    for (Vertex v = 0; v < n; ++v) {
        Vertex t = assignment[static_cast<size_t>(v)];
        int idx = K.index_of(t);
        if (idx < 0)
            throw InputError("vertex " + std::to_string(v) +
                             " assigned to non-terminal " + std::to_string(t));
        if (K.contains(v) && t != v)
            throw MinorValidityError("terminal " + std::to_string(v) +
                                     " assigned away to " + std::to_string(t));
        m.branch_sets[static_cast<size_t>(idx)].push_back(v);
    }

    // Every branch set must induce a connected subgraph containing its terminal.
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int i = 0; i < k; ++i) {
        const auto& branch = m.branch_sets[static_cast<size_t>(i)];
        Vertex t = m.terminal_of[static_cast<size_t>(i)];
        std::queue<Vertex> q;
        q.push(t);
        seen[static_cast<size_t>(t)] = 1;
        int reached = 1;
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (const Edge& e : g.neighbors(u)) {
                if (assignment[static_cast<size_t>(e.to)] == t &&
                    !seen[static_cast<size_t>(e.to)]) {
                    seen[static_cast<size_t>(e.to)] = 1;
                    ++reached;
                    q.push(e.to);
                }
            }
        }
        if (reached != static_cast<int>(branch.size())) {
            Vertex witness = -1;
            for (Vertex v : branch)
                if (!seen[static_cast<size_t>(v)]) {
                    witness = v;
                    break;
                }
            throw MinorValidityError("branch set of terminal " + std::to_string(t) +
                                     " is disconnected, witness vertex " +
                                     std::to_string(witness));
        }
    }

    // Crossing edges determine the minor's edge set; weights are exact host
    // distances between the two terminals.
    std::vector<std::pair<int, int>> crossing;
    for (const EdgeRecord& e : g.edges()) {
        int iu = K.index_of(assignment[static_cast<size_t>(e.u)]);
        int iv = K.index_of(assignment[static_cast<size_t>(e.v)]);
        if (iu != iv) crossing.emplace_back(std::min(iu, iv), std::max(iu, iv));
    }
    std::sort(crossing.begin(), crossing.end());
    crossing.erase(std::unique(crossing.begin(), crossing.end()), crossing.end());

    m.graph = WeightedGraph(k);
    std::vector<DistanceMap> from_terminal(static_cast<size_t>(k));
    std::vector<char> have(static_cast<size_t>(k), 0);
    for (auto [iu, iv] : crossing) {
        if (!have[static_cast<size_t>(iu)]) {
            from_terminal[static_cast<size_t>(iu)] =
                sssp(g, m.terminal_of[static_cast<size_t>(iu)]);
            have[static_cast<size_t>(iu)] = 1;
        }
        double w = from_terminal[static_cast<size_t>(iu)].at(
            m.terminal_of[static_cast<size_t>(iv)]);
        m.graph.add_edge(iu, iv, w);
    }
    return m;
}

}  // namespace spr
