#include "spr/clustering.hpp"

#include <algorithm>
#include <queue>

#include "spr/graph_ops.hpp"
#include "spr/rng.hpp"
#include "spr/shortest_paths.hpp"

namespace spr {

namespace {

uint64_t pair_key(int a, int b) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
           static_cast<uint64_t>(static_cast<uint32_t>(b));
}

bool lex_less(const CrossingEdge& a, const CrossingEdge& b) {
    if (a.from != b.from) return a.from < b.from;
    return a.to < b.to;
}

// Eccentricity search from one member, restricted to the cluster. Returns
// the farthest distance, or nullopt when the cluster is internally
// disconnected.
std::optional<double> cluster_ecc(const WeightedGraph& g, const std::vector<Vertex>& members,
                                  Vertex source, std::vector<char>& scratch_mask) {
    for (Vertex v : members) scratch_mask[static_cast<size_t>(v)] = 1;
    DistanceMap dm = sssp_masked(g, source, scratch_mask);
    double ecc = 0.0;
    bool ok = true;
    for (Vertex v : members) {
        if (!dm.reachable(v)) {
            ok = false;
            break;
        }
        ecc = std::max(ecc, dm.at(v));
    }
    for (Vertex v : members) scratch_mask[static_cast<size_t>(v)] = 0;
    if (!ok) return std::nullopt;
    return ecc;
}

// Exact strong diameter of one cluster; nullopt when disconnected.
std::optional<double> cluster_strong_diameter(const WeightedGraph& g,
                                              const std::vector<Vertex>& members,
                                              std::vector<char>& scratch_mask) {
    double diam = 0.0;
    for (Vertex s : members) {
        auto ecc = cluster_ecc(g, members, s, scratch_mask);
        if (!ecc) return std::nullopt;
        diam = std::max(diam, *ecc);
    }
    return diam;
}

Clustering carve(const WeightedGraph& g, double delta, const std::vector<Vertex>& order) {
    if (!(delta > 0.0)) throw InputError("clustering budget delta must be positive");
    const int n = g.vertex_count();
    Clustering c;
    c.delta = delta;
    c.cluster_of.assign(static_cast<size_t>(n), -1);
    std::vector<char> alive(static_cast<size_t>(n), 1);
    const double radius = delta * 0.5;
    for (Vertex center : order) {
        if (!alive[static_cast<size_t>(center)]) continue;
        DistanceMap ball = sssp_masked(g, center, alive, radius);
        std::vector<Vertex> members;
        double far = 0.0;
        for (Vertex v = 0; v < n; ++v) {
            if (ball.reachable(v)) {
                members.push_back(v);
                far = std::max(far, ball.at(v));
            }
        }
        int id = c.cluster_count();
        for (Vertex v : members) {
            c.cluster_of[static_cast<size_t>(v)] = id;
            alive[static_cast<size_t>(v)] = 0;
        }
        c.members.push_back(std::move(members));
        // Any two ball members connect through the center within the ball.
        c.diameter_bound.push_back(2.0 * far);
    }
    return c;
}

}  // namespace

Clustering ball_carving(const WeightedGraph& g, double delta, uint64_t seed) {
    const int n = g.vertex_count();
    std::vector<Vertex> order(static_cast<size_t>(n));
    for (Vertex v = 0; v < n; ++v) order[static_cast<size_t>(v)] = v;
    Rng rng(seed, "carve-order");
    rng.shuffle(order);
    return carve(g, delta, order);
}

Clustering ball_carving_ordered(const WeightedGraph& g, double delta,
                                const std::vector<Vertex>& order) {
    const int n = g.vertex_count();
    if (static_cast<int>(order.size()) != n)
        throw InputError("carving order must list every vertex exactly once");
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (Vertex v : order) {
        g.check_vertex(v);
        if (seen[static_cast<size_t>(v)])
            throw InputError("carving order repeats vertex " + std::to_string(v));
        seen[static_cast<size_t>(v)] = 1;
    }
    return carve(g, delta, order);
}

ClusterGraph::ClusterGraph(const WeightedGraph& g, const Clustering& c) {
    const int n = g.vertex_count();
    if (static_cast<int>(c.cluster_of.size()) != n)
        throw InputError("clustering covers " + std::to_string(c.cluster_of.size()) +
                         " vertices but the graph has " + std::to_string(n));
    const int m = c.cluster_count();
    for (Vertex v = 0; v < n; ++v) {
        int id = c.cluster_of[static_cast<size_t>(v)];
        if (id < 0 || id >= m)
            throw InputError("vertex " + std::to_string(v) +
                             " has no valid cluster in the cluster graph input");
    }
    adj_.resize(static_cast<size_t>(m));
    for (const EdgeRecord& e : g.edges()) {
        int cu = c.cluster_of[static_cast<size_t>(e.u)];
        int cv = c.cluster_of[static_cast<size_t>(e.v)];
        if (cu == cv) continue;
        CrossingEdge fwd{e.u, e.v, e.weight};
        CrossingEdge rev{e.v, e.u, e.weight};
        auto [it_f, new_f] = crossing_.try_emplace(pair_key(cu, cv), fwd);
        if (!new_f && lex_less(fwd, it_f->second)) it_f->second = fwd;
        auto [it_r, new_r] = crossing_.try_emplace(pair_key(cv, cu), rev);
        if (!new_r && lex_less(rev, it_r->second)) it_r->second = rev;
        if (new_f) {
            adj_[static_cast<size_t>(cu)].push_back(cv);
            adj_[static_cast<size_t>(cv)].push_back(cu);
        }
    }
    for (auto& nb : adj_) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
}

const std::vector<int>& ClusterGraph::neighbors(int cluster) const {
    if (cluster < 0 || cluster >= cluster_count())
        throw InputError("cluster id out of range: " + std::to_string(cluster));
    return adj_[static_cast<size_t>(cluster)];
}

std::optional<CrossingEdge> ClusterGraph::crossing_edge(int from_cluster,
                                                        int to_cluster) const {
    auto it = crossing_.find(pair_key(from_cluster, to_cluster));
    if (it == crossing_.end()) return std::nullopt;
    return it->second;
}

ClusterGraph cluster_graph(const WeightedGraph& g, const Clustering& c) {
    return ClusterGraph(g, c);
}

std::optional<std::vector<int>> hop_path(const ClusterGraph& cg, int a, int b) {
    if (a < 0 || a >= cg.cluster_count() || b < 0 || b >= cg.cluster_count())
        throw InputError("cluster id out of range in hop query");
    if (a == b) return std::vector<int>{a};
    std::vector<int> parent(static_cast<size_t>(cg.cluster_count()), -2);
    parent[static_cast<size_t>(a)] = -1;
    std::queue<int> q;
    q.push(a);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : cg.neighbors(u)) {
            if (parent[static_cast<size_t>(w)] != -2) continue;
            parent[static_cast<size_t>(w)] = u;
            if (w == b) {
                std::vector<int> path;
                for (int x = b; x != -1; x = parent[static_cast<size_t>(x)])
                    path.push_back(x);
                std::reverse(path.begin(), path.end());
                return path;
            }
            q.push(w);
        }
    }
    return std::nullopt;
}

std::optional<int> hop_distance(const ClusterGraph& cg, int a, int b) {
    auto path = hop_path(cg, a, b);
    if (!path) return std::nullopt;
    return static_cast<int>(path->size()) - 1;
}

ShortcutReport verify_shortcut(const WeightedGraph& g, const Clustering& c, double delta,
                               const ShortcutOptions& opts) {
    if (!(delta > 0.0)) throw InputError("delta must be positive");
    const int n = g.vertex_count();
    validate_clustering(g, c, delta, false);

    ShortcutReport rep;
    rep.delta = delta;

    // Exact strong diameters, with a cheap certified path for large clusters
    // under a source budget.
    std::vector<char> scratch(static_cast<size_t>(n), 0);
    double max_diam = 0.0;
    bool all_connected = true;
    for (int i = 0; i < c.cluster_count(); ++i) {
        const auto& members = c.members[static_cast<size_t>(i)];
        std::optional<double> diam;
        if (opts.max_sources > 0 && static_cast<int>(members.size()) > 64) {
            auto ecc = cluster_ecc(g, members, members.front(), scratch);
            if (ecc && 2.0 * *ecc <= delta) {
                diam = 2.0 * *ecc;  // certified upper bound, within budget
            } else {
                diam = cluster_strong_diameter(g, members, scratch);
            }
        } else {
            diam = cluster_strong_diameter(g, members, scratch);
        }
        if (!diam) {
            all_connected = false;
            rep.violations.push_back("cluster " + std::to_string(i) +
                                     " is internally disconnected");
        } else {
            max_diam = std::max(max_diam, *diam);
            if (*diam > delta)
                rep.violations.push_back("cluster " + std::to_string(i) +
                                         " strong diameter " + std::to_string(*diam) +
                                         " exceeds delta " + std::to_string(delta));
        }
    }
    if (all_connected) rep.max_strong_diameter = max_diam;

    // Hop ratios over vertex pairs in distinct clusters.
    ClusterGraph cg(g, c);
    std::vector<Vertex> sources;
    bool sampled = opts.max_sources > 0 && opts.max_sources < n;
    if (sampled) {
        Rng rng(opts.seed, "shortcut-sources");
        auto picks = rng.sample_indices(n, opts.max_sources);
        sources.assign(picks.begin(), picks.end());
        std::sort(sources.begin(), sources.end());
    } else {
        sources.resize(static_cast<size_t>(n));
        for (Vertex v = 0; v < n; ++v) sources[static_cast<size_t>(v)] = v;
    }
    std::vector<char> is_source(static_cast<size_t>(n), 0);
    for (Vertex s : sources) is_source[static_cast<size_t>(s)] = 1;

    std::unordered_map<int, std::vector<int>> hop_cache;
    auto hops_from = [&](int cluster) -> const std::vector<int>& {
        auto it = hop_cache.find(cluster);
        if (it != hop_cache.end()) return it->second;
        std::vector<int> h(static_cast<size_t>(cg.cluster_count()), -1);
        std::queue<int> q;
        h[static_cast<size_t>(cluster)] = 0;
        q.push(cluster);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : cg.neighbors(u)) {
                if (h[static_cast<size_t>(w)] == -1) {
                    h[static_cast<size_t>(w)] = h[static_cast<size_t>(u)] + 1;
                    q.push(w);
                }
            }
        }
        return hop_cache.emplace(cluster, std::move(h)).first->second;
    };

    for (Vertex u : sources) {
        DistanceMap dm = sssp(g, u);
        int cu = c.cluster_of[static_cast<size_t>(u)];
        const std::vector<int>& hops = hops_from(cu);
        for (Vertex v = 0; v < n; ++v) {
            if (v == u) continue;
            if (!sampled && v < u) continue;
            if (sampled && is_source[static_cast<size_t>(v)] && v < u) continue;
            auto d = dm.get(v);
            if (!d) continue;
            int cv = c.cluster_of[static_cast<size_t>(v)];
            if (cu == cv) continue;
            ++rep.pairs_checked;
            int h = hops[static_cast<size_t>(cv)];
            if (h < 0) {
                rep.violations.push_back(
                    "clusters of vertices " + std::to_string(u) + " and " +
                    std::to_string(v) +
                    " are disconnected in the cluster graph despite a host path");
                continue;
            }
            rep.worst_hop = std::max(rep.worst_hop, h);
            double ratio = static_cast<double>(h) * delta / std::max(*d, delta);
            rep.realized_kappa = std::max(rep.realized_kappa, ratio);
        }
    }
    return rep;
}

ProviderRegistry& ProviderRegistry::instance() {
    static ProviderRegistry reg = [] {
        ProviderRegistry r;
        r.register_provider("ball-carving", [](const WeightedGraph& g, double delta,
                                               uint64_t seed) {
            return ball_carving(g, delta, seed);
        });
        return r;
    }();
    return reg;
}

void ProviderRegistry::register_provider(const std::string& name, ClusteringProvider fn) {
    if (!fn) throw InputError("null clustering provider: " + name);
    providers_[name] = std::move(fn);
}

ClusteringProvider ProviderRegistry::get(const std::string& name) const {
    auto it = providers_.find(name);
    if (it == providers_.end())
        throw InputError("unknown clustering provider: " + name);
    return it->second;
}

std::vector<std::string> ProviderRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(providers_.size());
    for (const auto& [name, fn] : providers_) out.push_back(name);
    std::sort(out.begin(), out.end());
    return out;
}

void validate_clustering(const WeightedGraph& g, const Clustering& c, double delta,
                         bool exact_diameter) {
    const int n = g.vertex_count();
    if (static_cast<int>(c.cluster_of.size()) != n)
        throw ProviderError("clustering covers " + std::to_string(c.cluster_of.size()) +
                            " vertices, graph has " + std::to_string(n));
    const int m = c.cluster_count();
    std::vector<long long> seen_count(static_cast<size_t>(m), 0);
    for (Vertex v = 0; v < n; ++v) {
        int id = c.cluster_of[static_cast<size_t>(v)];
        if (id < 0 || id >= m)
            throw ProviderError("vertex " + std::to_string(v) + " left unclustered");
        ++seen_count[static_cast<size_t>(id)];
    }
    std::vector<char> scratch(static_cast<size_t>(n), 0);
    for (int i = 0; i < m; ++i) {
        const auto& members = c.members[static_cast<size_t>(i)];
        if (members.empty()) throw ProviderError("cluster " + std::to_string(i) + " is empty");
        if (static_cast<long long>(members.size()) != seen_count[static_cast<size_t>(i)])
            throw ProviderError("cluster " + std::to_string(i) +
                                " member list does not match the vertex labels");
        if (!std::is_sorted(members.begin(), members.end()))
            throw ProviderError("cluster " + std::to_string(i) + " member list not sorted");
        for (size_t j = 1; j < members.size(); ++j)
            if (members[j] == members[j - 1])
                throw ProviderError("cluster " + std::to_string(i) +
                                    " lists a vertex twice: " + std::to_string(members[j]));
        for (Vertex v : members) {
            g.check_vertex(v);
            if (c.cluster_of[static_cast<size_t>(v)] != i)
                throw ProviderError("vertex " + std::to_string(v) +
                                    " listed in cluster " + std::to_string(i) +
                                    " but labeled " +
                                    std::to_string(c.cluster_of[static_cast<size_t>(v)]));
        }

        // One in-cluster search certifies connectivity and yields a cheap
        // diameter bound; exact recomputation only where the bound is not
        // decisive or exactness was requested.
        auto ecc = cluster_ecc(g, members, members.front(), scratch);
        if (!ecc)
            throw ProviderError("cluster " + std::to_string(i) +
                                " does not induce a connected subgraph");
        bool certified =
            !exact_diameter &&
            ((static_cast<size_t>(i) < c.diameter_bound.size() &&
              c.diameter_bound[static_cast<size_t>(i)] >= 0.0 &&
              c.diameter_bound[static_cast<size_t>(i)] <= delta) ||
             2.0 * *ecc <= delta);
        if (!certified) {
            auto diam = cluster_strong_diameter(g, members, scratch);
            if (!diam || *diam > delta)
                throw ProviderError("cluster " + std::to_string(i) +
                                    " strong diameter exceeds the budget " +
                                    std::to_string(delta));
        }
    }
}

Clustering run_provider(const std::string& name, const WeightedGraph& g, double delta,
                        uint64_t seed) {
    ClusteringProvider fn = ProviderRegistry::instance().get(name);
    Clustering c = fn(g, delta, seed);
    c.delta = delta;
    validate_clustering(g, c, delta, false);
    return c;
}

}  // namespace spr
