#include "spr/spr.hpp"

#include <algorithm>
#include <map>

#include "spr/graph_ops.hpp"
#include "spr/rng.hpp"
#include "spr/scattering.hpp"
#include "spr/shortest_paths.hpp"

namespace spr {

namespace {

bool zeta_sufficient(double zeta, double beta, double tau) {
    return zeta > 3.0 && zeta > beta && zeta > 3.0 + (tau + 2.0) * beta;
}

// scales[j] = zeta^j by cumulative product, so binning, thresholds, claim
// checks, and the termination bound all read the identical float values.
void ensure_scales(AssignmentState& st, int j) {
    while (static_cast<int>(st.scales.size()) <= j)
        st.scales.push_back(st.scales.back() * st.zeta);
}

void check_terminals_per_component(const WeightedGraph& g, const TerminalSet& K) {
    std::vector<int> comp = connected_components(g);
    int comps = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<char> has(static_cast<size_t>(comps), 0);
    for (Vertex t : K.vertices()) has[static_cast<size_t>(comp[static_cast<size_t>(t)])] = 1;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!has[static_cast<size_t>(comp[static_cast<size_t>(v)])])
            throw InputError("component of vertex " + std::to_string(v) +
                             " contains no terminal");
}

void check_branch_connectivity(const WeightedGraph& g, const TerminalSet& K,
                               const std::vector<Vertex>& f) {
    const int n = g.vertex_count();
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<Vertex> stack;
    for (Vertex t : K.vertices()) {
        stack.assign(1, t);
        seen[static_cast<size_t>(t)] = 1;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (const Edge& e : g.neighbors(u)) {
                if (f[static_cast<size_t>(e.to)] == t && !seen[static_cast<size_t>(e.to)]) {
                    seen[static_cast<size_t>(e.to)] = 1;
                    stack.push_back(e.to);
                }
            }
        }
    }
    for (Vertex v = 0; v < n; ++v)
        if (f[static_cast<size_t>(v)] != -1 && !seen[static_cast<size_t>(v)])
            throw InvariantError("branch set of terminal " +
                                 std::to_string(f[static_cast<size_t>(v)]) +
                                 " lost connectivity at vertex " + std::to_string(v));
}

}  // namespace

double derive_zeta(double beta, double tau, std::optional<double> c_override) {
    if (!(beta >= 1.0) || !(tau >= 1.0))
        throw ConfigError("beta and tau must be at least 1");
    if (c_override) {
        double zeta = *c_override * beta * tau;
        if (!zeta_sufficient(zeta, beta, tau))
            throw ConfigError("c override yields zeta " + std::to_string(zeta) +
                              ", below the sufficiency threshold " +
                              std::to_string(3.0 + (tau + 2.0) * beta));
        return zeta;
    }
    return std::max(4.0, (tau + 2.0) * beta + 4.0);
}

std::vector<Vertex> relevant_vertices(const WeightedGraph& g, const TerminalSet& K,
                                      double zeta, int i) {
    if (i < 0) throw InputError("iteration index must be non-negative");
    if (K.empty()) throw InputError("terminal set is empty");
    if (i == 0) return K.vertices();
    double lo = 1.0, hi = zeta;
    for (int j = 1; j < i; ++j) {
        lo = hi;
        hi = hi * zeta;
    }
    DistanceMap dm = dist_to_set(g, K.vertices());
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto d = dm.get(v);
        if (d && lo <= *d && *d < hi) out.push_back(v);
    }
    return out;
}

std::vector<ClusterLevel> level_and_link(const WeightedGraph& g,
                                         const std::vector<std::vector<Vertex>>& clusters,
                                         const std::vector<char>& assigned,
                                         double threshold) {
    const int n = g.vertex_count();
    std::vector<int> cluster_at(static_cast<size_t>(n), -1);
    for (size_t ci = 0; ci < clusters.size(); ++ci)
        for (Vertex v : clusters[ci]) {
            g.check_vertex(v);
            if (assigned[static_cast<size_t>(v)])
                throw InputError("cluster member " + std::to_string(v) +
                                 " is already assigned");
            cluster_at[static_cast<size_t>(v)] = static_cast<int>(ci);
        }

    std::vector<ClusterLevel> out(clusters.size());
    std::vector<Vertex> frontier;
    for (Vertex v = 0; v < n; ++v)
        if (assigned[static_cast<size_t>(v)]) frontier.push_back(v);

    size_t leveled = 0;
    for (int round = 1; leveled < clusters.size() && !frontier.empty(); ++round) {
        // Best (outside, inside) candidate per still-unleveled cluster.
        std::map<int, std::pair<Vertex, Vertex>> candidate;
        for (Vertex v : frontier) {
            for (const Edge& e : g.neighbors(v)) {
                if (e.weight > threshold) continue;
                int ci = cluster_at[static_cast<size_t>(e.to)];
                if (ci < 0 || out[static_cast<size_t>(ci)].level != -1) continue;
                std::pair<Vertex, Vertex> cand{v, e.to};
                auto it = candidate.find(ci);
                if (it == candidate.end() || cand < it->second) candidate[ci] = cand;
            }
        }
        if (candidate.empty()) break;
        frontier.clear();
        for (const auto& [ci, link] : candidate) {
            out[static_cast<size_t>(ci)] = {round, link.first, link.second};
            ++leveled;
            frontier.insert(frontier.end(), clusters[static_cast<size_t>(ci)].begin(),
                            clusters[static_cast<size_t>(ci)].end());
        }
        std::sort(frontier.begin(), frontier.end());
    }
    if (leveled < clusters.size()) {
        for (size_t ci = 0; ci < clusters.size(); ++ci)
            if (out[ci].level == -1)
                throw InvariantError(
                    "cluster containing vertex " + std::to_string(clusters[ci].front()) +
                    " is unreachable through edges of weight <= " +
                    std::to_string(threshold));
    }
    return out;
}

AssignmentState init_assignment(const WeightedGraph& g, const TerminalSet& K, double zeta) {
    if (K.empty()) throw InputError("terminal set is empty");
    AssignmentState st;
    st.zeta = zeta;
    st.scales = {1.0};
    st.f.assign(static_cast<size_t>(g.vertex_count()), -1);
    DistanceMap dm = dist_to_set(g, K.vertices());
    st.dist_to_k.resize(static_cast<size_t>(g.vertex_count()));
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!dm.reachable(v))
            throw InputError("vertex " + std::to_string(v) + " cannot reach any terminal");
        st.dist_to_k[static_cast<size_t>(v)] = dm.at(v);
    }
    for (Vertex t : K.vertices()) {
        st.f[static_cast<size_t>(t)] = t;
        ++st.assigned_count;
        st.trace.push_back({t, 0, t, 0});
    }
    return st;
}

void spr_iteration(const WeightedGraph& g, const TerminalSet& K, AssignmentState& st,
                   const SprConfig& cfg, uint64_t attempt) {
    const int n = g.vertex_count();
    if (st.assigned_count >= n)
        throw InputError("spr_iteration called with no unassigned vertices");

    const int i = st.iteration + 1;
    ensure_scales(st, i);
    const double delta = st.scales[static_cast<size_t>(i - 1)];
    const double hi = st.scales[static_cast<size_t>(i)];

    std::vector<Vertex> unassigned;
    bool bin_hit = false;
    for (Vertex v = 0; v < n; ++v) {
        if (st.f[static_cast<size_t>(v)] != -1) continue;
        unassigned.push_back(v);
        double d = st.dist_to_k[static_cast<size_t>(v)];
        if (delta <= d && d < hi) bin_hit = true;
    }

    IterationStats stats;
    stats.iteration = i;
    stats.delta = delta;
    stats.unassigned_before = static_cast<int>(unassigned.size());

    if (!bin_hit) {
        stats.skipped = true;
        st.stats.push_back(stats);
        st.iteration = i;
        return;
    }

    InducedSubgraph sub = induced_subgraph(g, unassigned);
    uint64_t carve_seed =
        Rng(cfg.seed, "carve", (attempt << 32) | static_cast<uint64_t>(i)).next_u64();
    ScatteringPartition part =
        build_scattering_partition(sub.graph, delta, carve_seed, cfg.provider);
    stats.cluster_count = part.clusters.cluster_count();

    VerifyOptions vopts;
    vopts.max_exhaustive_n = cfg.verify_max_exhaustive;
    vopts.sample_pairs = cfg.verify_sample_pairs;
    vopts.seed = Rng(cfg.seed, "verify", (attempt << 32) | static_cast<uint64_t>(i)).next_u64();
    ScatterReport rep = verify_scattering(sub.graph, part, vopts);
    stats.beta_emp = rep.beta_emp;
    stats.tau_emp = rep.tau_emp;
    stats.pairs_checked = rep.pairs_checked;
    stats.exhaustive = rep.exhaustive;
    for (const ScatterViolation& viol : rep.violations) {
        std::string msg = "iteration " + std::to_string(i) +
                          " scattering violation: " + viol.reason;
        if (cfg.strict) throw InvariantError(msg);
        st.violations.push_back(msg);
    }

    // Clusters holding a relevant vertex, as host-id member lists.
    std::vector<std::vector<Vertex>> selected;
    std::vector<int> selected_ids;
    for (int ci = 0; ci < part.clusters.cluster_count(); ++ci) {
        const auto& members = part.clusters.members[static_cast<size_t>(ci)];
        bool relevant = false;
        std::vector<Vertex> hosts;
        hosts.reserve(members.size());
        for (Vertex sv : members) {
            Vertex hv = sub.to_host[static_cast<size_t>(sv)];
            hosts.push_back(hv);
            double d = st.dist_to_k[static_cast<size_t>(hv)];
            if (delta <= d && d < hi) relevant = true;
        }
        if (relevant) {
            selected.push_back(std::move(hosts));  // ascending: to_host is monotone
            selected_ids.push_back(ci);
        }
    }
    stats.selected_clusters = static_cast<int>(selected.size());

    std::vector<char> assigned_mask(static_cast<size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v)
        if (st.f[static_cast<size_t>(v)] != -1) assigned_mask[static_cast<size_t>(v)] = 1;
    std::vector<ClusterLevel> levels = level_and_link(g, selected, assigned_mask, hi);

    std::vector<size_t> order(selected.size());
    for (size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (levels[a].level != levels[b].level) return levels[a].level < levels[b].level;
        return selected[a].front() < selected[b].front();
    });

    for (size_t j : order) {
        Vertex t = st.f[static_cast<size_t>(levels[j].link_outside)];
        if (t == -1)
            throw InvariantError("linking vertex " +
                                 std::to_string(levels[j].link_outside) +
                                 " read before assignment at level " +
                                 std::to_string(levels[j].level));
        for (Vertex v : selected[j]) {
            st.f[static_cast<size_t>(v)] = t;
            ++st.assigned_count;
            ++stats.assigned;
            st.trace.push_back({v, i, t, levels[j].level});
        }
    }

    st.stats.push_back(stats);
    st.iteration = i;

    if (cfg.strict) {
        for (Vertex v = 0; v < n; ++v)
            if (st.dist_to_k[static_cast<size_t>(v)] < hi &&
                st.f[static_cast<size_t>(v)] == -1)
                throw InvariantError("coverage broken: vertex " + std::to_string(v) +
                                     " at distance " +
                                     std::to_string(st.dist_to_k[static_cast<size_t>(v)]) +
                                     " unassigned after iteration " + std::to_string(i));
        check_branch_connectivity(g, K, st.f);
    }
}

SprSolution run_spr(const WeightedGraph& g, const TerminalSet& K, const SprConfig& cfg) {
    if (K.empty()) throw InputError("terminal set is empty");
    check_terminals_per_component(g, K);

    NormalizedGraph norm = normalize_scale(g);
    const WeightedGraph& gn = norm.graph;

    SprSolution sol;
    sol.beta = cfg.beta;
    sol.tau = cfg.tau;
    sol.scale_factor = norm.factor;
    sol.min_distance = norm.min_distance;

    double beta = cfg.beta;
    double tau = cfg.tau;
    AssignmentState st;
    for (int attempt = 0;; ++attempt) {
        double zeta = derive_zeta(beta, tau, attempt == 0 ? cfg.c_override : std::nullopt);
        st = init_assignment(gn, K, zeta);
        st.warnings = std::move(sol.warnings);
        st.violations = std::move(sol.violations);

        double maxdist = 0.0;
        for (double d : st.dist_to_k) maxdist = std::max(maxdist, d);
        int tb = 0;
        while (st.scales[static_cast<size_t>(tb)] < maxdist) {
            ensure_scales(st, tb + 1);
            ++tb;
        }
        sol.termination_bound = tb + 1;
        sol.zeta = zeta;
        sol.beta = beta;
        sol.tau = tau;

        while (st.assigned_count < gn.vertex_count()) {
            if (st.iteration >= cfg.max_iterations)
                throw InvariantError("no termination after " +
                                     std::to_string(cfg.max_iterations) + " iterations");
            if (st.iteration >= sol.termination_bound)
                throw InvariantError("termination bound " +
                                     std::to_string(sol.termination_bound) +
                                     " exceeded with vertices still unassigned");
            spr_iteration(gn, K, st, cfg, static_cast<uint64_t>(attempt));
        }

        int tau_run = 0;
        double beta_run = 0.0;
        for (const IterationStats& it : st.stats) {
            tau_run = std::max(tau_run, it.tau_emp);
            beta_run = std::max(beta_run, it.beta_emp);
        }
        sol.tau_emp = tau_run;
        sol.beta_emp = beta_run;
        sol.escalations = attempt;
        sol.warnings = std::move(st.warnings);
        sol.violations = std::move(st.violations);

        if (static_cast<double>(tau_run) > tau) {
            if (attempt < cfg.max_escalations) {
                sol.warnings.push_back("measured tau " + std::to_string(tau_run) +
                                       " exceeds configured tau " + std::to_string(tau) +
                                       "; re-deriving zeta and restarting");
                tau = static_cast<double>(tau_run);
                continue;
            }
            std::string msg = "measured tau " + std::to_string(tau_run) +
                              " still exceeds configured tau " + std::to_string(tau) +
                              " after " + std::to_string(attempt) + " escalations";
            if (cfg.strict) throw InvariantError(msg);
            sol.violations.push_back(msg);
        }
        if (beta_run > beta)
            sol.warnings.push_back("measured beta " + std::to_string(beta_run) +
                                   " exceeds configured beta " + std::to_string(beta));
        break;
    }

    sol.iterations_run = st.iteration;
    sol.assignment = st.f;
    sol.iteration_stats = std::move(st.stats);
    sol.trace = std::move(st.trace);
    sol.minor = contract_assignment(g, K, sol.assignment);

    if (cfg.check_claims) {
        auto window = check_assignment_window(sol.trace, gn, K, sol.zeta);
        auto radius = check_assignment_radius(sol.assignment, gn, K, sol.zeta,
                                              std::max(1.0, static_cast<double>(sol.tau_emp)));
        sol.claim_violations.insert(sol.claim_violations.end(), window.begin(), window.end());
        sol.claim_violations.insert(sol.claim_violations.end(), radius.begin(), radius.end());
        if (cfg.strict && !sol.claim_violations.empty())
            throw InvariantError(sol.claim_violations.front());
    }
    return sol;
}

std::vector<std::string> check_assignment_window(const std::vector<TraceRecord>& trace,
                                                 const WeightedGraph& g,
                                                 const TerminalSet& K, double zeta) {
    std::vector<std::string> out;
    if (trace.empty()) return out;
    DistanceMap dm = dist_to_set(g, K.vertices());
    int max_iter = 0;
    for (const TraceRecord& r : trace) max_iter = std::max(max_iter, r.iteration);
    std::vector<double> scales{1.0};
    for (int j = 1; j <= max_iter + 1; ++j) scales.push_back(scales.back() * zeta);
    for (const TraceRecord& r : trace) {
        if (r.iteration == 0) continue;
        double d = dm.at(r.v);
        double lo = scales[static_cast<size_t>(r.iteration - 1)];
        double hi = scales[static_cast<size_t>(r.iteration + 1)];
        if (!(lo <= d && d < hi))
            out.push_back("window violated at vertex " + std::to_string(r.v) +
                          ": distance " + std::to_string(d) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) +
                          ") for iteration " + std::to_string(r.iteration));
    }
    return out;
}

std::vector<std::string> check_assignment_radius(const std::vector<Vertex>& f,
                                                 const WeightedGraph& g,
                                                 const TerminalSet& K, double zeta,
                                                 double tau) {
    std::vector<std::string> out;
    if (static_cast<int>(f.size()) != g.vertex_count())
        throw InputError("assignment size mismatch");
    DistanceMap dk = dist_to_set(g, K.vertices());
    const double factor = 3.0 * tau * zeta * zeta;
    for (Vertex t : K.vertices()) {
        DistanceMap dt = sssp(g, t);
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            if (f[static_cast<size_t>(v)] != t) continue;
            double dvf = dt.at(v);
            double bound = factor * dk.at(v);
            if (dvf > bound)
                out.push_back("radius violated at vertex " + std::to_string(v) +
                              ": dist to assigned terminal " + std::to_string(dvf) +
                              " exceeds " + std::to_string(bound));
        }
    }
    return out;
}

}  // namespace spr
