#include "spr/harness.hpp"

#include <algorithm>
#include <cmath>

#include "spr/graph_ops.hpp"
#include "spr/rng.hpp"
#include "spr/shortest_paths.hpp"

namespace spr {

namespace {

double draw_weight(const WeightSpec& spec, Rng& rng) {
    switch (spec.kind) {
        case WeightSpec::Kind::unit:
            return 1.0;
        case WeightSpec::Kind::uniform: {
            if (!(spec.lo > 0.0) || !(spec.hi >= spec.lo))
                throw InputError("uniform weights need 0 < lo <= hi");
            return rng.next_real(spec.lo, spec.hi);
        }
        case WeightSpec::Kind::exponential: {
            if (!(spec.mean > 0.0)) throw InputError("exponential weights need mean > 0");
            double u = rng.next_real01();
            double w = -spec.mean * std::log1p(-u);
            return std::max(w, spec.mean * 1e-6);
        }
    }
    throw InputError("unknown weight kind");
}

struct Point {
    double x, y;
};

std::vector<Point> draw_points(int n, uint64_t seed) {
    Rng rng(seed, "points");
    std::vector<Point> pts(static_cast<size_t>(n));
    for (auto& p : pts) {
        p.x = rng.next_real01();
        p.y = rng.next_real01();
    }
    // Deterministic jitter breaks cocircular accidents without changing the
    // distribution in any meaningful way.
    Rng jit(seed, "jitter");
    for (auto& p : pts) {
        p.x += (jit.next_real01() - 0.5) * 1e-9;
        p.y += (jit.next_real01() - 0.5) * 1e-9;
    }
    return pts;
}

// Incremental Bowyer-Watson triangulation over a super-triangle.
std::vector<std::array<int, 3>> delaunay(const std::vector<Point>& pts) {
    std::vector<Point> P = pts;
    const int n = static_cast<int>(pts.size());
    P.push_back({-30.0, -30.0});
    P.push_back({30.0, -30.0});
    P.push_back({0.0, 30.0});
    std::vector<std::array<int, 3>> tris = {{n, n + 1, n + 2}};

    auto orient = [&](int a, int b, int c) {
        return (P[static_cast<size_t>(b)].x - P[static_cast<size_t>(a)].x) *
                   (P[static_cast<size_t>(c)].y - P[static_cast<size_t>(a)].y) -
               (P[static_cast<size_t>(b)].y - P[static_cast<size_t>(a)].y) *
                   (P[static_cast<size_t>(c)].x - P[static_cast<size_t>(a)].x);
    };
    auto in_circumcircle = [&](const std::array<int, 3>& t, int d) {
        int a = t[0], b = t[1], c = t[2];
        if (orient(a, b, c) < 0.0) std::swap(b, c);
        const Point& pa = P[static_cast<size_t>(a)];
        const Point& pb = P[static_cast<size_t>(b)];
        const Point& pc = P[static_cast<size_t>(c)];
        const Point& pd = P[static_cast<size_t>(d)];
        double ax = pa.x - pd.x, ay = pa.y - pd.y;
        double bx = pb.x - pd.x, by = pb.y - pd.y;
        double cx = pc.x - pd.x, cy = pc.y - pd.y;
        double det = (ax * ax + ay * ay) * (bx * cy - by * cx) -
                     (bx * bx + by * by) * (ax * cy - ay * cx) +
                     (cx * cx + cy * cy) * (ax * by - ay * bx);
        return det > 0.0;
    };

    for (int p = 0; p < n; ++p) {
        std::vector<std::array<int, 3>> keep;
        std::vector<std::pair<int, int>> boundary;
        auto add_edge = [&](int a, int b) {
            auto rev = std::make_pair(b, a);
            auto it = std::find(boundary.begin(), boundary.end(), rev);
            if (it != boundary.end())
                boundary.erase(it);  // interior edge shared by two bad triangles
            else
                boundary.emplace_back(a, b);
        };
        for (const auto& t : tris) {
            if (in_circumcircle(t, p)) {
                add_edge(t[0], t[1]);
                add_edge(t[1], t[2]);
                add_edge(t[2], t[0]);
            } else {
                keep.push_back(t);
            }
        }
        for (auto [a, b] : boundary) keep.push_back({a, b, p});
        tris = std::move(keep);
    }

    std::vector<std::array<int, 3>> out;
    for (const auto& t : tris)
        if (t[0] < n && t[1] < n && t[2] < n) out.push_back(t);
    // Triangles touching the super-triangle still certify edges between
    // real points (needed when n = 2), so collect those pairs too.
    for (const auto& t : tris) {
        if (t[0] < n && t[1] < n && t[2] >= n) out.push_back({t[0], t[1], t[0]});
        if (t[1] < n && t[2] < n && t[0] >= n) out.push_back({t[1], t[2], t[1]});
        if (t[2] < n && t[0] < n && t[1] >= n) out.push_back({t[2], t[0], t[2]});
    }
    return out;
}

WeightedGraph gen_random_planar(int n, uint64_t seed, const WeightSpec& wspec) {
    if (wspec.kind != WeightSpec::Kind::unit)
        throw InputError("random-planar weights are Euclidean; use the default weight spec");
    WeightedGraph g(n);
    if (n < 2) return g;
    std::vector<Point> pts = draw_points(n, seed);
    for (const auto& t : delaunay(pts)) {
        int idx[3] = {t[0], t[1], t[2]};
        for (int e = 0; e < 3; ++e) {
            int a = idx[e], b = idx[(e + 1) % 3];
            if (a == b || g.has_edge(a, b)) continue;
            double w = std::hypot(pts[static_cast<size_t>(a)].x - pts[static_cast<size_t>(b)].x,
                                  pts[static_cast<size_t>(a)].y - pts[static_cast<size_t>(b)].y);
            g.add_edge(a, b, w);
        }
    }
    return g;
}

WeightedGraph gen_outerplanar(int n, uint64_t seed, const WeightSpec& wspec) {
    WeightedGraph g(n);
    Rng wrng(seed, "weights");
    if (n == 2) {
        g.add_edge(0, 1, draw_weight(wspec, wrng));
        return g;
    }
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n, draw_weight(wspec, wrng));
    // Recursive fan: non-crossing chords over polygon ranges, kept with
    // probability 1/2 each.
    Rng crng(seed, "chords");
    std::vector<std::pair<int, int>> ranges{{0, n - 1}};
    while (!ranges.empty()) {
        auto [i, j] = ranges.back();
        ranges.pop_back();
        if (j - i < 2) continue;
        int m = i + 1 + static_cast<int>(crng.next_below(static_cast<uint64_t>(j - i - 1)));
        bool keep_left = j - m >= 2 && crng.next_real01() < 0.5;
        bool keep_right = m - i >= 2 && crng.next_real01() < 0.5;
        if (keep_right && !g.has_edge(i, m)) g.add_edge(i, m, draw_weight(wspec, wrng));
        if (keep_left && !g.has_edge(m, j)) g.add_edge(m, j, draw_weight(wspec, wrng));
        ranges.emplace_back(i, m);
        ranges.emplace_back(m, j);
    }
    return g;
}

std::vector<Vertex> pick_terminals(const WeightedGraph& g, const InstanceSpec& spec) {
    const int n = g.vertex_count();
    if (n == 0) throw InputError("cannot pick terminals in an empty graph");
    switch (spec.terminals.mode) {
        case TerminalSpec::Mode::corners: {
            if (spec.family == Family::grid) {
                int w = spec.width, h = spec.height;
                std::vector<Vertex> c{0, w - 1, (h - 1) * w, h * w - 1};
                std::sort(c.begin(), c.end());
                c.erase(std::unique(c.begin(), c.end()), c.end());
                return c;
            }
            if (spec.family == Family::path)
                return n == 1 ? std::vector<Vertex>{0} : std::vector<Vertex>{0, n - 1};
            throw InputError("corner terminals are defined for grid and path families");
        }
        case TerminalSpec::Mode::leaves: {
            std::vector<Vertex> leaves;
            for (Vertex v = 0; v < n; ++v)
                if (g.degree(v) == 1) leaves.push_back(v);
            if (leaves.empty())
                throw InputError("instance has no degree-1 vertices for leaf terminals");
            return leaves;
        }
        case TerminalSpec::Mode::random_k: {
            int k = spec.terminals.k;
            if (k < 1 || k > n)
                throw InputError("terminal count " + std::to_string(k) +
                                 " out of range for n = " + std::to_string(n));
            Rng rng(spec.seed, "terminals");
            std::vector<Vertex> picks = rng.sample_indices(n, k);
            std::sort(picks.begin(), picks.end());
            return picks;
        }
    }
    throw InputError("unknown terminal mode");
}

}  // namespace

std::string InstanceSpec::name() const {
    std::string fam;
    switch (family) {
        case Family::path: fam = "path:" + std::to_string(n); break;
        case Family::star: fam = "star:" + std::to_string(n); break;
        case Family::grid:
            fam = "grid:" + std::to_string(width) + "x" + std::to_string(height);
            break;
        case Family::tree: fam = "tree:" + std::to_string(n); break;
        case Family::random_planar: fam = "random-planar:" + std::to_string(n); break;
        case Family::outerplanar: fam = "outerplanar:" + std::to_string(n); break;
    }
    std::string w;
    switch (weights.kind) {
        case WeightSpec::Kind::unit: w = "unit"; break;
        case WeightSpec::Kind::uniform:
            w = "uniform[" + format_double(weights.lo) + "," + format_double(weights.hi) + "]";
            break;
        case WeightSpec::Kind::exponential:
            w = "exp[" + format_double(weights.mean) + "]";
            break;
    }
    std::string t;
    switch (terminals.mode) {
        case TerminalSpec::Mode::corners: t = "corners"; break;
        case TerminalSpec::Mode::leaves: t = "leaves"; break;
        case TerminalSpec::Mode::random_k: t = "random:" + std::to_string(terminals.k); break;
    }
    return fam + "/" + w + "/" + t + "/seed=" + std::to_string(seed);
}

LabeledGraph generate_instance(const InstanceSpec& spec) {
    WeightedGraph g;
    switch (spec.family) {
        case Family::path: {
            if (spec.n < 1) throw InputError("path needs n >= 1");
            g = WeightedGraph(spec.n);
            Rng rng(spec.seed, "weights");
            for (int v = 0; v + 1 < spec.n; ++v)
                g.add_edge(v, v + 1, draw_weight(spec.weights, rng));
            break;
        }
        case Family::star: {
            if (spec.n < 2) throw InputError("star needs n >= 2");
            g = WeightedGraph(spec.n);
            Rng rng(spec.seed, "weights");
            for (int v = 1; v < spec.n; ++v)
                g.add_edge(0, v, draw_weight(spec.weights, rng));
            break;
        }
        case Family::grid: {
            if (spec.width < 1 || spec.height < 1) throw InputError("grid needs positive dims");
            int w = spec.width, h = spec.height;
            g = WeightedGraph(w * h);
            Rng rng(spec.seed, "weights");
            for (int r = 0; r < h; ++r) {
                for (int c = 0; c < w; ++c) {
                    int v = r * w + c;
                    if (c + 1 < w) g.add_edge(v, v + 1, draw_weight(spec.weights, rng));
                    if (r + 1 < h) g.add_edge(v, v + w, draw_weight(spec.weights, rng));
                }
            }
            break;
        }
        case Family::tree: {
            if (spec.n < 1) throw InputError("tree needs n >= 1");
            g = WeightedGraph(spec.n);
            Rng prng(spec.seed, "tree-parents");
            Rng wrng(spec.seed, "weights");
            for (int v = 1; v < spec.n; ++v) {
                int parent = static_cast<int>(prng.next_below(static_cast<uint64_t>(v)));
                g.add_edge(parent, v, draw_weight(spec.weights, wrng));
            }
            break;
        }
        case Family::random_planar:
            if (spec.n < 1) throw InputError("random-planar needs n >= 1");
            g = gen_random_planar(spec.n, spec.seed, spec.weights);
            break;
        case Family::outerplanar:
            if (spec.n < 2) throw InputError("outerplanar needs n >= 2");
            g = gen_outerplanar(spec.n, spec.seed, spec.weights);
            break;
    }
    TerminalSet K(g, pick_terminals(g, spec));
    return with_default_labels(std::move(g), std::move(K));
}

MinorCheck validate_minor(const WeightedGraph& g, const TerminalSet& K, const SprMinor& m) {
    MinorCheck check;
    auto fail = [&](std::string msg) { check.failures.push_back(std::move(msg)); };

    const int k = K.size();
    if (m.graph.vertex_count() != k || static_cast<int>(m.terminal_of.size()) != k ||
        static_cast<int>(m.branch_sets.size()) != k) {
        fail("minor vertex set differs from the terminal set");
        return check;
    }
    for (int i = 0; i < k; ++i)
        if (m.terminal_of[static_cast<size_t>(i)] != K.at(i)) {
            fail("minor supernode " + std::to_string(i) + " maps to " +
                 std::to_string(m.terminal_of[static_cast<size_t>(i)]) +
                 ", expected terminal " + std::to_string(K.at(i)));
            return check;
        }

    // Partition and terminal containment.
    const int n = g.vertex_count();
    std::vector<int> owner(static_cast<size_t>(n), -1);
    for (int i = 0; i < k; ++i) {
        bool holds_terminal = false;
        for (Vertex v : m.branch_sets[static_cast<size_t>(i)]) {
            if (v < 0 || v >= n) {
                fail("branch set " + std::to_string(i) + " lists invalid vertex " +
                     std::to_string(v));
                return check;
            }
            if (owner[static_cast<size_t>(v)] != -1)
                fail("vertex " + std::to_string(v) + " appears in branch sets " +
                     std::to_string(owner[static_cast<size_t>(v)]) + " and " +
                     std::to_string(i));
            owner[static_cast<size_t>(v)] = i;
            if (v == K.at(i)) holds_terminal = true;
        }
        if (!holds_terminal)
            fail("branch set of terminal " + std::to_string(K.at(i)) +
                 " does not contain it");
    }
    for (Vertex v = 0; v < n; ++v)
        if (owner[static_cast<size_t>(v)] == -1)
            fail("vertex " + std::to_string(v) + " belongs to no branch set");
    if (!check.pass()) return check;

    // Connectivity of each branch set.
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<Vertex> stack;
    for (int i = 0; i < k; ++i) {
        Vertex t = K.at(i);
        stack.assign(1, t);
        seen[static_cast<size_t>(t)] = 1;
        size_t reached = 1;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (const Edge& e : g.neighbors(u))
                if (owner[static_cast<size_t>(e.to)] == i && !seen[static_cast<size_t>(e.to)]) {
                    seen[static_cast<size_t>(e.to)] = 1;
                    ++reached;
                    stack.push_back(e.to);
                }
        }
        if (reached != m.branch_sets[static_cast<size_t>(i)].size())
            fail("branch set of terminal " + std::to_string(t) + " is disconnected");
    }

    // Every minor edge needs a crossing host edge and the exact distance as
    // its weight; host crossing edges must all be present in the minor.
    std::vector<std::vector<char>> crossing(static_cast<size_t>(k),
                                            std::vector<char>(static_cast<size_t>(k), 0));
    for (const EdgeRecord& e : g.edges()) {
        int a = owner[static_cast<size_t>(e.u)];
        int b = owner[static_cast<size_t>(e.v)];
        if (a != b) {
            crossing[static_cast<size_t>(a)][static_cast<size_t>(b)] = 1;
            crossing[static_cast<size_t>(b)][static_cast<size_t>(a)] = 1;
        }
    }
    for (const EdgeRecord& e : m.graph.edges())
        if (!crossing[static_cast<size_t>(e.u)][static_cast<size_t>(e.v)])
            fail("minor edge between terminals " +
                 std::to_string(m.terminal_of[static_cast<size_t>(e.u)]) + " and " +
                 std::to_string(m.terminal_of[static_cast<size_t>(e.v)]) +
                 " has no crossing host edge");
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            if (crossing[static_cast<size_t>(a)][static_cast<size_t>(b)] &&
                !m.graph.has_edge(a, b))
                fail("crossing host edge between terminals " + std::to_string(K.at(a)) +
                     " and " + std::to_string(K.at(b)) + " missing from the minor");
    for (int i = 0; i < k; ++i) {
        if (m.graph.degree(i) == 0) continue;
        DistanceMap dm = sssp(g, K.at(i));
        for (const Edge& e : m.graph.neighbors(i)) {
            if (e.to < i) continue;
            auto d = dm.get(K.at(e.to));
            if (!d || *d != e.weight)
                fail("minor edge (" + std::to_string(K.at(i)) + ", " +
                     std::to_string(K.at(e.to)) + ") weight " + format_double(e.weight) +
                     " differs from the host distance");
        }
    }
    return check;
}

DistortionSummary measure_distortion(const WeightedGraph& g, const TerminalSet& K,
                                     const SprMinor& m, const DistortionOptions& opts) {
    const int k = K.size();
    DistortionSummary out;
    if (k < 2) {
        out.flags.push_back("fewer than two terminals; distortion is trivially 1");
        return out;
    }
    if (m.graph.vertex_count() != k)
        throw InputError("minor does not match the terminal set");

    std::vector<std::pair<int, int>> pairs;
    if (!opts.sample || static_cast<long long>(k) * (k - 1) / 2 <= opts.sample_pairs) {
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
    } else {
        Rng rng(opts.seed, "distortion-pairs");
        std::vector<char> used(static_cast<size_t>(k) * static_cast<size_t>(k), 0);
        out.flags.push_back("sampled terminal pairs");
        while (static_cast<long long>(pairs.size()) < opts.sample_pairs) {
            int i = static_cast<int>(rng.next_below(static_cast<uint64_t>(k)));
            int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(k)));
            if (i == j) continue;
            if (i > j) std::swap(i, j);
            size_t key = static_cast<size_t>(i) * static_cast<size_t>(k) +
                         static_cast<size_t>(j);
            if (used[key]) continue;
            used[key] = 1;
            pairs.emplace_back(i, j);
        }
        std::sort(pairs.begin(), pairs.end());
    }

    std::vector<char> need(static_cast<size_t>(k), 0);
    for (auto [i, j] : pairs) need[static_cast<size_t>(i)] = 1;
    std::vector<DistanceMap> dg(static_cast<size_t>(k)), dm(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        if (!need[static_cast<size_t>(i)]) continue;
        dg[static_cast<size_t>(i)] = sssp(g, K.at(i));
        dm[static_cast<size_t>(i)] = sssp(m.graph, i);
    }

    double sum = 0.0;
    double alpha = 0.0;
    for (auto [i, j] : pairs) {
        auto dgv = dg[static_cast<size_t>(i)].get(K.at(j));
        auto dmv = dm[static_cast<size_t>(i)].get(j);
        if (!dgv) {
            if (dmv)
                throw InvariantError("terminals " + std::to_string(K.at(i)) + " and " +
                                     std::to_string(K.at(j)) +
                                     " connected in the minor but not the host");
            ++out.pairs_skipped;
            continue;
        }
        if (!dmv)
            throw InvariantError("terminals " + std::to_string(K.at(i)) + " and " +
                                 std::to_string(K.at(j)) +
                                 " connected in the host but not the minor");
        double ratio = *dmv / *dgv;
        out.pairs.push_back({K.at(i), K.at(j), *dgv, *dmv, ratio});
        alpha = std::max(alpha, ratio);
        sum += ratio;
    }
    if (out.pairs.empty()) {
        out.flags.push_back("no connected terminal pairs");
        return out;
    }
    out.alpha = alpha;
    out.mean_ratio = sum / static_cast<double>(out.pairs.size());
    return out;
}

std::vector<std::vector<double>> brute_force_distances(const WeightedGraph& g, int cap) {
    const int n = g.vertex_count();
    if (n > cap)
        throw InputError("brute-force oracle refuses n = " + std::to_string(n) +
                         " over cap " + std::to_string(cap));
    std::vector<std::vector<double>> dist(
        static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), kUnreached));
    std::vector<char> visited(static_cast<size_t>(n), 0);

    for (Vertex s = 0; s < n; ++s) {
        auto& row = dist[static_cast<size_t>(s)];
        row[static_cast<size_t>(s)] = 0.0;
        // DFS over all simple paths, left-to-right sums.
        auto dfs = [&](auto&& self, Vertex u, double len) -> void {
            for (const Edge& e : g.neighbors(u)) {
                if (visited[static_cast<size_t>(e.to)]) continue;
                double nl = len + e.weight;
                if (nl < row[static_cast<size_t>(e.to)]) row[static_cast<size_t>(e.to)] = nl;
                visited[static_cast<size_t>(e.to)] = 1;
                self(self, e.to, nl);
                visited[static_cast<size_t>(e.to)] = 0;
            }
        };
        visited[static_cast<size_t>(s)] = 1;
        dfs(dfs, s, 0.0);
        visited[static_cast<size_t>(s)] = 0;
    }
    return dist;
}

bool planar_by_euler_bound(const WeightedGraph& g) {
    const long long n = g.vertex_count();
    const long long m = g.edge_count();
    if (n < 3) return true;
    return m <= 3 * n - 6;
}

}  // namespace spr
