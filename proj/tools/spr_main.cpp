#include <atomic>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "spr/graph_ops.hpp"
#include "spr/harness.hpp"
#include "spr/reports.hpp"
#include "spr/rng.hpp"
#include "spr/scattering.hpp"
#include "spr/spr.hpp"

namespace {

using namespace spr;

struct Manifest {
    std::string input;
    std::string gen;
    std::string weights = "unit";
    std::string terminals = "random:2";
    std::string pairs = "all";
    std::string out;
    std::string in_dir;
    std::string provider = "ball-carving";
    double beta = 2.0;
    double tau = 6.0;
    double c = 0.0;
    bool has_c = false;
    uint64_t seed = 1;
    bool strict = false;
    int jobs = 0;
};

int parse_int(const std::string& s, const char* what) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw InputError(std::string("bad ") + what + ": '" + s + "'");
    return v;
}

double parse_real(const std::string& s, const char* what) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw InputError(std::string("bad ") + what + ": '" + s + "'");
    return v;
}

WeightSpec parse_weights(const std::string& text) {
    WeightSpec w;
    if (text == "unit") return w;
    size_t colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "uniform") {
        size_t comma = args.find(',');
        if (comma == std::string::npos)
            throw InputError("uniform weights need lo,hi: '" + text + "'");
        w.kind = WeightSpec::Kind::uniform;
        w.lo = parse_real(args.substr(0, comma), "uniform lo");
        w.hi = parse_real(args.substr(comma + 1), "uniform hi");
        return w;
    }
    if (head == "exp") {
        w.kind = WeightSpec::Kind::exponential;
        w.mean = parse_real(args, "exponential mean");
        return w;
    }
    throw InputError("unknown weight spec '" + text +
                     "' (unit | uniform:lo,hi | exp:mean)");
}

TerminalSpec parse_terminals(const std::string& text) {
    TerminalSpec t;
    if (text == "corners") {
        t.mode = TerminalSpec::Mode::corners;
        return t;
    }
    if (text == "leaves") {
        t.mode = TerminalSpec::Mode::leaves;
        return t;
    }
    if (text.rfind("random:", 0) == 0) {
        t.mode = TerminalSpec::Mode::random_k;
        t.k = parse_int(text.substr(7), "terminal count");
        return t;
    }
    throw InputError("unknown terminal spec '" + text +
                     "' (corners | leaves | random:K)");
}

struct SizeRange {
    int lo = 0, hi = 0, step = 1;
};

SizeRange parse_range(const std::string& text, const char* what) {
    SizeRange r;
    size_t dots = text.find("..");
    if (dots == std::string::npos) {
        r.lo = r.hi = parse_int(text, what);
    } else {
        r.lo = parse_int(text.substr(0, dots), what);
        std::string rest = text.substr(dots + 2);
        size_t colon = rest.find(':');
        if (colon == std::string::npos) {
            r.hi = parse_int(rest, what);
        } else {
            r.hi = parse_int(rest.substr(0, colon), what);
            r.step = parse_int(rest.substr(colon + 1), "sweep step");
        }
    }
    if (r.lo < 1 || r.hi < r.lo || r.step < 1)
        throw InputError(std::string("bad ") + what + " range: '" + text + "'");
    return r;
}

Family parse_family(const std::string& name) {
    if (name == "path") return Family::path;
    if (name == "star") return Family::star;
    if (name == "grid") return Family::grid;
    if (name == "tree") return Family::tree;
    if (name == "random-planar") return Family::random_planar;
    if (name == "outerplanar") return Family::outerplanar;
    throw InputError("unknown family '" + name +
                     "' (path | star | grid | tree | random-planar | outerplanar)");
}

// FAMILY:ARGS. grid takes WxH or a side-length sweep lo..hi[:step] (square
// grids); every other family takes N or a sweep over N.
std::vector<InstanceSpec> parse_gen(const Manifest& m) {
    size_t colon = m.gen.find(':');
    if (colon == std::string::npos)
        throw InputError("generator spec must be FAMILY:ARGS, got '" + m.gen + "'");
    InstanceSpec base;
    base.family = parse_family(m.gen.substr(0, colon));
    base.weights = parse_weights(m.weights);
    base.terminals = parse_terminals(m.terminals);
    base.seed = m.seed;
    std::string args = m.gen.substr(colon + 1);

    std::vector<InstanceSpec> specs;
    if (base.family == Family::grid && args.find('x') != std::string::npos) {
        size_t cross = args.find('x');
        base.width = parse_int(args.substr(0, cross), "grid width");
        base.height = parse_int(args.substr(cross + 1), "grid height");
        base.n = base.width * base.height;
        specs.push_back(base);
        return specs;
    }
    SizeRange r = parse_range(args, "size");
    for (int v = r.lo; v <= r.hi; v += r.step) {
        InstanceSpec s = base;
        if (s.family == Family::grid) {
            s.width = s.height = v;
            s.n = v * v;
        } else {
            s.n = v;
        }
        specs.push_back(s);
    }
    return specs;
}

struct PairBudget {
    bool sample = false;
    long long count = 10000;
};

PairBudget parse_pairs(const std::string& text) {
    PairBudget b;
    if (text == "all") return b;
    if (text.rfind("sample:", 0) == 0) {
        b.sample = true;
        b.count = parse_int(text.substr(7), "pair budget");
        if (b.count < 1) throw InputError("pair budget must be positive");
        return b;
    }
    throw InputError("unknown pair budget '" + text + "' (all | sample:N)");
}

SprConfig make_config(const Manifest& m) {
    SprConfig cfg;
    cfg.beta = m.beta;
    cfg.tau = m.tau;
    cfg.seed = m.seed;
    cfg.strict = m.strict;
    cfg.provider = m.provider;
    if (m.has_c) cfg.c_override = m.c;
    return cfg;
}

struct Loaded {
    LabeledGraph lg;
    InstanceInfo info;
};

Loaded load_instance(const Manifest& m) {
    if (!m.input.empty() && !m.gen.empty())
        throw InputError("give exactly one of --input and --gen");
    if (!m.input.empty()) {
        Loaded ld{parse_graph_file(m.input), {}};
        ld.info = describe_instance(ld.lg, m.input, "file");
        return ld;
    }
    if (m.gen.empty()) throw InputError("give exactly one of --input and --gen");
    std::vector<InstanceSpec> specs = parse_gen(m);
    if (specs.size() != 1)
        throw InputError("this command takes a single instance; sweeps are for bench");
    Loaded ld{generate_instance(specs.front()), {}};
    ld.info = describe_instance(ld.lg, specs.front().name(), "generator");
    return ld;
}

struct RunOutput {
    SprSolution sol;
    MinorCheck check;
    DistortionSummary dist;
    bool planar = false;
};

RunOutput run_pipeline(const Loaded& ld, const SprConfig& cfg, const PairBudget& pairs) {
    RunOutput out;
    out.planar = is_planar(ld.lg.graph);
    out.sol = run_spr(ld.lg.graph, ld.lg.terminals, cfg);
    out.check = validate_minor(ld.lg.graph, ld.lg.terminals, out.sol.minor);
    DistortionOptions dopt;
    dopt.sample = pairs.sample;
    dopt.sample_pairs = pairs.count;
    dopt.seed = cfg.seed;
    out.dist = measure_distortion(ld.lg.graph, ld.lg.terminals, out.sol.minor, dopt);
    return out;
}

struct ArtifactSet {
    std::string minor_edges;
    std::string branch_sets;
    std::string trace;
    std::string report;
};

ArtifactSet render_artifacts(const Loaded& ld, const SprConfig& cfg, const RunOutput& run) {
    ArtifactSet a;
    a.minor_edges = write_graph_text(minor_as_labeled(run.sol.minor, ld.lg));
    a.branch_sets = dump_json(branch_sets_json(run.sol.minor, ld.lg));
    a.trace = dump_json(trace_json(run.sol, cfg, ld.lg));
    Json report = distortion_report_json(ld.info, cfg, run.sol, run.dist, ld.lg);
    report["instance"]["planar"] = run.planar;
    a.report = dump_json(report);
    return a;
}

constexpr const char* kArtifactNames[4] = {"minor.edges", "branch_sets.json",
                                           "trace.json", "report.json"};

void write_artifacts(const std::string& dir, const ArtifactSet& a) {
    std::filesystem::create_directories(dir);
    const std::string* payloads[4] = {&a.minor_edges, &a.branch_sets, &a.trace, &a.report};
    for (int i = 0; i < 4; ++i)
        write_text_file(dir + "/" + kArtifactNames[i], *payloads[i]);
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void warn_nonplanar(const Loaded& ld, bool planar) {
    if (!planar)
        std::cerr << "warning: " << ld.info.name
                  << " is not planar; the distortion guarantee is calibrated for "
                     "planar inputs\n";
}

int cmd_solve(const Manifest& m) {
    auto t0 = std::chrono::steady_clock::now();
    Loaded ld = load_instance(m);
    SprConfig cfg = make_config(m);
    RunOutput run = run_pipeline(ld, cfg, parse_pairs(m.pairs));
    warn_nonplanar(ld, run.planar);

    if (!run.check.pass()) {
        for (const std::string& f : run.check.failures)
            std::cerr << "minor validation failed: " << f << "\n";
        return 2;
    }
    for (const PairDistortion& p : run.dist.pairs)
        if (p.ratio < 1.0 - 1e-9) {
            std::cerr << "contraction detected: pair (" << ld.lg.label_of(p.t1) << ", "
                      << ld.lg.label_of(p.t2) << ") ratio " << format_double(p.ratio)
                      << "\n";
            return 2;
        }

    ArtifactSet artifacts = render_artifacts(ld, cfg, run);
    if (!m.out.empty()) {
        write_artifacts(m.out, artifacts);
        std::cerr << ld.info.name << ": alpha=" << format_double(run.dist.alpha)
                  << " iterations=" << run.sol.iterations_run
                  << " tau_emp=" << run.sol.tau_emp
                  << " beta_emp=" << format_double(run.sol.beta_emp)
                  << " wall_ms=" << format_double(elapsed_ms(t0)) << " wrote " << m.out
                  << "\n";
    } else {
        std::cout << artifacts.report;
        std::cerr << "wall_ms=" << format_double(elapsed_ms(t0)) << "\n";
    }
    return 0;
}

int cmd_verify(const Manifest& m) {
    Loaded ld = load_instance(m);
    SprConfig cfg = make_config(m);
    PairBudget pairs = parse_pairs(m.pairs);

    Json checks = Json::array();
    bool all_pass = true;
    auto add_check = [&](const std::string& name, const std::vector<std::string>& viols,
                         Json extra = nullptr) {
        bool ok = viols.empty();
        Json c{{"name", name}, {"pass", ok}, {"violations", viols}};
        if (!extra.is_null()) c["report"] = std::move(extra);
        checks.push_back(std::move(c));
        all_pass = all_pass && ok;
    };

    std::optional<RunOutput> run;
    bool planar = is_planar(ld.lg.graph);
    try {
        run = run_pipeline(ld, cfg, pairs);
        add_check("pipeline", {});
    } catch (const InvariantError& e) {
        add_check("pipeline", {e.what()});
    }
    warn_nonplanar(ld, planar);

    if (run) {
        add_check("iteration_invariants", run->sol.violations);
        add_check("minor_valid", run->check.failures);

        std::vector<std::string> contractions;
        for (const PairDistortion& p : run->dist.pairs)
            if (p.ratio < 1.0 - 1e-9)
                contractions.push_back("pair (" + ld.lg.label_of(p.t1) + ", " +
                                       ld.lg.label_of(p.t2) + ") ratio " +
                                       format_double(p.ratio));
        add_check("non_contraction", contractions);

        NormalizedGraph norm = normalize_scale(ld.lg.graph);
        add_check("window", check_assignment_window(run->sol.trace, norm.graph,
                                                    ld.lg.terminals, run->sol.zeta));
        add_check("radius",
                  check_assignment_radius(
                      run->sol.assignment, norm.graph, ld.lg.terminals, run->sol.zeta,
                      std::max(1.0, static_cast<double>(run->sol.tau_emp))));

        // Standalone partition checks at the base scale, with the requested
        // pair budget.
        double delta = run->sol.zeta;
        ScatteringPartition part = build_scattering_partition(
            norm.graph, delta, Rng(cfg.seed, "verify-standalone").next_u64(),
            cfg.provider);
        VerifyOptions vo;
        vo.seed = Rng(cfg.seed, "verify-standalone", 1).next_u64();
        if (pairs.sample) {
            vo.sample_pairs = pairs.count;
            vo.max_exhaustive_n = 0;  // an explicit budget always samples
        } else {
            vo.max_exhaustive_n = ld.lg.graph.vertex_count();
        }
        ScatterReport srep = verify_scattering(norm.graph, part, vo);
        std::vector<std::string> sviol;
        for (const ScatterViolation& v : srep.violations) sviol.push_back(v.reason);
        add_check("scattering", sviol, scatter_report_json(srep));

        ShortcutOptions so;
        so.seed = Rng(cfg.seed, "verify-standalone", 2).next_u64();
        so.max_sources = pairs.sample ? static_cast<int>(std::min<long long>(
                                            pairs.count, ld.lg.graph.vertex_count()))
                                      : 0;
        ShortcutReport hrep = verify_shortcut(norm.graph, part.clusters, delta, so);
        add_check("shortcut", hrep.violations, shortcut_report_json(hrep));

        if (!m.in_dir.empty()) {
            ArtifactSet fresh = render_artifacts(ld, cfg, *run);
            const std::string* payloads[4] = {&fresh.minor_edges, &fresh.branch_sets,
                                              &fresh.trace, &fresh.report};
            std::vector<std::string> diffs;
            for (int i = 0; i < 4; ++i) {
                std::string path = m.in_dir + "/" + kArtifactNames[i];
                try {
                    if (read_text_file(path) != *payloads[i])
                        diffs.push_back(std::string(kArtifactNames[i]) +
                                        " differs from the recomputed artifact");
                } catch (const InputError&) {
                    diffs.push_back(std::string("missing artifact: ") + path);
                }
            }
            add_check("artifacts", diffs);
        }
    }

    Json inst = instance_json(ld.info);
    inst["planar"] = planar;
    Json doc{{"schema", kReportSchema},
             {"instance", std::move(inst)},
             {"config", config_json(cfg)},
             {"checks", std::move(checks)},
             {"pass", all_pass}};
    std::cout << dump_json(doc);
    if (!m.out.empty()) {
        std::filesystem::create_directories(m.out);
        write_text_file(m.out + "/verification.json", dump_json(doc));
    }
    return all_pass ? 0 : 2;
}

int cmd_bench(const Manifest& m) {
    if (!m.input.empty()) throw InputError("bench sweeps generator specs; use --gen");
    if (m.gen.empty()) throw InputError("bench needs --gen FAMILY:LO..HI[:STEP]");
    std::vector<InstanceSpec> specs = parse_gen(m);
    PairBudget pairs = parse_pairs(m.pairs);
    SprConfig cfg = make_config(m);

    struct Row {
        int n = 0, m = 0, k = 0, iterations = 0;
        double alpha = 0.0, beta_emp = 0.0, wall = 0.0;
        int tau_emp = 0;
        std::string error;
        int error_code = 0;
    };
    std::vector<Row> rows(specs.size());

    std::atomic<size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= specs.size()) return;
            Row& row = rows[i];
            auto t0 = std::chrono::steady_clock::now();
            try {
                Loaded ld{generate_instance(specs[i]), {}};
                ld.info = describe_instance(ld.lg, specs[i].name(), "generator");
                RunOutput run = run_pipeline(ld, cfg, pairs);
                if (!run.check.pass())
                    throw InvariantError("minor validation failed: " +
                                         run.check.failures.front());
                row.n = ld.info.n;
                row.m = ld.info.m;
                row.k = ld.info.k;
                row.iterations = run.sol.iterations_run;
                row.alpha = run.dist.alpha;
                row.tau_emp = run.sol.tau_emp;
                row.beta_emp = run.sol.beta_emp;
            } catch (const InputError& e) {
                row.error = e.what();
                row.error_code = 1;
            } catch (const std::exception& e) {
                row.error = e.what();
                row.error_code = 2;
            }
            row.wall = elapsed_ms(t0);
        }
    };

    int jobs = m.jobs > 0 ? m.jobs
                          : static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min(jobs, static_cast<int>(specs.size())));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    std::string csv = "n,m,k,iterations,alpha,tau_emp,beta_emp,wall_ms\n";
    int exit_code = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        if (row.error_code != 0) {
            std::cerr << specs[i].name() << ": " << row.error << "\n";
            exit_code = std::max(exit_code, row.error_code);
            continue;
        }
        csv += std::to_string(row.n) + "," + std::to_string(row.m) + "," +
               std::to_string(row.k) + "," + std::to_string(row.iterations) + "," +
               format_double(row.alpha) + "," + std::to_string(row.tau_emp) + "," +
               format_double(row.beta_emp) + "," + format_double(row.wall) + "\n";
    }
    if (!m.out.empty()) {
        std::filesystem::create_directories(m.out);
        write_text_file(m.out + "/bench.csv", csv);
        std::cerr << "wrote " << m.out << "/bench.csv\n";
    } else {
        std::cout << csv;
    }
    return exit_code;
}

void add_common_options(CLI::App* cmd, Manifest& m, bool with_input) {
    cmd->add_option("--gen", m.gen,
                    "generator spec FAMILY:ARGS (path|star|grid|tree|random-planar|"
                    "outerplanar; grid takes WxH, sweeps take LO..HI[:STEP])");
    if (with_input) cmd->add_option("--input", m.input, "graph file to read");
    cmd->add_option("--weights", m.weights, "edge weights: unit | uniform:lo,hi | exp:mean")
        ->capture_default_str();
    cmd->add_option("--terminals", m.terminals,
                    "terminal selection: corners | leaves | random:K")
        ->capture_default_str();
    cmd->add_option("--beta", m.beta, "target scattering stretch")->capture_default_str();
    cmd->add_option("--tau", m.tau, "target cluster-intersection count")
        ->capture_default_str();
    cmd->add_option("--c", m.c, "scale base multiplier: zeta = c * beta * tau")
        ->each([&m](const std::string&) { m.has_c = true; });
    cmd->add_option("--seed", m.seed, "root seed for all randomness")
        ->capture_default_str();
    cmd->add_flag("--strict,!--no-strict", m.strict,
                  "abort with exit 2 on invariant violations (default off; verify "
                  "reports them regardless)");
    cmd->add_option("--provider", m.provider, "clustering provider name")
        ->capture_default_str();
    cmd->add_option("--pairs", m.pairs,
                    "pair budget for distortion and scattering checks: all | sample:N")
        ->capture_default_str();
    cmd->add_option("--out", m.out, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance-preserving minors on terminal sets"};
    app.require_subcommand(1);
    Manifest m;

    CLI::App* solve = app.add_subcommand(
        "solve", "run the pipeline and write minor, branch sets, trace, and report");
    add_common_options(solve, m, true);

    CLI::App* verify = app.add_subcommand(
        "verify", "re-run deterministically and check every invariant");
    add_common_options(verify, m, true);
    verify->add_option("--in-dir", m.in_dir,
                       "artifact directory from a prior solve to cross-check");

    CLI::App* bench = app.add_subcommand("bench", "sweep generated instances to CSV");
    add_common_options(bench, m, false);
    bench->add_option("--jobs", m.jobs, "worker threads (default: logical cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return cmd_solve(m);
        if (verify->parsed()) return cmd_verify(m);
        return cmd_bench(m);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    }
}
