#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spr/io.hpp"

#include "fixtures.hpp"

using namespace spr;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
    std::string err;
};

const fs::path& workspace() {
    static const fs::path ws = [] {
        fs::path p = fs::temp_directory_path() /
                     ("spr_cli_" + std::to_string(static_cast<long>(getpid())));
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return ws;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CmdResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path out = workspace() / ("stdout_" + std::to_string(counter) + ".txt");
    fs::path err = workspace() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;
    std::string cmd = std::string("\"") + SPR_BIN + "\" " + args + " > \"" +
                      out.string() + "\" 2> \"" + err.string() + "\"";
    int rc = std::system(cmd.c_str());
    CmdResult res;
    res.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.out = slurp(out);
    res.err = slurp(err);
    return res;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::string path3_file() {
    static const std::string path = [] {
        fs::path p = workspace() / "path3.graph";
        write_graph_file(fixtures::path3(), p.string());
        return p.string();
    }();
    return path;
}

json check_named(const json& doc, const std::string& name) {
    for (const auto& c : doc["checks"])
        if (c["name"] == name) return c;
    return json();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace

TEST_CASE("solve reads a graph file and reports unit distortion") {
    CmdResult res = run_cli("solve --input \"" + path3_file() + "\"");
    CHECK(res.code == 0);
    CHECK(contains(res.err, "wall_ms="));
    json report = json::parse(res.out);
    CHECK(report["schema"] == 1);
    CHECK(report["alpha"] == 1.0);
    CHECK(report["instance"]["source"] == "file");
    CHECK(report["instance"]["planar"] == true);
    CHECK(report["config"]["strict"] == false);
    CHECK(report["pairs"][0]["t1"] == "a");
    CHECK(report["pairs"][0]["t2"] == "c");
    CHECK_FALSE(contains(res.out, "timestamp"));
}

TEST_CASE("malformed input files exit with code one and a line number") {
    fs::path bad = workspace() / "bad.graph";
    write_text_file(bad.string(), "3 2 2\na b one\nb c 1\na\nc\n");
    CmdResult res = run_cli("solve --input \"" + bad.string() + "\"");
    CHECK(res.code == 1);
    CHECK(contains(res.err, "error:"));
    CHECK(contains(res.err, "bad.graph:2"));
    CHECK(contains(res.err, "bad edge weight"));

    CmdResult missing = run_cli("solve --input \"" + (workspace() / "nope.graph").string() + "\"");
    CHECK(missing.code == 1);
}

TEST_CASE("solve writes artifacts that replay byte for byte") {
    fs::path d1 = workspace() / "run1";
    fs::path d2 = workspace() / "run2";
    std::string spec = "--gen grid:10x10 --terminals random:8 --seed 1";
    CmdResult r1 = run_cli("solve " + spec + " --out \"" + d1.string() + "\"");
    CmdResult r2 = run_cli("solve " + spec + " --out \"" + d2.string() + "\"");
    CHECK(r1.code == 0);
    CHECK(r2.code == 0);
    CHECK(contains(r1.err, "alpha="));

    for (const char* name : {"minor.edges", "branch_sets.json", "trace.json", "report.json"}) {
        std::string a = slurp(d1 / name);
        std::string b = slurp(d2 / name);
        REQUIRE_FALSE(a.empty());
        CHECK(a == b);
    }

    // The rendered minor is a well-formed instance of the input format, on
    // exactly the terminal set.
    LabeledGraph minor = parse_graph_file((d1 / "minor.edges").string());
    CHECK(minor.graph.vertex_count() == 8);
    CHECK(minor.terminals.size() == 8);

    json report = json::parse(slurp(d1 / "report.json"));
    CHECK(report["alpha"].get<double>() >= 1.0);
    CHECK(report["instance"]["planar"] == true);
    CHECK(report["instance"]["source"] == "generator");
    CHECK(report["instance"]["name"] == "grid:10x10/unit/random:8/seed=1");
}

TEST_CASE("verify passes a fresh solve and its artifacts") {
    CmdResult res = run_cli("verify --input \"" + path3_file() + "\"");
    CHECK(res.code == 0);
    json doc = json::parse(res.out);
    CHECK(doc["pass"] == true);
    std::set<std::string> names;
    for (const auto& c : doc["checks"]) {
        names.insert(c["name"].get<std::string>());
        CHECK(c["pass"] == true);
    }
    std::set<std::string> expected{"pipeline",        "iteration_invariants",
                                   "minor_valid",     "non_contraction",
                                   "window",          "radius",
                                   "scattering",      "shortcut"};
    CHECK(names == expected);

    // Cross-checking the artifact directory written by solve.
    fs::path d1 = workspace() / "run1";
    fs::path vout = workspace() / "verify_out";
    CmdResult va = run_cli("verify --gen grid:10x10 --terminals random:8 --seed 1 --in-dir \"" +
                           d1.string() + "\" --out \"" + vout.string() + "\"");
    CHECK(va.code == 0);
    json vdoc = json::parse(va.out);
    CHECK(vdoc["pass"] == true);
    json artifacts = check_named(vdoc, "artifacts");
    REQUIRE_FALSE(artifacts.is_null());
    CHECK(artifacts["pass"] == true);
    CHECK(json::parse(slurp(vout / "verification.json")) == vdoc);
}

TEST_CASE("tampered artifacts fail verification with exit two") {
    fs::path d1 = workspace() / "run1";
    fs::path d4 = workspace() / "tampered";
    fs::remove_all(d4);
    fs::copy(d1, d4, fs::copy_options::recursive);
    write_text_file((d4 / "branch_sets.json").string(),
                    slurp(d4 / "branch_sets.json") + " ");
    fs::remove(d4 / "trace.json");

    CmdResult res = run_cli("verify --gen grid:10x10 --terminals random:8 --seed 1 --in-dir \"" +
                            d4.string() + "\"");
    CHECK(res.code == 2);
    json doc = json::parse(res.out);
    CHECK(doc["pass"] == false);
    json artifacts = check_named(doc, "artifacts");
    CHECK(artifacts["pass"] == false);
    bool saw_diff = false, saw_missing = false;
    for (const auto& v : artifacts["violations"]) {
        std::string s = v.get<std::string>();
        saw_diff = saw_diff || contains(s, "branch_sets.json differs");
        saw_missing = saw_missing || contains(s, "missing artifact");
    }
    CHECK(saw_diff);
    CHECK(saw_missing);
}

TEST_CASE("bench sweeps to a monotone CSV") {
    CmdResult res = run_cli("bench --gen grid:3..6 --seed 2 --pairs sample:50 --jobs 2");
    CHECK(res.code == 0);
    auto rows = parse_csv(res.out);
    REQUIRE(rows.size() == 5);
    CHECK(res.out.rfind("n,m,k,iterations,alpha,tau_emp,beta_emp,wall_ms\n", 0) == 0);
    std::vector<int> ns;
    for (size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 8);
        ns.push_back(std::stoi(rows[i][0]));
        CHECK(std::stod(rows[i][4]) >= 1.0);
        CHECK(std::stoi(rows[i][2]) == 2);
    }
    CHECK(ns == std::vector<int>{9, 16, 25, 36});

    fs::path bout = workspace() / "bench_out";
    CmdResult wres = run_cli("bench --gen path:4..8:2 --out \"" + bout.string() + "\"");
    CHECK(wres.code == 0);
    auto wrows = parse_csv(slurp(bout / "bench.csv"));
    REQUIRE(wrows.size() == 4);
    CHECK(std::stoi(wrows[1][0]) == 4);
    CHECK(std::stoi(wrows[3][0]) == 8);
}

TEST_CASE("flag conflicts and unknown specs exit with code one") {
    std::string p3 = "\"" + path3_file() + "\"";
    CHECK(run_cli("solve --input " + p3 + " --gen grid:3x3").code == 1);
    CHECK(run_cli("solve").code == 1);
    CHECK(run_cli("solve --gen nope:5").code == 1);
    CHECK(run_cli("solve --gen grid:3x3 --weights bogus").code == 1);
    CHECK(run_cli("solve --gen grid:3x3 --terminals every-other").code == 1);
    CHECK(run_cli("solve --gen grid:3x3 --pairs some").code == 1);
    CHECK(run_cli("solve --gen grid:3x3 --c 0.1").code == 1);
    CHECK(run_cli("solve --gen grid:0x3").code == 1);
    CHECK(run_cli("bench --input " + p3).code == 1);
    CHECK(run_cli("bench --gen grid:6..3").code == 1);
    CHECK(run_cli("frobnicate").code == 1);
    CHECK(run_cli("").code == 1);
    CHECK(run_cli("solve --gen grid:3x3 --provider unknown-provider").code == 1);
}

TEST_CASE("degenerate terminal sets round trip through the CLI") {
    CmdResult one = run_cli("solve --gen path:5 --terminals random:1");
    CHECK(one.code == 0);
    json r1 = json::parse(one.out);
    CHECK(r1["alpha"] == 1.0);
    bool flagged = false;
    for (const auto& f : r1["flags"])
        flagged = flagged || contains(f.get<std::string>(), "fewer than two terminals");
    CHECK(flagged);

    CmdResult all = run_cli("solve --gen grid:3x3 --terminals random:9");
    CHECK(all.code == 0);
    json r2 = json::parse(all.out);
    CHECK(r2["alpha"] == 1.0);
    CHECK(r2["iterations_run"] == 0);

    CHECK(run_cli("verify --gen grid:3x3 --terminals random:9").code == 0);
}

TEST_CASE("nonplanar hosts warn on stderr but still solve") {
    WeightedGraph k5(5);
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) k5.add_edge(u, v, 1.0);
    TerminalSet k(k5, {0, 1});
    fs::path p = workspace() / "k5.graph";
    write_graph_file(with_default_labels(std::move(k5), std::move(k)), p.string());

    CmdResult res = run_cli("solve --input \"" + p.string() + "\"");
    CHECK(res.code == 0);
    CHECK(contains(res.err, "not planar"));
    json report = json::parse(res.out);
    CHECK(report["alpha"] == 1.0);
    CHECK(report["instance"]["planar"] == false);
}

TEST_CASE("sampled pair budgets flow through verification") {
    CmdResult res = run_cli(
        "verify --gen grid:18x18 --terminals random:10 --pairs sample:40 --seed 3");
    CHECK(res.code == 0);
    json doc = json::parse(res.out);
    CHECK(doc["pass"] == true);
    json scatter = check_named(doc, "scattering");
    REQUIRE_FALSE(scatter.is_null());
    CHECK(scatter["report"]["exhaustive"] == false);

    // Strict mode on a healthy instance changes nothing observable.
    CmdResult strict = run_cli("solve --gen grid:4x4 --strict");
    CHECK(strict.code == 0);
    CHECK(json::parse(strict.out)["config"]["strict"] == true);
}
