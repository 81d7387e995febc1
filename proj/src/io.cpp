#include "spr/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace spr {

namespace {

struct Cursor {
    std::istringstream input;
    std::string name;
    long line_no = 0;

    explicit Cursor(const std::string& text, std::string n)
        : input(text), name(std::move(n)) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError(name + ":" + std::to_string(line_no) + ": " + msg);
    }

    // Next whitespace-split token line, comments and blanks skipped.
    bool next_fields(std::vector<std::string>& fields) {
        std::string line;
        while (std::getline(input, line)) {
            ++line_no;
            size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos || line[start] == '#') continue;
            fields.clear();
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) fields.push_back(tok);
            return true;
        }
        return false;
    }
};

long long parse_count(Cursor& cur, const std::string& tok, const char* what) {
    long long value = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || p != tok.data() + tok.size() || value < 0)
        cur.fail(std::string("bad ") + what + ": '" + tok + "'");
    return value;
}

double parse_weight(Cursor& cur, const std::string& tok) {
    double value = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || p != tok.data() + tok.size())
        cur.fail("bad edge weight: '" + tok + "'");
    return value;
}

}  // namespace

LabeledGraph parse_graph_text(const std::string& text, const std::string& name) {
    Cursor cur(text, name);
    std::vector<std::string> fields;
    if (!cur.next_fields(fields)) cur.fail("missing header line 'n m k'");
    if (fields.size() != 3) cur.fail("header must be 'n m k'");
    long long n = parse_count(cur, fields[0], "vertex count");
    long long m = parse_count(cur, fields[1], "edge count");
    long long k = parse_count(cur, fields[2], "terminal count");
    if (k > n) cur.fail("more terminals than vertices");

    LabeledGraph lg;
    lg.graph = WeightedGraph(static_cast<int>(n));
    auto intern = [&](const std::string& label) -> Vertex {
        auto it = lg.index.find(label);
        if (it != lg.index.end()) return it->second;
        if (static_cast<long long>(lg.labels.size()) >= n)
            cur.fail("label '" + label + "' is the " +
                     std::to_string(lg.labels.size() + 1) +
                     "th distinct label but n = " + std::to_string(n));
        Vertex id = static_cast<Vertex>(lg.labels.size());
        lg.labels.push_back(label);
        lg.index.emplace(label, id);
        return id;
    };

    for (long long e = 0; e < m; ++e) {
        if (!cur.next_fields(fields)) cur.fail("expected " + std::to_string(m) +
                                               " edge lines, found " + std::to_string(e));
        if (fields.size() != 3) cur.fail("edge line must be '<u> <v> <w>'");
        Vertex u = intern(fields[0]);
        Vertex v = intern(fields[1]);
        double w = parse_weight(cur, fields[2]);
        try {
            lg.graph.add_edge(u, v, w);
        } catch (const InputError& err) {
            cur.fail(err.what());
        }
    }

    std::vector<Vertex> terminals;
    for (long long t = 0; t < k; ++t) {
        if (!cur.next_fields(fields)) cur.fail("expected " + std::to_string(k) +
                                               " terminal lines, found " + std::to_string(t));
        if (fields.size() != 1) cur.fail("terminal line must hold one label");
        terminals.push_back(intern(fields[0]));
    }
    if (cur.next_fields(fields)) cur.fail("unexpected trailing content");
    if (static_cast<long long>(lg.labels.size()) != n)
        throw InputError(name + ": header declares " + std::to_string(n) +
                         " vertices but only " + std::to_string(lg.labels.size()) +
                         " distinct labels appear");
    try {
        lg.terminals = TerminalSet(lg.graph, terminals);
    } catch (const InputError& err) {
        throw InputError(name + ": " + err.what());
    }
    return lg;
}

LabeledGraph parse_graph_file(const std::string& path) {
    return parse_graph_text(read_text_file(path), path);
}

std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw InvariantError("could not format a weight");
    return std::string(buf, p);
}

std::string write_graph_text(const LabeledGraph& lg) {
    std::ostringstream out;
    out << lg.graph.vertex_count() << ' ' << lg.graph.edge_count() << ' '
        << lg.terminals.size() << '\n';
    for (const EdgeRecord& e : lg.graph.edges())
        out << lg.label_of(e.u) << ' ' << lg.label_of(e.v) << ' '
            << format_double(e.weight) << '\n';
    for (Vertex t : lg.terminals.vertices()) out << lg.label_of(t) << '\n';
    return out.str();
}

void write_graph_file(const LabeledGraph& lg, const std::string& path) {
    write_text_file(path, write_graph_text(lg));
}

LabeledGraph with_default_labels(WeightedGraph g, TerminalSet terminals) {
    LabeledGraph lg;
    lg.graph = std::move(g);
    lg.terminals = std::move(terminals);
    lg.labels.reserve(static_cast<size_t>(lg.graph.vertex_count()));
    for (Vertex v = 0; v < lg.graph.vertex_count(); ++v) {
        lg.labels.push_back(std::to_string(v));
        lg.index.emplace(lg.labels.back(), v);
    }
    return lg;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
    if (!out) throw InputError("write failed: " + path);
}

}  // namespace spr
