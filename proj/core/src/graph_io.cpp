#include "equitree/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace equitree {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
}

// Strips comments/blank lines; returns false at EOF.
bool next_significant_line(std::istream& in, std::string& line, int& line_no,
                           char comment_char) {
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == comment_char) continue;
        return true;
    }
    return false;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!next_significant_line(in, line, line_no, '#'))
        throw std::invalid_argument("edge list: empty input, expected \"n m\" header");
    long long n, m;
    {
        std::istringstream ls(line);
        std::string extra;
        if (!(ls >> n >> m) || (ls >> extra))
            fail(line_no, "expected header \"n m\", got \"" + line + "\"");
    }
    if (n < 0 || m < 0) fail(line_no, "negative n or m in header");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long e = 0; e < m; ++e) {
        if (!next_significant_line(in, line, line_no, '#'))
            throw std::invalid_argument("edge list: expected " + std::to_string(m) +
                                        " edges, got " + std::to_string(e));
        std::istringstream ls(line);
        long long u, v;
        std::string extra;
        if (!(ls >> u >> v) || (ls >> extra))
            fail(line_no, "expected edge \"u v\", got \"" + line + "\"");
        if (u < 0 || u >= n || v < 0 || v >= n)
            fail(line_no, "endpoint out of range [0," + std::to_string(n - 1) + "]");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    try {
        return build_graph(static_cast<int>(n), edges);
    } catch (const std::invalid_argument& ex) {
        throw std::invalid_argument(std::string("edge list: ") + ex.what());
    }
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return read_edge_list(in);
    } catch (const std::invalid_argument& ex) {
        throw std::invalid_argument(path + ": " + ex.what());
    }
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.n << " " << g.m << "\n";
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u])
            if (u < v) out << u << " " << v << "\n";
}

void write_dimacs(std::ostream& out, const Graph& g) {
    out << "p edge " << g.n << " " << g.m << "\n";
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u])
            if (u < v) out << "e " << u + 1 << " " << v + 1 << "\n";
}

Graph read_dimacs(std::istream& in) {
    std::string line;
    int line_no = 0;
    long long n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "c") continue;
        if (tag == "p") {
            if (n >= 0) fail(line_no, "duplicate problem line");
            std::string kind;
            if (!(ls >> kind >> n >> m) || (kind != "edge" && kind != "col"))
                fail(line_no, "expected \"p edge n m\"");
            if (n < 0 || m < 0) fail(line_no, "negative n or m");
        } else if (tag == "e") {
            if (n < 0) fail(line_no, "edge before problem line");
            long long u, v;
            if (!(ls >> u >> v)) fail(line_no, "expected \"e u v\"");
            if (u < 1 || u > n || v < 1 || v > n)
                fail(line_no, "endpoint out of range [1," + std::to_string(n) + "]");
            edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
        } else {
            fail(line_no, "unknown line tag \"" + tag + "\"");
        }
    }
    if (n < 0) throw std::invalid_argument("dimacs: missing problem line");
    if (static_cast<long long>(edges.size()) != m)
        throw std::invalid_argument("dimacs: problem line promised " + std::to_string(m) +
                                    " edges, file has " + std::to_string(edges.size()));
    try {
        return build_graph(static_cast<int>(n), edges);
    } catch (const std::invalid_argument& ex) {
        throw std::invalid_argument(std::string("dimacs: ") + ex.what());
    }
}

Graph read_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return read_dimacs(in);
    } catch (const std::invalid_argument& ex) {
        throw std::invalid_argument(path + ": " + ex.what());
    }
}

Graph read_graph_file(const std::string& path, GraphFormat fmt) {
    return fmt == GraphFormat::edge_list ? read_edge_list_file(path) : read_dimacs_file(path);
}

}  // namespace equitree
