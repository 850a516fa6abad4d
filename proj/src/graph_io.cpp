#include "gsent/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "gsent/errors.hpp"

namespace gsent {

namespace {

[[noreturn]] void fail(const std::string& filename, int line, const std::string& msg) {
    throw InputError(filename + ":" + std::to_string(line) + ": " + msg);
}

bool content_line(std::string& raw) {
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    return raw.find_first_not_of(" \t\r") != std::string::npos;
}

}  // namespace

Graph parse_graph(std::istream& in, const std::string& filename) {
    int n = -1;
    std::vector<Edge> edges;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!content_line(raw)) continue;
        std::istringstream ss(raw);
        std::string tag;
        ss >> tag;
        if (tag == "n") {
            if (n >= 0) fail(filename, lineno, "duplicate 'n' line");
            if (!(ss >> n) || n < 1) fail(filename, lineno, "expected 'n <N>' with N >= 1");
        } else if (tag == "e") {
            if (n < 0) fail(filename, lineno, "'e' line before 'n' line");
            int i = 0, j = 0;
            if (!(ss >> i >> j)) fail(filename, lineno, "expected 'e <i> <j>'");
            if (i < 1 || j < 1 || i > n || j > n)
                fail(filename, lineno, "edge endpoint outside 1.." + std::to_string(n));
            if (i == j) fail(filename, lineno, "self-loop");
            edges.push_back({i - 1, j - 1});
        } else {
            fail(filename, lineno, "unknown line tag '" + tag + "'");
        }
    }
    if (n < 0) throw InputError(filename + ": missing 'n <N>' line");
    return Graph(n, edges);
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    return parse_graph(in, path);
}

Partition parse_partition(std::istream& in, const std::string& filename, int vertex_count) {
    std::vector<int> labels(vertex_count, -1);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!content_line(raw)) continue;
        std::istringstream ss(raw);
        std::string tag;
        ss >> tag;
        if (tag != "p") fail(filename, lineno, "unknown line tag '" + tag + "'");
        int v = 0, part = 0;
        if (!(ss >> v >> part)) fail(filename, lineno, "expected 'p <vertex> <part>'");
        if (v < 1 || v > vertex_count)
            fail(filename, lineno, "vertex outside 1.." + std::to_string(vertex_count));
        if (part < 1) fail(filename, lineno, "parts are 1-indexed");
        if (labels[v - 1] != -1) fail(filename, lineno, "vertex labeled twice");
        labels[v - 1] = part - 1;
    }
    for (int v = 0; v < vertex_count; ++v)
        if (labels[v] == -1)
            throw InputError(filename + ": vertex " + std::to_string(v + 1) + " unlabeled");
    return Partition(std::move(labels));
}

Partition load_partition(const std::string& path, int vertex_count) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open partition file '" + path + "'");
    return parse_partition(in, path, vertex_count);
}

Partition parse_inline_partition(const std::string& spec, int vertex_count) {
    std::vector<int> labels(vertex_count, -1);
    int parts_seen = 0;
    std::stringstream parts(spec);
    std::string chunk;
    while (std::getline(parts, chunk, '|')) {
        for (char& c : chunk)
            if (c == ',') c = ' ';
        std::istringstream ss(chunk);
        int v = 0;
        while (ss >> v) {
            if (v < 1 || v > vertex_count)
                throw InputError("partition spec: vertex " + std::to_string(v) + " outside 1.." +
                                 std::to_string(vertex_count));
            if (labels[v - 1] != -1)
                throw InputError("partition spec: vertex " + std::to_string(v) + " listed twice");
            labels[v - 1] = parts_seen;
        }
        ++parts_seen;
    }
    if (parts_seen == 0) throw InputError("partition spec: empty");

    // Unlisted vertices: with a single listed part they form the complement
    // ("1" means first versus rest); otherwise they join the last part.
    const int target = (parts_seen == 1) ? 1 : parts_seen - 1;
    for (int& l : labels)
        if (l == -1) l = target;
    return Partition(std::move(labels));
}

}  // namespace gsent
