#include "graph_io.hpp"

#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "text_util.hpp"

namespace kac {
namespace {

char left_char(Mark m) {
    switch (m) {
        case Mark::Tail: return '-';
        case Mark::Arrow: return '<';
        case Mark::Circle: return 'o';
    }
    return '?';
}

char right_char(Mark m) {
    switch (m) {
        case Mark::Tail: return '-';
        case Mark::Arrow: return '>';
        case Mark::Circle: return 'o';
    }
    return '?';
}

Mark parse_mark(char c, int line_no) {
    switch (c) {
        case '-': return Mark::Tail;
        case '<':
        case '>': return Mark::Arrow;
        case 'o': return Mark::Circle;
        default:
            throw FormatError("line " + std::to_string(line_no) + ": unknown edge mark '" +
                              std::string(1, c) + "'");
    }
}

GraphKind parse_kind(const std::string& token) {
    if (token == "dag") return GraphKind::Dag;
    if (token == "cpdag") return GraphKind::Cpdag;
    if (token == "pag") return GraphKind::Pag;
    if (token == "pdag") return GraphKind::Pdag;
    throw FormatError("unknown graph kind '" + token + "'");
}

}  // namespace

void write_graph(const MixedGraph& g, std::ostream& out) {
    const GraphKind kind = g.kind() == GraphKind::Pdag ? GraphKind::Cpdag : g.kind();
    out << "#kind: " << to_string(kind) << '\n';
    out << "#nodes: ";
    for (int v = 0; v < g.size(); ++v) out << (v ? "," : "") << g.label(v);
    out << '\n';
    for (const auto& e : g.edges()) {
        out << g.label(e.i) << ' ' << left_char(e.at_i) << right_char(e.at_j) << ' ' << g.label(e.j) << '\n';
    }
}

std::string format_graph(const MixedGraph& g) {
    std::ostringstream out;
    write_graph(g, out);
    return out.str();
}

void write_graph_file(const MixedGraph& g, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_graph(g, out);
    if (!out) throw IoError("write failed: " + path.string());
}

MixedGraph parse_graph(std::istream& in) {
    std::optional<GraphKind> kind;
    std::optional<MixedGraph> graph;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon == std::string::npos) continue;
            const std::string key = trim(line.substr(1, colon - 1));
            const std::string value = trim(line.substr(colon + 1));
            if (key == "kind") {
                kind = parse_kind(value);
            } else if (key == "nodes") {
                if (!kind) throw FormatError("line " + std::to_string(line_no) + ": #nodes before #kind");
                std::vector<std::string> labels;
                if (!value.empty()) {
                    for (auto& label : split(value, ',')) labels.push_back(trim(label));
                }
                try {
                    graph.emplace(*kind, std::move(labels));
                } catch (const InputError& err) {
                    throw FormatError("line " + std::to_string(line_no) + ": " + err.what());
                }
            }
            continue;
        }
        if (!graph) throw FormatError("line " + std::to_string(line_no) + ": edge before #kind/#nodes header");
        std::istringstream fields(line);
        std::string a, marks, b, extra;
        if (!(fields >> a >> marks >> b) || (fields >> extra) || marks.size() != 2) {
            throw FormatError("line " + std::to_string(line_no) + ": expected '<label> <marks> <label>'");
        }
        const auto ia = graph->index_of(a);
        const auto ib = graph->index_of(b);
        if (!ia || !ib) throw FormatError("line " + std::to_string(line_no) + ": unknown node label");
        try {
            graph->add_edge(*ia, *ib, parse_mark(marks[0], line_no), parse_mark(marks[1], line_no));
        } catch (const InputError& err) {
            throw FormatError("line " + std::to_string(line_no) + ": " + err.what());
        }
    }
    if (!graph) throw FormatError("missing #kind/#nodes header");
    try {
        graph->validate();
    } catch (const InputError& err) {
        throw FormatError(err.what());
    }
    return *std::move(graph);
}

MixedGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

MixedGraph read_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return parse_graph(in);
    } catch (const FormatError& err) {
        throw FormatError(path.string() + ": " + err.what());
    }
}

}  // namespace kac
