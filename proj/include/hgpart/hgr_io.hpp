// hgr_io.hpp - hMetis-style .hgr files and partition files
#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "hgpart/errors.hpp"
#include "hgpart/hypergraph.hpp"
#include "hgpart/io_util.hpp"
#include "hgpart/partition.hpp"

namespace hgpart {

// hMetis convention: header "|E| |V| [fmt]" with fmt in {absent, 1, 10, 11}
// flagging edge / vertex weights; one line per hyperedge with 1-based pin
// ids; '%' starts a comment line.
inline Hypergraph parse_hgr(std::istream& in) {
    struct Line {
        std::string text;
        int number;
    };
    std::vector<Line> lines;
    {
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            if (!raw.empty() && raw[0] == '%') continue;
            lines.push_back({std::move(raw), line_no});
        }
    }
    while (!lines.empty() && io::blank(lines.back().text)) lines.pop_back();
    if (lines.empty()) throw ParseError("empty hgr input", 1);
    for (const auto& l : lines)
        if (io::blank(l.text)) throw ParseError("unexpected blank line", l.number);

    auto header = io::split_ws(lines[0].text);
    long long num_edges = 0, num_vertices = 0, fmt = 0;
    if (header.size() < 2 || header.size() > 3 || !io::parse_int(header[0], num_edges) ||
        !io::parse_int(header[1], num_vertices))
        throw ParseError("malformed hgr header", lines[0].number);
    if (header.size() == 3 && !io::parse_int(header[2], fmt))
        throw ParseError("malformed hgr format code", lines[0].number);
    if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11)
        throw ParseError("unknown hgr format code " + std::to_string(fmt), lines[0].number);
    if (num_edges < 0 || num_vertices < 0)
        throw ParseError("negative size in hgr header", lines[0].number);
    const bool edge_weighted = fmt == 1 || fmt == 11;
    const bool vertex_weighted = fmt == 10 || fmt == 11;

    const std::size_t expected =
        1 + static_cast<std::size_t>(num_edges) + (vertex_weighted ? num_vertices : 0);
    if (lines.size() != expected)
        throw ParseError("wrong line count: expected " + std::to_string(expected) + ", found " +
                             std::to_string(lines.size()),
                         lines.back().number);

    std::vector<std::vector<int>> pins(num_edges);
    std::vector<double> edge_weights(num_edges, 1.0);
    for (long long e = 0; e < num_edges; ++e) {
        const auto& l = lines[1 + e];
        auto toks = io::split_ws(l.text);
        std::size_t t = 0;
        if (edge_weighted) {
            double w = 0.0;
            if (toks.empty() || !io::parse_double(toks[0], w))
                throw ParseError("malformed hyperedge weight", l.number);
            if (!(w > 0.0)) throw ParseError("non-positive hyperedge weight", l.number);
            edge_weights[e] = w;
            t = 1;
        }
        if (toks.size() == t) throw ParseError("hyperedge with zero pins", l.number);
        for (; t < toks.size(); ++t) {
            long long v = 0;
            if (!io::parse_int(toks[t], v)) throw ParseError("malformed pin id", l.number);
            if (v < 1 || v > num_vertices)
                throw ParseError("pin id " + std::to_string(v) + " outside [1, " +
                                     std::to_string(num_vertices) + "]",
                                 l.number);
            pins[e].push_back(static_cast<int>(v - 1));
        }
    }

    std::vector<double> vertex_weights;
    if (vertex_weighted) {
        vertex_weights.resize(num_vertices);
        for (long long v = 0; v < num_vertices; ++v) {
            const auto& l = lines[1 + num_edges + v];
            auto toks = io::split_ws(l.text);
            double w = 0.0;
            if (toks.size() != 1 || !io::parse_double(toks[0], w))
                throw ParseError("malformed vertex weight line", l.number);
            if (!(w > 0.0)) throw ParseError("non-positive vertex weight", l.number);
            vertex_weights[v] = w;
        }
    }

    return Hypergraph::build(static_cast<int>(num_vertices), std::move(pins),
                             std::move(vertex_weights), std::move(edge_weights));
}

// Canonical form: weight columns appear only when some weight differs from 1.
inline void write_hgr(const Hypergraph& h, std::ostream& out) {
    const auto nontrivial = [](const std::vector<double>& ws) {
        for (double w : ws)
            if (w != 1.0) return true;
        return false;
    };
    const bool edge_weighted = nontrivial(h.edge_weights());
    const bool vertex_weighted = nontrivial(h.vertex_weights());
    const int fmt = (edge_weighted ? 1 : 0) + (vertex_weighted ? 10 : 0);

    out << h.num_edges() << ' ' << h.num_vertices();
    if (fmt != 0) out << ' ' << fmt;
    out << '\n';
    for (int e = 0; e < h.num_edges(); ++e) {
        if (edge_weighted) out << io::format_number(h.edge_weight(e)) << ' ';
        bool first = true;
        for (int v : h.pins(e)) {
            if (!first) out << ' ';
            out << v + 1;
            first = false;
        }
        out << '\n';
    }
    if (vertex_weighted)
        for (int v = 0; v < h.num_vertices(); ++v)
            out << io::format_number(h.vertex_weight(v)) << '\n';
}

// One part id per line, in vertex order, trailing newline.
inline void write_partition(const Partition& p, std::ostream& out) {
    for (int id : p.part_of) out << id << '\n';
    if (!out) throw ValidationError("partition write failed");
}

inline std::vector<int> read_partition(std::istream& in) {
    std::vector<int> parts;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (io::blank(line)) continue;
        auto toks = io::split_ws(line);
        long long id = 0;
        if (toks.size() != 1 || !io::parse_int(toks[0], id) || id < 0)
            throw ParseError("malformed part id", line_no);
        parts.push_back(static_cast<int>(id));
    }
    return parts;
}

} // namespace hgpart
