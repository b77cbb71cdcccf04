// matrix_market.hpp - MatrixMarket coordinate reader and row-net construction
#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "hgpart/errors.hpp"
#include "hgpart/hypergraph.hpp"
#include "hgpart/io_util.hpp"

namespace hgpart {

// Sparsity pattern of a sparse matrix; values are discarded at parse time.
struct SparseCoordinates {
    int rows = 0;
    int cols = 0;
    std::vector<std::pair<int, int>> entries; // (row, col), 0-based, sorted, unique
};

// Parses a MatrixMarket coordinate file. Supported field types: pattern,
// real, integer, complex; symmetries: general, symmetric, skew-symmetric,
// hermitian (symmetric storage is expanded to both triangles). Explicit
// zero values are dropped, duplicates merged.
inline SparseCoordinates parse_matrix_market(std::istream& in) {
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty input", 1);
    ++line_no;
    auto header = io::split_ws(line);
    const auto lower = [](std::string_view sv) {
        std::string s(sv);
        for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    if (header.size() != 5 || header[0] != "%%MatrixMarket")
        throw ParseError("malformed MatrixMarket header", line_no);
    if (lower(header[1]) != "matrix" || lower(header[2]) != "coordinate")
        throw ParseError("only 'matrix coordinate' inputs are supported", line_no);
    const std::string field = lower(header[3]);
    const std::string symmetry = lower(header[4]);
    if (field != "pattern" && field != "real" && field != "integer" && field != "complex")
        throw ParseError("unknown field type '" + field + "'", line_no);
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric" &&
        symmetry != "hermitian")
        throw ParseError("unknown symmetry '" + symmetry + "'", line_no);

    // Size line, after optional comments.
    long long rows = 0, cols = 0, nnz = 0;
    for (;;) {
        if (!std::getline(in, line)) throw ParseError("missing size line", line_no + 1);
        ++line_no;
        if (io::blank(line) || line[0] == '%') continue;
        auto toks = io::split_ws(line);
        if (toks.size() != 3 || !io::parse_int(toks[0], rows) || !io::parse_int(toks[1], cols) ||
            !io::parse_int(toks[2], nnz))
            throw ParseError("malformed size line", line_no);
        if (rows < 0 || cols < 0 || nnz < 0) throw ParseError("negative dimension", line_no);
        break;
    }

    const int value_tokens = field == "pattern" ? 0 : (field == "complex" ? 2 : 1);
    SparseCoordinates m;
    m.rows = static_cast<int>(rows);
    m.cols = static_cast<int>(cols);
    // capped: the declared count is untrusted until the lines actually parse
    m.entries.reserve(static_cast<std::size_t>(std::min(nnz, 1ll << 20)));

    long long seen = 0;
    while (seen < nnz) {
        if (!std::getline(in, line))
            throw ParseError("entry count mismatch: header declares " + std::to_string(nnz) +
                                 " entries, found " + std::to_string(seen),
                             line_no);
        ++line_no;
        if (io::blank(line)) continue;
        auto toks = io::split_ws(line);
        if (static_cast<int>(toks.size()) != 2 + value_tokens)
            throw ParseError("expected " + std::to_string(2 + value_tokens) +
                                 " tokens in entry line",
                             line_no);
        long long i = 0, j = 0;
        if (!io::parse_int(toks[0], i) || !io::parse_int(toks[1], j))
            throw ParseError("malformed entry indices", line_no);
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw ParseError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                 ") outside declared " + std::to_string(rows) + "x" +
                                 std::to_string(cols) + " bounds",
                             line_no);
        ++seen;

        bool explicit_zero = false;
        if (value_tokens >= 1) {
            double re = 0.0, im = 0.0;
            if (!io::parse_double(toks[2], re) ||
                (value_tokens == 2 && !io::parse_double(toks[3], im)))
                throw ParseError("malformed entry value", line_no);
            explicit_zero = (re == 0.0 && im == 0.0);
        }
        if (explicit_zero) continue;

        const int r = static_cast<int>(i - 1);
        const int c = static_cast<int>(j - 1);
        m.entries.emplace_back(r, c);
        if (symmetry != "general" && r != c) m.entries.emplace_back(c, r);
    }

    // Anything but trailing blanks/comments means the count was wrong.
    while (std::getline(in, line)) {
        ++line_no;
        if (!io::blank(line) && line[0] != '%')
            throw ParseError("entry count mismatch: extra data after " + std::to_string(nnz) +
                                 " declared entries",
                             line_no);
    }

    std::sort(m.entries.begin(), m.entries.end());
    m.entries.erase(std::unique(m.entries.begin(), m.entries.end()), m.entries.end());
    return m;
}

// Row-net model: vertex per column, one hyperedge per row over the columns
// holding a nonzero. Unit weights; empty and singleton rows vanish during
// hypergraph construction.
inline Hypergraph rownet_hypergraph(const SparseCoordinates& m) {
    std::vector<std::vector<int>> pins(m.rows);
    for (auto [r, c] : m.entries) pins[r].push_back(c);
    return Hypergraph::build(m.cols, std::move(pins));
}

} // namespace hgpart
