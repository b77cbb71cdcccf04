// test_support.hpp - independent oracles and instance generators shared by
// the unit and acceptance suites. Oracles deliberately use naive set/map
// recounts so they share no code path with the library implementations.
#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "hgpart/hypergraph.hpp"
#include "hgpart/partition.hpp"
#include "hgpart/rng.hpp"

namespace testing_support {

using hgpart::Hypergraph;
using hgpart::Partition;
using hgpart::Rng;

inline double cut_oracle(const Hypergraph& h, const Partition& p) {
    double total = 0.0;
    for (int e = 0; e < h.num_edges(); ++e) {
        std::set<int> parts;
        for (int v : h.pins(e)) parts.insert(p.part_of[v]);
        if (parts.size() >= 2) total += h.edge_weight(e);
    }
    return total;
}

inline double connectivity_oracle(const Hypergraph& h, const Partition& p) {
    double total = 0.0;
    for (int e = 0; e < h.num_edges(); ++e) {
        std::set<int> parts;
        for (int v : h.pins(e)) parts.insert(p.part_of[v]);
        if (parts.size() >= 2) total += h.edge_weight(e) * (static_cast<double>(parts.size()) - 1.0);
    }
    return total;
}

inline double imbalance_oracle(const Hypergraph& h, const Partition& p) {
    std::map<int, double> weight;
    for (int v = 0; v < h.num_vertices(); ++v) weight[p.part_of[v]] += h.vertex_weight(v);
    double heaviest = 0.0;
    for (const auto& [part, w] : weight) heaviest = std::max(heaviest, w);
    double total = 0.0;
    for (int v = 0; v < h.num_vertices(); ++v) total += h.vertex_weight(v);
    return heaviest / (total / p.k);
}

// Exhaustive minimum cut over all bipartitions within the imbalance
// tolerance. |V| must stay small (<= ~20).
struct BruteForceResult {
    double best_cut = std::numeric_limits<double>::infinity();
    bool feasible = false;
    std::vector<int> best_parts;
};

inline BruteForceResult brute_force_bipartition(const Hypergraph& h, double tol) {
    const int n = h.num_vertices();
    const double total = h.total_vertex_weight();
    const double cap = tol * total / 2.0;
    BruteForceResult result;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double w1 = 0.0;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) w1 += h.vertex_weight(v);
        const double w0 = total - w1;
        if (w0 > cap + 1e-12 || w1 > cap + 1e-12) continue;
        Partition p;
        p.k = 2;
        p.part_of.resize(n);
        for (int v = 0; v < n; ++v) p.part_of[v] = (mask >> v) & 1u;
        const double cut = cut_oracle(h, p);
        if (!result.feasible || cut < result.best_cut) {
            result.feasible = true;
            result.best_cut = cut;
            result.best_parts = p.part_of;
        }
    }
    return result;
}

// Random hypergraph for metric checks; isolated vertices allowed.
inline Hypergraph random_hypergraph(Rng& rng, int max_vertices = 10, int max_edges = 12,
                                    bool unit_weights = false) {
    const int nv = 2 + static_cast<int>(rng.uniform_int(max_vertices - 1));
    const int ne = 1 + static_cast<int>(rng.uniform_int(max_edges));
    std::vector<int> ids(nv);
    std::iota(ids.begin(), ids.end(), 0);
    std::vector<std::vector<int>> pins(ne);
    for (auto& edge : pins) {
        const int card = std::min(nv, 2 + static_cast<int>(rng.uniform_int(3)));
        rng.shuffle(ids);
        edge.assign(ids.begin(), ids.begin() + card);
    }
    std::vector<double> vw(nv, 1.0), ew(ne, 1.0);
    if (!unit_weights) {
        static constexpr double choices[4] = {0.5, 1.0, 2.0, 3.0};
        for (double& w : vw) w = choices[rng.uniform_int(4)];
        for (double& w : ew) w = choices[rng.uniform_int(4)];
    }
    return Hypergraph::build(nv, std::move(pins), std::move(vw), std::move(ew));
}

inline Partition random_partition(const Hypergraph& h, int k, Rng& rng) {
    Partition p;
    p.k = k;
    p.part_of.resize(h.num_vertices());
    for (int& id : p.part_of) id = static_cast<int>(rng.uniform_int(k));
    return p;
}

// Two unit-weight blocks, each internally connected by chain pairs and a
// few triples, joined by exactly one cross hyperedge.
inline Hypergraph two_block_hypergraph(Rng& rng, int block_a, int block_b) {
    std::vector<std::vector<int>> pins;
    int offset = 0;
    for (int size : {block_a, block_b}) {
        for (int i = 0; i + 1 < size; ++i) pins.push_back({offset + i, offset + i + 1});
        const int triples = 2;
        for (int t = 0; t < triples; ++t) {
            const int a = static_cast<int>(rng.uniform_int(size));
            int b = static_cast<int>(rng.uniform_int(size));
            int c = static_cast<int>(rng.uniform_int(size));
            if (b == a) b = (b + 1) % size;
            if (c == a || c == b) c = (std::max(a, b) + 1) % size;
            pins.push_back({offset + a, offset + b, offset + c});
        }
        offset += size;
    }
    const int left = static_cast<int>(rng.uniform_int(block_a));
    const int right = block_a + static_cast<int>(rng.uniform_int(block_b));
    pins.push_back({left, right});
    return Hypergraph::build(block_a + block_b, std::move(pins));
}

// Irregular hypergraph with a power-law-ish degree mix: pin selection is
// preferential (proportional to current degree + 1) and cardinalities are
// geometrically spread.
inline Hypergraph powerlaw_hypergraph(Rng& rng, int num_vertices, int num_edges) {
    std::vector<double> attract(num_vertices, 1.0);
    std::vector<std::vector<int>> pins(num_edges);
    std::vector<char> in_edge(num_vertices, 0);
    for (auto& edge : pins) {
        int card = 2;
        while (card < 12 && rng.uniform_open(0.0, 1.0) < 0.55) ++card;
        card = std::min(card, num_vertices);
        for (int t = 0; t < card; ++t) {
            double sum = 0.0;
            for (int v = 0; v < num_vertices; ++v)
                if (!in_edge[v]) sum += attract[v];
            double pick = rng.uniform_open(0.0, sum);
            int chosen = -1;
            for (int v = 0; v < num_vertices; ++v) {
                if (in_edge[v]) continue;
                pick -= attract[v];
                if (pick <= 0.0) {
                    chosen = v;
                    break;
                }
            }
            if (chosen < 0)
                for (int v = num_vertices - 1; v >= 0; --v)
                    if (!in_edge[v]) {
                        chosen = v;
                        break;
                    }
            edge.push_back(chosen);
            in_edge[chosen] = 1;
        }
        for (int v : edge) {
            in_edge[v] = 0;
            attract[v] += 1.0;
        }
    }
    return Hypergraph::build(num_vertices, std::move(pins));
}

} // namespace testing_support
