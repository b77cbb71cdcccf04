// star_expansion.hpp - bipartite star expansion of a hypergraph
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hgpart/hypergraph.hpp"

namespace hgpart {

// Bipartite graph over V' = V u E. Node ids 0..|V|-1 are the original
// vertices, |V|..|V|+|E|-1 the hyperedge nodes. A vertex is adjacent to a
// hyperedge node iff it is one of its pins; edges of the expansion are
// unweighted. Node weights follow the asymmetric scaling: w'(v) = w(v) and
// w'(h) = w(h) / |h|.
struct StarExpansion {
    int n_original = 0;
    int n_edges = 0;
    std::vector<std::size_t> offsets{0};
    std::vector<int> neighbors;
    std::vector<double> node_weight;
    std::vector<double> neighbor_weight_sum; // relaxation denominators

    int size() const { return n_original + n_edges; }

    std::span<const int> adjacent(int node) const {
        return {neighbors.data() + offsets[node], offsets[node + 1] - offsets[node]};
    }
    int degree(int node) const {
        return static_cast<int>(offsets[node + 1] - offsets[node]);
    }
    int edge_node(int e) const { return n_original + e; }
};

inline StarExpansion star_expand(const Hypergraph& h) {
    StarExpansion g;
    g.n_original = h.num_vertices();
    g.n_edges = h.num_edges();
    const int n = g.size();

    g.node_weight.resize(n);
    for (int v = 0; v < g.n_original; ++v) g.node_weight[v] = h.vertex_weight(v);
    for (int e = 0; e < g.n_edges; ++e)
        g.node_weight[g.edge_node(e)] = h.edge_weight(e) / h.edge_size(e);

    g.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < g.n_original; ++v) g.offsets[v + 1] = h.degree(v);
    for (int e = 0; e < g.n_edges; ++e) g.offsets[g.edge_node(e) + 1] = h.edge_size(e);
    for (std::size_t i = 1; i < g.offsets.size(); ++i) g.offsets[i] += g.offsets[i - 1];

    g.neighbors.resize(2 * h.num_pins());
    {
        std::vector<std::size_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
        for (int e = 0; e < g.n_edges; ++e) {
            const int en = g.edge_node(e);
            for (int v : h.pins(e)) {
                g.neighbors[cursor[v]++] = en;
                g.neighbors[cursor[en]++] = v;
            }
        }
    }

    g.neighbor_weight_sum.assign(n, 0.0);
    for (int node = 0; node < n; ++node)
        for (int u : g.adjacent(node)) g.neighbor_weight_sum[node] += g.node_weight[u];
    return g;
}

// Connected components of the (undirected) star expansion, by BFS.
inline int connected_components(const StarExpansion& g) {
    const int n = g.size();
    std::vector<char> seen(n, 0);
    std::vector<int> queue;
    int components = 0;
    for (int start = 0; start < n; ++start) {
        if (seen[start]) continue;
        ++components;
        seen[start] = 1;
        queue.assign(1, start);
        while (!queue.empty()) {
            const int node = queue.back();
            queue.pop_back();
            for (int u : g.adjacent(node)) {
                if (!seen[u]) {
                    seen[u] = 1;
                    queue.push_back(u);
                }
            }
        }
    }
    return components;
}

} // namespace hgpart
