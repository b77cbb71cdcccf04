// partition.hpp - vertex partitions and quality metrics
#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "hgpart/errors.hpp"
#include "hgpart/hypergraph.hpp"

namespace hgpart {

struct Partition;

double hyperedge_cut(const Hypergraph& h, const Partition& p);
double connectivity_metric(const Hypergraph& h, const Partition& p);
double imbalance(const Hypergraph& h, const Partition& p);

// Total assignment of every vertex to a part in [0, k). The cached metrics
// are filled by update_metrics() and must equal a from-scratch recount.
struct Partition {
    std::vector<int> part_of;
    int k = 1;

    double cut = 0.0;
    double connectivity = 0.0;
    double imbalance = 1.0;
    bool balance_feasible = true;

    void update_metrics(const Hypergraph& h) {
        cut = hyperedge_cut(h, *this);
        connectivity = connectivity_metric(h, *this);
        imbalance = hgpart::imbalance(h, *this);
    }
};

namespace detail {

inline void check_assignment(const Hypergraph& h, const Partition& p) {
    if (p.k < 1) throw ValidationError("part count must be >= 1");
    if (static_cast<int>(p.part_of.size()) != h.num_vertices())
        throw ValidationError("partition is not a total assignment");
    for (int id : p.part_of)
        if (id < 0 || id >= p.k)
            throw ValidationError("part id " + std::to_string(id) + " outside [0, " +
                                  std::to_string(p.k) + ")");
}

// Distinct parts among the pins of one edge, via a stamp array.
struct SpanCounter {
    std::vector<int> stamp;
    int generation = 0;

    explicit SpanCounter(int k) : stamp(k, -1) {}

    int distinct_parts(std::span<const int> pins, const std::vector<int>& part_of) {
        ++generation;
        int count = 0;
        for (int v : pins) {
            const int part = part_of[v];
            if (stamp[part] != generation) {
                stamp[part] = generation;
                ++count;
            }
        }
        return count;
    }
};

} // namespace detail

// Total weight of hyperedges spanning more than one part.
inline double hyperedge_cut(const Hypergraph& h, const Partition& p) {
    detail::check_assignment(h, p);
    detail::SpanCounter counter(p.k);
    double total = 0.0;
    for (int e = 0; e < h.num_edges(); ++e)
        if (counter.distinct_parts(h.pins(e), p.part_of) >= 2) total += h.edge_weight(e);
    return total;
}

// Sum of w(e) * (lambda(e) - 1), lambda(e) = number of parts the edge touches.
inline double connectivity_metric(const Hypergraph& h, const Partition& p) {
    detail::check_assignment(h, p);
    detail::SpanCounter counter(p.k);
    double total = 0.0;
    for (int e = 0; e < h.num_edges(); ++e) {
        const int lambda = counter.distinct_parts(h.pins(e), p.part_of);
        if (lambda >= 2) total += h.edge_weight(e) * (lambda - 1);
    }
    return total;
}

// Heaviest part weight over the average part weight.
inline double imbalance(const Hypergraph& h, const Partition& p) {
    detail::check_assignment(h, p);
    if (h.num_vertices() == 0) throw ValidationError("imbalance of an empty hypergraph");
    if (!(h.total_vertex_weight() > 0.0))
        throw ValidationError("imbalance requires positive total vertex weight");
    std::vector<double> part_weight(p.k, 0.0);
    for (int v = 0; v < h.num_vertices(); ++v)
        part_weight[p.part_of[v]] += h.vertex_weight(v);
    const double heaviest = *std::max_element(part_weight.begin(), part_weight.end());
    return heaviest / (h.total_vertex_weight() / p.k);
}

// Number of connected components of the undirected star expansion graph.
// Every stored hyperedge has >= 2 pins, so a hyperedge node always lands in
// the component of its pins; isolated vertices count one component each.
inline int star_components(const Hypergraph& h) {
    std::vector<int> parent(h.num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (int e = 0; e < h.num_edges(); ++e) {
        auto pins = h.pins(e);
        const int root = find(pins[0]);
        for (int v : pins.subspan(1)) parent[find(v)] = root;
    }
    int components = 0;
    for (int v = 0; v < h.num_vertices(); ++v)
        if (find(v) == v) ++components;
    return components;
}

} // namespace hgpart
