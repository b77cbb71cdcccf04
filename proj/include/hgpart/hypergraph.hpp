// hypergraph.hpp - weighted hypergraph with bidirectional incidence
#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hgpart/errors.hpp"

namespace hgpart {

// Immutable after construction; safe for concurrent read-only access.
//
// build() validates and normalizes the input:
//  - pin ids must be in range, duplicates within a hyperedge are removed,
//  - zero-weight hyperedges are dropped (a zero weight means the edge is
//    not present),
//  - hyperedges of cardinality one are dropped (they can never be cut),
//  - pins are stored sorted, and the vertex->edge incidence lists are the
//    exact transpose of the pin lists.
// Duplicate identical hyperedges are retained as-is.
class Hypergraph {
public:
    Hypergraph() = default;

    static Hypergraph build(int num_vertices, std::vector<std::vector<int>> pins,
                            std::vector<double> vertex_weights = {},
                            std::vector<double> edge_weights = {}) {
        if (num_vertices < 0) throw ValidationError("negative vertex count");
        if (!vertex_weights.empty() &&
            static_cast<int>(vertex_weights.size()) != num_vertices)
            throw ValidationError("vertex weight array size mismatch");
        if (!edge_weights.empty() && edge_weights.size() != pins.size())
            throw ValidationError("edge weight array size mismatch");
        if (vertex_weights.empty()) vertex_weights.assign(num_vertices, 1.0);
        if (edge_weights.empty()) edge_weights.assign(pins.size(), 1.0);

        for (double w : vertex_weights)
            if (!(w >= 0.0)) throw ValidationError("negative vertex weight");
        for (double w : edge_weights)
            if (!(w >= 0.0)) throw ValidationError("negative edge weight");

        Hypergraph h;
        h.num_vertices_ = num_vertices;
        h.vertex_weights_ = std::move(vertex_weights);
        h.total_vertex_weight_ = 0.0;
        for (double w : h.vertex_weights_) h.total_vertex_weight_ += w;

        for (std::size_t e = 0; e < pins.size(); ++e) {
            auto& p = pins[e];
            for (int v : p) {
                if (v < 0 || v >= num_vertices)
                    throw ValidationError("pin references vertex " + std::to_string(v) +
                                          " outside [0, " + std::to_string(num_vertices) + ")");
            }
            std::sort(p.begin(), p.end());
            p.erase(std::unique(p.begin(), p.end()), p.end());
            if (edge_weights[e] == 0.0) continue; // absent edge
            if (p.size() < 2) continue;           // singleton, can never be cut
            h.pin_offsets_.push_back(h.pin_offsets_.back() + p.size());
            h.pin_list_.insert(h.pin_list_.end(), p.begin(), p.end());
            h.edge_weights_.push_back(edge_weights[e]);
        }

        h.build_incidence();
        return h;
    }

    int num_vertices() const { return num_vertices_; }
    int num_edges() const { return static_cast<int>(edge_weights_.size()); }
    std::size_t num_pins() const { return pin_list_.size(); }

    std::span<const int> pins(int e) const {
        return {pin_list_.data() + pin_offsets_[e], pin_offsets_[e + 1] - pin_offsets_[e]};
    }
    int edge_size(int e) const {
        return static_cast<int>(pin_offsets_[e + 1] - pin_offsets_[e]);
    }

    std::span<const int> incident_edges(int v) const {
        return {inc_list_.data() + inc_offsets_[v], inc_offsets_[v + 1] - inc_offsets_[v]};
    }
    int degree(int v) const {
        return static_cast<int>(inc_offsets_[v + 1] - inc_offsets_[v]);
    }

    double vertex_weight(int v) const { return vertex_weights_[v]; }
    double edge_weight(int e) const { return edge_weights_[e]; }
    const std::vector<double>& vertex_weights() const { return vertex_weights_; }
    const std::vector<double>& edge_weights() const { return edge_weights_; }
    double total_vertex_weight() const { return total_vertex_weight_; }

    double max_vertex_weight() const {
        double m = 0.0;
        for (double w : vertex_weights_) m = std::max(m, w);
        return m;
    }

    // Pin lists as plain vectors (for serialization and rebuilds).
    std::vector<std::vector<int>> pin_sets() const {
        std::vector<std::vector<int>> out(num_edges());
        for (int e = 0; e < num_edges(); ++e) {
            auto p = pins(e);
            out[e].assign(p.begin(), p.end());
        }
        return out;
    }

    bool operator==(const Hypergraph& o) const {
        return num_vertices_ == o.num_vertices_ && pin_offsets_ == o.pin_offsets_ &&
               pin_list_ == o.pin_list_ && vertex_weights_ == o.vertex_weights_ &&
               edge_weights_ == o.edge_weights_;
    }

private:
    void build_incidence() {
        inc_offsets_.assign(static_cast<std::size_t>(num_vertices_) + 1, 0);
        for (int v : pin_list_) ++inc_offsets_[static_cast<std::size_t>(v) + 1];
        for (std::size_t v = 1; v < inc_offsets_.size(); ++v)
            inc_offsets_[v] += inc_offsets_[v - 1];
        inc_list_.resize(pin_list_.size());
        std::vector<std::size_t> cursor(inc_offsets_.begin(), inc_offsets_.end() - 1);
        for (int e = 0; e < num_edges(); ++e)
            for (int v : pins(e)) inc_list_[cursor[v]++] = e;
    }

    int num_vertices_ = 0;
    std::vector<std::size_t> pin_offsets_{0};
    std::vector<int> pin_list_;
    std::vector<std::size_t> inc_offsets_{0};
    std::vector<int> inc_list_;
    std::vector<double> vertex_weights_;
    std::vector<double> edge_weights_;
    double total_vertex_weight_ = 0.0;
};

} // namespace hgpart
