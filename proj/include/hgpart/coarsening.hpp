// coarsening.hpp - agglomerative inner-product matching and contraction
#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <unordered_map>
#include <vector>

#include "hgpart/algebraic_distance.hpp"
#include "hgpart/errors.hpp"
#include "hgpart/hypergraph.hpp"
#include "hgpart/rng.hpp"

namespace hgpart {

struct Clustering {
    std::vector<int> cluster_of; // contiguous ids 0..cluster_count
    int cluster_count = 0;
};

struct CoarseningLevel {
    Hypergraph coarse;
    std::vector<int> map; // fine vertex -> coarse vertex
    int level_index = 0;
};

enum class CoarseningMode { plain, algebraic };

struct CoarsenConfig {
    CoarseningMode mode = CoarseningMode::algebraic;
    AlgdConfig algd;
    // Clusters may not grow past this total vertex weight during matching.
    double max_cluster_weight = std::numeric_limits<double>::infinity();
};

// Stream tags coarsen_level uses to derive its sub-seeds; exposed so the
// composition can be reproduced piecewise.
namespace stream {
inline constexpr std::uint64_t matching = 0x6d617463;
inline constexpr std::uint64_t algdist = 0x616c6764;
} // namespace stream

// Visits vertices in a seeded random order. A still-unclustered vertex joins
// the adjacent cluster maximizing N/W, where N is the total weight of edges
// connecting it to the cluster (each edge counted once) and W the vertex
// weight of cluster + candidate. Ties break toward the lowest cluster id;
// candidates that would push a cluster past max_cluster_weight are skipped.
inline Clustering inner_product_matching(const Hypergraph& h,
                                         std::span<const double> edge_weights,
                                         double max_cluster_weight, Rng& rng) {
    const int n = h.num_vertices();
    if (static_cast<int>(edge_weights.size()) != h.num_edges())
        throw ValidationError("matching weight array size mismatch");
    for (double w : edge_weights)
        if (!(w > 0.0)) throw ValidationError("matching weights must be strictly positive");

    // Clusters are named by their founding vertex.
    std::vector<int> cluster_of(n);
    std::iota(cluster_of.begin(), cluster_of.end(), 0);
    std::vector<double> cluster_weight(h.vertex_weights());
    std::vector<int> cluster_size(n, 1);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    std::vector<double> score_n(n, 0.0);
    std::vector<int> score_stamp(n, -1);
    std::vector<long long> edge_token(n, 0);
    std::vector<int> candidates;
    long long token = 0;

    for (int visit = 0; visit < n; ++visit) {
        const int v = order[visit];
        if (cluster_of[v] != v || cluster_size[v] != 1) continue; // already clustered

        candidates.clear();
        for (int e : h.incident_edges(v)) {
            ++token; // unique per (visit, edge) pair
            const double we = edge_weights[e];
            for (int u : h.pins(e)) {
                if (u == v) continue;
                const int c = cluster_of[u];
                if (edge_token[c] == token) continue; // edge already counted for c
                edge_token[c] = token;
                if (score_stamp[c] != visit) {
                    score_stamp[c] = visit;
                    score_n[c] = 0.0;
                    candidates.push_back(c);
                }
                score_n[c] += we;
            }
        }

        int best = -1;
        double best_score = 0.0;
        const double wv = h.vertex_weight(v);
        for (int c : candidates) {
            const double joined_weight = cluster_weight[c] + wv;
            if (joined_weight > max_cluster_weight) continue;
            const double score = score_n[c] / joined_weight;
            if (best < 0 || score > best_score || (score == best_score && c < best)) {
                best = c;
                best_score = score;
            }
        }
        if (best < 0) continue; // no eligible neighbor; stays a singleton

        cluster_of[v] = best;
        cluster_weight[best] += wv;
        ++cluster_size[best];
    }

    // Renumber founder ids to contiguous 0..count (ascending founder order).
    std::vector<int> remap(n, -1);
    int count = 0;
    for (int v = 0; v < n; ++v)
        if (cluster_of[v] == v) remap[v] = count++;
    Clustering c;
    c.cluster_count = count;
    c.cluster_of.resize(n);
    for (int v = 0; v < n; ++v) c.cluster_of[v] = remap[cluster_of[v]];
    return c;
}

namespace detail {
struct PinVectorHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t seed = v.size();
        for (int x : v)
            seed ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
        return seed;
    }
};
} // namespace detail

// Merges each cluster into one coarse vertex (weights summed), maps pins
// through the clustering, deduplicates them, drops edges that collapse to a
// single pin, and merges identical surviving pin sets with summed weights.
inline CoarseningLevel contract(const Hypergraph& h, const Clustering& c) {
    if (static_cast<int>(c.cluster_of.size()) != h.num_vertices())
        throw ValidationError("clustering is not a total assignment");
    for (int id : c.cluster_of)
        if (id < 0 || id >= c.cluster_count) throw ValidationError("cluster id out of range");

    std::vector<double> coarse_vertex_weight(c.cluster_count, 0.0);
    for (int v = 0; v < h.num_vertices(); ++v)
        coarse_vertex_weight[c.cluster_of[v]] += h.vertex_weight(v);

    std::vector<std::vector<int>> coarse_pins;
    std::vector<double> coarse_weight;
    std::unordered_map<std::vector<int>, int, detail::PinVectorHash> index;

    std::vector<int> mapped;
    for (int e = 0; e < h.num_edges(); ++e) {
        mapped.clear();
        for (int v : h.pins(e)) mapped.push_back(c.cluster_of[v]);
        std::sort(mapped.begin(), mapped.end());
        mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
        if (mapped.size() < 2) continue;
        auto [it, inserted] = index.try_emplace(mapped, static_cast<int>(coarse_pins.size()));
        if (inserted) {
            coarse_pins.push_back(mapped);
            coarse_weight.push_back(h.edge_weight(e));
        } else {
            coarse_weight[it->second] += h.edge_weight(e);
        }
    }

    CoarseningLevel level;
    level.coarse = Hypergraph::build(c.cluster_count, std::move(coarse_pins),
                                     std::move(coarse_vertex_weight), std::move(coarse_weight));
    level.map = c.cluster_of;
    return level;
}

// One coarsening level. In algebraic mode the matching runs on re-scaled
// algebraic weights; the contracted hypergraph always carries the original
// weights (the re-weighting exists only for the matching decision).
inline CoarseningLevel coarsen_level(const Hypergraph& h, const CoarsenConfig& cfg,
                                     std::uint64_t seed) {
    std::vector<double> match_weights;
    if (cfg.mode == CoarseningMode::algebraic && h.num_edges() > 0) {
        const StarExpansion g = star_expand(h);
        AlgdConfig acfg = cfg.algd;
        acfg.seed = mix_seed(seed, stream::algdist);
        const CoordinateResult cr = compute_coordinates(g, acfg);
        const std::vector<double> alg = algebraic_weights(h, cr.coords, acfg.distance_floor);
        match_weights = scaled_weights(h, alg);
    } else {
        match_weights = h.edge_weights();
    }
    Rng rng(mix_seed(seed, stream::matching));
    const Clustering c = inner_product_matching(h, match_weights, cfg.max_cluster_weight, rng);
    return contract(h, c);
}

} // namespace hgpart
