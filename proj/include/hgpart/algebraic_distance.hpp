// algebraic_distance.hpp - algebraic coordinates on the star expansion
//
// Jacobi over-relaxation from random starts, with a per-iteration affine
// rescale of the coordinates onto [-0.5, 0.5]. A hyperedge's algebraic
// weight is the reciprocal of the widest coordinate spread among its pins,
// maximized over the random vectors; re-scaled weights steer the matching
// during coarsening and are discarded afterwards.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "hgpart/errors.hpp"
#include "hgpart/hypergraph.hpp"
#include "hgpart/rng.hpp"
#include "hgpart/star_expansion.hpp"

namespace hgpart {

struct AlgdConfig {
    double omega = 0.5;          // relaxation factor, strictly in (0, 1)
    int num_random = 5;          // independent random starting vectors
    int num_iter = 20;           // relaxation sweeps per vector
    std::uint64_t seed = 0;
    double distance_floor = 1e-9; // clamp for indistinguishable coordinates
    bool record_history = false;  // keep every iterate (tests, diagnostics)

    void validate() const {
        if (!(omega > 0.0 && omega < 1.0))
            throw ValidationError("relaxation factor must lie strictly in (0, 1)");
        if (num_random < 1) throw ValidationError("need at least one random vector");
        if (num_iter < 0) throw ValidationError("negative iteration count");
        if (!(distance_floor > 0.0)) throw ValidationError("distance floor must be positive");
    }
};

struct AlgebraicCoordinates {
    std::vector<std::vector<double>> x; // x[r][node], in [-0.5, 0.5]
    int iterations_run = 0;
    // Present when record_history is set: history[r][i] is the i-th iterate
    // (index 0 = random initialization).
    std::vector<std::vector<std::vector<double>>> history;
};

struct IterationTrace {
    struct Step {
        double alpha = 0.0; // 1 / (hi - lo) of the pre-rescale iterate
        double beta = 0.0;  // -(hi + lo) / (2 (hi - lo))
        double angle = 1.0; // squared sine against the previous iterate
        bool degenerate = false;
    };
    std::vector<std::vector<Step>> per_vector; // [r][iteration]
};

struct CoordinateResult {
    AlgebraicCoordinates coords;
    IterationTrace trace;
};

// One simultaneous relaxation sweep; every update reads x_prev only, so the
// result is independent of node visitation order. Nodes without neighbors
// (or with zero total neighbor weight) keep their previous coordinate.
inline void jor_sweep(const StarExpansion& g, std::span<const double> x_prev, double omega,
                      std::span<double> out) {
    const int n = g.size();
    for (int node = 0; node < n; ++node) {
        const double denom = g.neighbor_weight_sum[node];
        if (!(denom > 0.0)) {
            out[node] = x_prev[node];
            continue;
        }
        double acc = 0.0;
        for (int u : g.adjacent(node)) acc += g.node_weight[u] * x_prev[u];
        out[node] = omega * (acc / denom) + (1.0 - omega) * x_prev[node];
    }
}

inline std::vector<double> jor_sweep(const StarExpansion& g, std::span<const double> x_prev,
                                     double omega) {
    std::vector<double> out(x_prev.size());
    jor_sweep(g, x_prev, omega, out);
    return out;
}

struct RescaleResult {
    double alpha = 0.0;
    double beta = 0.0;
    bool degenerate = false;
};

// Affine map (x - lo) / (hi - lo) - 0.5; afterwards min = -0.5 and max = 0.5
// exactly. An all-equal row is degenerate and maps to all zeros.
inline RescaleResult rescale_inplace(std::span<double> x) {
    if (x.empty()) return {0.0, 0.0, true};
    double lo = x[0], hi = x[0];
    for (double v : x) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi == lo) {
        std::fill(x.begin(), x.end(), 0.0);
        return {0.0, 0.0, true};
    }
    const double range = hi - lo;
    for (double& v : x) v = (v - lo) / range - 0.5;
    return {1.0 / range, -(hi + lo) / (2.0 * range), false};
}

inline std::vector<double> rescale(std::vector<double> x) {
    rescale_inplace(x);
    return x;
}

// Squared sine of the angle between two iterates: 1 - <a/|a|, b/|b|>^2.
// A zero-norm input is reported as 1 with the degenerate flag set.
inline double iterate_angle(std::span<const double> a, std::span<const double> b,
                            bool* degenerate = nullptr) {
    double na = 0.0, nb = 0.0, dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        na += a[i] * a[i];
        nb += b[i] * b[i];
        dot += a[i] * b[i];
    }
    if (!(na > 0.0) || !(nb > 0.0)) {
        if (degenerate) *degenerate = true;
        return 1.0;
    }
    const double cos2 = (dot * dot) / (na * nb);
    return std::clamp(1.0 - cos2, 0.0, 1.0);
}

// Uniform initialization on the open interval (-0.5, 0.5).
inline std::vector<double> random_coordinates(const StarExpansion& g, Rng& rng) {
    std::vector<double> x(g.size());
    for (double& v : x) v = rng.uniform_open(-0.5, 0.5);
    return x;
}

// Runs num_iter sweeps (each followed by a rescale) for each of the
// num_random starting vectors. Vector r draws its stream from
// mix_seed(seed, r), so runs are reproducible and schedule-independent.
inline CoordinateResult compute_coordinates(const StarExpansion& g, const AlgdConfig& cfg) {
    cfg.validate();
    CoordinateResult res;
    res.coords.x.resize(cfg.num_random);
    res.coords.iterations_run = cfg.num_iter;
    res.trace.per_vector.resize(cfg.num_random);
    if (cfg.record_history) res.coords.history.resize(cfg.num_random);

    std::vector<double> next(g.size());
    for (int r = 0; r < cfg.num_random; ++r) {
        Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        std::vector<double> x = random_coordinates(g, rng);
        auto& steps = res.trace.per_vector[r];
        steps.reserve(cfg.num_iter);
        if (cfg.record_history) res.coords.history[r].push_back(x);

        for (int it = 0; it < cfg.num_iter; ++it) {
            jor_sweep(g, x, cfg.omega, next);
            const RescaleResult rs = rescale_inplace(next);
            IterationTrace::Step step{rs.alpha, rs.beta, 1.0, rs.degenerate};
            bool angle_degenerate = false;
            step.angle = iterate_angle(x, next, &angle_degenerate);
            step.degenerate = step.degenerate || angle_degenerate;
            x.swap(next);
            steps.push_back(step);
            if (cfg.record_history) res.coords.history[r].push_back(x);
        }
        res.coords.x[r] = std::move(x);
    }
    return res;
}

// alg_weight(e) = 1 / max(floor, widest pin coordinate spread over all
// random vectors). Only original-vertex coordinates are read.
inline std::vector<double> algebraic_weights(const Hypergraph& h,
                                             const AlgebraicCoordinates& coords,
                                             double floor_value) {
    if (!(floor_value > 0.0)) throw ValidationError("distance floor must be positive");
    std::vector<double> out(h.num_edges());
    for (int e = 0; e < h.num_edges(); ++e) {
        double spread = 0.0;
        for (const auto& row : coords.x) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -std::numeric_limits<double>::infinity();
            for (int v : h.pins(e)) {
                lo = std::min(lo, row[v]);
                hi = std::max(hi, row[v]);
            }
            spread = std::max(spread, hi - lo);
        }
        out[e] = 1.0 / std::max(floor_value, spread);
    }
    return out;
}

// w~(e) = w(e) * alg_weight(e) / mean(alg_weight); the mean keeps the
// re-weighted instance on the original weight scale.
inline std::vector<double> scaled_weights(const Hypergraph& h,
                                          std::span<const double> alg_weights) {
    if (h.num_edges() == 0) throw ValidationError("no hyperedges to re-weight");
    double mean = 0.0;
    for (double w : alg_weights) mean += w;
    mean /= h.num_edges();
    std::vector<double> out(h.num_edges());
    for (int e = 0; e < h.num_edges(); ++e)
        out[e] = h.edge_weight(e) * alg_weights[e] / mean;
    return out;
}

} // namespace hgpart
