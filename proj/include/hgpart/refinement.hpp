// refinement.hpp - initial bipartitioning, FM refinement, projection
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "hgpart/coarsening.hpp"
#include "hgpart/errors.hpp"
#include "hgpart/hypergraph.hpp"
#include "hgpart/partition.hpp"
#include "hgpart/rng.hpp"

namespace hgpart {

struct RefineConfig {
    double max_imbalance = 1.05; // > 1; 1.05 allows 5% above average
    int fm_passes = 10;
    int initial_trials = 10;
    std::uint64_t seed = 0;
    bool verify_gains = false; // recount the cut after every move (tests)

    void validate() const {
        if (!(max_imbalance > 1.0)) throw ValidationError("imbalance tolerance must exceed 1");
        if (fm_passes < 1) throw ValidationError("need at least one refinement pass");
        if (initial_trials < 1) throw ValidationError("need at least one initial trial");
    }
};

// Relative side targets for a bisection; recursive k-way splits use uneven
// fractions (e.g. 2/3 vs 1/3). target0 + target1 must be 1.
struct BipartTargets {
    double target0 = 0.5;
    double target1 = 0.5;
};

namespace detail {

constexpr double kBalanceEps = 1e-12;

struct SideState {
    std::array<double, 2> weight{0.0, 0.0};
    std::array<double, 2> capacity{0.0, 0.0};

    double overload() const {
        return std::max(weight[0] / capacity[0], weight[1] / capacity[1]);
    }
    bool feasible() const { return overload() <= 1.0 + kBalanceEps; }
};

inline std::array<double, 2> side_capacities(const Hypergraph& h, const RefineConfig& cfg,
                                             BipartTargets t) {
    const double total = h.total_vertex_weight();
    if (!(total > 0.0)) throw ValidationError("refinement requires positive total vertex weight");
    if (!(t.target0 > 0.0 && t.target1 > 0.0))
        throw ValidationError("side targets must be positive");
    return {t.target0 * total * cfg.max_imbalance, t.target1 * total * cfg.max_imbalance};
}

} // namespace detail

// Fiduccia-Mattheyses passes on a bipartition, hyperedge-cut objective.
//
// Each pass computes move gains with the critical-net rule (+w(e) when the
// mover is its part's only pin on e, -w(e) when e is currently uncut), then
// repeatedly moves the best feasible unlocked vertex and locks it. Moves may
// transiently overshoot a side capacity by up to one maximum vertex weight;
// when the state is already over capacity only overload-reducing moves are
// legal. The pass rolls back to its best prefix: feasible prefixes are
// ranked by (cut, overload), and when the input itself is infeasible a
// prefix qualifies as long as it does not worsen the overload. The 0-move
// prefix always qualifies, so the returned cut never exceeds the input cut.
inline Partition fm_refine(const Hypergraph& h, const Partition& input, const RefineConfig& cfg,
                           BipartTargets targets = {}) {
    cfg.validate();
    if (input.k != 2) throw ValidationError("FM refinement expects a bipartition");
    detail::check_assignment(h, input);

    const int n = h.num_vertices();
    const int m = h.num_edges();

    detail::SideState state;
    state.capacity = detail::side_capacities(h, cfg, targets);
    std::vector<int> side(input.part_of);
    for (int v = 0; v < n; ++v) state.weight[side[v]] += h.vertex_weight(v);
    const double slack = h.max_vertex_weight();

    std::vector<std::array<int, 2>> pin_count(m);
    std::vector<double> gain(n);
    std::vector<char> locked(n);

    // ordered by gain descending, vertex id ascending
    struct GainOrder {
        bool operator()(const std::pair<double, int>& a, const std::pair<double, int>& b) const {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        }
    };
    std::set<std::pair<double, int>, GainOrder> queue;

    const auto recount_cut = [&]() {
        double c = 0.0;
        for (int e = 0; e < m; ++e)
            if (pin_count[e][0] > 0 && pin_count[e][1] > 0) c += h.edge_weight(e);
        return c;
    };

    double cut = 0.0;
    for (int pass = 0; pass < cfg.fm_passes; ++pass) {
        for (int e = 0; e < m; ++e) {
            pin_count[e] = {0, 0};
            for (int v : h.pins(e)) ++pin_count[e][side[v]];
        }
        cut = recount_cut();
        const double pass_start_cut = cut;
        const double input_overload = state.overload();

        queue.clear();
        std::fill(locked.begin(), locked.end(), 0);
        for (int v = 0; v < n; ++v) {
            double g = 0.0;
            for (int e : h.incident_edges(v)) {
                if (pin_count[e][side[v]] == 1) g += h.edge_weight(e);
                if (pin_count[e][1 - side[v]] == 0) g -= h.edge_weight(e);
            }
            gain[v] = g;
            queue.insert({g, v});
        }

        struct Move {
            int vertex;
            int from;
        };
        std::vector<Move> moves;
        moves.reserve(n);

        // prefix 0 = pass start
        std::size_t best_index = 0;
        double best_cut = cut;
        double best_overload = input_overload;
        const bool input_feasible = input_overload <= 1.0 + detail::kBalanceEps;
        bool best_feasible = input_feasible;

        const auto update_gain = [&](int u, double delta) {
            if (locked[u]) return;
            queue.erase({gain[u], u});
            gain[u] += delta;
            queue.insert({gain[u], u});
        };

        while (!queue.empty()) {
            // best legal move
            int v = -1;
            for (const auto& [g, cand] : queue) {
                const int from = side[cand];
                const int to = 1 - from;
                const double wv = h.vertex_weight(cand);
                const double new_to = state.weight[to] + wv;
                const double new_overload = std::max((state.weight[from] - wv) / state.capacity[from],
                                                     new_to / state.capacity[to]);
                if (new_to <= state.capacity[to] + slack ||
                    new_overload < state.overload() - detail::kBalanceEps) {
                    v = cand;
                    break;
                }
            }
            if (v < 0) break;

            const int from = side[v];
            const int to = 1 - from;
            queue.erase({gain[v], v});
            locked[v] = 1;
            cut -= gain[v];
            state.weight[from] -= h.vertex_weight(v);
            state.weight[to] += h.vertex_weight(v);

            for (int e : h.incident_edges(v)) {
                const double we = h.edge_weight(e);
                auto pins = h.pins(e);
                int& fc = pin_count[e][from];
                int& tc = pin_count[e][to];
                if (tc == 0) {
                    for (int u : pins)
                        if (u != v) update_gain(u, +we);
                } else if (tc == 1) {
                    for (int u : pins)
                        if (u != v && side[u] == to) update_gain(u, -we);
                }
                --fc;
                ++tc;
                if (fc == 0) {
                    for (int u : pins)
                        if (u != v) update_gain(u, -we);
                } else if (fc == 1) {
                    for (int u : pins)
                        if (u != v && side[u] == from) update_gain(u, +we);
                }
            }
            side[v] = to;
            moves.push_back({v, from});

            if (cfg.verify_gains) {
                const double fresh = recount_cut();
                if (std::abs(fresh - cut) > 1e-9)
                    throw OracleError("FM incremental cut drifted from recount");
            }

            const double overload = state.overload();
            const bool feasible = overload <= 1.0 + detail::kBalanceEps;
            const bool valid =
                feasible || (!input_feasible && overload <= input_overload + detail::kBalanceEps);
            if (!valid) continue;
            const bool better = (feasible && !best_feasible && cut <= best_cut) ||
                                ((feasible || !best_feasible) &&
                                 (cut < best_cut - 1e-15 ||
                                  (cut <= best_cut && overload < best_overload - detail::kBalanceEps)));
            if (better) {
                best_index = moves.size();
                best_cut = cut;
                best_overload = overload;
                best_feasible = feasible;
            }
        }

        // roll back to the best prefix
        for (std::size_t i = moves.size(); i > best_index; --i) {
            const auto& mv = moves[i - 1];
            const int cur = side[mv.vertex];
            side[mv.vertex] = mv.from;
            state.weight[cur] -= h.vertex_weight(mv.vertex);
            state.weight[mv.from] += h.vertex_weight(mv.vertex);
        }
        cut = best_cut;

        if (!(pass_start_cut - best_cut > 1e-12 * std::max(1.0, pass_start_cut))) break;
    }

    Partition out;
    out.k = 2;
    out.part_of = std::move(side);
    out.balance_feasible = state.feasible();
    out.update_metrics(h);
    return out;
}

// Best of initial_trials runs of {greedy random balanced assignment, FM}.
// Feasible results win over infeasible ones, then lower cut, then lower
// overload. Infeasibility (e.g. one vertex heavier than a side capacity)
// is reported through balance_feasible, never a crash.
inline Partition initial_partition(const Hypergraph& h, const RefineConfig& cfg,
                                   BipartTargets targets = {}) {
    cfg.validate();
    if (h.num_vertices() == 0) throw ValidationError("cannot partition an empty hypergraph");
    const auto capacity = detail::side_capacities(h, cfg, targets);
    const std::array<double, 2> target_weight = {targets.target0 * h.total_vertex_weight(),
                                                 targets.target1 * h.total_vertex_weight()};

    Partition best;
    bool have_best = false;
    double best_overload = 0.0;

    std::vector<int> order(h.num_vertices());
    for (int trial = 0; trial < cfg.initial_trials; ++trial) {
        Rng rng(mix_seed(cfg.seed, 0x7261 + static_cast<std::uint64_t>(trial)));
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);

        Partition p;
        p.k = 2;
        p.part_of.assign(h.num_vertices(), 0);
        std::array<double, 2> weight{0.0, 0.0};
        for (int v : order) {
            const double wv = h.vertex_weight(v);
            const double fill0 = (weight[0] + wv) / target_weight[0];
            const double fill1 = (weight[1] + wv) / target_weight[1];
            const int s = fill1 < fill0 ? 1 : 0;
            p.part_of[v] = s;
            weight[s] += wv;
        }

        Partition refined = fm_refine(h, p, cfg, targets);
        std::array<double, 2> w{0.0, 0.0};
        for (int v = 0; v < h.num_vertices(); ++v)
            w[refined.part_of[v]] += h.vertex_weight(v);
        const double overload = std::max(w[0] / capacity[0], w[1] / capacity[1]);

        const bool better =
            !have_best ||
            (refined.balance_feasible && !best.balance_feasible) ||
            (refined.balance_feasible == best.balance_feasible &&
             (refined.cut < best.cut - 1e-15 ||
              (refined.cut <= best.cut && overload < best_overload - detail::kBalanceEps)));
        if (better) {
            best = std::move(refined);
            best_overload = overload;
            have_best = true;
        }
    }
    return best;
}

// Interpolation: each fine vertex inherits its coarse vertex's part. Cut,
// connectivity and imbalance carry over exactly (coarse weights are sums of
// the fine weights and merged edges preserve total weight).
inline Partition project(const Partition& coarse, const CoarseningLevel& level) {
    if (static_cast<int>(coarse.part_of.size()) != level.coarse.num_vertices())
        throw ValidationError("partition does not match the coarse hypergraph");
    Partition fine;
    fine.k = coarse.k;
    fine.part_of.resize(level.map.size());
    for (std::size_t v = 0; v < level.map.size(); ++v)
        fine.part_of[v] = coarse.part_of[level.map[v]];
    fine.cut = coarse.cut;
    fine.connectivity = coarse.connectivity;
    fine.imbalance = coarse.imbalance;
    fine.balance_feasible = coarse.balance_feasible;
    return fine;
}

} // namespace hgpart
