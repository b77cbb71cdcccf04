// multilevel.hpp - V-cycle orchestration and recursive k-way bisection
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "hgpart/coarsening.hpp"
#include "hgpart/errors.hpp"
#include "hgpart/hypergraph.hpp"
#include "hgpart/partition.hpp"
#include "hgpart/refinement.hpp"
#include "hgpart/rng.hpp"

namespace hgpart {

struct PartitionConfig {
    int k = 2;
    double max_imbalance = 1.05;
    CoarseningMode coarsening_mode = CoarseningMode::algebraic;
    AlgdConfig algd;
    RefineConfig refine;
    int coarsest_size = 0;      // 0 -> max(100, 10k)
    double min_reduction = 0.1; // stop when a level shrinks less than this
    std::uint64_t seed = 0;

    int effective_coarsest_size() const {
        return coarsest_size > 0 ? coarsest_size : std::max(100, 10 * k);
    }

    void validate() const {
        if (k < 1) throw ValidationError("part count must be >= 1");
        if (!(max_imbalance > 1.0)) throw ValidationError("imbalance tolerance must exceed 1");
        if (effective_coarsest_size() < 2) throw ValidationError("coarsest size must be >= 2");
        if (!(min_reduction > 0.0 && min_reduction < 1.0))
            throw ValidationError("min reduction must lie in (0, 1)");
        algd.validate();
        refine.validate();
    }
};

// Fine-to-coarse levels; vertex counts strictly decrease.
struct Hierarchy {
    std::vector<CoarseningLevel> levels;

    bool empty() const { return levels.empty(); }
    const Hypergraph& coarsest(const Hypergraph& finest) const {
        return levels.empty() ? finest : levels.back().coarse;
    }
};

// Per-level cut bookkeeping of one or more V-cycles, for invariant checks
// and reporting. Cuts are from-scratch recounts, not cached values.
struct VCycleStats {
    struct LevelStep {
        int level = 0;
        double cut_before_project = 0.0; // on the coarse hypergraph
        double cut_after_project = 0.0;  // recounted on the fine hypergraph
        double cut_after_refine = 0.0;
    };
    std::vector<LevelStep> steps;
    int levels = 0;          // deepest hierarchy encountered
    double coarsest_cut = 0.0;
};

namespace detail {

inline std::uint64_t level_stream(std::uint64_t seed, int level) {
    return mix_seed(seed, 0x6c76ull + static_cast<std::uint64_t>(level));
}

// A cluster may not outgrow min_target * total / tol, and it should also
// stay small enough that a greedy assignment of coarsest vertices can reach
// the balance target: lighter-side filling overshoots by at most half the
// heaviest vertex, which stays inside the tolerance as long as no cluster
// exceeds 2 * min_target * (tol - 1) * total. The coarsest-size term keeps
// that guarantee from blocking an explicitly requested deep hierarchy.
inline double max_cluster_weight(double total_weight, double min_target, double tol,
                                 int coarsest_size) {
    const double cap = min_target * total_weight / tol;
    const double feasibility_cap = 2.0 * min_target * (tol - 1.0) * total_weight;
    const double granularity_cap = 2.0 * total_weight / coarsest_size;
    return std::min(cap, std::max(feasibility_cap, granularity_cap));
}

inline Hierarchy build_hierarchy_impl(const Hypergraph& h, CoarsenConfig cc, int coarsest_size,
                                      double min_reduction, std::uint64_t seed) {
    Hierarchy hier;
    const Hypergraph* current = &h;
    int level_index = 0;
    while (current->num_vertices() > coarsest_size) {
        CoarseningLevel level = coarsen_level(*current, cc, level_stream(seed, level_index));
        const int before = current->num_vertices();
        const int after = level.coarse.num_vertices();
        if (after >= before) break; // nothing merged
        level.level_index = level_index++;
        hier.levels.push_back(std::move(level));
        current = &hier.levels.back().coarse;
        if (after > (1.0 - min_reduction) * before) break; // stalled
    }
    return hier;
}

// One multilevel bipartition with explicit side targets and a per-step
// imbalance tolerance (recursive bisection apportions the global one).
inline Partition bipartition_impl(const Hypergraph& h, const PartitionConfig& cfg,
                                  BipartTargets targets, double tol_step, std::uint64_t seed,
                                  VCycleStats* stats) {
    CoarsenConfig cc;
    cc.mode = cfg.coarsening_mode;
    cc.algd = cfg.algd;
    cc.max_cluster_weight =
        max_cluster_weight(h.total_vertex_weight(), std::min(targets.target0, targets.target1),
                           tol_step, cfg.effective_coarsest_size());

    const Hierarchy hier = build_hierarchy_impl(h, cc, cfg.effective_coarsest_size(),
                                                cfg.min_reduction, seed);

    RefineConfig rcfg = cfg.refine;
    rcfg.max_imbalance = tol_step;
    rcfg.seed = mix_seed(seed, 0x696eull);

    Partition p = initial_partition(hier.coarsest(h), rcfg, targets);
    if (stats) {
        stats->levels = std::max(stats->levels, static_cast<int>(hier.levels.size()));
        stats->coarsest_cut = hyperedge_cut(hier.coarsest(h), p);
    }

    for (int i = static_cast<int>(hier.levels.size()) - 1; i >= 0; --i) {
        const Hypergraph& fine = i == 0 ? h : hier.levels[i - 1].coarse;
        const double coarse_cut = hyperedge_cut(hier.levels[i].coarse, p);
        p = project(p, hier.levels[i]);
        const double projected_cut = hyperedge_cut(fine, p);
        p = fm_refine(fine, p, rcfg, targets);
        const double refined_cut = hyperedge_cut(fine, p);
        if (stats)
            stats->steps.push_back({hier.levels[i].level_index, coarse_cut, projected_cut,
                                    refined_cut});
    }
    return p;
}

inline int ceil_log2(int k) {
    return k <= 1 ? 0 : std::bit_width(static_cast<unsigned>(k - 1));
}

// tol_step is uniform across the whole recursion (the root imbalance raised
// to 1/total_depth): any root-to-leaf path multiplies at most total_depth of
// them, so the compounded splits never overshoot the global constraint.
inline void partition_recursive(const Hypergraph& sub, int k, const PartitionConfig& cfg,
                                double tol_step, std::uint64_t seed,
                                const std::vector<int>& to_parent, std::vector<int>& out,
                                int part_offset, VCycleStats* stats) {
    if (k == 1) {
        for (int v : to_parent) out[v] = part_offset;
        return;
    }
    if (k > sub.num_vertices()) {
        // under-filled branch; spread what we have and leave parts empty
        for (std::size_t i = 0; i < to_parent.size(); ++i)
            out[to_parent[i]] = part_offset + static_cast<int>(i) % k;
        return;
    }

    const int k0 = (k + 1) / 2;
    const int k1 = k / 2;
    const BipartTargets targets{static_cast<double>(k0) / k, static_cast<double>(k1) / k};

    const Partition bp = bipartition_impl(sub, cfg, targets, tol_step, seed, stats);

    if (k0 == 1 && k1 == 1) {
        for (std::size_t v = 0; v < to_parent.size(); ++v)
            out[to_parent[v]] = part_offset + bp.part_of[v];
        return;
    }

    // induced sub-hypergraphs: a side keeps exactly the edges it fully
    // contains (a cut edge is already paid under the cut objective)
    for (int s = 0; s < 2; ++s) {
        std::vector<int> local(sub.num_vertices(), -1);
        std::vector<int> child_parent;
        for (int v = 0; v < sub.num_vertices(); ++v) {
            if (bp.part_of[v] != s) continue;
            local[v] = static_cast<int>(child_parent.size());
            child_parent.push_back(to_parent[v]);
        }
        std::vector<std::vector<int>> pins;
        std::vector<double> edge_weights;
        for (int e = 0; e < sub.num_edges(); ++e) {
            bool inside = true;
            for (int v : sub.pins(e))
                if (bp.part_of[v] != s) {
                    inside = false;
                    break;
                }
            if (!inside) continue;
            std::vector<int> mapped;
            mapped.reserve(sub.edge_size(e));
            for (int v : sub.pins(e)) mapped.push_back(local[v]);
            pins.push_back(std::move(mapped));
            edge_weights.push_back(sub.edge_weight(e));
        }
        std::vector<double> vertex_weights(child_parent.size());
        for (int v = 0; v < sub.num_vertices(); ++v)
            if (local[v] >= 0) vertex_weights[local[v]] = sub.vertex_weight(v);

        const Hypergraph child = Hypergraph::build(static_cast<int>(child_parent.size()),
                                                   std::move(pins), std::move(vertex_weights),
                                                   std::move(edge_weights));
        partition_recursive(child, s == 0 ? k0 : k1, cfg, tol_step, mix_seed(seed, 1 + s),
                            child_parent, out, part_offset + (s == 0 ? 0 : k0), stats);
    }
}

} // namespace detail

// Coarsens until the vertex count drops to coarsest_size, re-deriving
// algebraic weights at every level; stops early when a level shrinks by
// less than min_reduction.
inline Hierarchy build_hierarchy(const Hypergraph& h, const PartitionConfig& cfg) {
    cfg.validate();
    CoarsenConfig cc;
    cc.mode = cfg.coarsening_mode;
    cc.algd = cfg.algd;
    cc.max_cluster_weight = detail::max_cluster_weight(
        h.total_vertex_weight(), 1.0 / cfg.k, cfg.max_imbalance, cfg.effective_coarsest_size());
    return detail::build_hierarchy_impl(h, cc, cfg.effective_coarsest_size(), cfg.min_reduction,
                                        cfg.seed);
}

// Full V-cycle bipartition: hierarchy, coarsest solve, project + refine back
// to the finest level.
inline Partition bipartition(const Hypergraph& h, const PartitionConfig& cfg,
                             VCycleStats* stats = nullptr) {
    cfg.validate();
    if (h.num_vertices() == 0) throw ValidationError("cannot partition an empty hypergraph");
    Partition p = detail::bipartition_impl(h, cfg, BipartTargets{}, cfg.max_imbalance, cfg.seed,
                                           stats);
    p.update_metrics(h);
    p.balance_feasible = p.imbalance <= cfg.max_imbalance + detail::kBalanceEps;
    return p;
}

// k-way via recursive bisection with proportional side targets; each
// sub-bisection runs under tolerance max_imbalance^(1/depth) so the
// compounded splits respect the global constraint. Part ids are contiguous.
inline Partition partition(const Hypergraph& h, const PartitionConfig& cfg,
                           VCycleStats* stats = nullptr) {
    cfg.validate();
    if (cfg.k > h.num_vertices())
        throw ValidationError("cannot split " + std::to_string(h.num_vertices()) +
                              " vertices into " + std::to_string(cfg.k) + " parts");
    if (h.num_vertices() == 0) throw ValidationError("cannot partition an empty hypergraph");

    Partition p;
    p.k = cfg.k;
    p.part_of.assign(h.num_vertices(), 0);
    if (cfg.k > 1) {
        std::vector<int> identity(h.num_vertices());
        std::iota(identity.begin(), identity.end(), 0);
        const double tol_step =
            std::pow(cfg.max_imbalance, 1.0 / detail::ceil_log2(cfg.k));
        detail::partition_recursive(h, cfg.k, cfg, tol_step, cfg.seed, identity, p.part_of, 0,
                                    stats);
    }
    p.update_metrics(h);
    p.balance_feasible = p.imbalance <= cfg.max_imbalance + detail::kBalanceEps;
    return p;
}

} // namespace hgpart
