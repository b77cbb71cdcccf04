#include <gtest/gtest.h>

#include <set>

#include "hgpart/multilevel.hpp"
#include "hgpart/rng.hpp"
#include "test_support.hpp"

using hgpart::Hierarchy;
using hgpart::Hypergraph;
using hgpart::Partition;
using hgpart::PartitionConfig;
using hgpart::Rng;
using hgpart::VCycleStats;
namespace ts = testing_support;

namespace {

Hypergraph chain(int n) {
    std::vector<std::vector<int>> pins;
    for (int i = 0; i + 1 < n; ++i) pins.push_back({i, i + 1});
    return Hypergraph::build(n, std::move(pins));
}

// four vertices bound tightly together, offset into a larger id space
void add_block(std::vector<std::vector<int>>& pins, int offset) {
    pins.push_back({offset, offset + 1, offset + 2, offset + 3});
    pins.push_back({offset, offset + 1});
    pins.push_back({offset + 2, offset + 3});
    pins.push_back({offset + 1, offset + 2});
}

} // namespace

TEST(BuildHierarchy, SmallInputNeedsNoLevels) {
    const Hypergraph h = chain(16);
    PartitionConfig cfg; // coarsest size defaults to 100
    EXPECT_TRUE(hgpart::build_hierarchy(h, cfg).empty());
}

TEST(BuildHierarchy, ChainCoarsensMonotonically) {
    const Hypergraph h = chain(64);
    PartitionConfig cfg;
    cfg.coarsest_size = 8;
    cfg.coarsening_mode = hgpart::CoarseningMode::plain;
    const Hierarchy hier = hgpart::build_hierarchy(h, cfg);
    ASSERT_GE(hier.levels.size(), 3u);
    int prev = h.num_vertices();
    for (const auto& level : hier.levels) {
        EXPECT_LT(level.coarse.num_vertices(), prev);
        prev = level.coarse.num_vertices();
    }
}

TEST(BuildHierarchy, EdgelessInputStallsImmediately) {
    const Hypergraph h = Hypergraph::build(150, {});
    PartitionConfig cfg;
    EXPECT_TRUE(hgpart::build_hierarchy(h, cfg).empty());
}

TEST(Bipartition, RecoversPlantedCut) {
    std::vector<std::vector<int>> pins;
    add_block(pins, 0);
    add_block(pins, 4);
    pins.push_back({2, 5}); // single crossing hyperedge
    const Hypergraph h = Hypergraph::build(8, std::move(pins));

    const auto brute = ts::brute_force_bipartition(h, 1.05);
    ASSERT_TRUE(brute.feasible);
    ASSERT_DOUBLE_EQ(brute.best_cut, 1.0);

    PartitionConfig cfg;
    cfg.seed = 3;
    const Partition p = hgpart::bipartition(h, cfg);
    EXPECT_DOUBLE_EQ(p.cut, 1.0);
    EXPECT_LE(p.imbalance, 1.05);
    EXPECT_TRUE(p.balance_feasible);
}

TEST(Bipartition, SingleCoveringEdgeIsAlwaysCut) {
    const Hypergraph h = Hypergraph::build(6, {{0, 1, 2, 3, 4, 5}}, {}, {2.5});
    PartitionConfig cfg;
    const Partition p = hgpart::bipartition(h, cfg);
    EXPECT_DOUBLE_EQ(p.cut, 2.5);
}

TEST(Bipartition, CachedMetricsMatchOracles) {
    Rng rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        const Hypergraph h = ts::random_hypergraph(rng, 10, 12, /*unit_weights=*/true);
        PartitionConfig cfg;
        cfg.seed = trial;
        const Partition p = hgpart::bipartition(h, cfg);
        EXPECT_EQ(p.cut, ts::cut_oracle(h, p));
        EXPECT_EQ(p.connectivity, ts::connectivity_oracle(h, p));
        EXPECT_NEAR(p.imbalance, ts::imbalance_oracle(h, p), 1e-12);
    }
}

TEST(PartitionKway, SinglePartIsTrivial) {
    const Hypergraph h = chain(5);
    PartitionConfig cfg;
    cfg.k = 1;
    const Partition p = hgpart::partition(h, cfg);
    EXPECT_DOUBLE_EQ(p.cut, 0.0);
    EXPECT_DOUBLE_EQ(p.imbalance, 1.0);
    for (int id : p.part_of) EXPECT_EQ(id, 0);
}

TEST(PartitionKway, FourBlocksSplitCleanly) {
    std::vector<std::vector<int>> pins;
    for (int b = 0; b < 4; ++b) add_block(pins, 4 * b);
    const Hypergraph h = Hypergraph::build(16, std::move(pins));
    PartitionConfig cfg;
    cfg.k = 4;
    cfg.seed = 1;
    const Partition p = hgpart::partition(h, cfg);
    EXPECT_DOUBLE_EQ(p.cut, 0.0);
    EXPECT_DOUBLE_EQ(ts::cut_oracle(h, p), 0.0);
    EXPECT_DOUBLE_EQ(p.imbalance, 1.0);

    // each block lands in one part, parts relabeled contiguously
    std::set<int> parts_seen;
    for (int b = 0; b < 4; ++b) {
        for (int v = 1; v < 4; ++v) EXPECT_EQ(p.part_of[4 * b + v], p.part_of[4 * b]);
        parts_seen.insert(p.part_of[4 * b]);
    }
    EXPECT_EQ(parts_seen, (std::set<int>{0, 1, 2, 3}));
}

TEST(PartitionKway, ThreeWayRespectsWeightCap) {
    std::vector<std::vector<int>> pins;
    for (int i = 0; i < 9; ++i) pins.push_back({i, (i + 1) % 9});
    const Hypergraph h = Hypergraph::build(9, std::move(pins));
    PartitionConfig cfg;
    cfg.k = 3;
    cfg.seed = 2;
    const Partition p = hgpart::partition(h, cfg);
    std::vector<double> weight(3, 0.0);
    for (int v = 0; v < 9; ++v) weight[p.part_of[v]] += 1.0;
    for (double w : weight) EXPECT_LE(w, std::ceil(9.0 * 1.05 / 3.0));
    EXPECT_LE(p.imbalance, 1.05 + 1e-12);
}

TEST(PartitionKway, CompoundedBisectionsStayInsideGlobalTolerance) {
    Rng rng(75);
    for (int trial = 0; trial < 8; ++trial) {
        const Hypergraph h = ts::powerlaw_hypergraph(rng, 96 + 8 * trial, 130);
        for (int k : {3, 4, 5, 8}) {
            PartitionConfig cfg;
            cfg.k = k;
            cfg.seed = trial;
            cfg.coarsest_size = 30;
            const Partition p = hgpart::partition(h, cfg);
            EXPECT_LE(p.imbalance, cfg.max_imbalance + 1e-12)
                << "k=" << k << " trial=" << trial;
            EXPECT_TRUE(p.balance_feasible);
        }
    }
}

TEST(PartitionKway, MorePartsThanVerticesThrows) {
    const Hypergraph h = chain(3);
    PartitionConfig cfg;
    cfg.k = 4;
    EXPECT_THROW(hgpart::partition(h, cfg), hgpart::ValidationError);
}

TEST(PartitionKway, DeterministicGivenSeed) {
    Rng rng(72);
    const Hypergraph h = ts::powerlaw_hypergraph(rng, 60, 90);
    PartitionConfig cfg;
    cfg.k = 4;
    cfg.seed = 9;
    cfg.coarsest_size = 20;
    const Partition a = hgpart::partition(h, cfg);
    const Partition b = hgpart::partition(h, cfg);
    EXPECT_EQ(a.part_of, b.part_of);
    EXPECT_EQ(a.cut, b.cut);
}

TEST(VCycle, CutMonotoneAcrossRefineAndExactAcrossProject) {
    Rng rng(73);
    for (int trial = 0; trial < 6; ++trial) {
        const Hypergraph h = ts::powerlaw_hypergraph(rng, 120, 160);
        for (auto mode : {hgpart::CoarseningMode::plain, hgpart::CoarseningMode::algebraic}) {
            PartitionConfig cfg;
            cfg.coarsening_mode = mode;
            cfg.coarsest_size = 24;
            cfg.seed = trial;
            VCycleStats stats;
            const Partition p = hgpart::bipartition(h, cfg, &stats);
            EXPECT_GT(stats.levels, 0);
            for (const auto& step : stats.steps) {
                EXPECT_NEAR(step.cut_after_project, step.cut_before_project,
                            1e-9 * std::max(1.0, step.cut_before_project));
                EXPECT_LE(step.cut_after_refine, step.cut_after_project + 1e-9);
            }
            EXPECT_LE(p.imbalance, cfg.max_imbalance + 1e-12);
        }
    }
}

TEST(VCycle, FinestCutNoWorseThanCoarsestInitial) {
    Rng rng(74);
    for (int trial = 0; trial < 5; ++trial) {
        const Hypergraph h = ts::powerlaw_hypergraph(rng, 100, 140);
        PartitionConfig cfg;
        cfg.coarsest_size = 20;
        cfg.seed = trial;
        VCycleStats stats;
        const Partition p = hgpart::bipartition(h, cfg, &stats);
        EXPECT_LE(p.cut, stats.coarsest_cut + 1e-9);
    }
}
