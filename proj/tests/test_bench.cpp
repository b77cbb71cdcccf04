#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hgpart/bench.hpp"
#include "hgpart/hgr_io.hpp"
#include "hgpart/multilevel.hpp"
#include "hgpart/rng.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
namespace bench = hgpart::bench;
namespace ts = testing_support;

namespace {

class BenchTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / "hgpart_bench_test";
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write_hgr(const std::string& name, const hgpart::Hypergraph& h) {
        const fs::path path = dir_ / name;
        std::ofstream out(path);
        hgpart::write_hgr(h, out);
        return path.string();
    }

    fs::path dir_;
};

} // namespace

TEST_F(BenchTest, SmokeSingleInputSingleRep) {
    hgpart::Rng rng(81);
    const std::string path = write_hgr("a.hgr", ts::powerlaw_hypergraph(rng, 40, 60));
    bench::Manifest m;
    m.inputs.push_back({path, {2}, {1.05}});
    m.repetitions = 1;
    const bench::BenchReport report = bench::run_bench(m);
    ASSERT_EQ(report.rows.size(), 1u);
    EXPECT_EQ(report.rows[0].status, "ok");
    EXPECT_EQ(report.rows[0].plain_cuts.size(), 1u);
    EXPECT_EQ(report.rows[0].algd_cuts.size(), 1u);
    const std::string csv = bench::to_csv(report);
    EXPECT_NE(csv.find("# hgpart-bench-csv v1"), std::string::npos);
    EXPECT_NE(csv.find("input,k,imbalance,best_cut_plain,best_cut_algd,ratio,status"),
              std::string::npos);
}

TEST_F(BenchTest, ZeroOverZeroRatioIsOne) {
    // two disconnected blocks split for free: both modes find cut 0
    const hgpart::Hypergraph h =
        hgpart::Hypergraph::build(8, {{0, 1, 2, 3}, {0, 1}, {2, 3}, {4, 5, 6, 7}, {4, 5}, {6, 7}});
    const std::string path = write_hgr("blocks.hgr", h);
    bench::Manifest m;
    m.inputs.push_back({path, {2}, {1.05}});
    m.repetitions = 3;
    const bench::BenchReport report = bench::run_bench(m);
    ASSERT_EQ(report.rows.size(), 1u);
    EXPECT_DOUBLE_EQ(report.rows[0].best_cut_plain, 0.0);
    EXPECT_DOUBLE_EQ(report.rows[0].best_cut_algd, 0.0);
    EXPECT_DOUBLE_EQ(report.rows[0].ratio_value, 1.0);
}

TEST_F(BenchTest, BestOfNIsMinimumOfRunLogs) {
    hgpart::Rng rng(82);
    const std::string path = write_hgr("b.hgr", ts::powerlaw_hypergraph(rng, 50, 70));
    bench::Manifest m;
    m.inputs.push_back({path, {2}, {1.1}});
    m.repetitions = 10;
    m.seed = 5;
    const bench::BenchReport report = bench::run_bench(m);
    ASSERT_EQ(report.rows.size(), 1u);
    const bench::Row& row = report.rows[0];
    ASSERT_EQ(row.plain_cuts.size(), 10u);
    ASSERT_EQ(row.algd_cuts.size(), 10u);
    EXPECT_DOUBLE_EQ(row.best_cut_plain,
                     *std::min_element(row.plain_cuts.begin(), row.plain_cuts.end()));
    EXPECT_DOUBLE_EQ(row.best_cut_algd,
                     *std::min_element(row.algd_cuts.begin(), row.algd_cuts.end()));

    // independent recount: rerun each logged seed directly
    const hgpart::Hypergraph h = bench::load_input(path);
    for (int rep = 0; rep < 10; ++rep) {
        hgpart::PartitionConfig cfg = m.base;
        cfg.k = 2;
        cfg.max_imbalance = 1.1;
        cfg.seed = m.seed + rep;
        cfg.coarsening_mode = hgpart::CoarseningMode::plain;
        EXPECT_DOUBLE_EQ(hgpart::partition(h, cfg).cut, row.plain_cuts[rep]);
        cfg.coarsening_mode = hgpart::CoarseningMode::algebraic;
        EXPECT_DOUBLE_EQ(hgpart::partition(h, cfg).cut, row.algd_cuts[rep]);
    }
}

TEST_F(BenchTest, DeterministicCsvAcrossRuns) {
    hgpart::Rng rng(83);
    const std::string a = write_hgr("c.hgr", ts::powerlaw_hypergraph(rng, 40, 55));
    const std::string b = write_hgr("d.hgr", ts::powerlaw_hypergraph(rng, 45, 60));
    bench::Manifest m;
    m.inputs.push_back({a, {2, 3}, {1.05}});
    m.inputs.push_back({b, {2}, {1.05, 1.2}});
    m.repetitions = 2;
    m.seed = 11;
    const std::string csv1 = bench::to_csv(bench::run_bench(m));
    const std::string csv2 = bench::to_csv(bench::run_bench(m));
    EXPECT_EQ(csv1, csv2);
}

TEST_F(BenchTest, RowsSortedByAscendingRatio) {
    hgpart::Rng rng(84);
    bench::Manifest m;
    for (int i = 0; i < 4; ++i)
        m.inputs.push_back(
            {write_hgr("s" + std::to_string(i) + ".hgr", ts::powerlaw_hypergraph(rng, 40, 60)),
             {2},
             {1.1}});
    m.repetitions = 2;
    const bench::BenchReport report = bench::run_bench(m);
    for (std::size_t i = 1; i < report.rows.size(); ++i)
        EXPECT_LE(report.rows[i - 1].ratio_value, report.rows[i].ratio_value);
}

TEST_F(BenchTest, MissingInputBecomesErrorRowAndRunContinues) {
    hgpart::Rng rng(85);
    const std::string good = write_hgr("good.hgr", ts::powerlaw_hypergraph(rng, 30, 40));
    bench::Manifest m;
    m.inputs.push_back({(dir_ / "missing.hgr").string(), {2}, {1.05}});
    m.inputs.push_back({good, {2}, {1.05}});
    m.repetitions = 1;
    const bench::BenchReport report = bench::run_bench(m);
    ASSERT_EQ(report.rows.size(), 2u);
    EXPECT_EQ(report.rows[0].status, "ok"); // error rows sort last
    EXPECT_NE(report.rows[1].status.find("error"), std::string::npos);
}

TEST_F(BenchTest, ManifestJsonParsing) {
    std::istringstream in(R"({
      "seed": 7,
      "repetitions": 3,
      "inputs": ["x.hgr", {"path": "y.mtx", "k": [2, 4], "imbalance": 1.2}],
      "config": {"omega": 0.4, "iters": 15, "rvecs": 3, "coarsest_size": 40}
    })");
    const bench::Manifest m = bench::parse_manifest_json(in);
    EXPECT_EQ(m.seed, 7u);
    EXPECT_EQ(m.repetitions, 3);
    ASSERT_EQ(m.inputs.size(), 2u);
    EXPECT_EQ(m.inputs[0].path, "x.hgr");
    EXPECT_EQ(m.inputs[0].k_values, (std::vector<int>{2}));
    EXPECT_EQ(m.inputs[1].k_values, (std::vector<int>{2, 4}));
    EXPECT_EQ(m.inputs[1].imbalances, (std::vector<double>{1.2}));
    EXPECT_DOUBLE_EQ(m.base.algd.omega, 0.4);
    EXPECT_EQ(m.base.algd.num_iter, 15);
    EXPECT_EQ(m.base.algd.num_random, 3);
    EXPECT_EQ(m.base.coarsest_size, 40);
}

TEST_F(BenchTest, InvalidManifestThrows) {
    std::istringstream bad_json("not json");
    EXPECT_THROW(bench::parse_manifest_json(bad_json), hgpart::ParseError);
    std::istringstream no_inputs(R"({"repetitions": 2, "inputs": []})");
    EXPECT_THROW(bench::parse_manifest_json(no_inputs), hgpart::ValidationError);
    std::istringstream bad_reps(R"({"repetitions": 0, "inputs": ["x.hgr"]})");
    EXPECT_THROW(bench::parse_manifest_json(bad_reps), hgpart::ValidationError);
}
