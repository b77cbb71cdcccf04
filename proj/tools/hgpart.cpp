// hgpart - multilevel hypergraph partitioner with algebraic-distance
// coarsening. Subcommands: partition, bench, verify.
#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hgpart/bench.hpp"
#include "hgpart/hgr_io.hpp"
#include "hgpart/io_util.hpp"
#include "hgpart/multilevel.hpp"
#include "hgpart/verification.hpp"

namespace {

int cmd_partition(const std::string& input, const std::string& output, int k, double imbalance,
                  const std::string& mode, double omega, int iters, int rvecs,
                  std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();

    const hgpart::Hypergraph h = hgpart::bench::load_input(input);
    hgpart::PartitionConfig cfg;
    cfg.k = k;
    cfg.max_imbalance = imbalance;
    cfg.coarsening_mode =
        mode == "plain" ? hgpart::CoarseningMode::plain : hgpart::CoarseningMode::algebraic;
    cfg.algd.omega = omega;
    cfg.algd.num_iter = iters;
    cfg.algd.num_random = rvecs;
    cfg.seed = seed;

    hgpart::VCycleStats stats;
    const hgpart::Partition p = hgpart::partition(h, cfg, &stats);

    const std::string out_path = output.empty() ? input + ".part" : output;
    std::ofstream out(out_path);
    if (!out) throw hgpart::ValidationError("cannot open output file: " + out_path);
    hgpart::write_partition(p, out);
    out.close();

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "cut=" << hgpart::io::format_number(p.cut)
              << " connectivity=" << hgpart::io::format_number(p.connectivity)
              << " imbalance=" << hgpart::io::format_number(p.imbalance)
              << " levels=" << stats.levels << " feasible=" << (p.balance_feasible ? 1 : 0)
              << " wall_time_s=" << wall << "\n";
    return 0;
}

int cmd_bench(const std::string& manifest_path, const std::string& output) {
    std::ifstream in(manifest_path);
    if (!in) throw hgpart::ValidationError("cannot open manifest: " + manifest_path);
    const hgpart::bench::Manifest manifest = hgpart::bench::parse_manifest_json(in);
    const hgpart::bench::BenchReport report = hgpart::bench::run_bench(manifest);
    const std::string csv = hgpart::bench::to_csv(report);
    if (output.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(output);
        if (!out) throw hgpart::ValidationError("cannot open output file: " + output);
        out << csv;
    }
    return 0;
}

int cmd_verify(int instances, std::uint64_t seed, double omega, const std::string& output) {
    const auto suite = hgpart::spectral::run_verification(instances, seed, omega);
    const std::string json = hgpart::spectral::report_json(suite);
    if (output.empty()) {
        std::cout << json;
    } else {
        std::ofstream out(output);
        if (!out) throw hgpart::ValidationError("cannot open output file: " + output);
        out << json;
    }
    if (!suite.all_pass) {
        std::cerr << "verification failed on instances:";
        for (const auto& r : suite.records)
            if (!r.pass) std::cerr << ' ' << r.id;
        std::cerr << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multilevel hypergraph partitioner with algebraic-distance coarsening"};
    app.require_subcommand(1);

    // partition
    std::string input, output, mode = "algd";
    int k = 2;
    double imbalance = 1.05, omega = 0.5;
    int iters = 20, rvecs = 5;
    std::uint64_t seed = 0;
    auto* part = app.add_subcommand("partition", "partition a .hgr or .mtx (row-net) file");
    part->add_option("--input", input, "input file (.hgr, or .mtx via the row-net model)")
        ->required();
    part->add_option("--output", output, "partition file path (default: <input>.part)");
    part->add_option("--k", k, "number of parts")->check(CLI::PositiveNumber);
    part->add_option("--imbalance", imbalance, "allowed imbalance, > 1")
        ->check(CLI::Range(1.0 + 1e-9, 100.0));
    part->add_option("--mode", mode, "coarsening mode")
        ->check(CLI::IsMember({"plain", "algd"}));
    part->add_option("--omega", omega, "relaxation factor in (0, 1)")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    part->add_option("--iters", iters, "relaxation sweeps per random vector")
        ->check(CLI::NonNegativeNumber);
    part->add_option("--rvecs", rvecs, "number of random vectors")->check(CLI::PositiveNumber);
    part->add_option("--seed", seed, "random seed");

    // bench
    std::string manifest_path, bench_output;
    auto* bench = app.add_subcommand("bench", "A/B-compare plain vs algebraic coarsening");
    bench->add_option("--manifest", manifest_path, "JSON manifest")->required();
    bench->add_option("--output", bench_output, "CSV output path (default: stdout)");

    // verify
    int instances = 50;
    std::uint64_t verify_seed = 0;
    double verify_omega = 0.5;
    std::string verify_output;
    auto* verify = app.add_subcommand("verify", "run the spectral verification suite");
    verify->add_option("--instances", instances, "number of generated instances")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_seed, "random seed");
    verify->add_option("--omega", verify_omega, "relaxation factor in (0, 1)")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    verify->add_option("--output", verify_output, "JSON report path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (part->parsed())
            return cmd_partition(input, output, k, imbalance, mode, omega, iters, rvecs, seed);
        if (bench->parsed()) return cmd_bench(manifest_path, bench_output);
        if (verify->parsed()) return cmd_verify(instances, verify_seed, verify_omega, verify_output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
