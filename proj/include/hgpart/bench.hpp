// bench.hpp - A/B harness comparing plain and algebraic coarsening
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hgpart/errors.hpp"
#include "hgpart/hgr_io.hpp"
#include "hgpart/hypergraph.hpp"
#include "hgpart/io_util.hpp"
#include "hgpart/matrix_market.hpp"
#include "hgpart/multilevel.hpp"

namespace hgpart::bench {

struct Entry {
    std::string path;
    std::vector<int> k_values{2};
    std::vector<double> imbalances{1.05};
};

struct Manifest {
    std::vector<Entry> inputs;
    std::uint64_t seed = 0;
    int repetitions = 10; // best-of-N protocol
    PartitionConfig base; // k / imbalance / mode / seed overridden per run

    void validate() const {
        if (repetitions < 1) throw ValidationError("repetitions must be >= 1");
        if (inputs.empty()) throw ValidationError("manifest lists no inputs");
        for (const auto& in : inputs) {
            if (in.path.empty()) throw ValidationError("manifest entry without a path");
            if (in.k_values.empty() || in.imbalances.empty())
                throw ValidationError("manifest entry without k or imbalance values");
        }
    }
};

// Loads a hypergraph by file extension: .hgr directly, .mtx via the
// row-net model.
inline Hypergraph load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    const std::string ext = std::filesystem::path(path).extension().string();
    if (ext == ".mtx") return rownet_hypergraph(parse_matrix_market(in));
    if (ext == ".hgr") return parse_hgr(in);
    throw ValidationError("unknown input extension '" + ext + "' (expected .hgr or .mtx)");
}

/*
Manifest JSON:
{
  "seed": 0,
  "repetitions": 10,
  "inputs": ["a.hgr", {"path": "b.mtx", "k": [2, 4], "imbalance": 1.1}],
  "config": {"omega": 0.5, "iters": 20, "rvecs": 5, "coarsest_size": 100,
             "initial_trials": 10, "fm_passes": 10, "min_reduction": 0.1}
}
*/
inline Manifest parse_manifest_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("manifest is not valid JSON: ") + e.what(), 1);
    }
    Manifest m;
    try {
        m.seed = j.value("seed", 0ull);
        m.repetitions = j.value("repetitions", 10);
        if (j.contains("config")) {
            const auto& c = j["config"];
            m.base.algd.omega = c.value("omega", m.base.algd.omega);
            m.base.algd.num_iter = c.value("iters", m.base.algd.num_iter);
            m.base.algd.num_random = c.value("rvecs", m.base.algd.num_random);
            m.base.coarsest_size = c.value("coarsest_size", m.base.coarsest_size);
            m.base.min_reduction = c.value("min_reduction", m.base.min_reduction);
            m.base.refine.initial_trials = c.value("initial_trials", m.base.refine.initial_trials);
            m.base.refine.fm_passes = c.value("fm_passes", m.base.refine.fm_passes);
        }
        for (const auto& item : j.value("inputs", nlohmann::json::array())) {
            Entry e;
            if (item.is_string()) {
                e.path = item.get<std::string>();
            } else {
                e.path = item.value("path", std::string{});
                if (item.contains("k")) {
                    e.k_values.clear();
                    if (item["k"].is_array())
                        for (const auto& k : item["k"]) e.k_values.push_back(k.get<int>());
                    else
                        e.k_values.push_back(item["k"].get<int>());
                }
                if (item.contains("imbalance")) {
                    e.imbalances.clear();
                    if (item["imbalance"].is_array())
                        for (const auto& b : item["imbalance"])
                            e.imbalances.push_back(b.get<double>());
                    else
                        e.imbalances.push_back(item["imbalance"].get<double>());
                }
            }
            m.inputs.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed manifest: ") + e.what(), 1);
    }
    m.validate();
    return m;
}

struct Row {
    std::string input;
    int k = 2;
    double imbalance = 1.05;
    double best_cut_plain = 0.0;
    double best_cut_algd = 0.0;
    double ratio_value = 1.0; // plain / algd; +inf when only algd reaches 0
    std::string status = "ok";
    std::vector<double> plain_cuts; // per-repetition run log
    std::vector<double> algd_cuts;
};

struct BenchReport {
    std::vector<Row> rows;
};

namespace detail {

// One V-cycle run with the harness invariants asserted: the cut may never
// grow across a refine step and must survive a project step exactly.
inline double checked_run(const Hypergraph& h, PartitionConfig cfg) {
    VCycleStats stats;
    const Partition p = partition(h, cfg, &stats);
    for (const auto& s : stats.steps) {
        const double tol = 1e-9 * std::max(1.0, std::abs(s.cut_before_project));
        if (std::abs(s.cut_after_project - s.cut_before_project) > tol)
            throw OracleError("projection changed the cut at level " + std::to_string(s.level));
        if (s.cut_after_refine > s.cut_after_project + tol)
            throw OracleError("refinement increased the cut at level " + std::to_string(s.level));
    }
    return p.cut;
}

} // namespace detail

// Runs both coarsening modes repetitions times (seeds seed .. seed+reps-1),
// keeps the smallest cut per mode, and reports the plain/algd ratio per
// (input, k, imbalance). Per-input failures become rows with an error
// status; the run continues.
inline BenchReport run_bench(const Manifest& m) {
    m.validate();
    BenchReport report;
    for (const auto& entry : m.inputs) {
        Hypergraph h;
        bool loaded = false;
        std::string load_error;
        try {
            h = load_input(entry.path);
            loaded = true;
        } catch (const std::exception& e) {
            load_error = e.what();
        }
        for (int k : entry.k_values) {
            for (double imbalance : entry.imbalances) {
                Row row;
                row.input = entry.path;
                row.k = k;
                row.imbalance = imbalance;
                if (!loaded) {
                    row.status = "error: " + load_error;
                    report.rows.push_back(std::move(row));
                    continue;
                }
                try {
                    PartitionConfig cfg = m.base;
                    cfg.k = k;
                    cfg.max_imbalance = imbalance;
                    double best_plain = std::numeric_limits<double>::infinity();
                    double best_algd = std::numeric_limits<double>::infinity();
                    for (int rep = 0; rep < m.repetitions; ++rep) {
                        cfg.seed = m.seed + static_cast<std::uint64_t>(rep);
                        cfg.coarsening_mode = CoarseningMode::plain;
                        row.plain_cuts.push_back(detail::checked_run(h, cfg));
                        cfg.coarsening_mode = CoarseningMode::algebraic;
                        row.algd_cuts.push_back(detail::checked_run(h, cfg));
                        best_plain = std::min(best_plain, row.plain_cuts.back());
                        best_algd = std::min(best_algd, row.algd_cuts.back());
                    }
                    row.best_cut_plain = best_plain;
                    row.best_cut_algd = best_algd;
                    if (best_algd > 0.0)
                        row.ratio_value = best_plain / best_algd;
                    else
                        row.ratio_value = best_plain == 0.0
                                              ? 1.0 // 0/0 reads as parity
                                              : std::numeric_limits<double>::infinity();
                } catch (const std::exception& e) {
                    row.status = std::string("error: ") + e.what();
                }
                report.rows.push_back(std::move(row));
            }
        }
    }

    std::sort(report.rows.begin(), report.rows.end(), [](const Row& a, const Row& b) {
        const bool ea = a.status != "ok", eb = b.status != "ok";
        if (ea != eb) return eb; // error rows last
        if (!ea && a.ratio_value != b.ratio_value) return a.ratio_value < b.ratio_value;
        if (a.input != b.input) return a.input < b.input;
        if (a.k != b.k) return a.k < b.k;
        return a.imbalance < b.imbalance;
    });
    return report;
}

inline std::string to_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "# hgpart-bench-csv v1\n";
    out << "input,k,imbalance,best_cut_plain,best_cut_algd,ratio,status\n";
    for (const auto& row : report.rows) {
        out << row.input << ',' << row.k << ',' << io::format_number(row.imbalance) << ',';
        if (row.status == "ok") {
            out << io::format_number(row.best_cut_plain) << ','
                << io::format_number(row.best_cut_algd) << ',';
            if (std::isinf(row.ratio_value))
                out << "inf";
            else
                out << io::format_number(row.ratio_value);
        } else {
            out << ",,";
        }
        std::string status = row.status;
        std::replace(status.begin(), status.end(), ',', ';'); // keep the CSV intact
        out << ',' << status << '\n';
    }
    return out.str();
}

} // namespace hgpart::bench
