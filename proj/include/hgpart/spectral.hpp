// spectral.hpp - dense desk-scale oracle for the relaxation's convergence
// theory
//
// Builds the dense matrices behind the iteration (incidence A, weight
// scalings S^v / S^h, the block matrix W, its row-sum diagonal D, and the
// iteration matrix H = w D^-1 W + (1-w) I), reconstructs the spectrum of
// D^-1 W from the singular value decomposition of the normalized incidence
// B = (D^h)^-1/2 (S^h)^1/2 A (D^v)^-1/2 (S^v)^1/2, and cross-checks it
// against a direct dense eigendecomposition. The reconstruction route is
// primary because B's decomposition is numerically benign; the direct route
// of the nonsymmetric D^-1 W is the independent check.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hgpart/algebraic_distance.hpp"
#include "hgpart/errors.hpp"
#include "hgpart/hypergraph.hpp"
#include "hgpart/partition.hpp"
#include "hgpart/rng.hpp"
#include "hgpart/star_expansion.hpp"

namespace hgpart::spectral {

inline constexpr int kDenseSizeGuard = 2000;
inline constexpr double kEigenTol = 1e-8;   // eigenvalue assertions
inline constexpr double kAlgebraTol = 1e-12; // algebraic identities
inline constexpr double kCrossCheckTol = 1e-6; // route disagreement -> error
inline constexpr double kRankEps = 1e-10;

struct DenseMatrices {
    int n_vertices = 0;
    int n_edges = 0;
    double omega = 0.5;
    Eigen::MatrixXd A;    // |E| x |V| 0/1 incidence
    Eigen::VectorXd Sv;   // w(v)
    Eigen::VectorXd Sh;   // w(h) / |h|
    Eigen::VectorXd Dv;   // weighted vertex degrees (row sums of A^T S^h)
    Eigen::VectorXd Dh;   // weighted edge-node degrees (row sums of A S^v)
    Eigen::MatrixXd W;    // [[0, A^T S^h], [A S^v, 0]]
    Eigen::MatrixXd DinvW;
    Eigen::MatrixXd Hmat; // omega DinvW + (1-omega) I

    int size() const { return n_vertices + n_edges; }
};

inline DenseMatrices build_dense(const StarExpansion& g, double omega) {
    if (!(omega > 0.0 && omega < 1.0))
        throw ValidationError("relaxation factor must lie strictly in (0, 1)");
    const int n = g.size();
    if (n > kDenseSizeGuard)
        throw ValidationError("instance too large for the dense oracle (" + std::to_string(n) +
                              " > " + std::to_string(kDenseSizeGuard) + " nodes)");
    if (g.n_edges == 0) throw ValidationError("dense oracle requires at least one hyperedge");
    for (int node = 0; node < n; ++node) {
        if (g.degree(node) == 0)
            throw ValidationError("dense oracle requires every node to have a neighbor");
        if (!(g.neighbor_weight_sum[node] > 0.0))
            throw ValidationError("dense oracle requires positive weighted degrees");
        if (!(g.node_weight[node] > 0.0))
            throw ValidationError("dense oracle requires strictly positive node weights");
    }

    DenseMatrices dm;
    dm.n_vertices = g.n_original;
    dm.n_edges = g.n_edges;
    dm.omega = omega;

    dm.A = Eigen::MatrixXd::Zero(dm.n_edges, dm.n_vertices);
    for (int e = 0; e < dm.n_edges; ++e)
        for (int v : g.adjacent(g.edge_node(e))) dm.A(e, v) = 1.0;

    dm.Sv = Eigen::Map<const Eigen::VectorXd>(g.node_weight.data(), dm.n_vertices);
    dm.Sh = Eigen::Map<const Eigen::VectorXd>(g.node_weight.data() + dm.n_vertices, dm.n_edges);
    dm.Dv = Eigen::Map<const Eigen::VectorXd>(g.neighbor_weight_sum.data(), dm.n_vertices);
    dm.Dh =
        Eigen::Map<const Eigen::VectorXd>(g.neighbor_weight_sum.data() + dm.n_vertices, dm.n_edges);

    dm.W = Eigen::MatrixXd::Zero(n, n);
    dm.W.topRightCorner(dm.n_vertices, dm.n_edges) = dm.A.transpose() * dm.Sh.asDiagonal();
    dm.W.bottomLeftCorner(dm.n_edges, dm.n_vertices) = dm.A * dm.Sv.asDiagonal();

    Eigen::VectorXd d(n);
    d << dm.Dv, dm.Dh;
    dm.DinvW = d.cwiseInverse().asDiagonal() * dm.W;
    dm.Hmat = omega * dm.DinvW + (1.0 - omega) * Eigen::MatrixXd::Identity(n, n);
    return dm;
}

// Where the second-in-magnitude eigenvalue of H comes from.
enum class Mu2Source { positive_sigma, negative_sigma, zero_eigenvalue };

struct Report {
    std::vector<double> sigma;        // singular values of B, descending
    std::vector<double> dw_direct;    // direct-route eigenvalues, descending
    std::vector<double> dw_predicted; // {+-sigma_i} u {0^(n-2r)}, descending
    std::vector<double> mu;           // eigenvalues of H, by magnitude
    double pairing_error = 0.0;       // max gap between the two routes
    double spectral_radius = 0.0;
    double max_imag = 0.0;            // largest imaginary part seen directly
    int component_count = 1;
    int rank = 0;
    double sigma2 = 0.0;
    double mu2 = 0.0;
    double gamma = 0.0; // (1 - mu2) / omega
    char omega_case = 'b';
    bool mu2_simple = false;
    bool has_phi2 = false;
    Eigen::VectorXd phi2; // limit direction when mu2 is simple
};

namespace detail {

// Connected components of the undirected view of W's sparsity pattern.
inline int pattern_components(const Eigen::MatrixXd& W) {
    const int n = static_cast<int>(W.rows());
    std::vector<char> seen(n, 0);
    std::vector<int> stack;
    int components = 0;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++components;
        seen[s] = 1;
        stack.assign(1, s);
        while (!stack.empty()) {
            const int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j)
                if (!seen[j] && (W(i, j) != 0.0 || W(j, i) != 0.0)) {
                    seen[j] = 1;
                    stack.push_back(j);
                }
        }
    }
    return components;
}

} // namespace detail

// Full spectral analysis of one dense model. Throws OracleError when the
// two eigenvalue routes disagree beyond kCrossCheckTol.
inline Report spectrum(const DenseMatrices& dm) {
    Report rep;
    const int n = dm.size();

    // reconstruction route: SVD of the normalized incidence
    Eigen::MatrixXd B(dm.n_edges, dm.n_vertices);
    for (int e = 0; e < dm.n_edges; ++e) {
        const double re = std::sqrt(dm.Sh(e) / dm.Dh(e));
        for (int v = 0; v < dm.n_vertices; ++v)
            B(e, v) = dm.A(e, v) == 0.0 ? 0.0 : re * std::sqrt(dm.Sv(v) / dm.Dv(v));
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    rep.sigma.assign(sv.data(), sv.data() + sv.size());
    rep.rank = 0;
    for (double s : rep.sigma)
        if (s > kRankEps) ++rep.rank;
    rep.sigma2 = rep.sigma.size() >= 2 ? rep.sigma[1] : 0.0;

    rep.dw_predicted.reserve(n);
    for (int i = 0; i < rep.rank; ++i) rep.dw_predicted.push_back(rep.sigma[i]);
    rep.dw_predicted.insert(rep.dw_predicted.end(), n - 2 * rep.rank, 0.0);
    for (int i = rep.rank - 1; i >= 0; --i) rep.dw_predicted.push_back(-rep.sigma[i]);
    std::sort(rep.dw_predicted.begin(), rep.dw_predicted.end(), std::greater<>());

    // Independent route: direct dense eigendecomposition of D^-1 W.
    Eigen::EigenSolver<Eigen::MatrixXd> es(dm.DinvW);
    if (es.info() != Eigen::Success) throw OracleError("dense eigendecomposition failed");
    rep.dw_direct.resize(n);
    rep.max_imag = 0.0;
    for (int i = 0; i < n; ++i) {
        rep.max_imag = std::max(rep.max_imag, std::abs(es.eigenvalues()[i].imag()));
        rep.dw_direct[i] = es.eigenvalues()[i].real();
    }
    std::sort(rep.dw_direct.begin(), rep.dw_direct.end(), std::greater<>());

    rep.pairing_error = rep.max_imag;
    for (int i = 0; i < n; ++i)
        rep.pairing_error =
            std::max(rep.pairing_error, std::abs(rep.dw_predicted[i] - rep.dw_direct[i]));
    if (rep.pairing_error > kCrossCheckTol)
        throw OracleError("spectral routes disagree by " + std::to_string(rep.pairing_error));

    rep.spectral_radius = 0.0;
    for (double v : rep.dw_direct) rep.spectral_radius = std::max(rep.spectral_radius, std::abs(v));

    rep.component_count = detail::pattern_components(dm.W);

    // mu ordering of H, tracking where each eigenvalue came from so the
    // matching eigenvector can be assembled on demand.
    struct MuEntry {
        double mu;
        Mu2Source source;
        int index; // singular triplet index; multiplicity for the zero block
    };
    std::vector<MuEntry> entries;
    entries.reserve(static_cast<std::size_t>(2 * rep.rank) + 1);
    const auto to_mu = [&](double lambda) { return dm.omega * lambda + (1.0 - dm.omega); };
    for (int i = 0; i < rep.rank; ++i) {
        entries.push_back({to_mu(rep.sigma[i]), Mu2Source::positive_sigma, i});
        entries.push_back({to_mu(-rep.sigma[i]), Mu2Source::negative_sigma, i});
    }
    const int zero_multiplicity = n - 2 * rep.rank;
    if (zero_multiplicity > 0)
        entries.push_back({to_mu(0.0), Mu2Source::zero_eigenvalue, zero_multiplicity});

    std::sort(entries.begin(), entries.end(), [](const MuEntry& a, const MuEntry& b) {
        const double ma = std::abs(a.mu), mb = std::abs(b.mu);
        if (ma != mb) return ma > mb;
        return a.mu > b.mu;
    });

    rep.mu.clear();
    for (const auto& e : entries) {
        const int repeat = e.source == Mu2Source::zero_eigenvalue ? e.index : 1;
        rep.mu.insert(rep.mu.end(), repeat, e.mu);
    }

    // second largest in magnitude, and whether it is simple
    const MuEntry& second = entries.at(1);
    rep.mu2 = second.mu;
    rep.gamma = (1.0 - rep.mu2) / dm.omega;
    {
        double third = 0.0;
        if (second.source == Mu2Source::zero_eigenvalue && second.index > 1) {
            third = std::abs(second.mu); // zero eigenvalue repeated
        } else if (entries.size() > 2) {
            third = std::abs(entries[2].mu);
        }
        rep.mu2_simple = std::abs(rep.mu2) - third > kEigenTol;
    }

    if (dm.omega <= 0.5) {
        rep.omega_case = 'b';
    } else {
        const double threshold = 2.0 / (3.0 - rep.sigma2);
        if (std::abs(dm.omega - threshold) <= 1e-12)
            rep.omega_case = 'c';
        else
            rep.omega_case = dm.omega > threshold ? 'a' : 'd';
    }

    // Limit direction phi2, assembled from the matching singular vectors.
    if (rep.mu2_simple) {
        const Eigen::VectorXd v_scale = (dm.Sv.array() * dm.Dv.array()).rsqrt();
        const Eigen::VectorXd h_scale = (dm.Sh.array() * dm.Dh.array()).rsqrt();
        Eigen::VectorXd phi = Eigen::VectorXd::Zero(n);
        bool built = false;
        switch (second.source) {
        case Mu2Source::positive_sigma:
            phi.head(dm.n_vertices) = v_scale.cwiseProduct(svd.matrixV().col(second.index));
            phi.tail(dm.n_edges) = h_scale.cwiseProduct(svd.matrixU().col(second.index));
            built = true;
            break;
        case Mu2Source::negative_sigma:
            phi.head(dm.n_vertices) = -v_scale.cwiseProduct(svd.matrixV().col(second.index));
            phi.tail(dm.n_edges) = h_scale.cwiseProduct(svd.matrixU().col(second.index));
            built = true;
            break;
        case Mu2Source::zero_eigenvalue:
            // exactly one null direction: either side of the SVD
            if (dm.n_vertices - rep.rank == 1) {
                phi.head(dm.n_vertices) = v_scale.cwiseProduct(svd.matrixV().col(rep.rank));
                built = true;
            } else if (dm.n_edges - rep.rank == 1) {
                phi.tail(dm.n_edges) = h_scale.cwiseProduct(svd.matrixU().col(rep.rank));
                built = true;
            }
            break;
        }
        if (built) {
            rep.phi2 = std::move(phi);
            rep.has_phi2 = true;
        }
    }
    return rep;
}

struct LimitVerification {
    bool refused = false;
    std::string reason;
    double score = 0.0;
    int iterations = 0;
};

namespace detail {

inline double abs_pearson(std::span<const double> x, const Eigen::VectorXd& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[static_cast<Eigen::Index>(i)];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = x[i] - mx;
        const double b = y[static_cast<Eigen::Index>(i)] - my;
        sxx += a * a;
        syy += b * b;
        sxy += a * b;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) return 0.0;
    return std::abs(sxy / std::sqrt(sxx * syy));
}

} // namespace detail

// Aligned-limit verification: runs the iterative engine and correlates
// the centered iterate against the centered limit eigenvector. Refuses
// disconnected inputs, the interleaved-subsequence scenario (omega case c),
// and instances whose mu2 is not simple.
inline LimitVerification verify_limit(const StarExpansion& g, const AlgdConfig& cfg,
                                      const Report& report, int iterations) {
    LimitVerification out;
    out.iterations = iterations;
    if (report.component_count != 1) {
        out.refused = true;
        out.reason = "star expansion is disconnected";
        return out;
    }
    if (report.omega_case == 'c') {
        out.refused = true;
        out.reason = "omega case c: interleaved subsequences are out of scope";
        return out;
    }
    if (!report.mu2_simple || !report.has_phi2) {
        out.refused = true;
        out.reason = "mu2 is not simple";
        return out;
    }

    Rng rng(mix_seed(cfg.seed, 0x1117ull));
    std::vector<double> x = random_coordinates(g, rng);
    std::vector<double> next(x.size());
    for (int it = 0; it < iterations; ++it) {
        jor_sweep(g, x, cfg.omega, next);
        if (rescale_inplace(next).degenerate) {
            out.reason = "degenerate iterate";
            out.iterations = it + 1;
            return out;
        }
        x.swap(next);
    }
    out.score = detail::abs_pearson(x, report.phi2);
    return out;
}

// Engine-vs-closed-form conformance: every engine iterate must match
// alpha H x + beta 1 computed densely, element by element.
inline double closed_form_error(const StarExpansion& g, const DenseMatrices& dm, int iterations,
                                std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0xCF01ull));
    std::vector<double> x = random_coordinates(g, rng);
    std::vector<double> next(x.size());
    const int n = g.size();
    double max_err = 0.0;
    for (int it = 0; it < iterations; ++it) {
        // dense route from the same iterate
        const Eigen::VectorXd y =
            dm.Hmat * Eigen::Map<const Eigen::VectorXd>(x.data(), n);
        const double lo = y.minCoeff(), hi = y.maxCoeff();
        // engine route
        jor_sweep(g, x, dm.omega, next);
        rescale_inplace(next);
        if (hi == lo) break; // both routes degenerate
        const double alpha = 1.0 / (hi - lo);
        const double beta = -(hi + lo) / (2.0 * (hi - lo));
        for (int i = 0; i < n; ++i)
            max_err = std::max(max_err, std::abs(next[i] - (alpha * y(i) + beta)));
        x.swap(next);
    }
    return max_err;
}

} // namespace hgpart::spectral
