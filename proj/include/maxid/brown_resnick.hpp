#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maxid/parallel.hpp"
#include "maxid/variogram.hpp"

namespace maxid {

struct BrSimConfig {
    std::vector<double> grid;  // grid[0] == 0, strictly increasing, >= 0
    std::int64_t replicates = 1;
    double margin = 12.0;  // truncation margin M of the point-process stopping rule
    std::uint64_t seed = 0;
    std::int64_t max_points = 2'000'000;  // per-replicate point budget

    void validate() const;
};

// Decreasing Poisson points with intensity e^{-x}: U_i = -log(Gamma_i) for
// unit-rate arrival times Gamma_i.
std::vector<double> poisson_gumbel_points(std::int64_t max_count, std::uint64_t seed);

// Covariance of the stationary-increment path pinned at W(0) = 0:
// Gamma(s, t) = (sigma^2(s) + sigma^2(t) - sigma^2(|t - s|)) / 2.
// Returns the full grid-sized matrix, row-major.
std::vector<double> increment_covariance(const Variogram& vario,
                                         std::span<const double> grid);

struct GaussianPathResult {
    std::vector<double> grid;
    std::int64_t replicates = 0;
    std::vector<double> paths;  // row-major [replicate][grid point]
    double jitter_used = 0.0;

    double at(std::int64_t rep, std::size_t g) const {
        return paths[static_cast<std::size_t>(rep) * grid.size() + g];
    }
};

// Zero-mean Gaussian paths with the increment covariance; W(0) = 0 exactly.
// Cholesky factorization with a diagonal jitter ladder up to 1e-10; anything
// still non-PSD is rejected.
GaussianPathResult gaussian_paths(const Variogram& vario, const BrSimConfig& cfg,
                                  Exec exec = Exec::serial);

struct BrSimResult {
    std::vector<double> grid;
    std::int64_t replicates = 0;
    std::vector<double> paths;  // row-major [replicate][grid point], X > 0
    std::vector<std::int32_t> points_used;
    // per replicate: point budget hit before the stopping rule fired
    std::vector<std::uint8_t> truncated;
    std::int64_t truncated_replicates = 0;
    double jitter_used = 0.0;

    std::vector<double> column(std::size_t g) const;
};

// X(t) = max_i exp(U_i + W_i(t) - sigma^2(t)/2) over the Poisson points,
// accumulating points while U_i >= min_grid(log running max) - margin.
BrSimResult simulate_br_path(const Variogram& vario, const BrSimConfig& cfg,
                             Exec exec = Exec::serial);

// The two candidate closed forms for the pair dependence function.
//   paper:      r(t) = Phi_bar(sigma(t) / 2)
//   continuity: r(t) = 2 Phi_bar(sigma(t) / 2)   (forces r(0) = 1)
enum class RFormula { paper, continuity };
double theoretical_r(const Variogram& vario, double t, RFormula formula);

struct RFormulaResolution {
    RFormula selected = RFormula::continuity;
    double chi2_paper = 0.0;       // sum of squared z-scores against each variant
    double chi2_continuity = 0.0;
    std::vector<double> lags;
    std::vector<double> r_hat;
    std::vector<double> se;
};

// Empirical selection between the two r formulas from a simulated run:
// the variant with the smaller aggregated squared z-score wins.
RFormulaResolution resolve_r_formula(const BrSimResult& sim, const Variogram& vario);

struct ExceptionalSetRow {
    int n = 0;
    double lambda_measured = 0.0;   // lambda(D_{n,eps}) by midpoint counting
    double lambda_bound = 0.0;      // 6 eps 2^n
    double resolution = 0.0;        // measurement error bound, crossings * step
    double s_riemann = 0.0;         // integral of S_n over [2^n, 2^{n+1}]
    double s_expected = 0.0;        // (1 - 2 eps) 2^n n
    double s_resolution = 0.0;
    double min_sigma2_off = 0.0;    // min sigma^2 over grid points outside D_{n,eps}
    double min_sigma2_required = 0.0;  // (1/2)(1 - cos(2 pi eps)) n
};

struct ExceptionalSetReport {
    double epsilon = 0.0;
    double grid_step = 0.0;
    int n_max = 0;
    std::vector<ExceptionalSetRow> rows;
    double density_estimate = 0.0;  // max_n cumulative lambda(D) / 2^n
    double density_bound = 0.0;     // 12 eps
    double density_resolution = 0.0;
    // largest C with sigma^2(t) >= C log t observed off the exceptional set
    double empirical_log_growth = 0.0;
    bool all_bounds_hold = false;
};

// Discretized analysis of the dyadic-cosine exceptional sets: for each
// n <= n_max measures D_{n,eps} = {t in [2^n, 2^{n+1}] : S_n(t) < n/2} where
// S_n counts the levels k <= n with dist(t / 2^k, Z) > eps, and checks the
// measure bound, the S_n mass identity, and the off-set variogram growth.
ExceptionalSetReport exceptional_set_analysis(double epsilon, int n_max,
                                              double grid_step,
                                              Exec exec = Exec::serial);

}  // namespace maxid
