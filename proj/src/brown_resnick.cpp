#include "maxid/brown_resnick.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "maxid/estimators.hpp"
#include "maxid/numerics.hpp"
#include "maxid/rng.hpp"

namespace maxid {

void BrSimConfig::validate() const {
    if (grid.empty() || grid.front() != 0.0)
        throw std::invalid_argument("BrSimConfig: grid must start at 0");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("BrSimConfig: grid must be strictly increasing");
    }
    if (replicates < 1)
        throw std::invalid_argument("BrSimConfig: replicates must be >= 1");
    if (!(margin > 0.0))
        throw std::invalid_argument("BrSimConfig: margin must be positive");
    if (max_points < 1)
        throw std::invalid_argument("BrSimConfig: max_points must be >= 1");
}

std::vector<double> poisson_gumbel_points(std::int64_t max_count, std::uint64_t seed) {
    if (max_count < 1)
        throw std::invalid_argument("poisson_gumbel_points: max_count must be >= 1");
    Rng rng(seed, 0);
    std::vector<double> points;
    points.reserve(static_cast<std::size_t>(max_count));
    double arrival = 0.0;
    for (std::int64_t i = 0; i < max_count; ++i) {
        arrival += rng.exponential();
        points.push_back(-std::log(arrival));
    }
    return points;
}

std::vector<double> increment_covariance(const Variogram& vario,
                                         std::span<const double> grid) {
    const std::size_t m = grid.size();
    std::vector<double> cov(m * m);
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = vario(grid[i]);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            cov[i * m + j] = 0.5 * (v[i] + v[j] - vario(std::abs(grid[i] - grid[j])));
        }
    }
    return cov;
}

namespace {

// in-place lower Cholesky; returns false on a non-positive pivot
bool try_cholesky(std::vector<double>& a, std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i * m + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * m + k] * a[j * m + k];
            if (i == j) {
                if (!(s > 0.0)) return false;
                a[i * m + i] = std::sqrt(s);
            } else {
                a[i * m + j] = s / a[j * m + j];
            }
        }
        for (std::size_t j = i + 1; j < m; ++j) a[i * m + j] = 0.0;
    }
    return true;
}

// Cholesky factor of the covariance restricted to grid[1..]; the jitter
// ladder keeps exactly degenerate families (power alpha = 2) factorable.
std::vector<double> path_factor(const Variogram& vario, std::span<const double> grid,
                                double& jitter_used) {
    const std::vector<double> full = increment_covariance(vario, grid);
    const std::size_t m = grid.size() - 1;
    jitter_used = 0.0;
    if (m == 0) return {};
    std::vector<double> base(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            base[i * m + j] = full[(i + 1) * grid.size() + (j + 1)];
    static constexpr double kJitters[] = {0.0, 1e-13, 1e-12, 1e-11, 1e-10};
    for (double jitter : kJitters) {
        std::vector<double> a = base;
        for (std::size_t i = 0; i < m; ++i) a[i * m + i] += jitter;
        if (try_cholesky(a, m)) {
            jitter_used = jitter;
            return a;
        }
    }
    throw std::runtime_error(
        "gaussian_paths: increment covariance is not positive semidefinite "
        "(jitter up to 1e-10 exhausted); the variogram is not negative definite "
        "on this grid");
}

constexpr std::int64_t kReplicateChunk = 64;

}  // namespace

GaussianPathResult gaussian_paths(const Variogram& vario, const BrSimConfig& cfg,
                                  Exec exec) {
    cfg.validate();
    GaussianPathResult out;
    out.grid = cfg.grid;
    out.replicates = cfg.replicates;
    const std::size_t m = cfg.grid.size();
    const std::vector<double> factor = path_factor(vario, cfg.grid, out.jitter_used);
    out.paths.assign(static_cast<std::size_t>(cfg.replicates) * m, 0.0);

    const std::size_t mf = m - 1;
    for_each_chunk(cfg.replicates, kReplicateChunk, exec,
                   [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
                       std::vector<double> z(mf);
                       for (std::int64_t rep = lo; rep < hi; ++rep) {
                           Rng rng(cfg.seed, static_cast<std::uint64_t>(rep));
                           for (std::size_t i = 0; i < mf; ++i) z[i] = rng.normal();
                           double* row = &out.paths[static_cast<std::size_t>(rep) * m];
                           row[0] = 0.0;
                           for (std::size_t i = 0; i < mf; ++i) {
                               double s = 0.0;
                               for (std::size_t k = 0; k <= i; ++k)
                                   s += factor[i * mf + k] * z[k];
                               row[i + 1] = s;
                           }
                       }
                   });
    return out;
}

std::vector<double> BrSimResult::column(std::size_t g) const {
    std::vector<double> col(static_cast<std::size_t>(replicates));
    for (std::size_t rep = 0; rep < col.size(); ++rep)
        col[rep] = paths[rep * grid.size() + g];
    return col;
}

BrSimResult simulate_br_path(const Variogram& vario, const BrSimConfig& cfg, Exec exec) {
    cfg.validate();
    BrSimResult out;
    out.grid = cfg.grid;
    out.replicates = cfg.replicates;
    const std::size_t m = cfg.grid.size();
    const std::size_t mf = m - 1;
    const std::vector<double> factor = path_factor(vario, cfg.grid, out.jitter_used);
    std::vector<double> half_var(m);  // sigma^2(t)/2 per grid point
    for (std::size_t g = 0; g < m; ++g) half_var[g] = 0.5 * vario(cfg.grid[g]);

    out.paths.assign(static_cast<std::size_t>(cfg.replicates) * m, 0.0);
    out.points_used.assign(static_cast<std::size_t>(cfg.replicates), 0);
    out.truncated.assign(static_cast<std::size_t>(cfg.replicates), 0);

    for_each_chunk(
        cfg.replicates, kReplicateChunk, exec,
        [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
            std::vector<double> z(mf);
            std::vector<double> logmax(m);
            for (std::int64_t rep = lo; rep < hi; ++rep) {
                Rng rng(cfg.seed, static_cast<std::uint64_t>(rep));
                std::fill(logmax.begin(), logmax.end(),
                          -std::numeric_limits<double>::infinity());
                double arrival = 0.0;
                double cutoff = -std::numeric_limits<double>::infinity();
                std::int32_t used = 0;
                bool rule_stopped = false;
                while (used < cfg.max_points) {
                    arrival += rng.exponential();
                    const double u = -std::log(arrival);
                    if (u < cutoff) {
                        rule_stopped = true;
                        break;
                    }
                    for (std::size_t i = 0; i < mf; ++i) z[i] = rng.normal();
                    double running_min = std::max(logmax[0], u);
                    logmax[0] = running_min;
                    for (std::size_t i = 0; i < mf; ++i) {
                        double w = 0.0;
                        for (std::size_t k = 0; k <= i; ++k)
                            w += factor[i * mf + k] * z[k];
                        const double level = u + w - half_var[i + 1];
                        if (level > logmax[i + 1]) logmax[i + 1] = level;
                        running_min = std::min(running_min, logmax[i + 1]);
                    }
                    cutoff = running_min - cfg.margin;
                    ++used;
                }
                double* row = &out.paths[static_cast<std::size_t>(rep) * m];
                for (std::size_t g = 0; g < m; ++g) row[g] = std::exp(logmax[g]);
                out.points_used[static_cast<std::size_t>(rep)] = used;
                out.truncated[static_cast<std::size_t>(rep)] = rule_stopped ? 0 : 1;
            }
        });
    for (std::uint8_t f : out.truncated) out.truncated_replicates += f;
    return out;
}

double theoretical_r(const Variogram& vario, double t, RFormula formula) {
    const double tail = normal_tail(0.5 * vario.sigma(t));
    return formula == RFormula::paper ? tail : 2.0 * tail;
}

RFormulaResolution resolve_r_formula(const BrSimResult& sim, const Variogram& vario) {
    RFormulaResolution res;
    const std::vector<double> x0 = sim.column(0);
    for (std::size_t g = 1; g < sim.grid.size(); ++g) {
        const McEstimate est = estimate_r_mc(x0, sim.column(g));
        if (!est.valid) continue;
        const double t = sim.grid[g];
        res.lags.push_back(t);
        res.r_hat.push_back(est.value);
        res.se.push_back(est.se);
        const double zp = (est.value - theoretical_r(vario, t, RFormula::paper)) / est.se;
        const double zc =
            (est.value - theoretical_r(vario, t, RFormula::continuity)) / est.se;
        res.chi2_paper += zp * zp;
        res.chi2_continuity += zc * zc;
    }
    if (res.lags.empty())
        throw std::runtime_error("resolve_r_formula: no usable lags in the simulation");
    res.selected = res.chi2_continuity <= res.chi2_paper ? RFormula::continuity
                                                         : RFormula::paper;
    return res;
}

ExceptionalSetReport exceptional_set_analysis(double epsilon, int n_max,
                                              double grid_step, Exec exec) {
    if (!(epsilon > 0.0) || !(epsilon < 0.25))
        throw std::invalid_argument("exceptional_set_analysis: epsilon must lie in (0, 1/4)");
    if (n_max < 1)
        throw std::invalid_argument("exceptional_set_analysis: n_max must be >= 1");
    // every interval of A_1 has length 4 eps and must hold >= 8 grid points
    if (!(grid_step > 0.0) || grid_step > epsilon / 2.0)
        throw std::invalid_argument(
            "exceptional_set_analysis: grid too coarse, need grid_step <= epsilon/2");

    ExceptionalSetReport report;
    report.epsilon = epsilon;
    report.grid_step = grid_step;
    report.n_max = n_max;
    report.density_bound = 12.0 * epsilon;

    const double c_eps = 1.0 - std::cos(2.0 * kPi * epsilon);
    double cumulative = 0.0;
    double cumulative_res = 0.0;
    double log_growth = std::numeric_limits<double>::infinity();
    bool all_ok = true;

    for (int n = 1; n <= n_max; ++n) {
        const double lo = std::pow(2.0, n);
        const std::int64_t npts =
            static_cast<std::int64_t>(std::ceil(lo / grid_step));
        const double step = lo / static_cast<double>(npts);
        const Variogram vario = Variogram::dyadic_cosine(n + 16);

        struct ChunkStat {
            std::int64_t in_d = 0;
            std::int64_t s_sum = 0;
            double min_sig = std::numeric_limits<double>::infinity();
            std::int64_t flips = 0;
            std::uint8_t first_in_d = 0, last_in_d = 0;
            std::uint8_t touched = 0;
        };
        const std::int64_t chunk_size = 1 << 14;
        const std::int64_t nchunks = (npts + chunk_size - 1) / chunk_size;
        std::vector<ChunkStat> stats(static_cast<std::size_t>(nchunks));

        for_each_chunk(npts, chunk_size, exec,
                       [&](std::int64_t chunk, std::int64_t clo, std::int64_t chi) {
                           ChunkStat st;
                           bool prev_in_d = false;
                           for (std::int64_t j = clo; j < chi; ++j) {
                               const double t = lo + (static_cast<double>(j) + 0.5) * step;
                               int s = 0;
                               double scale = 2.0;
                               for (int k = 1; k <= n; ++k) {
                                   const double u = t / scale;
                                   if (std::abs(u - std::round(u)) > epsilon) ++s;
                                   scale *= 2.0;
                               }
                               const bool in_d = 2 * s < n;  // S_n(t) < n/2
                               if (in_d) {
                                   ++st.in_d;
                               } else {
                                   st.min_sig = std::min(st.min_sig, vario(t));
                               }
                               st.s_sum += s;
                               if (j > clo && in_d != prev_in_d) ++st.flips;
                               if (j == clo) st.first_in_d = in_d ? 1 : 0;
                               st.last_in_d = in_d ? 1 : 0;
                               st.touched = 1;
                               prev_in_d = in_d;
                           }
                           stats[static_cast<std::size_t>(chunk)] = st;
                       });

        ExceptionalSetRow row;
        row.n = n;
        std::int64_t in_d = 0, s_sum = 0, flips = 0;
        double min_sig = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < stats.size(); ++c) {
            in_d += stats[c].in_d;
            s_sum += stats[c].s_sum;
            min_sig = std::min(min_sig, stats[c].min_sig);
            flips += stats[c].flips;
            if (c > 0 && stats[c].touched && stats[c - 1].touched &&
                stats[c].first_in_d != stats[c - 1].last_in_d)
                ++flips;
        }
        row.lambda_measured = static_cast<double>(in_d) * step;
        row.lambda_bound = 6.0 * epsilon * lo;
        row.resolution = static_cast<double>(flips + 2) * step;
        row.s_riemann = static_cast<double>(s_sum) * step;
        row.s_expected = (1.0 - 2.0 * epsilon) * lo * static_cast<double>(n);
        // midpoint error for a sum of n indicator functions with ~2^{n-k+1}
        // breakpoints each
        row.s_resolution = (2.0 * lo + 2.0 * n) * step;
        row.min_sigma2_off = min_sig;
        row.min_sigma2_required = 0.5 * c_eps * static_cast<double>(n);

        cumulative += row.lambda_measured;
        cumulative_res += row.resolution;
        report.density_estimate =
            std::max(report.density_estimate, cumulative / lo);
        report.density_resolution =
            std::max(report.density_resolution, cumulative_res / lo);

        // log t <= (n+1) log 2 on the block, so this ratio witnesses the
        // logarithmic growth constant off the exceptional set
        if (std::isfinite(row.min_sigma2_off))
            log_growth =
                std::min(log_growth, row.min_sigma2_off / ((n + 1) * std::log(2.0)));

        all_ok = all_ok && row.lambda_measured <= row.lambda_bound + row.resolution;
        all_ok = all_ok &&
                 std::abs(row.s_riemann - row.s_expected) <= row.s_resolution;
        all_ok = all_ok && row.min_sigma2_off >= row.min_sigma2_required;
        report.rows.push_back(row);
    }
    all_ok = all_ok &&
             report.density_estimate <= report.density_bound + report.density_resolution;
    report.empirical_log_growth = std::isfinite(log_growth) ? log_growth : 0.0;
    report.all_bounds_hold = all_ok;
    return report;
}

}  // namespace maxid
