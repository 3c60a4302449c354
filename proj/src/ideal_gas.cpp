#include "maxid/ideal_gas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "maxid/numerics.hpp"
#include "maxid/rng.hpp"

namespace maxid {

void GasConfig::validate() const {
    if (dimension < 1 || dimension > 3)
        throw std::invalid_argument("GasConfig: dimension must be 1, 2 or 3");
    if (!(radius > 0.0)) throw std::invalid_argument("GasConfig: radius must be positive");
    if (time_grid.empty() || time_grid.front() != 0.0)
        throw std::invalid_argument("GasConfig: time grid must start at 0");
    for (std::size_t i = 1; i < time_grid.size(); ++i) {
        if (!(time_grid[i] > time_grid[i - 1]))
            throw std::invalid_argument("GasConfig: time grid must be strictly increasing");
    }
    if (replicates < 1)
        throw std::invalid_argument("GasConfig: replicates must be >= 1");
    const double required = radius + 6.0 * std::sqrt(time_grid.back());
    if (box_halfwidth != 0.0 && box_halfwidth < required)
        throw std::invalid_argument(
            "GasConfig: box halfwidth below radius + 6 sqrt(max t)");
}

double GasConfig::effective_halfwidth() const {
    if (box_halfwidth != 0.0) return box_halfwidth;
    return radius + 6.0 * std::sqrt(time_grid.back());
}

double ball_volume(int d, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("ball_volume: radius must be positive");
    switch (d) {
        case 1: return 2.0 * a;
        case 2: return kPi * a * a;
        case 3: return 4.0 / 3.0 * kPi * a * a * a;
        default: throw std::invalid_argument("ball_volume: dimension must be 1, 2 or 3");
    }
}

double survival_exact(int d, double a) { return std::exp(-ball_volume(d, a)); }

namespace {

// P[|x + W| <= a] in 3 dimensions, |x| = r, coordinate sd s; the classical
// reduction of the noncentral Maxwell law
double hit3(double r, double a, double s) {
    if (r < 1e-9 * a) {
        const double z = a / s;
        return normal_cdf(z) - normal_cdf(-z) - 2.0 * z * normal_pdf(z);
    }
    return normal_cdf((a - r) / s) - normal_cdf((-a - r) / s) -
           (s / r) * (normal_pdf((a - r) / s) - normal_pdf((a + r) / s));
}

// P[|x + W| <= a] in 2 dimensions by integrating the first coordinate with
// the substitution u = a sin(theta)
double hit2(double r, double a, double s, const GaussLegendre& rule) {
    return rule.integrate(-0.5 * kPi, 0.5 * kPi, [&](double theta) {
        const double u = a * std::sin(theta);
        const double du = a * std::cos(theta);
        const double half_width = a * std::cos(theta);
        const double marginal = normal_pdf((u - r) / s) / s;
        const double cross = normal_cdf(half_width / s) - normal_cdf(-half_width / s);
        return marginal * cross * du;
    });
}

const GaussLegendre& rule64() {
    static const GaussLegendre rule(64);
    return rule;
}
const GaussLegendre& rule96() {
    static const GaussLegendre rule(96);
    return rule;
}

double tau_quadrature(int d, double a, double t, const GaussLegendre& rule) {
    const double s = std::sqrt(t);
    switch (d) {
        case 1: {
            // closed form: int_{-a}^{a} [Phi((a-x)/s) - Phi((-a-x)/s)] dx
            const double z = 2.0 * a / s;
            return 2.0 * a * (normal_cdf(z) - normal_cdf(-z)) +
                   2.0 * s * (normal_pdf(z) - normal_pdf(0.0));
        }
        case 2:
            return 2.0 * kPi * rule.integrate(0.0, a, [&](double r) {
                       return r * hit2(r, a, s, rule);
                   });
        case 3:
            return 4.0 * kPi * rule.integrate(0.0, a, [&](double r) {
                       return r * r * hit3(r, a, s);
                   });
        default:
            throw std::invalid_argument("tau_exact_integral: dimension must be 1, 2 or 3");
    }
}

}  // namespace

double ball_hit_prob(int d, double r, double a, double t) {
    if (!(a > 0.0) || !(t > 0.0) || r < 0.0)
        throw std::invalid_argument("ball_hit_prob: bad arguments");
    const double s = std::sqrt(t);
    switch (d) {
        case 1: return normal_cdf((a - r) / s) - normal_cdf((-a - r) / s);
        case 2:
            if (r == 0.0) return -std::expm1(-a * a / (2.0 * t));
            return hit2(r, a, s, rule64());
        case 3: return hit3(r, a, s);
        default: throw std::invalid_argument("ball_hit_prob: dimension must be 1, 2 or 3");
    }
}

double tau_exact_integral(int d, double a, double t) {
    if (!(a > 0.0)) throw std::invalid_argument("tau_exact_integral: radius must be positive");
    if (!(t >= 0.0)) throw std::invalid_argument("tau_exact_integral: t must be >= 0");
    if (t == 0.0) return ball_volume(d, a);
    const double coarse = tau_quadrature(d, a, t, rule64());
    if (d == 1) return coarse;
    const double fine = tau_quadrature(d, a, t, rule96());
    if (std::abs(coarse - fine) > 1e-8)
        throw std::runtime_error("tau_exact_integral: quadrature did not converge");
    return fine;
}

double gas_tau_upper_bound(int d, double a, double t) {
    if (t == 0.0) return ball_volume(d, a);
    return ball_volume(d, a) * ball_hit_prob(d, 0.0, 2.0 * a, t);
}

double joint_survival_exact(int d, double a, double t) {
    return std::exp(-2.0 * ball_volume(d, a) + tau_exact_integral(d, a, t));
}

DependenceSequence gas_tau_sequence(int d, double a, double dt, std::int64_t n) {
    if (!(dt > 0.0) || n < 1)
        throw std::invalid_argument("gas_tau_sequence: need dt > 0 and n >= 1");
    std::vector<double> values(static_cast<std::size_t>(n));
    const double bound = ball_volume(d, a);
    for (std::int64_t t = 1; t <= n; ++t) {
        double v = tau_exact_integral(d, a, dt * static_cast<double>(t));
        values[static_cast<std::size_t>(t - 1)] = std::min(v, bound);
    }
    return DependenceSequence(std::move(values), bound, SequenceKind::tau);
}

GasEstimate simulate_gas(const GasConfig& cfg, Exec exec) {
    cfg.validate();
    const int d = cfg.dimension;
    const double a = cfg.radius;
    const double a2 = a * a;
    const double half = cfg.effective_halfwidth();
    const std::size_t m = cfg.time_grid.size();
    if (m > 31) throw std::invalid_argument("simulate_gas: at most 31 grid times");
    const double mean_count = std::pow(2.0 * half, d);

    // per-replicate survival bitmask over grid times
    std::vector<std::uint32_t> masks(static_cast<std::size_t>(cfg.replicates), 0);

    for_each_chunk(
        cfg.replicates, 64, exec, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
            std::vector<double> pos;
            for (std::int64_t rep = lo; rep < hi; ++rep) {
                Rng rng(cfg.seed, static_cast<std::uint64_t>(rep));
                const std::int64_t count = rng.poisson(mean_count);
                pos.resize(static_cast<std::size_t>(count * d));
                for (double& c : pos) c = (2.0 * rng.uniform() - 1.0) * half;
                std::uint32_t mask = 0;
                for (std::size_t g = 0; g < m; ++g) {
                    if (g > 0) {
                        const double sd =
                            std::sqrt(cfg.time_grid[g] - cfg.time_grid[g - 1]);
                        for (double& c : pos) c += sd * rng.normal();
                    }
                    double min2 = std::numeric_limits<double>::infinity();
                    for (std::int64_t i = 0; i < count; ++i) {
                        double n2 = 0.0;
                        for (int k = 0; k < d; ++k) {
                            const double c = pos[static_cast<std::size_t>(i * d + k)];
                            n2 += c * c;
                        }
                        min2 = std::min(min2, n2);
                    }
                    if (min2 >= a2) mask |= 1u << g;  // X(t_g) >= a
                }
                masks[static_cast<std::size_t>(rep)] = mask;
            }
        });

    GasEstimate out;
    out.replicates = cfg.replicates;
    out.box_halfwidth = half;
    out.survival_exact_value = survival_exact(d, a);

    const double n = static_cast<double>(cfg.replicates);
    std::int64_t count0 = 0;
    for (std::uint32_t msk : masks) count0 += (msk & 1u) ? 1 : 0;
    const double p0 = static_cast<double>(count0) / n;
    out.survival_hat = p0;
    out.survival_se = std::sqrt(std::max(0.0, p0 * (1.0 - p0) / n));
    if (p0 <= 0.0 || p0 >= 1.0) out.prob_flagged = true;

    for (std::size_t g = 1; g < m; ++g) {
        GasTimeEstimate te;
        te.t = cfg.time_grid[g];
        te.exact = tau_exact_integral(d, a, te.t);
        te.upper_bound = gas_tau_upper_bound(d, a, te.t);
        std::int64_t joint = 0;
        const std::uint32_t need = 1u | (1u << g);
        for (std::uint32_t msk : masks) joint += ((msk & need) == need) ? 1 : 0;
        const double pj = static_cast<double>(joint) / n;
        if (pj > 0.0 && pj < 1.0 && p0 > 0.0 && p0 < 1.0) {
            te.tau_hat = std::log(pj) - 2.0 * std::log(p0);
            // marginal terms cancel in the delta method; only the joint is left
            te.se = std::sqrt((1.0 - pj) / (n * pj));
            te.valid = true;
        } else {
            out.prob_flagged = true;
        }
        out.tau.push_back(te);
    }

    // particles starting outside the box that reach B(a) by the horizon:
    // expected number <= V(a) * 2d * Phi_bar((L - a) / sqrt(T)) per grid time
    const double max_t = cfg.time_grid.back();
    const double tail =
        max_t > 0.0 ? normal_tail((half - a) / std::sqrt(max_t)) : 0.0;
    out.truncation_bias_bound = static_cast<double>(m) * ball_volume(d, a) *
                                2.0 * static_cast<double>(d) * tail;

    double min_tau = std::numeric_limits<double>::infinity();
    for (const GasTimeEstimate& te : out.tau)
        if (te.valid) min_tau = std::min(min_tau, std::abs(te.tau_hat));
    if (!out.tau.empty() && std::isfinite(min_tau) &&
        out.truncation_bias_bound > 0.1 * min_tau)
        out.bias_flagged = true;
    return out;
}

}  // namespace maxid
