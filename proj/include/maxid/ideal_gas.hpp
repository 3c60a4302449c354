#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maxid/diagnostics.hpp"
#include "maxid/parallel.hpp"

namespace maxid {

// Nearest-particle-distance process X(t) = min_i |U_i + W_i(t)| for a unit
// Poisson cloud on R^d with independent Brownian particles. Brownian
// normalization: independent coordinates with variance t at time t.
struct GasConfig {
    int dimension = 1;  // d in {1, 2, 3}
    double radius = 1.0;
    double box_halfwidth = 0.0;  // 0 -> radius + 6 sqrt(max t)
    std::vector<double> time_grid;  // grid[0] == 0, strictly increasing
    std::int64_t replicates = 1;
    std::uint64_t seed = 0;

    void validate() const;
    double effective_halfwidth() const;
};

double ball_volume(int d, double a);

// P[X(0) >= a] = exp(-V(a))
double survival_exact(int d, double a);

// P[|x + W(t)| <= a] for |x| = r; closed forms for d = 1, 3, one
// Gauss-Legendre integral for d = 2.
double ball_hit_prob(int d, double r, double a, double t);

// tau_a(t) = integral over B(a) of P[x + W(t) in B(a)] dx, by radial
// quadrature; exact V(a) at t = 0. Absolute target 1e-6, verified by
// comparing two node counts (non-convergence throws).
double tau_exact_integral(int d, double a, double t);

// V(a) P[W(t) in B(2a)] — dominates tau_a(t)
double gas_tau_upper_bound(int d, double a, double t);

// P[X(0) >= a, X(t) >= a] = exp(-2 V(a) + tau_a(t))
double joint_survival_exact(int d, double a, double t);

// tau values on the uniform grid dt, 2dt, ..., n dt with bound V(a); feeds the
// mixing classifiers (min-process events converted internally).
DependenceSequence gas_tau_sequence(int d, double a, double dt, std::int64_t n);

struct GasTimeEstimate {
    double t = 0.0;
    double tau_hat = 0.0;
    double se = 0.0;
    double exact = 0.0;        // quadrature value
    double upper_bound = 0.0;  // V(a) P[W(t) in B(2a)]
    bool valid = false;
};

struct GasEstimate {
    double survival_hat = 0.0;
    double survival_se = 0.0;
    double survival_exact_value = 0.0;
    std::vector<GasTimeEstimate> tau;  // one row per positive grid time
    double truncation_bias_bound = 0.0;
    bool bias_flagged = false;  // bias bound above 10% of the smallest tau_hat
    bool prob_flagged = false;  // some empirical proportion hit 0 or 1
    std::int64_t replicates = 0;
    double box_halfwidth = 0.0;
};

GasEstimate simulate_gas(const GasConfig& cfg, Exec exec = Exec::serial);

}  // namespace maxid
