#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace maxid {

enum class SequenceKind { tau, r };

// A dependence sequence t -> tau_a(t) or r(t) for t = 1..n with its uniform
// bound. Values must lie in [0, C]; for kind r additionally C <= 1.
class DependenceSequence {
public:
    DependenceSequence(std::vector<double> values, double bound, SequenceKind kind);

    std::span<const double> values() const { return values_; }
    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
    double value(std::int64_t t) const { return values_[static_cast<std::size_t>(t - 1)]; }
    double bound() const { return bound_; }
    SequenceKind kind() const { return kind_; }

private:
    std::vector<double> values_;
    double bound_;
    SequenceKind kind_;
};

// (1/n) sum_{t=1..n} values[t]; pairwise summation.
double cesaro_average(const DependenceSequence& seq, std::int64_t n);

// Finite-n convexity sandwich around the exponential Cesaro mean:
//   1 + kappa * mean <= (1/n) sum e^{kappa theta_t} <= 1 + (e^{kappa C}-1)/C * mean.
struct ExpSandwich {
    double exp_avg = 0.0;
    double cesaro = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool sandwich_ok = false;
};
ExpSandwich cesaro_exp_equivalence(const DependenceSequence& seq, double kappa,
                                   std::int64_t n);

// Same sandwich verified at every prefix length 1..n in one pass.
struct ExpSandwichScan {
    double min_lower_slack = 0.0;  // min over n of exp_avg - lower
    double min_upper_slack = 0.0;  // min over n of upper - exp_avg
    bool all_ok = false;
};
ExpSandwichScan cesaro_exp_sandwich_scan(const DependenceSequence& seq, double kappa);

enum class Verdict { pass, fail, inconclusive };
const char* verdict_name(Verdict v);

struct ClassificationReport {
    Verdict mixing_verdict = Verdict::inconclusive;
    Verdict ergodic_verdict = Verdict::inconclusive;
    double tail_sup = 0.0;                // sup |value| over the trailing window
    double cesaro_tail = 0.0;             // Cesaro average over the full length
    double exceptional_density_estimate = 0.0;
    double tol = 0.0;
    double tail_fraction = 0.0;
    // Mixing implies ergodicity, so a mixing pass lifts the ergodic verdict
    // even when the finite Cesaro statistic is still polluted by the head.
    bool ergodic_upgraded = false;
};

// Tri-state thresholding: pass at stat <= tol, fail above 2*tol, inconclusive
// in between. The trailing-sup statistic decides mixing, the full-length
// Cesaro average decides ergodicity.
ClassificationReport classify(const DependenceSequence& seq, double tol = 1e-3,
                              double tail_fraction = 0.2);
// Same statistics on raw values (e.g. Monte-Carlo estimates of r, which may
// leave [0, C] by noise or sign).
ClassificationReport classify_values(std::span<const double> values, double tol = 1e-3,
                                     double tail_fraction = 0.2);

struct DensityDecomposition {
    std::vector<std::int64_t> exception_set;  // {t : |value_t| > delta}
    double upper_density_estimate = 0.0;
};

// Finite witness of the density-zero decomposition: the exceedance set of
// delta together with max_n |D cap [1,n]| / n over a dyadic grid of n
// restricted to n >= sqrt(len) (small prefixes say nothing about the limsup).
DensityDecomposition density_zero_decomposition(const DependenceSequence& seq,
                                                double delta);
DensityDecomposition density_zero_decomposition_values(std::span<const double> values,
                                                       double delta);

// Symmetric atomic measure on [-pi, pi]; the Bochner transform of r.
class SpectralMeasure {
public:
    explicit SpectralMeasure(std::vector<std::pair<double, double>> atoms);

    const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }
    double weight_at_zero() const;
    double total_weight() const;

    // r(t) = sum_j w_j cos(t x_j)
    double r(std::int64_t t) const;

    // |(1/n) sum_{t<=n} r(t) - weight_at_zero| never exceeds this:
    // sum over off-zero atoms of w * 2 / (n |1 - e^{ix}|).
    double cesaro_error_bound(std::int64_t n) const;

private:
    std::vector<std::pair<double, double>> atoms_;  // (location, weight)
};

}  // namespace maxid
