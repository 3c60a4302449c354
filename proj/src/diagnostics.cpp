#include "maxid/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "maxid/numerics.hpp"

namespace maxid {

namespace {

constexpr double kSandwichTol = 1e-12;

Verdict threshold_verdict(double stat, double tol) {
    if (stat <= tol) return Verdict::pass;
    if (stat <= 2.0 * tol) return Verdict::inconclusive;
    return Verdict::fail;
}

}  // namespace

DependenceSequence::DependenceSequence(std::vector<double> values, double bound,
                                       SequenceKind kind)
    : values_(std::move(values)), bound_(bound), kind_(kind) {
    if (values_.empty())
        throw std::invalid_argument("DependenceSequence: empty value list");
    if (!(bound_ > 0.0) || !std::isfinite(bound_))
        throw std::invalid_argument("DependenceSequence: bound must be positive");
    if (kind_ == SequenceKind::r && bound_ > 1.0)
        throw std::invalid_argument("DependenceSequence: r sequences are bounded by 1");
    for (double v : values_) {
        if (!(v >= 0.0) || v > bound_)
            throw std::invalid_argument(
                "DependenceSequence: values must lie in [0, bound]");
    }
}

double cesaro_average(const DependenceSequence& seq, std::int64_t n) {
    if (n < 1 || n > seq.size())
        throw std::invalid_argument("cesaro_average: n out of range");
    return pairwise_sum(seq.values().subspan(0, static_cast<std::size_t>(n))) /
           static_cast<double>(n);
}

ExpSandwich cesaro_exp_equivalence(const DependenceSequence& seq, double kappa,
                                   std::int64_t n) {
    if (!(kappa > 0.0))
        throw std::invalid_argument("cesaro_exp_equivalence: kappa must be positive");
    if (n < 1 || n > seq.size())
        throw std::invalid_argument("cesaro_exp_equivalence: n out of range");
    std::vector<double> transformed(static_cast<std::size_t>(n));
    for (std::int64_t t = 0; t < n; ++t)
        transformed[static_cast<std::size_t>(t)] =
            std::exp(kappa * seq.values()[static_cast<std::size_t>(t)]);
    ExpSandwich out;
    out.exp_avg = pairwise_sum(transformed) / static_cast<double>(n);
    out.cesaro = cesaro_average(seq, n);
    const double c = seq.bound();
    out.lower = 1.0 + kappa * out.cesaro;
    out.upper = 1.0 + (std::exp(kappa * c) - 1.0) / c * out.cesaro;
    const double tol = kSandwichTol * (1.0 + std::abs(out.upper));
    out.sandwich_ok = out.exp_avg >= out.lower - tol && out.exp_avg <= out.upper + tol;
    return out;
}

ExpSandwichScan cesaro_exp_sandwich_scan(const DependenceSequence& seq, double kappa) {
    if (!(kappa > 0.0))
        throw std::invalid_argument("cesaro_exp_sandwich_scan: kappa must be positive");
    const double c = seq.bound();
    const double slope = (std::exp(kappa * c) - 1.0) / c;
    ExpSandwichScan out;
    out.min_lower_slack = std::numeric_limits<double>::infinity();
    out.min_upper_slack = std::numeric_limits<double>::infinity();
    double sum_exp = 0.0;
    double sum_theta = 0.0;
    std::int64_t n = 0;
    bool ok = true;
    for (double theta : seq.values()) {
        sum_exp += std::exp(kappa * theta);
        sum_theta += theta;
        ++n;
        const double exp_avg = sum_exp / static_cast<double>(n);
        const double mean = sum_theta / static_cast<double>(n);
        const double lower = 1.0 + kappa * mean;
        const double upper = 1.0 + slope * mean;
        const double tol = kSandwichTol * (1.0 + std::abs(upper));
        out.min_lower_slack = std::min(out.min_lower_slack, exp_avg - lower);
        out.min_upper_slack = std::min(out.min_upper_slack, upper - exp_avg);
        ok = ok && exp_avg >= lower - tol && exp_avg <= upper + tol;
    }
    out.all_ok = ok;
    return out;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "inconclusive";
    }
}

ClassificationReport classify_values(std::span<const double> values, double tol,
                                     double tail_fraction) {
    if (values.size() < 10)
        throw std::invalid_argument("classify: need at least 10 values");
    if (!(tol > 0.0)) throw std::invalid_argument("classify: tol must be positive");
    if (!(tail_fraction > 0.0) || !(tail_fraction < 1.0))
        throw std::invalid_argument("classify: tail_fraction must lie in (0,1)");

    ClassificationReport rep;
    rep.tol = tol;
    rep.tail_fraction = tail_fraction;

    const std::size_t n = values.size();
    const std::size_t tail_len = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n))));
    double sup = 0.0;
    for (std::size_t i = n - tail_len; i < n; ++i) sup = std::max(sup, std::abs(values[i]));
    rep.tail_sup = sup;
    rep.cesaro_tail = pairwise_sum(values) / static_cast<double>(n);

    rep.mixing_verdict = threshold_verdict(rep.tail_sup, tol);
    rep.ergodic_verdict = threshold_verdict(std::abs(rep.cesaro_tail), tol);
    if (rep.mixing_verdict == Verdict::pass && rep.ergodic_verdict != Verdict::pass) {
        rep.ergodic_verdict = Verdict::pass;
        rep.ergodic_upgraded = true;
    }
    rep.exceptional_density_estimate =
        density_zero_decomposition_values(values, tol).upper_density_estimate;
    return rep;
}

ClassificationReport classify(const DependenceSequence& seq, double tol,
                              double tail_fraction) {
    return classify_values(seq.values(), tol, tail_fraction);
}

DensityDecomposition density_zero_decomposition_values(std::span<const double> values,
                                                       double delta) {
    if (!(delta > 0.0))
        throw std::invalid_argument("density_zero_decomposition: delta must be positive");
    DensityDecomposition out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (std::abs(values[i]) > delta)
            out.exception_set.push_back(static_cast<std::int64_t>(i + 1));
    }
    const std::int64_t len = static_cast<std::int64_t>(values.size());
    if (len == 0) return out;
    const std::int64_t n_min = std::max<std::int64_t>(
        std::min<std::int64_t>(10, len),
        static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(len)))));
    double density = 0.0;
    for (std::int64_t n = len; n >= n_min; n /= 2) {
        const auto it = std::upper_bound(out.exception_set.begin(),
                                         out.exception_set.end(), n);
        const double count =
            static_cast<double>(std::distance(out.exception_set.begin(), it));
        density = std::max(density, count / static_cast<double>(n));
    }
    out.upper_density_estimate = density;
    return out;
}

DensityDecomposition density_zero_decomposition(const DependenceSequence& seq,
                                                double delta) {
    return density_zero_decomposition_values(seq.values(), delta);
}

SpectralMeasure::SpectralMeasure(std::vector<std::pair<double, double>> atoms)
    : atoms_(std::move(atoms)) {
    constexpr double kMatchTol = 1e-12;
    for (const auto& [x, w] : atoms_) {
        if (std::abs(x) > kPi + kMatchTol)
            throw std::invalid_argument("SpectralMeasure: locations must lie in [-pi, pi]");
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("SpectralMeasure: weights must be positive");
    }
    std::sort(atoms_.begin(), atoms_.end());
    // symmetry: every atom off 0 needs its mirror with equal weight
    for (const auto& [x, w] : atoms_) {
        if (std::abs(x) <= kMatchTol) continue;
        bool matched = false;
        for (const auto& [x2, w2] : atoms_) {
            if (std::abs(x2 + x) <= kMatchTol && std::abs(w2 - w) <= kMatchTol) {
                matched = true;
                break;
            }
        }
        if (!matched)
            throw std::invalid_argument("SpectralMeasure: not symmetric about 0");
    }
}

double SpectralMeasure::weight_at_zero() const {
    double w0 = 0.0;
    for (const auto& [x, w] : atoms_)
        if (x == 0.0) w0 += w;
    return w0;
}

double SpectralMeasure::total_weight() const {
    double s = 0.0;
    for (const auto& [x, w] : atoms_) {
        (void)x;
        s += w;
    }
    return s;
}

double SpectralMeasure::r(std::int64_t t) const {
    double s = 0.0;
    for (const auto& [x, w] : atoms_)
        s += w * std::cos(static_cast<double>(t) * x);
    return s;
}

double SpectralMeasure::cesaro_error_bound(std::int64_t n) const {
    double bound = 0.0;
    for (const auto& [x, w] : atoms_) {
        if (x == 0.0) continue;
        // |sum_{t=1..n} e^{itx}| <= 2 / |1 - e^{ix}| = 1 / |sin(x/2)|
        bound += w * 2.0 / (static_cast<double>(n) * 2.0 * std::abs(std::sin(0.5 * x)));
    }
    return bound;
}

}  // namespace maxid
