#include "maxid/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maxid/rng.hpp"

namespace maxid {

IndicatorCells::IndicatorCells(int bits) : bits_(bits) {
    if (bits < 1 || bits > 20)
        throw std::invalid_argument("IndicatorCells: bits out of range");
    counts_.assign(std::size_t{1} << bits, 0);
}

void IndicatorCells::add(std::uint32_t cell, std::int64_t count) {
    if (cell >= counts_.size())
        throw std::invalid_argument("IndicatorCells: cell out of range");
    counts_[cell] += count;
    n_ += count;
}

double IndicatorCells::prob(std::uint32_t mask) const {
    if (n_ == 0) return 0.0;
    std::int64_t c = 0;
    for (std::size_t cell = 0; cell < counts_.size(); ++cell) {
        if ((cell & mask) == mask) c += counts_[cell];
    }
    return static_cast<double>(c) / static_cast<double>(n_);
}

McEstimate IndicatorCells::log_linear(std::span<const LogLinearTerm> terms,
                                      double offset) const {
    McEstimate out;
    out.n = n_;
    if (n_ == 0) return out;

    std::vector<double> probs(terms.size());
    double value = offset;
    bool interior = true;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        probs[i] = prob(terms[i].mask);
        if (probs[i] <= 0.0 || probs[i] >= 1.0) interior = false;
    }
    if (!interior) return out;  // estimate undefined, flagged
    for (std::size_t i = 0; i < terms.size(); ++i)
        value += terms[i].coef * std::log(probs[i]);

    double eg = 0.0, eg2 = 0.0;
    for (std::size_t cell = 0; cell < counts_.size(); ++cell) {
        if (counts_[cell] == 0) continue;
        double g = 0.0;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if ((cell & terms[i].mask) == terms[i].mask) g += terms[i].coef / probs[i];
        }
        const double pc = static_cast<double>(counts_[cell]) / static_cast<double>(n_);
        eg += pc * g;
        eg2 += pc * g * g;
    }
    const double var = std::max(0.0, eg2 - eg * eg) / static_cast<double>(n_);

    out.value = value;
    out.se = std::sqrt(var);
    out.valid = true;
    return out;
}

McEstimate IndicatorCells::bootstrap_log_linear(std::span<const LogLinearTerm> terms,
                                                double offset, int resamples,
                                                std::uint64_t seed) const {
    if (resamples < 2)
        throw std::invalid_argument("bootstrap_log_linear: need at least 2 resamples");
    McEstimate point = log_linear(terms, offset);
    if (!point.valid) return point;

    std::vector<double> cum(counts_.size());
    double acc = 0.0;
    for (std::size_t cell = 0; cell < counts_.size(); ++cell) {
        acc += static_cast<double>(counts_[cell]) / static_cast<double>(n_);
        cum[cell] = acc;
    }
    Rng rng(seed, 0x626f6f74);  // dedicated bootstrap stream
    std::vector<double> stats;
    stats.reserve(static_cast<std::size_t>(resamples));
    for (int b = 0; b < resamples; ++b) {
        IndicatorCells re(bits_);
        for (std::int64_t i = 0; i < n_; ++i) {
            const double u = rng.uniform();
            const auto it = std::lower_bound(cum.begin(), cum.end(), u);
            re.add(static_cast<std::uint32_t>(std::distance(cum.begin(), it)));
        }
        const McEstimate est = re.log_linear(terms, offset);
        if (est.valid) stats.push_back(est.value);
    }
    if (stats.size() < 2) {
        point.valid = false;
        return point;
    }
    double mean = 0.0;
    for (double s : stats) mean += s;
    mean /= static_cast<double>(stats.size());
    double ss = 0.0;
    for (double s : stats) ss += (s - mean) * (s - mean);
    point.se = std::sqrt(ss / static_cast<double>(stats.size() - 1));
    return point;
}

namespace {

IndicatorCells pair_cells(std::span<const double> x0, std::span<const double> xt,
                          double level0, double levelt) {
    if (x0.size() != xt.size())
        throw std::invalid_argument("estimator: sample arrays differ in length");
    if (x0.size() < 1000)
        throw std::invalid_argument("estimator: need at least 1000 replicates");
    IndicatorCells cells(2);
    for (std::size_t i = 0; i < x0.size(); ++i) {
        const std::uint32_t cell = (x0[i] <= level0 ? 1u : 0u) |
                                   (xt[i] <= levelt ? 2u : 0u);
        cells.add(cell);
    }
    return cells;
}

}  // namespace

McEstimate estimate_tau_mc(std::span<const double> x0, std::span<const double> xt,
                           double a) {
    const IndicatorCells cells = pair_cells(x0, xt, a, a);
    const LogLinearTerm terms[] = {{1.0, 3u}, {-1.0, 1u}, {-1.0, 2u}};
    return cells.log_linear(terms);
}

McEstimate estimate_r_mc(std::span<const double> x0, std::span<const double> xt) {
    const IndicatorCells cells = pair_cells(x0, xt, 1.0, 1.0);
    const LogLinearTerm terms[] = {{1.0, 3u}};
    return cells.log_linear(terms, 2.0);
}

McEstimate estimate_scaling_gap_mc(std::span<const double> x0,
                                   std::span<const double> xt, double a) {
    if (x0.size() != xt.size())
        throw std::invalid_argument("estimator: sample arrays differ in length");
    if (x0.size() < 1000)
        throw std::invalid_argument("estimator: need at least 1000 replicates");
    // bits: 1 = X0<=a, 2 = Xt<=a, 4 = X0<=1, 8 = Xt<=1
    IndicatorCells cells(4);
    for (std::size_t i = 0; i < x0.size(); ++i) {
        const std::uint32_t cell =
            (x0[i] <= a ? 1u : 0u) | (xt[i] <= a ? 2u : 0u) |
            (x0[i] <= 1.0 ? 4u : 0u) | (xt[i] <= 1.0 ? 8u : 0u);
        cells.add(cell);
    }
    const LogLinearTerm terms[] = {
        {a, 3u}, {-a, 1u}, {-a, 2u},  // a * tau_hat_a
        {-1.0, 12u},                  // minus (r_hat - 2) = -log P[both <= 1]
    };
    return cells.log_linear(terms, -2.0);
}

}  // namespace maxid
