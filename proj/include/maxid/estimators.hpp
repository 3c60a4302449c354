#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace maxid {

struct McEstimate {
    double value = 0.0;
    double se = 0.0;
    bool valid = false;  // false when an empirical proportion hits 0 or 1
    std::int64_t n = 0;
};

// One summand of a statistic of the form offset + sum_i coef_i * log P[E_i],
// where E_i = {samples with every indicator bit of `mask` set}.
struct LogLinearTerm {
    double coef = 0.0;
    std::uint32_t mask = 0;
};

// Multinomial cell counts over joint indicator outcomes of one sample batch.
// Delta-method standard errors for log-linear statistics come out exactly,
// shared-sample covariances included: Var = (E[g^2] - E[g]^2)/n with
// g(cell) = sum_i coef_i 1[cell >= mask_i] / P[E_i].
class IndicatorCells {
public:
    explicit IndicatorCells(int bits);

    void add(std::uint32_t cell, std::int64_t count = 1);
    std::int64_t n() const { return n_; }
    int bits() const { return bits_; }
    double prob(std::uint32_t mask) const;  // P-hat[all bits of mask set]

    McEstimate log_linear(std::span<const LogLinearTerm> terms, double offset = 0.0) const;

    // Opt-in bootstrap alternative to the delta method: resamples the cell
    // multinomial `resamples` times and reports the sd of the statistic.
    McEstimate bootstrap_log_linear(std::span<const LogLinearTerm> terms, double offset,
                                    int resamples, std::uint64_t seed) const;

private:
    int bits_;
    std::vector<std::int64_t> counts_;
    std::int64_t n_ = 0;
};

// tau_a from replicated pairs: log P[X0<=a, Xt<=a] - log P[X0<=a] - log P[Xt<=a].
McEstimate estimate_tau_mc(std::span<const double> x0, std::span<const double> xt,
                           double a);

// r from replicated unit-Frechet pairs: 2 + log P[X0<=1, Xt<=1].
McEstimate estimate_r_mc(std::span<const double> x0, std::span<const double> xt);

// a * tau_hat_a - r_hat on the same samples, with its delta-method se;
// near zero when the max-stable identity tau_a = r / a holds.
McEstimate estimate_scaling_gap_mc(std::span<const double> x0,
                                   std::span<const double> xt, double a);

}  // namespace maxid
