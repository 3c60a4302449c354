#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace maxid {

inline constexpr double kPi = 3.14159265358979323846;

double normal_pdf(double z);
double normal_cdf(double z);
// upper tail of the standard normal, accurate to a few ulp via erfc
double normal_tail(double z);

// Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration on P_n.
class GaussLegendre {
public:
    explicit GaussLegendre(int n);
    // integral of f over [a, b]
    double integrate(double a, double b, const std::function<double(double)>& f) const;
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

// Pairwise summation; error grows like log2(n) * eps instead of n * eps.
double pairwise_sum(std::span<const double> values);

// One-sample Kolmogorov-Smirnov statistic against a CDF; sorts a copy.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
// Asymptotic KS p-value with the Stephens small-sample correction.
double ks_pvalue(double statistic, std::int64_t n);
// Two-sample KS statistic and p-value.
double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b);
double ks_two_sample_pvalue(double statistic, std::int64_t n1, std::int64_t n2);

}  // namespace maxid
