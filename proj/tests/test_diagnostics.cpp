#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "maxid/diagnostics.hpp"
#include "maxid/rng.hpp"

using namespace maxid;

namespace {

std::vector<double> dyadic_spikes(std::int64_t n, double c) {
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t t = 1; t <= n; t *= 2) v[static_cast<std::size_t>(t - 1)] = c;
    return v;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("dependence sequence validation") {
    CHECK_THROWS_AS(DependenceSequence({}, 1.0, SequenceKind::tau),
                    std::invalid_argument);
    CHECK_THROWS_AS(DependenceSequence({0.5}, 0.0, SequenceKind::tau),
                    std::invalid_argument);
    CHECK_THROWS_AS(DependenceSequence({1.5}, 1.0, SequenceKind::tau),
                    std::invalid_argument);
    CHECK_THROWS_AS(DependenceSequence({-0.1}, 1.0, SequenceKind::tau),
                    std::invalid_argument);
    CHECK_THROWS_AS(DependenceSequence({0.5}, 1.5, SequenceKind::r),
                    std::invalid_argument);
    CHECK_NOTHROW(DependenceSequence({0.5}, 1.5, SequenceKind::tau));
}

TEST_CASE("cesaro average on frozen examples") {
    const DependenceSequence zero(std::vector<double>(64, 0.0), 1.0, SequenceKind::tau);
    CHECK(cesaro_average(zero, 64) == 0.0);

    const DependenceSequence constant(std::vector<double>(100, 0.3), 1.0,
                                      SequenceKind::tau);
    CHECK(cesaro_average(constant, 100) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(cesaro_average(constant, 7) == doctest::Approx(0.3).epsilon(1e-14));

    // spikes c at t = 2^k up to n = 2^m average to c (m+1) / 2^m
    const double c = 0.8;
    const std::int64_t n = 1 << 10;
    const DependenceSequence spiky(dyadic_spikes(n, c), 1.0, SequenceKind::tau);
    CHECK(cesaro_average(spiky, n) == doctest::Approx(c * 11.0 / 1024.0).epsilon(1e-13));
    CHECK_THROWS_AS(cesaro_average(spiky, 0), std::invalid_argument);
    CHECK_THROWS_AS(cesaro_average(spiky, n + 1), std::invalid_argument);
}

TEST_CASE("exponential cesaro sandwich") {
    const DependenceSequence zero(std::vector<double>(50, 0.0), 1.0, SequenceKind::tau);
    const ExpSandwich flat = cesaro_exp_equivalence(zero, 1.0, 50);
    CHECK(flat.exp_avg == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(flat.lower == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(flat.upper == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(flat.sandwich_ok);

    // both sandwich sides collapse to e^C on the constant-C sequence
    const double c = 0.7;
    const DependenceSequence top(std::vector<double>(80, c), c, SequenceKind::tau);
    const ExpSandwich tight = cesaro_exp_equivalence(top, 1.0, 80);
    CHECK(tight.exp_avg == doctest::Approx(std::exp(c)).epsilon(1e-12));
    CHECK(tight.lower <= tight.exp_avg + 1e-12);
    CHECK(tight.upper == doctest::Approx(std::exp(c)).epsilon(1e-12));
    CHECK(tight.sandwich_ok);

    const DependenceSequence spiky(dyadic_spikes(1 << 12, 1.0), 1.0, SequenceKind::tau);
    const ExpSandwich sp = cesaro_exp_equivalence(spiky, 0.5, 1 << 12);
    CHECK(sp.sandwich_ok);
    CHECK(sp.exp_avg < 1.02);  // approaches 1 as the spikes thin out

    CHECK_THROWS_AS(cesaro_exp_equivalence(spiky, 0.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(cesaro_exp_equivalence(spiky, -1.0, 16), std::invalid_argument);

    const ExpSandwichScan scan = cesaro_exp_sandwich_scan(spiky, 0.5);
    CHECK(scan.all_ok);
    CHECK(scan.min_lower_slack >= -1e-12);
    CHECK(scan.min_upper_slack >= -1e-12);
}

TEST_CASE("sandwich holds on random bounded sequences at every prefix") {
    Rng rng(321, 0);
    for (double c : {0.5, 1.0, 4.0}) {
        std::vector<double> vals(5000);
        for (double& v : vals) v = rng.uniform() * c;
        const DependenceSequence seq(std::move(vals), c, SequenceKind::tau);
        for (double kappa : {0.5, 1.0}) {
            const ExpSandwichScan scan = cesaro_exp_sandwich_scan(seq, kappa);
            CHECK(scan.all_ok);
        }
    }
}

TEST_CASE("classification of exact shapes") {
    // finite-support tau sequences are eventually zero: both diagnostics pass
    std::vector<double> finite_support(2000, 0.0);
    finite_support[0] = 0.9;
    finite_support[1] = 0.4;
    const ClassificationReport fs = classify(
        DependenceSequence(finite_support, 1.0, SequenceKind::tau), 1e-3, 0.2);
    CHECK(fs.mixing_verdict == Verdict::pass);
    CHECK(fs.ergodic_verdict == Verdict::pass);
    CHECK_FALSE(fs.ergodic_upgraded);

    // constant mass: both fail, the Cesaro statistic equals the mass
    const double m = 0.35;
    const ClassificationReport diag = classify(
        DependenceSequence(std::vector<double>(500, m), 1.0, SequenceKind::tau));
    CHECK(diag.mixing_verdict == Verdict::fail);
    CHECK(diag.ergodic_verdict == Verdict::fail);
    CHECK(diag.cesaro_tail == doctest::Approx(m).epsilon(1e-12));

    // r = 1 on the dyadic spikes: non-mixing but ergodic
    const std::int64_t n = 1 << 14;
    const ClassificationReport spiky = classify(
        DependenceSequence(dyadic_spikes(n, 1.0), 1.0, SequenceKind::r));
    CHECK(spiky.mixing_verdict == Verdict::fail);
    CHECK(spiky.ergodic_verdict == Verdict::pass);
    CHECK(spiky.exceptional_density_estimate <= 8.0 / 128.0);  // spikes up to sqrt(n)

    CHECK_THROWS_AS(
        classify(DependenceSequence(std::vector<double>(5, 0.0), 1.0,
                                    SequenceKind::tau)),
        std::invalid_argument);
}

TEST_CASE("mixing pass lifts the ergodic verdict") {
    // head-heavy sequence: the tail is clean but the full-length Cesaro mean
    // is still polluted; the limit statement forces the ergodic verdict
    std::vector<double> head(1000, 0.0);
    for (int i = 0; i < 400; ++i) head[static_cast<std::size_t>(i)] = 0.9;
    const ClassificationReport rep =
        classify(DependenceSequence(head, 1.0, SequenceKind::tau), 1e-3, 0.2);
    CHECK(rep.mixing_verdict == Verdict::pass);
    CHECK(rep.ergodic_verdict == Verdict::pass);
    CHECK(rep.ergodic_upgraded);
    CHECK(rep.cesaro_tail > 0.3);
}

TEST_CASE("density zero decomposition") {
    const DependenceSequence zero(std::vector<double>(128, 0.0), 1.0,
                                  SequenceKind::tau);
    const DensityDecomposition empty = density_zero_decomposition(zero, 0.1);
    CHECK(empty.exception_set.empty());
    CHECK(empty.upper_density_estimate == 0.0);

    const DependenceSequence constant(std::vector<double>(128, 0.5), 1.0,
                                      SequenceKind::tau);
    const DensityDecomposition full = density_zero_decomposition(constant, 0.1);
    CHECK(full.exception_set.size() == 128);
    CHECK(full.upper_density_estimate == doctest::Approx(1.0).epsilon(1e-12));

    // dyadic spikes have vanishing upper density
    const std::int64_t n = 1 << 16;
    const DensityDecomposition spiky = density_zero_decomposition(
        DependenceSequence(dyadic_spikes(n, 1.0), 1.0, SequenceKind::tau), 0.5);
    CHECK(spiky.exception_set.size() == 17);
    CHECK(spiky.upper_density_estimate <= 17.0 / 256.0);
    const DensityDecomposition spiky_small = density_zero_decomposition_values(
        dyadic_spikes(1 << 20, 1.0), 0.5);
    CHECK(spiky_small.upper_density_estimate < spiky.upper_density_estimate);

    CHECK_THROWS_AS(density_zero_decomposition(zero, 0.0), std::invalid_argument);
}

TEST_CASE("cesaro-to-zero forces vanishing exceptional density") {
    // finite form of the equivalence between Cesaro summability and the
    // density-zero decomposition: on a Cesaro-null sequence the estimated
    // upper density vanishes as the horizon grows, for any fixed delta
    Rng rng(77, 4);
    double previous = 1.0;
    for (std::int64_t n : {std::int64_t{1} << 12, std::int64_t{1} << 16,
                           std::int64_t{1} << 20}) {
        std::vector<double> vals(static_cast<std::size_t>(n), 0.0);
        for (std::int64_t t = 1; t <= n; t = 2 * t + 1)
            vals[static_cast<std::size_t>(t - 1)] = 0.6 + 0.4 * rng.uniform();
        const double delta = 0.05;
        const DensityDecomposition dec = density_zero_decomposition_values(vals, delta);
        CHECK(dec.upper_density_estimate < previous);
        previous = dec.upper_density_estimate;
    }
    CHECK(previous < 0.02);
}

TEST_CASE("spectral measure and its fourier sums") {
    CHECK_THROWS_AS(SpectralMeasure({{0.5, 0.3}}), std::invalid_argument);
    CHECK_THROWS_AS(SpectralMeasure({{0.5, 0.3}, {-0.5, 0.2}}), std::invalid_argument);
    CHECK_THROWS_AS(SpectralMeasure({{4.0, 0.3}, {-4.0, 0.3}}), std::invalid_argument);
    CHECK_THROWS_AS(SpectralMeasure({{0.0, -1.0}}), std::invalid_argument);

    const SpectralMeasure point({{0.0, 0.4}});
    for (int t : {0, 1, 5, 100}) CHECK(point.r(t) == doctest::Approx(0.4).epsilon(1e-15));

    const double x0 = 1.1;
    const SpectralMeasure pair({{x0, 0.35}, {-x0, 0.35}});
    for (int t : {0, 1, 3, 11})
        CHECK(pair.r(t) == doctest::Approx(0.7 * std::cos(t * x0)).epsilon(1e-12));

    // |r| never exceeds the total weight
    const SpectralMeasure mix({{0.0, 0.25}, {x0, 0.2}, {-x0, 0.2}});
    for (int t = 0; t < 200; ++t) CHECK(std::abs(mix.r(t)) <= mix.total_weight() + 1e-14);

    // Cesaro mean converges to the weight at zero within the geometric bound
    for (std::int64_t n : {std::int64_t{500}, std::int64_t{10000}}) {
        double mean = 0.0;
        for (std::int64_t t = 1; t <= n; ++t) mean += mix.r(t);
        mean /= static_cast<double>(n);
        CHECK(std::abs(mean - mix.weight_at_zero()) <= mix.cesaro_error_bound(n));
    }
    CHECK(mix.cesaro_error_bound(10000) < mix.cesaro_error_bound(500));
}

}  // TEST_SUITE
