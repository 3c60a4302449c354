#pragma once

#include <vector>

namespace maxid {

// sigma^2(t) families for stationary-increment Gaussian paths.
//   power:         sigma^2(t) = theta * t^alpha, alpha in (0, 2]
//   dyadic_cosine: sigma^2(t) = sum_{k=1..K} (1 - cos(2 pi t / 2^k)); truncation
//                  tail is bounded by (2 pi^2 / 3) t^2 4^{-K}
//   table:         piecewise-linear interpolation of user-supplied values
class Variogram {
public:
    enum class Kind { power, dyadic_cosine, table };

    static Variogram power(double theta, double alpha);
    static Variogram dyadic_cosine(int order);
    static Variogram table(std::vector<double> ts, std::vector<double> values);

    double operator()(double t) const;  // sigma^2(t)
    double sigma(double t) const;

    Kind kind() const { return kind_; }
    int order() const { return order_; }
    double theta() const { return theta_; }
    double alpha() const { return alpha_; }

    // remainder of the dyadic series beyond the truncation order at lag t
    double dyadic_tail_bound(double t) const;
    // smallest order keeping the tail bound at t_max below tol
    static int dyadic_order_for(double t_max, double tol);

private:
    Variogram() = default;

    Kind kind_ = Kind::power;
    double theta_ = 1.0;
    double alpha_ = 1.0;
    int order_ = 1;
    std::vector<double> table_t_;
    std::vector<double> table_v_;
};

}  // namespace maxid
