#include "maxid/variogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maxid/numerics.hpp"

namespace maxid {

Variogram Variogram::power(double theta, double alpha) {
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw std::invalid_argument("Variogram::power: theta must be positive");
    if (!(alpha > 0.0) || alpha > 2.0)
        throw std::invalid_argument("Variogram::power: alpha must lie in (0, 2]");
    Variogram v;
    v.kind_ = Kind::power;
    v.theta_ = theta;
    v.alpha_ = alpha;
    return v;
}

Variogram Variogram::dyadic_cosine(int order) {
    if (order < 1)
        throw std::invalid_argument("Variogram::dyadic_cosine: order must be >= 1");
    Variogram v;
    v.kind_ = Kind::dyadic_cosine;
    v.order_ = order;
    return v;
}

Variogram Variogram::table(std::vector<double> ts, std::vector<double> values) {
    if (ts.size() != values.size() || ts.size() < 2)
        throw std::invalid_argument("Variogram::table: need matching lists, length >= 2");
    if (ts.front() != 0.0 || values.front() != 0.0)
        throw std::invalid_argument("Variogram::table: must start with sigma^2(0) = 0");
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (!(ts[i] > ts[i - 1]))
            throw std::invalid_argument("Variogram::table: lags must increase");
        if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
            throw std::invalid_argument("Variogram::table: values must be >= 0");
    }
    Variogram v;
    v.kind_ = Kind::table;
    v.table_t_ = std::move(ts);
    v.table_v_ = std::move(values);
    return v;
}

double Variogram::operator()(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("Variogram: t must be >= 0");
    switch (kind_) {
        case Kind::power:
            return theta_ * std::pow(t, alpha_);
        case Kind::dyadic_cosine: {
            double s = 0.0;
            double scale = 2.0;
            for (int k = 1; k <= order_; ++k) {
                // 1 - cos(2 pi t / 2^k) = 2 sin^2(pi t / 2^k)
                const double sn = std::sin(kPi * t / scale);
                s += 2.0 * sn * sn;
                scale *= 2.0;
            }
            return s;
        }
        case Kind::table: {
            if (t > table_t_.back())
                throw std::invalid_argument("Variogram::table: t beyond table domain");
            const auto it = std::lower_bound(table_t_.begin(), table_t_.end(), t);
            const std::size_t hi = static_cast<std::size_t>(it - table_t_.begin());
            if (hi == 0 || table_t_[hi] == t) return table_v_[hi];
            const double w = (t - table_t_[hi - 1]) / (table_t_[hi] - table_t_[hi - 1]);
            return table_v_[hi - 1] + w * (table_v_[hi] - table_v_[hi - 1]);
        }
    }
    return 0.0;
}

double Variogram::sigma(double t) const { return std::sqrt((*this)(t)); }

double Variogram::dyadic_tail_bound(double t) const {
    if (kind_ != Kind::dyadic_cosine) return 0.0;
    return 2.0 * kPi * kPi / 3.0 * t * t * std::pow(4.0, -order_);
}

int Variogram::dyadic_order_for(double t_max, double tol) {
    if (!(t_max >= 0.0) || !(tol > 0.0))
        throw std::invalid_argument("dyadic_order_for: bad arguments");
    int order = 1;
    const double c = 2.0 * kPi * kPi / 3.0 * t_max * t_max;
    while (order < 64 && c * std::pow(4.0, -order) > tol) ++order;
    return order;
}

}  // namespace maxid
