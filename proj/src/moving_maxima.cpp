#include "maxid/moving_maxima.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace maxid {

namespace {

constexpr double kSlackTol = 1e-12;

void validate_event(const CylinderEvent& event) {
    if (event.entries.empty())
        throw std::invalid_argument("CylinderEvent: needs at least one entry");
    for (const auto& [index, level] : event.entries) {
        (void)index;
        if (!std::isfinite(level))
            throw std::invalid_argument("CylinderEvent: levels must be finite");
    }
}

}  // namespace

MovingMaximaModel::MovingMaximaModel(std::vector<Profile> profiles,
                                     std::vector<DiagonalAtom> diagonal)
    : profiles_(std::move(profiles)), diagonal_(std::move(diagonal)) {
    for (Profile& p : profiles_) {
        if (!(p.mass_rate > 0.0) || !std::isfinite(p.mass_rate))
            throw std::invalid_argument("Profile: mass rate must be positive");
        if (p.support.empty())
            throw std::invalid_argument("Profile: support must be non-empty");
        std::sort(p.support.begin(), p.support.end());
        for (std::size_t i = 0; i < p.support.size(); ++i) {
            if (i > 0 && p.support[i].first == p.support[i - 1].first)
                throw std::invalid_argument("Profile: duplicate lag in support");
            if (!std::isfinite(p.support[i].second))
                throw std::invalid_argument("Profile: values must be finite reals");
        }
    }
    for (const DiagonalAtom& d : diagonal_) {
        if (!std::isfinite(d.level))
            throw std::invalid_argument("DiagonalAtom: level must be finite");
        if (!(d.mass > 0.0) || !std::isfinite(d.mass))
            throw std::invalid_argument("DiagonalAtom: mass must be positive");
    }
}

AtomicExponentMeasure MovingMaximaModel::finite_dim_measure(
    std::span<const int> indices) const {
    if (indices.empty())
        throw std::invalid_argument("finite_dim_measure: needs at least one index");
    const std::size_t k = indices.size();
    std::vector<AtomicExponentMeasure::Atom> atoms;
    std::vector<int> shifts;
    for (const Profile& p : profiles_) {
        shifts.clear();
        for (int t : indices) {
            for (const auto& [lag, value] : p.support) {
                (void)value;
                shifts.push_back(t - lag);
            }
        }
        std::sort(shifts.begin(), shifts.end());
        shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
        for (int s : shifts) {
            ExtendedPoint point(k, kNegInf);
            for (std::size_t i = 0; i < k; ++i) {
                const int lag = indices[i] - s;
                const auto it = std::lower_bound(
                    p.support.begin(), p.support.end(), lag,
                    [](const std::pair<int, double>& e, int l) { return e.first < l; });
                if (it != p.support.end() && it->first == lag) point[i] = it->second;
            }
            atoms.push_back({std::move(point), p.mass_rate});
        }
    }
    for (const DiagonalAtom& d : diagonal_) {
        atoms.push_back({ExtendedPoint(k, d.level), d.mass});
    }
    return AtomicExponentMeasure(k, std::move(atoms));
}

double MovingMaximaModel::tau_exact(double a, int t) const {
    double mass = 0.0;
    for (const Profile& p : profiles_) {
        // shifts that can put both X(0) and X(t) above a
        for (const auto& [lag, value] : p.support) {
            if (!(value > a)) continue;
            const int s = -lag;  // profile value at index 0
            const int other = t - s;
            const auto it = std::lower_bound(
                p.support.begin(), p.support.end(), other,
                [](const std::pair<int, double>& e, int l) { return e.first < l; });
            if (it != p.support.end() && it->first == other && it->second > a)
                mass += p.mass_rate;
        }
    }
    for (const DiagonalAtom& d : diagonal_) {
        if (d.level > a) mass += d.mass;
    }
    return mass;
}

double MovingMaximaModel::tau_from_definition(double a, int t) const {
    const int pair_idx[2] = {0, t};
    const int zero_idx[1] = {0};
    const int t_idx[1] = {t};
    const double level2[2] = {a, a};
    const double level1[1] = {a};
    const double joint = finite_dim_measure(pair_idx).cylinder_prob(level2);
    const double p0 = finite_dim_measure(zero_idx).cylinder_prob(level1);
    const double pt = finite_dim_measure(t_idx).cylinder_prob(level1);
    return std::log(joint) - std::log(p0) - std::log(pt);
}

double MovingMaximaModel::event_prob(const CylinderEvent& event) const {
    const std::pair<CylinderEvent, int> one[] = {{event, 0}};
    return cylinder_joint_prob(one);
}

double MovingMaximaModel::cylinder_joint_prob(
    std::span<const std::pair<CylinderEvent, int>> shifted_events) const {
    std::map<int, double> merged;  // index -> min level
    for (const auto& [event, shift] : shifted_events) {
        validate_event(event);
        for (const auto& [index, level] : event.entries) {
            const int shifted = index + shift;
            auto [it, inserted] = merged.emplace(shifted, level);
            if (!inserted) it->second = std::min(it->second, level);
        }
    }
    if (merged.empty())
        throw std::invalid_argument("cylinder_joint_prob: no events given");
    std::vector<int> indices;
    std::vector<double> levels;
    indices.reserve(merged.size());
    levels.reserve(merged.size());
    for (const auto& [index, level] : merged) {
        indices.push_back(index);
        levels.push_back(level);
    }
    return finite_dim_measure(indices).cylinder_prob(levels);
}

LebowitzReport MovingMaximaModel::lebowitz_check(const CylinderEvent& a,
                                                 const CylinderEvent& b, int t) const {
    validate_event(a);
    validate_event(b);
    LebowitzReport rep;
    const std::pair<CylinderEvent, int> both[] = {{a, 0}, {b, t}};
    rep.joint = cylinder_joint_prob(both);
    const double pa = event_prob(a);
    const double pb = event_prob(b);
    rep.product = pa * pb;

    double level = a.entries.front().second;
    for (const auto& [idx, y] : a.entries) {
        (void)idx;
        level = std::min(level, y);
    }
    for (const auto& [idx, y] : b.entries) {
        (void)idx;
        level = std::min(level, y);
    }
    rep.level = level;

    double tau_sum = 0.0;
    for (const auto& [ti, ya] : a.entries) {
        (void)ya;
        for (const auto& [tj, yb] : b.entries) {
            (void)yb;
            tau_sum += tau_exact(level, t + tj - ti);
        }
    }
    rep.tau_sum = tau_sum;
    // single exp keeps tiny-probability cases away from 0 * inf
    rep.upper_bound = std::exp(tau_sum + std::log(pa) + std::log(pb));

    rep.lower_slack = rep.joint - rep.product;
    rep.upper_slack = rep.upper_bound - rep.joint;
    rep.lower_ok = rep.lower_slack >= -kSlackTol;
    rep.upper_ok = rep.upper_slack >= -kSlackTol;
    return rep;
}

int MovingMaximaModel::max_profile_width() const {
    int width = 0;
    for (const Profile& p : profiles_) {
        width = std::max(width, p.support.back().first - p.support.front().first);
    }
    return width;
}

std::vector<double> MovingMaximaModel::sample(std::span<const int> indices,
                                              Rng& rng) const {
    const AtomicExponentMeasure q = finite_dim_measure(indices);
    std::vector<double> x(indices.size(), kNegInf);
    for (const auto& atom : q.atoms()) {
        // atom present in the Poisson process with prob 1 - e^{-mass}
        if (rng.uniform() < -std::expm1(-atom.mass)) {
            for (std::size_t i = 0; i < x.size(); ++i)
                x[i] = std::max(x[i], atom.point[i]);
        }
    }
    return x;
}

}  // namespace maxid
