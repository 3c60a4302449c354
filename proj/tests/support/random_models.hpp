#pragma once

#include <algorithm>
#include <vector>

#include "maxid/moving_maxima.hpp"
#include "maxid/rng.hpp"

namespace maxid::testsupport {

struct ModelOptions {
    int max_profiles = 5;
    int max_support = 6;
    bool diagonal_allowed = true;
    bool single_lag_only = false;
    double min_level = -1.0;
    double max_level = 2.5;
    double max_mass = 1.2;
};

inline MovingMaximaModel random_model(Rng& rng, const ModelOptions& opt = {}) {
    std::vector<Profile> profiles;
    const int n_profiles = 1 + static_cast<int>(rng.uniform() * opt.max_profiles);
    for (int j = 0; j < n_profiles; ++j) {
        Profile p;
        p.mass_rate = 0.05 + rng.uniform() * (opt.max_mass - 0.05);
        const int width = opt.single_lag_only
                              ? 1
                              : 1 + static_cast<int>(rng.uniform() * opt.max_support);
        std::vector<int> lags;
        for (int lag = -3; lag <= 3; ++lag) lags.push_back(lag);
        for (std::size_t i = lags.size() - 1; i > 0; --i) {
            const std::size_t j2 =
                static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1));
            std::swap(lags[i], lags[j2]);
        }
        for (int i = 0; i < width; ++i) {
            const double value =
                opt.min_level + rng.uniform() * (opt.max_level - opt.min_level);
            p.support.emplace_back(lags[static_cast<std::size_t>(i)], value);
        }
        profiles.push_back(std::move(p));
    }
    std::vector<DiagonalAtom> diagonal;
    if (opt.diagonal_allowed) {
        const int n_diag = static_cast<int>(rng.uniform() * 3.0);
        for (int j = 0; j < n_diag; ++j) {
            DiagonalAtom d;
            d.level = opt.min_level + rng.uniform() * (opt.max_level - opt.min_level);
            d.mass = 0.05 + rng.uniform() * 0.8;
            diagonal.push_back(d);
        }
    }
    return MovingMaximaModel(std::move(profiles), std::move(diagonal));
}

inline CylinderEvent random_event(Rng& rng, int max_entries = 3) {
    CylinderEvent ev;
    const int k = 1 + static_cast<int>(rng.uniform() * max_entries);
    for (int i = 0; i < k; ++i) {
        const int index = -4 + static_cast<int>(rng.uniform() * 9.0);
        const double level = -0.5 + rng.uniform() * 3.0;
        ev.entries.emplace_back(index, level);
    }
    return ev;
}

}  // namespace maxid::testsupport
