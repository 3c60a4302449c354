#include "maxid/exponent_measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxid {

bool is_valid_extended_coord(double x) {
    if (std::isnan(x)) return false;
    return x != std::numeric_limits<double>::infinity();
}

AtomicExponentMeasure::AtomicExponentMeasure(std::size_t dim) : dim_(dim) {
    if (dim_ == 0) throw std::invalid_argument("AtomicExponentMeasure: dim must be >= 1");
}

AtomicExponentMeasure::AtomicExponentMeasure(std::size_t dim, std::vector<Atom> atoms)
    : dim_(dim), atoms_(std::move(atoms)) {
    if (dim_ == 0) throw std::invalid_argument("AtomicExponentMeasure: dim must be >= 1");
    for (const Atom& a : atoms_) {
        if (a.point.size() != dim_)
            throw std::invalid_argument("AtomicExponentMeasure: atom dimension mismatch");
        if (!(a.mass > 0.0) || !std::isfinite(a.mass))
            throw std::invalid_argument("AtomicExponentMeasure: atom mass must be positive");
        for (double x : a.point) {
            if (!is_valid_extended_coord(x))
                throw std::invalid_argument(
                    "AtomicExponentMeasure: coordinates must lie in [-inf, +inf)");
        }
    }
    canonicalize();
}

void AtomicExponentMeasure::canonicalize() {
    std::stable_sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) {
        return std::lexicographical_compare(a.point.begin(), a.point.end(),
                                            b.point.begin(), b.point.end());
    });
    std::vector<Atom> merged;
    merged.reserve(atoms_.size());
    for (Atom& a : atoms_) {
        if (!merged.empty() && merged.back().point == a.point) {
            merged.back().mass += a.mass;
        } else {
            merged.push_back(std::move(a));
        }
    }
    atoms_ = std::move(merged);
}

double AtomicExponentMeasure::total_mass() const {
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.mass;
    return s;
}

double AtomicExponentMeasure::exceedance_mass(std::span<const double> y) const {
    if (y.size() != dim_)
        throw std::invalid_argument("exceedance_mass: level vector dimension mismatch");
    double s = 0.0;
    for (const Atom& a : atoms_) {
        for (std::size_t i = 0; i < dim_; ++i) {
            if (a.point[i] > y[i]) {
                s += a.mass;
                break;
            }
        }
    }
    return s;
}

double AtomicExponentMeasure::cylinder_prob(std::span<const double> y) const {
    return std::exp(-exceedance_mass(y));
}

double AtomicExponentMeasure::upper_quadrant_mass(std::span<const double> y) const {
    if (y.size() != dim_)
        throw std::invalid_argument("upper_quadrant_mass: level vector dimension mismatch");
    double s = 0.0;
    for (const Atom& a : atoms_) {
        bool all_above = true;
        for (std::size_t i = 0; i < dim_; ++i) {
            if (!(a.point[i] > y[i])) {
                all_above = false;
                break;
            }
        }
        if (all_above) s += a.mass;
    }
    return s;
}

AtomicExponentMeasure AtomicExponentMeasure::project(
    std::span<const std::size_t> coords) const {
    if (coords.empty()) throw std::invalid_argument("project: empty coordinate subset");
    for (std::size_t c : coords) {
        if (c >= dim_) throw std::invalid_argument("project: coordinate out of range");
    }
    std::vector<Atom> projected;
    projected.reserve(atoms_.size());
    for (const Atom& a : atoms_) {
        ExtendedPoint p(coords.size());
        bool all_bottom = true;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            p[i] = a.point[coords[i]];
            if (p[i] != kNegInf) all_bottom = false;
        }
        if (all_bottom) continue;  // charges no exceedance set at finite levels
        projected.push_back(Atom{std::move(p), a.mass});
    }
    return AtomicExponentMeasure(coords.size(), std::move(projected));
}

bool approx_equal(const AtomicExponentMeasure& a, const AtomicExponentMeasure& b,
                  double mass_tol) {
    if (a.dim() != b.dim() || a.atoms().size() != b.atoms().size()) return false;
    for (std::size_t i = 0; i < a.atoms().size(); ++i) {
        if (a.atoms()[i].point != b.atoms()[i].point) return false;
        if (std::abs(a.atoms()[i].mass - b.atoms()[i].mass) > mass_tol) return false;
    }
    return true;
}

}  // namespace maxid
