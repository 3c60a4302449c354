#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace maxid {

// Coordinates of exponent-measure atoms live in [-inf, +inf): IEEE -inf is the
// bottom element, +inf and NaN are rejected. Only comparisons are ever applied
// to coordinates.
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using ExtendedPoint = std::vector<double>;

bool is_valid_extended_coord(double x);

// Finite atomic measure Q on [-inf, +inf)^d. The law of a max-i.d. vector with
// this exponent measure is F(y) = exp(-Q(complement of [-inf, y])).
//
// Atoms are kept canonical: sorted lexicographically, duplicate points merged
// with masses added (exact equality of stored coordinates), zero-mass entries
// never stored.
class AtomicExponentMeasure {
public:
    struct Atom {
        ExtendedPoint point;
        double mass;
    };

    explicit AtomicExponentMeasure(std::size_t dim);
    AtomicExponentMeasure(std::size_t dim, std::vector<Atom> atoms);

    std::size_t dim() const { return dim_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    double total_mass() const;

    // mass of atoms p with p_i > y_i for at least one i
    double exceedance_mass(std::span<const double> y) const;
    // P[X <= y] = exp(-exceedance_mass(y))
    double cylinder_prob(std::span<const double> y) const;
    // mass of the open upper quadrant {p : p_i > y_i for every i}
    double upper_quadrant_mass(std::span<const double> y) const;

    // keep the listed coordinates (0-based, order preserved, repeats allowed);
    // atoms collapsing to the all -inf point are dropped
    AtomicExponentMeasure project(std::span<const std::size_t> coords) const;

private:
    void canonicalize();

    std::size_t dim_;
    std::vector<Atom> atoms_;
};

// Equality of canonical forms: identical points, masses within mass_tol.
bool approx_equal(const AtomicExponentMeasure& a, const AtomicExponentMeasure& b,
                  double mass_tol = 0.0);

}  // namespace maxid
