#pragma once

#include <span>
#include <utility>
#include <vector>

#include "maxid/exponent_measure.hpp"
#include "maxid/rng.hpp"

namespace maxid {

// Deterministic profile shifted over the integers with Poisson mass rate.
// Off its (finite, non-empty) support the profile is -inf.
struct Profile {
    double mass_rate = 0.0;
    std::vector<std::pair<int, double>> support;  // (lag, value), lags distinct
};

// Contributes the atom (level, ..., level) with the given mass to every
// finite-dimensional exponent measure; a fully dependent component.
struct DiagonalAtom {
    double level = 0.0;
    double mass = 0.0;
};

// Intersection of pointwise constraints {X(t_i) <= y_i}. Repeated indices
// intersect (the effective level is the minimum).
struct CylinderEvent {
    std::vector<std::pair<int, double>> entries;  // (index, level), levels finite
};

struct LebowitzReport {
    double joint = 0.0;        // P[A and B shifted by t]
    double product = 0.0;      // P[A] P[B]
    double upper_bound = 0.0;  // exp(tau_sum) P[A] P[B]
    double tau_sum = 0.0;
    double level = 0.0;        // smallest event level
    double lower_slack = 0.0;  // joint - product, >= 0 up to round-off
    double upper_slack = 0.0;  // upper_bound - joint, >= 0 up to round-off
    bool lower_ok = false;
    bool upper_ok = false;
};

// Stationary max-i.d. sequence given by moving maxima of finite-support
// profiles plus diagonal atoms. Every finite-dimensional exponent measure is a
// finite atomic measure, so all cylinder probabilities and dependence
// coefficients are computed exactly.
class MovingMaximaModel {
public:
    MovingMaximaModel(std::vector<Profile> profiles, std::vector<DiagonalAtom> diagonal);

    const std::vector<Profile>& profiles() const { return profiles_; }
    const std::vector<DiagonalAtom>& diagonal() const { return diagonal_; }

    // Exponent measure of (X(t_1), ..., X(t_k)); repeated indices allowed.
    AtomicExponentMeasure finite_dim_measure(std::span<const int> indices) const;

    // tau_a(t) as the mass of the open quadrant (a, inf)^2 under the (0, t)
    // measure, evaluated directly from profile overlaps.
    double tau_exact(double a, int t) const;

    // tau_a(t) from its definition, log P[X(0)<=a, X(t)<=a] - log P[X(0)<=a]
    // - log P[X(t)<=a], each probability going through the induced measure.
    double tau_from_definition(double a, int t) const;

    double event_prob(const CylinderEvent& event) const;

    // P of the intersection of the given events, each shifted in time.
    double cylinder_joint_prob(
        std::span<const std::pair<CylinderEvent, int>> shifted_events) const;

    // Both sides of the correlation sandwich
    //   P[A]P[B] <= P[A & B_t] <= exp(sum_ij tau_a(t + t_j'' - t_i')) P[A]P[B]
    // with a the smallest level appearing in either event.
    LebowitzReport lebowitz_check(const CylinderEvent& a, const CylinderEvent& b,
                                  int t) const;

    // Q_0((a, inf)); bounds tau_a(t) uniformly in t.
    double level_exceedance_rate(double a) const { return tau_exact(a, 0); }

    // max over profiles of (max lag - min lag); tau_a(t) = diagonal mass above
    // a for every |t| beyond this width
    int max_profile_width() const;

    // Exact draw of (X(t_1), ..., X(t_k)); entries may be -inf when no atom
    // fires. Consumes one uniform per atom of the induced measure.
    std::vector<double> sample(std::span<const int> indices, Rng& rng) const;

private:
    std::vector<Profile> profiles_;
    std::vector<DiagonalAtom> diagonal_;
};

}  // namespace maxid
