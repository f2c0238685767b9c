#include "idplab/base_system.hpp"

#include <cmath>
#include <stdexcept>

#include "idplab/rng.hpp"

namespace idplab {

const char* family_name(Family f) {
    switch (f) {
        case Family::MovingAverage: return "moving_average";
        case Family::NullRecurrentWalk: return "null_recurrent_walk";
        case Family::RigidTower: return "rigid_tower";
        case Family::FiniteInvariant: return "finite_invariant";
        case Family::DisjointUnion: return "disjoint_union";
    }
    return "?";
}

const char* ergodic_class_name(ErgodicClass c) {
    switch (c) {
        case ErgodicClass::Dissipative: return "dissipative";
        case ErgodicClass::ConservativeZeroType: return "conservative_zero_type";
        case ErgodicClass::PositiveTypeIIInf: return "positive_type_II_inf";
        case ErgodicClass::TypeII1: return "type_II_1";
        case ErgodicClass::Composite: return "composite";
    }
    return "?";
}

bool BaseSystem::square_integrable_observable() const {
    return std::isfinite(observable_second_moment());
}

bool BaseSystem::integrable_observable() const {
    return std::isfinite(observable_mean());
}

bool BaseSystem::window_hit(const BasePoint& p, const WindowSpec& w, int offset) const {
    for (int i = 0; i < w.length; ++i)
        if (std::fabs(orbit_eval(p, offset + i)) > w.threshold) return true;
    return false;
}

EmpiricalCorrelation BaseSystem::correlation_estimate(const WindowSpec& w, int k,
                                                      int draws, Rng& rng) const {
    if (draws < 1) throw std::invalid_argument("correlation_estimate: draws >= 1 required");
    if (k < 0) throw std::invalid_argument("correlation_estimate: lag must be >= 0");
    const double mass = hit_mass(w);
    if (k == 0) return {0, mass, 0.0};  // A cap A = A
    if (mass == 0.0) return {k, 0.0, 0.0};
    auto sampler = prepare(w, k);
    long long hits = 0;
    for (int d = 0; d < draws; ++d) {
        const BasePoint p = sampler->sample(rng);
        if (window_hit(p, w, k)) ++hits;
    }
    const double phat = static_cast<double>(hits) / static_cast<double>(draws);
    const double se = mass * std::sqrt(phat * (1.0 - phat) / static_cast<double>(draws));
    return {k, mass * phat, se};
}

}  // namespace idplab
