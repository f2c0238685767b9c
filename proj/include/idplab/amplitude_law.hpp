// Amplitude laws for the moving-average family: sigma-finite measures rho on
// R \ {0} with exact tail masses, truncated moments and conditional sampling.
// Two kinds are shipped: finite atom lists and (symmetric or one-sided
// positive) power-law tails rho{|v| > t} = coefficient * t^(-alpha).
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace idplab {

class Rng;

class AmplitudeLaw {
  public:
    enum class Kind { Atoms, PowerLaw };

    static AmplitudeLaw atoms(std::vector<std::pair<double, double>> value_mass);
    static AmplitudeLaw power_law(double alpha, double coefficient, bool symmetric);

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    bool symmetric() const { return symmetric_; }
    const std::vector<std::pair<double, double>>& atom_list() const { return atoms_; }

    // rho{|v| > t}; t > 0 required for power laws (mass diverges at 0)
    double tail_mass(double t) const;
    // one-sided tails rho{v > t} and rho{v < -t}, t >= 0 (t > 0 for power laws)
    double tail_mass_positive(double t) const;
    double tail_mass_negative(double t) const;

    // signed integrals over {|v| > t} and {0 < |v| <= t}; may return +/-inf
    double tail_integral_value(double t) const;
    double tail_integral_square(double t) const;
    double low_integral_square(double t) const;

    // integral of the jump truncation c(scale * v) = clamp(scale*v, -1, 1)
    // over {|v| > t}; exact, piecewise closed form for power laws
    double tail_integral_ctrunc(double t, double scale) const;
    // same integral over all of rho (used when re-expressing representations)
    double full_integral_ctrunc(double scale) const;

    // full-space moments; +inf when divergent
    double full_mean() const;
    double full_second_moment() const;

    bool nonnegative() const;
    double total_mass() const;  // +inf for power laws

    // draw from rho conditioned on {|v| > t}; tail_mass(t) must be positive
    double sample_conditional(double t, Rng& rng) const;

    // pushforward by v -> b*v (b > 0)
    AmplitudeLaw scale_amplitudes(double b) const;
    // multiply all masses by c > 0
    AmplitudeLaw scale_intensity(double c) const;

    std::string describe() const;

  private:
    AmplitudeLaw() = default;

    Kind kind_ = Kind::Atoms;
    std::vector<std::pair<double, double>> atoms_;  // (value, mass)
    double alpha_ = 0.0;
    double coefficient_ = 0.0;  // total tail coefficient
    bool symmetric_ = false;
};

// clamp(x, -1, 1), the truncation used in compensator integrals
double c_truncation(double x);

}  // namespace idplab
