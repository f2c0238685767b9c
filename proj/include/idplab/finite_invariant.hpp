// Type II_1 family: the base measure is intensity * (a stationary ergodic
// probability law on sequence space), so an equivalent invariant probability
// measure exists by construction. Shipped laws have independent coordinates
// drawn from an exactly-integrable marginal and are addressed by a path seed,
// which makes orbit evaluation deterministic and extension unbounded.
#pragma once

#include "idplab/base_system.hpp"

namespace idplab {

class StationaryLaw {
  public:
    virtual ~StationaryLaw() = default;

    virtual std::string describe() const = 0;
    virtual bool nonnegative() const = 0;

    // deterministic coordinate evaluation of the seed-addressed realization
    virtual double eval(std::uint64_t path_seed, long long i) const = 0;

    // exact one-coordinate integrals (coordinates are independent)
    virtual double moment(int p) const = 0;                    // E x^p, p in {1,2}
    virtual double moment_below(int p, double eps) const = 0;  // E[x^p 1{|x|<=eps}]
    virtual double below_prob(double eps) const = 0;           // P(|x| <= eps)
    virtual double ctrunc_mean() const = 0;                    // E c(x)
    virtual double ctrunc_mean_below(double eps) const = 0;
    virtual std::complex<double> exp_moment(std::complex<double> z) const = 0;
    virtual std::complex<double> exp_moment_below(std::complex<double> z,
                                                  double eps) const = 0;
};

using StationaryLawPtr = std::shared_ptr<const StationaryLaw>;

// every coordinate equals 'value' (degenerate marginal)
StationaryLawPtr make_constant_law(double value);
// i.i.d. Uniform(lo, hi) coordinates, 0 <= lo < hi
StationaryLawPtr make_iid_uniform_law(double lo, double hi);

class FiniteInvariantSystem : public BaseSystem {
  public:
    FiniteInvariantSystem(double intensity, StationaryLawPtr law);

    Family family() const override { return Family::FiniteInvariant; }
    ErgodicClass declared_class() const override { return ErgodicClass::TypeII1; }
    std::string describe() const override;

    double hit_mass(const WindowSpec& w) const override;
    std::shared_ptr<const PreparedSampler> prepare(const WindowSpec& w,
                                                   int slack) const override;
    double orbit_eval(const BasePoint& p, int i) const override;
    BasePoint shift_point(const BasePoint& p, int k) const override;
    std::vector<Cell> cells(const WindowSpec& w) const override;
    double compensator_integral(const WindowSpec& w, int pos,
                                CompensatorKind kind) const override;
    std::optional<double> pair_integral(const WindowSpec& w, int i, int j) const override;
    std::optional<std::complex<double>> windowed_exp_integral(
        const WindowSpec& w, std::span<const ExpTerm> terms) const override;
    double small_jump_second_moment(const WindowSpec& w, int pos) const override;
    double small_jump_mean(const WindowSpec& w, int pos) const override;
    double observable_mean() const override;
    double observable_second_moment() const override;
    double full_ctrunc_integral() const override;
    bool observable_nonnegative() const override;
    std::optional<double> exact_pair_mass(const WindowSpec& w, int k) const override;

    double intensity() const { return intensity_; }
    const StationaryLaw& law() const { return *law_; }

    // P(window of the law exceeds the threshold somewhere), exact
    double window_hit_prob(const WindowSpec& w) const;

  private:
    double intensity_;
    StationaryLawPtr law_;
};

BaseSystemPtr make_finite_invariant(double intensity, StationaryLawPtr law);

}  // namespace idplab
