// Dissipative family: pulses h anchored at a lattice offset with amplitude
// drawn from a sigma-finite law rho. The base measure is counting measure on
// offsets tensor rho; the observable orbit of a point (tau, v) is
// f(T^i omega) = v * h(i - tau). The offset coordinate indexes an explicit
// wandering set, so the family carries a structural dissipativity certificate.
#pragma once

#include "idplab/amplitude_law.hpp"
#include "idplab/base_system.hpp"

namespace idplab {

class MovingAverageSystem : public BaseSystem {
  public:
    MovingAverageSystem(std::vector<double> pulse, AmplitudeLaw rho);

    Family family() const override { return Family::MovingAverage; }
    ErgodicClass declared_class() const override { return ErgodicClass::Dissipative; }
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
    std::optional<double> coordinate_tail_mass(double t) const override;
    int default_margin() const override;

    const std::vector<double>& pulse() const { return pulse_; }
    const AmplitudeLaw& amplitude_law() const { return rho_; }

    // pulse tap at index j (0 outside the stored support)
    double tap(long long j) const;
    // max_{0<=i<n} |h(i - tau)|
    double window_peak(const WindowSpec& w, int tau) const;
    // offsets tau with window_peak > 0, i.e. 1-L <= tau <= n-1
    int tau_min(const WindowSpec& w) const;
    int tau_max(const WindowSpec& w) const;

  private:
    std::vector<double> pulse_;
    AmplitudeLaw rho_;
};

BaseSystemPtr make_moving_average(std::vector<double> pulse, AmplitudeLaw rho);

}  // namespace idplab
