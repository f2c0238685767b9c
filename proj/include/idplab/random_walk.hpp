// Conservative zero-type family: the sigma-finite stationary path measure of a
// symmetric finite-variance random walk on Z (counting invariant measure on the
// state space), observed through f(path) = mark * 1{path(0) = 0}. Window-hit
// masses, pair masses and zero-pattern probabilities are computed by exact
// dynamic programs over the reachable state range; conditioned sampling uses
// the first-hit decomposition with sequential exact backward conditioning.
#pragma once

#include "idplab/base_system.hpp"

namespace idplab {

class NullRecurrentWalkSystem : public BaseSystem {
  public:
    NullRecurrentWalkSystem(std::vector<std::pair<int, double>> step_law, double mark);

    Family family() const override { return Family::NullRecurrentWalk; }
    ErgodicClass declared_class() const override {
        return ErgodicClass::ConservativeZeroType;
    }
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

    double mark() const { return mark_; }

    // first-hit masses m_i = P_0(no return to 0 during steps 1..i), i < n
    std::vector<double> first_hit_masses(int n) const;
    // P_0(S_k = 0), exact
    double return_probability(int k) const;
    // P_0(exists j in [a,b) with S_j = 0), exact; requires a >= 1
    double hit_probability_in_range(int a, int b) const;

  private:
    bool active(const WindowSpec& w) const { return std::fabs(mark_) > w.threshold; }
    // mu(all positions in 'times' are zero), times sorted within the window
    double zero_pattern_mass(const std::vector<int>& times) const;

    std::vector<std::pair<int, double>> steps_;
    double mark_;
    int max_step_ = 0;
};

BaseSystemPtr make_null_recurrent_walk(std::vector<std::pair<int, double>> step_law,
                                       double mark);
// uniform over +/- each magnitude
BaseSystemPtr make_simple_walk(const std::vector<int>& magnitudes, double mark);

}  // namespace idplab
