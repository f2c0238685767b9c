// Positive-type II-infinity family: a cutting-and-stacking skyscraper on
// [0, inf). Each stage cuts the tower in two, stacks the right column on the
// left and appends a spacer block equal to twice the height, so stage heights
// grow as 4^m and total mass as 2^m. The observable is the indicator of the
// unit base interval. Within the stage-M tower every operation reduces to
// exact level combinatorics; the base interval occupies the levels whose
// base-4 digits are all 0 or 1, which makes T^{4^m} return half of any
// level set to itself -- the emitted rigidity lags.
#pragma once

#include "idplab/base_system.hpp"

namespace idplab {

class RigidTowerSystem : public BaseSystem {
  public:
    explicit RigidTowerSystem(int stage_depth);

    Family family() const override { return Family::RigidTower; }
    ErgodicClass declared_class() const override { return ErgodicClass::PositiveTypeIIInf; }
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
    std::vector<long long> rigidity_lags(long long max_lag) const override;

    int stage_depth() const { return depth_; }
    long long height() const { return height_; }        // 4^depth
    double level_width() const { return width_; }       // 2^-depth
    bool base_level(long long level) const;             // base-4 digits all <= 1
    long long max_base_level() const { return max_base_level_; }

    // throws std::out_of_range when the window plus slack would step off the tower
    void validate_reach(const WindowSpec& w, int slack) const;

    // sorted levels whose forward orbit hits the base interval within the window
    std::vector<long long> hit_levels(const WindowSpec& w) const;

  private:
    bool active(const WindowSpec& w) const { return w.threshold < 1.0; }

    int depth_;
    long long height_;
    double width_;
    long long max_base_level_;
    std::vector<long long> base_levels_;  // sorted, 2^depth entries
};

BaseSystemPtr make_rigid_tower(int stage_depth);

}  // namespace idplab
