#include "idplab/rigid_tower.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "idplab/rng.hpp"

namespace idplab {

RigidTowerSystem::RigidTowerSystem(int stage_depth) : depth_(stage_depth) {
    if (stage_depth < 1 || stage_depth > 15)
        throw std::invalid_argument("rigid_tower: stage_depth must be in [1, 15]");
    height_ = 1;
    for (int m = 0; m < depth_; ++m) height_ *= 4;
    width_ = std::ldexp(1.0, -depth_);
    base_levels_.reserve(1ull << depth_);
    base_levels_.push_back(0);
    long long pow4 = 1;
    for (int m = 0; m < depth_; ++m) {
        const std::size_t sz = base_levels_.size();
        for (std::size_t i = 0; i < sz; ++i) base_levels_.push_back(base_levels_[i] + pow4);
        pow4 *= 4;
    }
    std::sort(base_levels_.begin(), base_levels_.end());
    max_base_level_ = base_levels_.back();
}

bool RigidTowerSystem::base_level(long long level) const {
    if (level < 0 || level >= height_) return false;
    while (level > 0) {
        if ((level & 3) > 1) return false;
        level >>= 2;
    }
    return true;
}

void RigidTowerSystem::validate_reach(const WindowSpec& w, int slack) const {
    // points live on levels [0, max_base_level]; forward orbits must stay
    // within the stage tower over the window plus slack (evaluation below
    // level 0 is rejected point-wise in orbit_eval)
    const long long top = max_base_level_ + w.length - 1 + slack;
    if (top >= height_)
        throw std::out_of_range(
            "rigid_tower: depth exceeded; increase stage_depth for this window");
}

std::vector<long long> RigidTowerSystem::hit_levels(const WindowSpec& w) const {
    std::vector<long long> out;
    if (!active(w)) return out;
    out.reserve(base_levels_.size() * static_cast<std::size_t>(w.length));
    for (long long b : base_levels_)
        for (int i = 0; i < w.length; ++i)
            if (b - i >= 0) out.push_back(b - i);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double RigidTowerSystem::hit_mass(const WindowSpec& w) const {
    w.validate();
    validate_reach(w, 0);
    return static_cast<double>(hit_levels(w).size()) * width_;
}

namespace {

class TowerSampler : public PreparedSampler {
  public:
    TowerSampler(std::vector<long long> levels, double width)
        : levels_(std::move(levels)), width_(width) {}

    double mass() const override {
        return static_cast<double>(levels_.size()) * width_;
    }

    BasePoint sample(Rng& rng) const override {
        if (levels_.empty()) throw std::logic_error("rigid_tower: zero hit mass");
        const auto idx = static_cast<std::size_t>(rng.next_double() *
                                                  static_cast<double>(levels_.size()));
        const long long level = levels_[std::min(idx, levels_.size() - 1)];
        return BasePoint{TowerPoint{level, rng.next_double()}};
    }

  private:
    std::vector<long long> levels_;
    double width_;
};

}  // namespace

std::shared_ptr<const PreparedSampler> RigidTowerSystem::prepare(const WindowSpec& w,
                                                                 int slack) const {
    w.validate();
    validate_reach(w, slack);
    return std::make_shared<TowerSampler>(hit_levels(w), width_);
}

double RigidTowerSystem::orbit_eval(const BasePoint& p, int i) const {
    const auto& tp = std::get<TowerPoint>(p.payload);
    const long long level = tp.level + i;
    if (level < 0 || level >= height_)
        throw std::out_of_range("rigid_tower: orbit index beyond representable depth");
    return base_level(level) ? 1.0 : 0.0;
}

BasePoint RigidTowerSystem::shift_point(const BasePoint& p, int k) const {
    auto tp = std::get<TowerPoint>(p.payload);
    tp.level += k;
    if (tp.level < 0 || tp.level >= height_)
        throw std::out_of_range("rigid_tower: shift beyond representable depth");
    return BasePoint{tp};
}

std::vector<Cell> RigidTowerSystem::cells(const WindowSpec& w) const {
    std::vector<Cell> out;
    if (!active(w)) return out;
    // group hit levels by the first window index that lands on the base interval
    std::vector<std::vector<long long>> groups(static_cast<std::size_t>(w.length));
    for (long long level : hit_levels(w)) {
        for (int i = 0; i < w.length; ++i) {
            if (base_level(level + i)) {
                groups[static_cast<std::size_t>(i)].push_back(level);
                break;
            }
        }
    }
    for (int i = 0; i < w.length; ++i) {
        auto& g = groups[static_cast<std::size_t>(i)];
        if (g.empty()) continue;
        Cell cell;
        cell.label = "first_base_hit=" + std::to_string(i);
        cell.mass = static_cast<double>(g.size()) * width_;
        cell.support = w;
        auto levels = std::make_shared<std::vector<long long>>(std::move(g));
        cell.contains = [levels](const BasePoint& p) {
            const auto* tp = std::get_if<TowerPoint>(&p.payload);
            return tp != nullptr &&
                   std::binary_search(levels->begin(), levels->end(), tp->level);
        };
        out.push_back(std::move(cell));
    }
    return out;
}

double RigidTowerSystem::compensator_integral(const WindowSpec& w, int pos,
                                              CompensatorKind /*kind*/) const {
    if (pos < 0 || pos >= w.length)
        throw std::invalid_argument("compensator_integral: position outside window");
    if (!active(w)) return 0.0;
    validate_reach(w, 0);
    // c(1) = 1, so both kinds integrate the base indicator: unit mass
    return 1.0;
}

std::optional<double> RigidTowerSystem::pair_integral(const WindowSpec& w, int i,
                                                      int j) const {
    if (!active(w)) return 0.0;
    validate_reach(w, 0);
    const long long d = std::llabs(static_cast<long long>(i) - j);
    long long count = 0;
    for (long long b : base_levels_)
        if (base_level(b + d)) ++count;
    return static_cast<double>(count) * width_;
}

std::optional<std::complex<double>> RigidTowerSystem::windowed_exp_integral(
    const WindowSpec& w, std::span<const ExpTerm> terms) const {
    if (!active(w)) return std::complex<double>(0.0, 0.0);
    validate_reach(w, 0);
    for (const auto& t : terms)
        if (t.pos < 0 || t.pos >= w.length)
            throw std::invalid_argument("windowed_exp_integral: position outside window");
    std::complex<double> sum = 0.0;
    for (long long level : hit_levels(w)) {
        std::complex<double> phase = 0.0;
        for (const auto& t : terms)
            if (base_level(level + t.pos)) phase += t.z;
        sum += std::exp(phase) - 1.0;
    }
    return sum * width_;
}

double RigidTowerSystem::small_jump_second_moment(const WindowSpec& w, int pos) const {
    if (pos < 0 || pos >= w.length)
        throw std::invalid_argument("small_jump_second_moment: position outside window");
    return active(w) ? 0.0 : 1.0;
}

double RigidTowerSystem::small_jump_mean(const WindowSpec& w, int pos) const {
    if (pos < 0 || pos >= w.length)
        throw std::invalid_argument("small_jump_mean: position outside window");
    return active(w) ? 0.0 : 1.0;
}

double RigidTowerSystem::observable_mean() const { return 1.0; }

double RigidTowerSystem::observable_second_moment() const { return 1.0; }

double RigidTowerSystem::full_ctrunc_integral() const { return 1.0; }

bool RigidTowerSystem::observable_nonnegative() const { return true; }

std::optional<double> RigidTowerSystem::exact_pair_mass(const WindowSpec& w,
                                                        int k) const {
    if (k < 0) k = -k;
    if (!active(w)) return 0.0;
    const long long top = max_base_level_ + w.length - 1 + k;
    if (top >= height_)
        throw std::out_of_range("rigid_tower: depth exceeded for requested lag");
    const auto levels = hit_levels(w);
    long long count = 0;
    for (long long level : levels)
        if (std::binary_search(levels.begin(), levels.end(), level + k)) ++count;
    return static_cast<double>(count) * width_;
}

std::vector<long long> RigidTowerSystem::rigidity_lags(long long max_lag) const {
    std::vector<long long> lags;
    for (long long h = 4; h <= max_lag && h < height_; h *= 4) lags.push_back(h);
    return lags;
}

std::string RigidTowerSystem::describe() const {
    std::ostringstream os;
    os << "rigid_tower(stage_depth=" << depth_ << ", cuts=2, spacer=2h, height="
       << height_ << ")";
    return os.str();
}

BaseSystemPtr make_rigid_tower(int stage_depth) {
    return std::make_shared<RigidTowerSystem>(stage_depth);
}

}  // namespace idplab
