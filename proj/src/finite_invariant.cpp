#include "idplab/finite_invariant.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "idplab/amplitude_law.hpp"
#include "idplab/rng.hpp"

namespace idplab {

namespace {

class ConstantLaw : public StationaryLaw {
  public:
    explicit ConstantLaw(double value) : v_(value) {
        if (v_ == 0.0)
            throw std::invalid_argument("constant law: the zero sequence is excluded");
        if (!std::isfinite(v_)) throw std::invalid_argument("constant law: non-finite value");
    }
    std::string describe() const override {
        return "constant(" + std::to_string(v_) + ")";
    }
    bool nonnegative() const override { return v_ > 0.0; }
    double eval(std::uint64_t, long long) const override { return v_; }
    double moment(int p) const override { return p == 1 ? v_ : v_ * v_; }
    double moment_below(int p, double eps) const override {
        return std::fabs(v_) <= eps ? moment(p) : 0.0;
    }
    double below_prob(double eps) const override { return std::fabs(v_) <= eps ? 1.0 : 0.0; }
    double ctrunc_mean() const override { return c_truncation(v_); }
    double ctrunc_mean_below(double eps) const override {
        return std::fabs(v_) <= eps ? c_truncation(v_) : 0.0;
    }
    std::complex<double> exp_moment(std::complex<double> z) const override {
        return std::exp(z * v_);
    }
    std::complex<double> exp_moment_below(std::complex<double> z, double eps) const override {
        return std::fabs(v_) <= eps ? std::exp(z * v_) : 0.0;
    }

  private:
    double v_;
};

class IidUniformLaw : public StationaryLaw {
  public:
    IidUniformLaw(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo >= 0.0) || !(hi > lo))
            throw std::invalid_argument("iid uniform law: need 0 <= lo < hi");
    }
    std::string describe() const override {
        std::ostringstream os;
        os << "iid_uniform(" << lo_ << "," << hi_ << ")";
        return os.str();
    }
    bool nonnegative() const override { return true; }
    double eval(std::uint64_t path_seed, long long i) const override {
        SplitMix64 sm{path_seed ^
                      (0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(i) + 0x6a09e667ull))};
        sm.next();
        const double u = static_cast<double>(sm.next() >> 11) * 0x1.0p-53;
        return lo_ + (hi_ - lo_) * u;
    }
    double moment(int p) const override {
        if (p == 1) return 0.5 * (lo_ + hi_);
        return (hi_ * hi_ * hi_ - lo_ * lo_ * lo_) / (3.0 * (hi_ - lo_));
    }
    double moment_below(int p, double eps) const override {
        const double b = std::min(hi_, eps);
        if (b <= lo_) return 0.0;
        if (p == 1) return (b * b - lo_ * lo_) / (2.0 * (hi_ - lo_));
        return (b * b * b - lo_ * lo_ * lo_) / (3.0 * (hi_ - lo_));
    }
    double below_prob(double eps) const override {
        const double b = std::min(hi_, eps);
        return b <= lo_ ? 0.0 : (b - lo_) / (hi_ - lo_);
    }
    double ctrunc_mean() const override { return ctrunc_integral(lo_, hi_); }
    double ctrunc_mean_below(double eps) const override {
        const double b = std::min(hi_, eps);
        return b <= lo_ ? 0.0 : ctrunc_integral(lo_, b);
    }
    std::complex<double> exp_moment(std::complex<double> z) const override {
        return exp_integral(lo_, hi_, z);
    }
    std::complex<double> exp_moment_below(std::complex<double> z, double eps) const override {
        const double b = std::min(hi_, eps);
        return b <= lo_ ? 0.0 : exp_integral(lo_, b, z);
    }

  private:
    // (1/(hi-lo)) int_a^b c(x) dx with c(x) = min(x,1) on [0,inf)
    double ctrunc_integral(double a, double b) const {
        const double knee = std::min(std::max(a, 1.0), b);
        const double below = (std::min(b, 1.0) > a)
                                 ? 0.5 * (std::min(b, 1.0) * std::min(b, 1.0) - a * a)
                                 : 0.0;
        const double above = b > knee && knee >= 1.0 ? (b - knee) : (b > 1.0 ? b - 1.0 : 0.0);
        return (below + above) / (hi_ - lo_);
    }
    std::complex<double> exp_integral(double a, double b, std::complex<double> z) const {
        if (std::abs(z) < 1e-12)
            return std::complex<double>((b - a) / (hi_ - lo_), 0.0);
        return (std::exp(z * b) - std::exp(z * a)) / (z * (hi_ - lo_));
    }

    double lo_, hi_;
};

}  // namespace

StationaryLawPtr make_constant_law(double value) {
    return std::make_shared<ConstantLaw>(value);
}

StationaryLawPtr make_iid_uniform_law(double lo, double hi) {
    return std::make_shared<IidUniformLaw>(lo, hi);
}

FiniteInvariantSystem::FiniteInvariantSystem(double intensity, StationaryLawPtr law)
    : intensity_(intensity), law_(std::move(law)) {
    if (!(intensity_ > 0.0))
        throw std::invalid_argument("finite_invariant: intensity must be > 0");
    if (law_ == nullptr) throw std::invalid_argument("finite_invariant: null law");
}

double FiniteInvariantSystem::window_hit_prob(const WindowSpec& w) const {
    return 1.0 - std::pow(law_->below_prob(w.threshold), w.length);
}

double FiniteInvariantSystem::hit_mass(const WindowSpec& w) const {
    w.validate();
    return intensity_ * window_hit_prob(w);
}

namespace {

class LawSampler : public PreparedSampler {
  public:
    LawSampler(const StationaryLaw* law, WindowSpec w, double mass)
        : law_(law), w_(w), mass_(mass) {}

    double mass() const override { return mass_; }

    BasePoint sample(Rng& rng) const override {
        if (!(mass_ > 0.0)) throw std::logic_error("finite_invariant: zero hit mass");
        for (int attempt = 0; attempt < 1000000; ++attempt) {
            const std::uint64_t seed = rng.next_u64();
            for (int i = 0; i < w_.length; ++i) {
                if (std::fabs(law_->eval(seed, i)) > w_.threshold)
                    return BasePoint{LawPoint{seed, 0}};
            }
        }
        throw std::runtime_error("finite_invariant: rejection sampling failed to hit");
    }

  private:
    const StationaryLaw* law_;
    WindowSpec w_;
    double mass_;
};

}  // namespace

std::shared_ptr<const PreparedSampler> FiniteInvariantSystem::prepare(const WindowSpec& w,
                                                                      int /*slack*/) const {
    w.validate();
    return std::make_shared<LawSampler>(law_.get(), w, hit_mass(w));
}

double FiniteInvariantSystem::orbit_eval(const BasePoint& p, int i) const {
    const auto& lp = std::get<LawPoint>(p.payload);
    return law_->eval(lp.path_seed, static_cast<long long>(i) + lp.shift);
}

BasePoint FiniteInvariantSystem::shift_point(const BasePoint& p, int k) const {
    auto lp = std::get<LawPoint>(p.payload);
    lp.shift += k;
    return BasePoint{lp};
}

std::vector<Cell> FiniteInvariantSystem::cells(const WindowSpec& w) const {
    std::vector<Cell> out;
    const double below = law_->below_prob(w.threshold);
    const StationaryLaw* law = law_.get();
    for (int i = 0; i < w.length; ++i) {
        const double mass =
            intensity_ * std::pow(below, i) * (1.0 - below);
        if (mass <= 0.0) continue;
        Cell cell;
        cell.label = "first_exceed=" + std::to_string(i);
        cell.mass = mass;
        cell.support = w;
        const double eps = w.threshold;
        const int idx = i;
        cell.contains = [law, eps, idx](const BasePoint& p) {
            const auto* lp = std::get_if<LawPoint>(&p.payload);
            if (lp == nullptr) return false;
            for (int t = 0; t < idx; ++t)
                if (std::fabs(law->eval(lp->path_seed, t + lp->shift)) > eps) return false;
            return std::fabs(law->eval(lp->path_seed, idx + lp->shift)) > eps;
        };
        out.push_back(std::move(cell));
    }
    return out;
}

double FiniteInvariantSystem::compensator_integral(const WindowSpec& w, int pos,
                                                   CompensatorKind kind) const {
    if (pos < 0 || pos >= w.length)
        throw std::invalid_argument("compensator_integral: position outside window");
    const double below = law_->below_prob(w.threshold);
    double full, below_part;
    if (kind == CompensatorKind::Identity) {
        full = law_->moment(1);
        below_part = law_->moment_below(1, w.threshold);
    } else {
        full = law_->ctrunc_mean();
        below_part = law_->ctrunc_mean_below(w.threshold);
    }
    return intensity_ * (full - below_part * std::pow(below, w.length - 1));
}

std::optional<double> FiniteInvariantSystem::pair_integral(const WindowSpec& w, int i,
                                                           int j) const {
    const double below = law_->below_prob(w.threshold);
    if (i == j) {
        const double full = law_->moment(2);
        const double bp = law_->moment_below(2, w.threshold);
        return intensity_ * (full - bp * std::pow(below, w.length - 1));
    }
    const double m1 = law_->moment(1);
    const double m1b = law_->moment_below(1, w.threshold);
    return intensity_ * (m1 * m1 - m1b * m1b * std::pow(below, w.length - 2));
}

std::optional<std::complex<double>> FiniteInvariantSystem::windowed_exp_integral(
    const WindowSpec& w, std::span<const ExpTerm> terms) const {
    // merge duplicate positions first
    std::vector<ExpTerm> ts;
    for (const auto& t : terms) {
        if (t.pos < 0 || t.pos >= w.length)
            throw std::invalid_argument("windowed_exp_integral: position outside window");
        bool merged = false;
        for (auto& u : ts) {
            if (u.pos == t.pos) {
                u.z += t.z;
                merged = true;
                break;
            }
        }
        if (!merged) ts.push_back(t);
    }
    const double below = law_->below_prob(w.threshold);
    std::complex<double> full = 1.0, low = 1.0;
    for (const auto& t : ts) {
        full *= law_->exp_moment(t.z);
        low *= law_->exp_moment_below(t.z, w.threshold);
    }
    const auto m = static_cast<int>(ts.size());
    const double no_hit = std::pow(below, w.length);
    return intensity_ *
           (full - low * std::pow(below, w.length - m) - (1.0 - no_hit));
}

double FiniteInvariantSystem::small_jump_second_moment(const WindowSpec& w,
                                                       int pos) const {
    if (pos < 0 || pos >= w.length)
        throw std::invalid_argument("small_jump_second_moment: position outside window");
    const double below = law_->below_prob(w.threshold);
    return intensity_ * law_->moment_below(2, w.threshold) *
           std::pow(below, w.length - 1);
}

double FiniteInvariantSystem::small_jump_mean(const WindowSpec& w, int pos) const {
    if (pos < 0 || pos >= w.length)
        throw std::invalid_argument("small_jump_mean: position outside window");
    const double below = law_->below_prob(w.threshold);
    return intensity_ * law_->moment_below(1, w.threshold) *
           std::pow(below, w.length - 1);
}

double FiniteInvariantSystem::observable_mean() const {
    return intensity_ * law_->moment(1);
}

double FiniteInvariantSystem::observable_second_moment() const {
    return intensity_ * law_->moment(2);
}

double FiniteInvariantSystem::full_ctrunc_integral() const {
    return intensity_ * law_->ctrunc_mean();
}

bool FiniteInvariantSystem::observable_nonnegative() const { return law_->nonnegative(); }

std::optional<double> FiniteInvariantSystem::exact_pair_mass(const WindowSpec& w,
                                                             int k) const {
    if (k < 0) k = -k;
    const double below = law_->below_prob(w.threshold);
    const double no_hit = std::pow(below, w.length);
    const int overlap_union = w.length + std::min(k, w.length);
    const double no_hit_both = std::pow(below, overlap_union);
    return intensity_ * (1.0 - 2.0 * no_hit + no_hit_both);
}

std::string FiniteInvariantSystem::describe() const {
    std::ostringstream os;
    os << "finite_invariant(intensity=" << intensity_ << ", law=" << law_->describe()
       << ")";
    return os.str();
}

BaseSystemPtr make_finite_invariant(double intensity, StationaryLawPtr law) {
    return std::make_shared<FiniteInvariantSystem>(intensity, std::move(law));
}

}  // namespace idplab
