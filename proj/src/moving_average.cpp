#include "idplab/moving_average.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "idplab/rng.hpp"

namespace idplab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

MovingAverageSystem::MovingAverageSystem(std::vector<double> pulse, AmplitudeLaw rho)
    : pulse_(std::move(pulse)), rho_(std::move(rho)) {
    bool any = false;
    for (double h : pulse_) {
        if (!std::isfinite(h)) throw std::invalid_argument("moving_average: non-finite tap");
        if (h != 0.0) any = true;
    }
    if (!any) throw std::invalid_argument("moving_average: all-zero pulse");
}

double MovingAverageSystem::tap(long long j) const {
    if (j < 0 || j >= static_cast<long long>(pulse_.size())) return 0.0;
    return pulse_[static_cast<std::size_t>(j)];
}

double MovingAverageSystem::window_peak(const WindowSpec& w, int tau) const {
    double peak = 0.0;
    for (int i = 0; i < w.length; ++i)
        peak = std::max(peak, std::fabs(tap(i - tau)));
    return peak;
}

int MovingAverageSystem::tau_min(const WindowSpec&) const {
    return 1 - static_cast<int>(pulse_.size());
}

int MovingAverageSystem::tau_max(const WindowSpec& w) const { return w.length - 1; }

double MovingAverageSystem::hit_mass(const WindowSpec& w) const {
    w.validate();
    double mass = 0.0;
    for (int tau = tau_min(w); tau <= tau_max(w); ++tau) {
        const double peak = window_peak(w, tau);
        if (peak > 0.0) mass += rho_.tail_mass(w.threshold / peak);
    }
    return mass;
}

namespace {

class MaSampler : public PreparedSampler {
  public:
    MaSampler(const AmplitudeLaw& rho, std::vector<int> offsets,
              std::vector<double> thresholds, std::vector<double> weights, double mass)
        : rho_(rho),
          offsets_(std::move(offsets)),
          thresholds_(std::move(thresholds)),
          weights_(std::move(weights)),
          mass_(mass) {}

    double mass() const override { return mass_; }

    BasePoint sample(Rng& rng) const override {
        if (!(mass_ > 0.0)) throw std::logic_error("moving_average: zero hit mass");
        const std::size_t idx = rng.categorical(weights_, mass_);
        const double v = rho_.sample_conditional(thresholds_[idx], rng);
        return BasePoint{MovingAveragePoint{offsets_[idx], v}};
    }

  private:
    const AmplitudeLaw rho_;
    std::vector<int> offsets_;
    std::vector<double> thresholds_;
    std::vector<double> weights_;
    double mass_;
};

}  // namespace

std::shared_ptr<const PreparedSampler> MovingAverageSystem::prepare(const WindowSpec& w,
                                                                    int /*slack*/) const {
    w.validate();
    std::vector<int> offsets;
    std::vector<double> thresholds;
    std::vector<double> weights;
    double mass = 0.0;
    for (int tau = tau_min(w); tau <= tau_max(w); ++tau) {
        const double peak = window_peak(w, tau);
        if (peak <= 0.0) continue;
        const double t = w.threshold / peak;
        const double m = rho_.tail_mass(t);
        if (m <= 0.0) continue;
        offsets.push_back(tau);
        thresholds.push_back(t);
        weights.push_back(m);
        mass += m;
    }
    return std::make_shared<MaSampler>(rho_, std::move(offsets), std::move(thresholds),
                                       std::move(weights), mass);
}

double MovingAverageSystem::orbit_eval(const BasePoint& p, int i) const {
    const auto& ma = std::get<MovingAveragePoint>(p.payload);
    return ma.amplitude * tap(static_cast<long long>(i) - ma.offset);
}

BasePoint MovingAverageSystem::shift_point(const BasePoint& p, int k) const {
    auto ma = std::get<MovingAveragePoint>(p.payload);
    ma.offset -= k;
    return BasePoint{ma};
}

std::vector<Cell> MovingAverageSystem::cells(const WindowSpec& w) const {
    std::vector<Cell> out;
    for (int tau = tau_min(w); tau <= tau_max(w); ++tau) {
        const double peak = window_peak(w, tau);
        if (peak <= 0.0) continue;
        const double t = w.threshold / peak;
        const double m = rho_.tail_mass(t);
        if (m <= 0.0) continue;
        Cell cell;
        cell.label = "tau=" + std::to_string(tau);
        cell.mass = m;
        cell.support = w;
        cell.contains = [tau, t](const BasePoint& p) {
            const auto* ma = std::get_if<MovingAveragePoint>(&p.payload);
            return ma != nullptr && ma->offset == tau && std::fabs(ma->amplitude) > t;
        };
        out.push_back(std::move(cell));
    }
    return out;
}

double MovingAverageSystem::compensator_integral(const WindowSpec& w, int pos,
                                                 CompensatorKind kind) const {
    if (pos < 0 || pos >= w.length)
        throw std::invalid_argument("compensator_integral: position outside window");
    double sum = 0.0;
    for (int tau = tau_min(w); tau <= tau_max(w); ++tau) {
        const double peak = window_peak(w, tau);
        if (peak <= 0.0) continue;
        const double t = w.threshold / peak;
        const double h = tap(pos - tau);
        if (kind == CompensatorKind::Identity) {
            if (h != 0.0) sum += h * rho_.tail_integral_value(t);
        } else {
            sum += rho_.tail_integral_ctrunc(t, h);
        }
    }
    return sum;
}

std::optional<double> MovingAverageSystem::pair_integral(const WindowSpec& w, int i,
                                                         int j) const {
    double sum = 0.0;
    for (int tau = tau_min(w); tau <= tau_max(w); ++tau) {
        const double peak = window_peak(w, tau);
        if (peak <= 0.0) continue;
        const double hh = tap(i - tau) * tap(j - tau);
        if (hh == 0.0) continue;
        const double sq = rho_.tail_integral_square(w.threshold / peak);
        if (!std::isfinite(sq)) return kInf;
        sum += hh * sq;
    }
    return sum;
}

std::optional<std::complex<double>> MovingAverageSystem::windowed_exp_integral(
    const WindowSpec& w, std::span<const ExpTerm> terms) const {
    if (rho_.kind() != AmplitudeLaw::Kind::Atoms) return std::nullopt;
    std::complex<double> sum = 0.0;
    for (int tau = tau_min(w); tau <= tau_max(w); ++tau) {
        const double peak = window_peak(w, tau);
        if (peak <= 0.0) continue;
        const double t = w.threshold / peak;
        for (const auto& [v, m] : rho_.atom_list()) {
            if (std::fabs(v) <= t) continue;
            std::complex<double> phase = 0.0;
            for (const auto& term : terms) phase += term.z * (v * tap(term.pos - tau));
            sum += m * (std::exp(phase) - 1.0);
        }
    }
    return sum;
}

double MovingAverageSystem::small_jump_second_moment(const WindowSpec& w, int pos) const {
    if (pos < 0 || pos >= w.length)
        throw std::invalid_argument("small_jump_second_moment: position outside window");
    double sum = 0.0;
    for (int tau = tau_min(w); tau <= tau_max(w); ++tau) {
        const double peak = window_peak(w, tau);
        if (peak <= 0.0) continue;
        const double h = tap(pos - tau);
        if (h == 0.0) continue;
        sum += h * h * rho_.low_integral_square(w.threshold / peak);
    }
    return sum;
}

double MovingAverageSystem::small_jump_mean(const WindowSpec& w, int pos) const {
    if (pos < 0 || pos >= w.length)
        throw std::invalid_argument("small_jump_mean: position outside window");
    double sum = 0.0;
    for (int tau = tau_min(w); tau <= tau_max(w); ++tau) {
        const double peak = window_peak(w, tau);
        if (peak <= 0.0) continue;
        const double h = tap(pos - tau);
        if (h == 0.0) continue;
        if (rho_.kind() == AmplitudeLaw::Kind::Atoms) {
            double low = 0.0;
            const double t = w.threshold / peak;
            for (const auto& [v, m] : rho_.atom_list())
                if (std::fabs(v) <= t) low += v * m;
            sum += h * low;
        } else if (rho_.symmetric()) {
            // odd integrand over a symmetric region
        } else {
            return kInf;  // one-sided power laws have no finite low-part mean here
        }
    }
    return sum;
}

double MovingAverageSystem::observable_mean() const {
    double hsum = 0.0;
    for (double h : pulse_) hsum += h;
    const double m = rho_.full_mean();
    if (!std::isfinite(m)) return hsum == 0.0 ? 0.0 : kInf;
    return hsum * m;
}

double MovingAverageSystem::observable_second_moment() const {
    double h2 = 0.0;
    for (double h : pulse_) h2 += h * h;
    const double m2 = rho_.full_second_moment();
    return std::isfinite(m2) ? h2 * m2 : kInf;
}

double MovingAverageSystem::full_ctrunc_integral() const {
    double sum = 0.0;
    for (double h : pulse_) sum += rho_.full_integral_ctrunc(h);
    return sum;
}

bool MovingAverageSystem::observable_nonnegative() const {
    if (!rho_.nonnegative()) return false;
    for (double h : pulse_)
        if (h < 0.0) return false;
    return true;
}

std::optional<double> MovingAverageSystem::exact_pair_mass(const WindowSpec& w,
                                                           int k) const {
    // mu(A cap T^{-k}A): a point hits both windows iff |v| clears the threshold
    // against the smaller of the two window peaks
    double sum = 0.0;
    const int lo = tau_min(w) ;
    const int hi = tau_max(w) + std::abs(k);
    for (int tau = lo - std::abs(k); tau <= hi; ++tau) {
        const double p0 = window_peak(w, tau);
        const double pk = window_peak(w, tau - k);
        const double peak = std::min(p0, pk);
        if (peak <= 0.0) continue;
        sum += rho_.tail_mass(w.threshold / peak);
    }
    return sum;
}

std::optional<double> MovingAverageSystem::coordinate_tail_mass(double t) const {
    if (!(t > 0.0)) return std::nullopt;
    double sum = 0.0;
    for (double h : pulse_) {
        if (h > 0.0)
            sum += rho_.tail_mass_positive(t / h);
        else if (h < 0.0)
            sum += rho_.tail_mass_negative(t / -h);
    }
    return sum;
}

int MovingAverageSystem::default_margin() const {
    return std::max(0, static_cast<int>(pulse_.size()) - 1);
}

std::string MovingAverageSystem::describe() const {
    std::ostringstream os;
    os << "moving_average(pulse=[";
    for (std::size_t i = 0; i < pulse_.size(); ++i) {
        if (i) os << ",";
        os << pulse_[i];
    }
    os << "], rho=" << rho_.describe() << ")";
    return os.str();
}

BaseSystemPtr make_moving_average(std::vector<double> pulse, AmplitudeLaw rho) {
    return std::make_shared<MovingAverageSystem>(std::move(pulse), std::move(rho));
}

}  // namespace idplab
