#include "idplab/amplitude_law.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "idplab/rng.hpp"

namespace idplab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double c_truncation(double x) {
    if (x < -1.0) return -1.0;
    if (x > 1.0) return 1.0;
    return x;
}

AmplitudeLaw AmplitudeLaw::atoms(std::vector<std::pair<double, double>> value_mass) {
    if (value_mass.empty())
        throw std::invalid_argument("amplitude law: empty atom list");
    for (const auto& [v, m] : value_mass) {
        if (v == 0.0) throw std::invalid_argument("amplitude law: atom at zero");
        if (!(m > 0.0)) throw std::invalid_argument("amplitude law: atom mass must be > 0");
        if (!std::isfinite(v) || !std::isfinite(m))
            throw std::invalid_argument("amplitude law: non-finite atom");
    }
    AmplitudeLaw law;
    law.kind_ = Kind::Atoms;
    law.atoms_ = std::move(value_mass);
    return law;
}

AmplitudeLaw AmplitudeLaw::power_law(double alpha, double coefficient, bool symmetric) {
    if (!(alpha > 0.0)) throw std::invalid_argument("amplitude law: alpha must be > 0");
    if (!(coefficient > 0.0))
        throw std::invalid_argument("amplitude law: coefficient must be > 0");
    AmplitudeLaw law;
    law.kind_ = Kind::PowerLaw;
    law.alpha_ = alpha;
    law.coefficient_ = coefficient;
    law.symmetric_ = symmetric;
    return law;
}

double AmplitudeLaw::tail_mass(double t) const {
    if (kind_ == Kind::Atoms) {
        double m = 0.0;
        for (const auto& [v, w] : atoms_)
            if (std::fabs(v) > t) m += w;
        return m;
    }
    if (!(t > 0.0)) return kInf;
    return coefficient_ * std::pow(t, -alpha_);
}

double AmplitudeLaw::tail_mass_positive(double t) const {
    if (kind_ == Kind::Atoms) {
        double m = 0.0;
        for (const auto& [v, w] : atoms_)
            if (v > t) m += w;
        return m;
    }
    if (!(t > 0.0)) return kInf;
    const double full = coefficient_ * std::pow(t, -alpha_);
    return symmetric_ ? 0.5 * full : full;
}

double AmplitudeLaw::tail_mass_negative(double t) const {
    if (kind_ == Kind::Atoms) {
        double m = 0.0;
        for (const auto& [v, w] : atoms_)
            if (v < -t) m += w;
        return m;
    }
    if (!(t > 0.0)) return kInf;
    return symmetric_ ? 0.5 * coefficient_ * std::pow(t, -alpha_) : 0.0;
}

double AmplitudeLaw::tail_integral_value(double t) const {
    if (kind_ == Kind::Atoms) {
        double s = 0.0;
        for (const auto& [v, w] : atoms_)
            if (std::fabs(v) > t) s += v * w;
        return s;
    }
    if (symmetric_) return 0.0;
    if (!(t > 0.0)) return kInf;
    // int_t^inf v * c*alpha*v^(-alpha-1) dv
    if (alpha_ <= 1.0) return kInf;
    return coefficient_ * alpha_ / (alpha_ - 1.0) * std::pow(t, 1.0 - alpha_);
}

double AmplitudeLaw::tail_integral_square(double t) const {
    if (kind_ == Kind::Atoms) {
        double s = 0.0;
        for (const auto& [v, w] : atoms_)
            if (std::fabs(v) > t) s += v * v * w;
        return s;
    }
    if (!(t > 0.0)) return kInf;
    if (alpha_ <= 2.0) return kInf;
    return coefficient_ * alpha_ / (alpha_ - 2.0) * std::pow(t, 2.0 - alpha_);
}

double AmplitudeLaw::low_integral_square(double t) const {
    if (t <= 0.0) return 0.0;
    if (kind_ == Kind::Atoms) {
        double s = 0.0;
        for (const auto& [v, w] : atoms_)
            if (std::fabs(v) <= t) s += v * v * w;
        return s;
    }
    // int_0^t v^2 * c*alpha*v^(-alpha-1) dv, finite for alpha < 2
    if (alpha_ >= 2.0) return kInf;
    return coefficient_ * alpha_ / (2.0 - alpha_) * std::pow(t, 2.0 - alpha_);
}

namespace {

// int_a^b v * alpha * v^(-alpha-1) dv  (one-sided power density, coefficient 1)
double power_first_moment(double alpha, double a, double b) {
    if (b <= a) return 0.0;
    if (alpha == 1.0) return std::log(b / a);
    const double e = 1.0 - alpha;
    return alpha / e * (std::pow(b, e) - std::pow(a, e));
}

}  // namespace

double AmplitudeLaw::tail_integral_ctrunc(double t, double scale) const {
    if (kind_ == Kind::Atoms) {
        double s = 0.0;
        for (const auto& [v, w] : atoms_)
            if (std::fabs(v) > t) s += c_truncation(scale * v) * w;
        return s;
    }
    if (symmetric_ || scale == 0.0) return 0.0;  // c is odd
    if (!(t > 0.0)) throw std::invalid_argument("ctrunc integral needs t > 0 for power laws");
    const double s = std::fabs(scale);
    const double sign = scale > 0.0 ? 1.0 : -1.0;
    const double knee = 1.0 / s;  // c(s v) = s v below, 1 above
    double val;
    if (t >= knee) {
        val = tail_mass(t);
    } else {
        val = s * coefficient_ * power_first_moment(alpha_, t, knee) + tail_mass(knee);
    }
    return sign * val;
}

double AmplitudeLaw::full_integral_ctrunc(double scale) const {
    if (kind_ == Kind::Atoms) {
        double s = 0.0;
        for (const auto& [v, w] : atoms_) s += c_truncation(scale * v) * w;
        return s;
    }
    if (symmetric_ || scale == 0.0) return 0.0;
    if (alpha_ >= 1.0)
        throw std::domain_error("full c-truncation integral diverges for one-sided alpha >= 1");
    const double s = std::fabs(scale);
    const double sign = scale > 0.0 ? 1.0 : -1.0;
    const double knee = 1.0 / s;
    return sign * (s * coefficient_ * power_first_moment(alpha_, 0.0, knee) + tail_mass(knee));
}

double AmplitudeLaw::full_mean() const {
    if (kind_ == Kind::Atoms) {
        double s = 0.0;
        for (const auto& [v, w] : atoms_) s += v * w;
        return s;
    }
    if (symmetric_) return kInf;  // not absolutely integrable
    return kInf;  // one-sided power laws diverge at 0 (alpha>=1) or infinity (alpha<=1)
}

double AmplitudeLaw::full_second_moment() const {
    if (kind_ == Kind::Atoms) {
        double s = 0.0;
        for (const auto& [v, w] : atoms_) s += v * v * w;
        return s;
    }
    return kInf;
}

bool AmplitudeLaw::nonnegative() const {
    if (kind_ == Kind::Atoms) {
        for (const auto& [v, w] : atoms_) {
            (void)w;
            if (v < 0.0) return false;
        }
        return true;
    }
    return !symmetric_;
}

double AmplitudeLaw::total_mass() const {
    if (kind_ == Kind::Atoms) {
        double m = 0.0;
        for (const auto& [v, w] : atoms_) {
            (void)v;
            m += w;
        }
        return m;
    }
    return kInf;
}

double AmplitudeLaw::sample_conditional(double t, Rng& rng) const {
    if (kind_ == Kind::Atoms) {
        std::vector<double> weights;
        std::vector<double> values;
        double total = 0.0;
        for (const auto& [v, w] : atoms_) {
            if (std::fabs(v) > t) {
                weights.push_back(w);
                values.push_back(v);
                total += w;
            }
        }
        if (weights.empty())
            throw std::logic_error("sample_conditional: no atoms beyond threshold");
        return values[rng.categorical(weights, total)];
    }
    if (!(t > 0.0)) throw std::invalid_argument("sample_conditional: power law needs t > 0");
    // Pareto tail inverse CDF: |v| = t * u^(-1/alpha), u in (0,1]
    const double u = 1.0 - rng.next_double();
    double v = t * std::pow(u, -1.0 / alpha_);
    if (symmetric_ && rng.next_double() < 0.5) v = -v;
    return v;
}

AmplitudeLaw AmplitudeLaw::scale_amplitudes(double b) const {
    if (!(b > 0.0)) throw std::invalid_argument("scale_amplitudes: b must be > 0");
    AmplitudeLaw law(*this);
    if (kind_ == Kind::Atoms) {
        for (auto& [v, m] : law.atoms_) {
            (void)m;
            v *= b;
        }
    } else {
        // pushforward tail: rho{|bv| > t} = coefficient * (t/b)^(-alpha)
        law.coefficient_ = coefficient_ * std::pow(b, alpha_);
    }
    return law;
}

AmplitudeLaw AmplitudeLaw::scale_intensity(double c) const {
    if (!(c > 0.0)) throw std::invalid_argument("scale_intensity: c must be > 0");
    AmplitudeLaw law(*this);
    if (kind_ == Kind::Atoms) {
        for (auto& [v, m] : law.atoms_) {
            (void)v;
            m *= c;
        }
    } else {
        law.coefficient_ = coefficient_ * c;
    }
    return law;
}

std::string AmplitudeLaw::describe() const {
    std::ostringstream os;
    if (kind_ == Kind::Atoms) {
        os << "atoms{";
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (i) os << ",";
            os << atoms_[i].first << ":" << atoms_[i].second;
        }
        os << "}";
    } else {
        os << (symmetric_ ? "sym" : "pos") << "-power(alpha=" << alpha_
           << ",coef=" << coefficient_ << ")";
    }
    return os.str();
}

}  // namespace idplab
