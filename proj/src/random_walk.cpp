#include "idplab/random_walk.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "idplab/amplitude_law.hpp"
#include "idplab/rng.hpp"

namespace idplab {

NullRecurrentWalkSystem::NullRecurrentWalkSystem(
    std::vector<std::pair<int, double>> step_law, double mark)
    : steps_(std::move(step_law)), mark_(mark) {
    if (steps_.empty()) throw std::invalid_argument("walk: empty step law");
    if (mark_ == 0.0) throw std::invalid_argument("walk: mark must be nonzero");
    std::map<int, double> probs;
    double total = 0.0;
    for (const auto& [s, p] : steps_) {
        if (!(p > 0.0)) throw std::invalid_argument("walk: step probabilities must be > 0");
        probs[s] += p;
        total += p;
        max_step_ = std::max(max_step_, std::abs(s));
    }
    if (std::fabs(total - 1.0) > 1e-12)
        throw std::invalid_argument("walk: step probabilities must sum to 1");
    if (max_step_ == 0) throw std::invalid_argument("walk: degenerate step law");
    for (const auto& [s, p] : probs) {
        const auto it = probs.find(-s);
        if (it == probs.end() || std::fabs(it->second - p) > 1e-12)
            throw std::invalid_argument(
                "walk: step law must be symmetric (nonzero drift is not recurrent)");
    }
    steps_.assign(probs.begin(), probs.end());
}

std::vector<double> NullRecurrentWalkSystem::first_hit_masses(int n) const {
    // m_i = P_0(S_1 != 0, ..., S_i != 0); survival DP over states
    const int R = std::max(1, n * max_step_);
    std::vector<double> surv(2 * R + 1, 1.0);   // survival with 0 remaining steps
    std::vector<double> next(2 * R + 1, 0.0);
    std::vector<double> m(static_cast<std::size_t>(n), 0.0);
    m[0] = 1.0;
    std::vector<double> cur = surv;
    for (int r = 1; r < n; ++r) {
        for (int z = -R; z <= R; ++z) {
            double acc = 0.0;
            for (const auto& [s, p] : steps_) {
                const int z2 = z + s;
                if (z2 == 0) continue;
                acc += p * (std::abs(z2) > R ? 1.0 : cur[static_cast<std::size_t>(z2 + R)]);
            }
            next[static_cast<std::size_t>(z + R)] = acc;
        }
        std::swap(cur, next);
        m[static_cast<std::size_t>(r)] = cur[static_cast<std::size_t>(R)];  // from state 0
    }
    return m;
}

double NullRecurrentWalkSystem::hit_mass(const WindowSpec& w) const {
    w.validate();
    if (!active(w)) return 0.0;
    const auto m = first_hit_masses(w.length);
    double mass = 0.0;
    for (double mi : m) mass += mi;
    return mass;
}

double NullRecurrentWalkSystem::return_probability(int k) const {
    if (k < 0) k = -k;
    if (k == 0) return 1.0;
    const int R = k * max_step_;
    std::vector<double> cur(2 * R + 1, 0.0), next(2 * R + 1, 0.0);
    cur[static_cast<std::size_t>(R)] = 1.0;
    for (int t = 0; t < k; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int z = -R; z <= R; ++z) {
            const double m = cur[static_cast<std::size_t>(z + R)];
            if (m == 0.0) continue;
            for (const auto& [s, p] : steps_) {
                const int z2 = z + s;
                if (std::abs(z2) <= R) next[static_cast<std::size_t>(z2 + R)] += m * p;
            }
        }
        std::swap(cur, next);
    }
    return cur[static_cast<std::size_t>(R)];
}

double NullRecurrentWalkSystem::hit_probability_in_range(int a, int b) const {
    if (a < 1 || b <= a) throw std::invalid_argument("hit_probability_in_range: need 1 <= a < b");
    const int R = b * max_step_;
    std::vector<double> cur(2 * R + 1, 0.0), next(2 * R + 1, 0.0);
    cur[static_cast<std::size_t>(R)] = 1.0;
    double hit = 0.0;
    for (int t = 1; t < b; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int z = -R; z <= R; ++z) {
            const double m = cur[static_cast<std::size_t>(z + R)];
            if (m == 0.0) continue;
            for (const auto& [s, p] : steps_) {
                const int z2 = z + s;
                if (std::abs(z2) <= R) next[static_cast<std::size_t>(z2 + R)] += m * p;
            }
        }
        std::swap(cur, next);
        if (t >= a) {  // absorb mass sitting at 0
            hit += cur[static_cast<std::size_t>(R)];
            cur[static_cast<std::size_t>(R)] = 0.0;
        }
    }
    return hit;
}

namespace {

class WalkSampler : public PreparedSampler {
  public:
    WalkSampler(const NullRecurrentWalkSystem* sys,
                std::vector<std::pair<int, double>> steps, int max_step, double mark,
                int n, int slack, std::vector<double> m, double mass)
        : steps_(std::move(steps)),
          max_step_(max_step),
          mark_(mark),
          n_(n),
          slack_(slack),
          m_(std::move(m)),
          mass_(mass) {
        (void)sys;
        // surv[r][z+R]: probability of avoiding 0 during the next r steps from z
        R_ = std::max(1, (n_ + slack_) * max_step_);
        surv_.assign(static_cast<std::size_t>(n_), std::vector<double>());
        surv_[0].assign(2 * R_ + 1, 1.0);
        for (int r = 1; r < n_; ++r) {
            surv_[static_cast<std::size_t>(r)].assign(2 * R_ + 1, 0.0);
            for (int z = -R_; z <= R_; ++z) {
                double acc = 0.0;
                for (const auto& [s, p] : steps_) {
                    const int z2 = z + s;
                    if (z2 == 0) continue;
                    acc += p * survival(r - 1, z2);
                }
                surv_[static_cast<std::size_t>(r)][static_cast<std::size_t>(z + R_)] = acc;
            }
        }
    }

    double mass() const override { return mass_; }

    BasePoint sample(Rng& rng) const override {
        if (!(mass_ > 0.0)) throw std::logic_error("walk: zero hit mass");
        const auto fh = static_cast<int>(rng.categorical(m_, mass_));
        const int lo = -slack_;
        const int hi = n_ - 1 + slack_;
        std::vector<int> pos(static_cast<std::size_t>(hi - lo + 1), 0);
        auto at = [&](int t) -> int& { return pos[static_cast<std::size_t>(t - lo)]; };
        at(fh) = 0;
        // backward from the first hit, conditioned to avoid 0 down to time 0
        for (int t = fh - 1; t >= lo; --t) {
            const int y = at(t + 1);
            if (t >= 0) {
                std::vector<double> wgt(steps_.size(), 0.0);
                double total = 0.0;
                for (std::size_t si = 0; si < steps_.size(); ++si) {
                    const int z2 = y + steps_[si].first;
                    if (z2 == 0) continue;
                    const double wv = steps_[si].second * survival(t, z2);
                    wgt[si] = wv;
                    total += wv;
                }
                at(t) = y + steps_[rng.categorical(wgt, total)].first;
            } else {
                at(t) = y + draw_step(rng);
            }
        }
        // free forward path
        for (int t = fh + 1; t <= hi; ++t) at(t) = at(t - 1) + draw_step(rng);
        return BasePoint{WalkPoint{lo, std::move(pos), mark_}};
    }

  private:
    double survival(int r, int z) const {
        if (r <= 0) return 1.0;
        if (std::abs(z) > R_) return 1.0;
        return surv_[static_cast<std::size_t>(r)][static_cast<std::size_t>(z + R_)];
    }
    int draw_step(Rng& rng) const {
        double u = rng.next_double();
        double cum = 0.0;
        for (const auto& [s, p] : steps_) {
            cum += p;
            if (u < cum) return s;
        }
        return steps_.back().first;
    }

    std::vector<std::pair<int, double>> steps_;
    int max_step_;
    double mark_;
    int n_;
    int slack_;
    int R_ = 0;
    std::vector<double> m_;
    double mass_;
    std::vector<std::vector<double>> surv_;
};

}  // namespace

std::shared_ptr<const PreparedSampler> NullRecurrentWalkSystem::prepare(
    const WindowSpec& w, int slack) const {
    w.validate();
    if (slack < 0) throw std::invalid_argument("prepare: slack must be >= 0");
    if (!active(w)) {
        auto m = std::vector<double>{};
        return std::make_shared<WalkSampler>(this, steps_, max_step_, mark_, w.length,
                                             slack, m, 0.0);
    }
    auto m = first_hit_masses(w.length);
    double mass = 0.0;
    for (double mi : m) mass += mi;
    return std::make_shared<WalkSampler>(this, steps_, max_step_, mark_, w.length, slack,
                                         std::move(m), mass);
}

double NullRecurrentWalkSystem::orbit_eval(const BasePoint& p, int i) const {
    const auto& wp = std::get<WalkPoint>(p.payload);
    const long long idx = static_cast<long long>(i) - wp.lo;
    if (idx < 0 || idx >= static_cast<long long>(wp.positions.size()))
        throw std::out_of_range("walk: orbit index outside materialized path range");
    return wp.positions[static_cast<std::size_t>(idx)] == 0 ? wp.mark : 0.0;
}

BasePoint NullRecurrentWalkSystem::shift_point(const BasePoint& p, int k) const {
    auto wp = std::get<WalkPoint>(p.payload);
    wp.lo -= k;
    return BasePoint{std::move(wp)};
}

std::vector<Cell> NullRecurrentWalkSystem::cells(const WindowSpec& w) const {
    std::vector<Cell> out;
    if (!active(w)) return out;
    const auto m = first_hit_masses(w.length);
    for (int i = 0; i < w.length; ++i) {
        Cell cell;
        cell.label = "first_zero=" + std::to_string(i);
        cell.mass = m[static_cast<std::size_t>(i)];
        cell.support = w;
        const int fh = i;
        cell.contains = [fh](const BasePoint& p) {
            const auto* wp = std::get_if<WalkPoint>(&p.payload);
            if (wp == nullptr) return false;
            for (int t = 0; t < fh; ++t) {
                const long long idx = static_cast<long long>(t) - wp->lo;
                if (idx < 0 || idx >= static_cast<long long>(wp->positions.size()))
                    return false;
                if (wp->positions[static_cast<std::size_t>(idx)] == 0) return false;
            }
            const long long idx = static_cast<long long>(fh) - wp->lo;
            return idx >= 0 && idx < static_cast<long long>(wp->positions.size()) &&
                   wp->positions[static_cast<std::size_t>(idx)] == 0;
        };
        out.push_back(std::move(cell));
    }
    return out;
}

double NullRecurrentWalkSystem::compensator_integral(const WindowSpec& w, int pos,
                                                     CompensatorKind kind) const {
    if (pos < 0 || pos >= w.length)
        throw std::invalid_argument("compensator_integral: position outside window");
    if (!active(w)) return 0.0;
    // {path(pos)=0} sits inside A(w) and has unit mass under the path measure
    return kind == CompensatorKind::Identity ? mark_ : c_truncation(mark_);
}

std::optional<double> NullRecurrentWalkSystem::pair_integral(const WindowSpec& w, int i,
                                                             int j) const {
    if (!active(w)) return 0.0;
    if (i == j) return mark_ * mark_;
    return mark_ * mark_ * return_probability(std::abs(i - j));
}

double NullRecurrentWalkSystem::zero_pattern_mass(const std::vector<int>& times) const {
    if (times.empty()) return 0.0;
    double mass = 1.0;  // anchor at the earliest constrained time
    for (std::size_t r = 1; r < times.size(); ++r)
        mass *= return_probability(times[r] - times[r - 1]);
    return mass;
}

std::optional<std::complex<double>> NullRecurrentWalkSystem::windowed_exp_integral(
    const WindowSpec& w, std::span<const ExpTerm> terms) const {
    if (!active(w)) return std::complex<double>(0.0, 0.0);
    std::vector<ExpTerm> ts(terms.begin(), terms.end());
    for (const auto& t : ts)
        if (t.pos < 0 || t.pos >= w.length)
            throw std::invalid_argument("windowed_exp_integral: position outside window");
    std::sort(ts.begin(), ts.end(), [](const ExpTerm& a, const ExpTerm& b) {
        return a.pos < b.pos;
    });
    // expand prod_j (1 + (e^{z_j mark} - 1) 1{x_{c_j}=0}) - 1 over subsets
    const std::size_t m = ts.size();
    if (m > 20) throw std::invalid_argument("windowed_exp_integral: too many terms");
    std::complex<double> sum = 0.0;
    for (std::size_t mask = 1; mask < (1ull << m); ++mask) {
        std::complex<double> factor = 1.0;
        std::vector<int> times;
        for (std::size_t j = 0; j < m; ++j) {
            if (mask & (1ull << j)) {
                factor *= std::exp(ts[j].z * mark_) - 1.0;
                times.push_back(ts[j].pos);
            }
        }
        sum += factor * zero_pattern_mass(times);
    }
    return sum;
}

double NullRecurrentWalkSystem::small_jump_second_moment(const WindowSpec& w,
                                                         int pos) const {
    if (pos < 0 || pos >= w.length)
        throw std::invalid_argument("small_jump_second_moment: position outside window");
    return active(w) ? 0.0 : mark_ * mark_;
}

double NullRecurrentWalkSystem::small_jump_mean(const WindowSpec& w, int pos) const {
    if (pos < 0 || pos >= w.length)
        throw std::invalid_argument("small_jump_mean: position outside window");
    return active(w) ? 0.0 : mark_;
}

double NullRecurrentWalkSystem::observable_mean() const { return mark_; }

double NullRecurrentWalkSystem::observable_second_moment() const { return mark_ * mark_; }

double NullRecurrentWalkSystem::full_ctrunc_integral() const { return c_truncation(mark_); }

bool NullRecurrentWalkSystem::observable_nonnegative() const { return mark_ > 0.0; }

std::optional<double> NullRecurrentWalkSystem::exact_pair_mass(const WindowSpec& w,
                                                               int k) const {
    if (k < 0) k = -k;
    if (!active(w)) return 0.0;
    const auto m = first_hit_masses(w.length);
    if (k == 0) {
        double mass = 0.0;
        for (double mi : m) mass += mi;
        return mass;
    }
    double mass = 0.0;
    for (int i = 0; i < w.length; ++i) {
        if (i >= k) {
            mass += m[static_cast<std::size_t>(i)];  // the first hit already lands in the shifted window
        } else {
            mass += m[static_cast<std::size_t>(i)] *
                    hit_probability_in_range(k - i, k - i + w.length);
        }
    }
    return mass;
}

std::string NullRecurrentWalkSystem::describe() const {
    std::ostringstream os;
    os << "null_recurrent_walk(steps={";
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (i) os << ",";
        os << steps_[i].first << ":" << steps_[i].second;
    }
    os << "}, mark=" << mark_ << ")";
    return os.str();
}

BaseSystemPtr make_null_recurrent_walk(std::vector<std::pair<int, double>> step_law,
                                       double mark) {
    return std::make_shared<NullRecurrentWalkSystem>(std::move(step_law), mark);
}

BaseSystemPtr make_simple_walk(const std::vector<int>& magnitudes, double mark) {
    if (magnitudes.empty()) throw std::invalid_argument("simple walk: empty magnitudes");
    std::vector<std::pair<int, double>> law;
    const double p = 1.0 / (2.0 * static_cast<double>(magnitudes.size()));
    for (int mag : magnitudes) {
        if (mag <= 0) throw std::invalid_argument("simple walk: magnitudes must be > 0");
        law.emplace_back(mag, p);
        law.emplace_back(-mag, p);
    }
    return make_null_recurrent_walk(std::move(law), mark);
}

}  // namespace idplab
