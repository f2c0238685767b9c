#include "idplab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace idplab {

double Accumulator::se() const {
    return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
}

double ComplexAccumulator::se_norm() const {
    const double a = re.se();
    const double b = im.se();
    return std::sqrt(a * a + b * b);
}

double variance_se(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n);
    double m2 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    const double var_of_var = (m4 - m2 * m2) / static_cast<double>(n);
    return var_of_var > 0.0 ? std::sqrt(var_of_var) : 0.0;
}

CovarianceEstimate sample_covariance(const std::vector<double>& xs,
                                     const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("sample_covariance: mismatched or tiny samples");
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    Accumulator prod;
    for (std::size_t i = 0; i < xs.size(); ++i)
        prod.add((xs[i] - mx) * (ys[i] - my));
    return {prod.mean, prod.se()};
}

namespace {

// Series expansion of P(a,x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0)
        throw std::invalid_argument("regularized_gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0)
        throw std::invalid_argument("regularized_gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_p_value(double statistic, int dof) {
    if (dof <= 0) return 1.0;
    if (statistic <= 0.0) return 1.0;
    return regularized_gamma_q(0.5 * static_cast<double>(dof), 0.5 * statistic);
}

namespace {

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na -
                                  static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    return {d, kolmogorov_q(lambda)};
}

GofResult chi_square_poisson_gof(const std::vector<std::uint64_t>& counts,
                                 double lambda) {
    if (counts.empty()) throw std::invalid_argument("gof: empty counts");
    const auto n = static_cast<double>(counts.size());
    std::uint64_t kmax = 0;
    for (auto c : counts) kmax = std::max(kmax, c);

    // expected per bin, then pool from the right until expected >= 5
    std::vector<double> expected;
    double p = std::exp(-lambda);
    double cum = p;
    expected.push_back(n * p);
    for (std::uint64_t k = 1; k <= kmax; ++k) {
        p *= lambda / static_cast<double>(k);
        cum += p;
        expected.push_back(n * p);
    }
    expected.push_back(n * std::max(0.0, 1.0 - cum));  // tail bin

    std::vector<double> observed(expected.size(), 0.0);
    for (auto c : counts) {
        const std::size_t bin = std::min<std::size_t>(c, expected.size() - 1);
        observed[bin] += 1.0;
    }
    // pool sparse tail bins
    while (expected.size() > 2 && expected.back() < 5.0) {
        expected[expected.size() - 2] += expected.back();
        observed[observed.size() - 2] += observed.back();
        expected.pop_back();
        observed.pop_back();
    }
    // pool sparse head bins
    while (expected.size() > 2 && expected.front() < 5.0) {
        expected[1] += expected[0];
        observed[1] += observed[0];
        expected.erase(expected.begin());
        observed.erase(observed.begin());
    }
    double stat = 0.0;
    for (std::size_t k = 0; k < expected.size(); ++k) {
        if (expected[k] <= 0.0) continue;
        const double d = observed[k] - expected[k];
        stat += d * d / expected[k];
    }
    const int dof = static_cast<int>(expected.size()) - 1;
    return {stat, dof, chi_square_p_value(stat, dof)};
}

double ks_projection_p_value(const std::vector<std::vector<double>>& a,
                             const std::vector<std::vector<double>>& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_projection_p_value: empty sample");
    const std::size_t dim = a.front().size();
    // projections: each coordinate, plus the sum and the alternating sum
    std::vector<std::vector<double>> proj_a, proj_b;
    auto project = [&](const std::vector<std::vector<double>>& src,
                       std::vector<std::vector<double>>& dst) {
        dst.assign(dim + 2, {});
        for (auto& v : dst) v.reserve(src.size());
        for (const auto& row : src) {
            double s = 0.0, alt = 0.0, sign = 1.0;
            for (std::size_t c = 0; c < dim; ++c) {
                dst[c].push_back(row[c]);
                s += row[c];
                alt += sign * row[c];
                sign = -sign;
            }
            dst[dim].push_back(s);
            dst[dim + 1].push_back(alt);
        }
    };
    project(a, proj_a);
    project(b, proj_b);
    double min_p = 1.0;
    for (std::size_t c = 0; c < proj_a.size(); ++c)
        min_p = std::min(min_p, ks_two_sample(proj_a[c], proj_b[c]).p_value);
    return std::min(1.0, min_p * static_cast<double>(proj_a.size()));
}

}  // namespace idplab
