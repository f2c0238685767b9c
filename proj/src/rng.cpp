#include "idplab/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace idplab {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& word : s_) word = sm.next();
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

std::size_t Rng::categorical(std::span<const double> weights, double total) {
    if (weights.empty() || !(total > 0.0))
        throw std::invalid_argument("categorical: empty weights or nonpositive total");
    double u = next_double() * total;
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        cum += weights[i];
        if (u < cum) return i;
    }
    return weights.size() - 1;
}

namespace {

std::uint64_t poisson_inversion(double lambda, Rng& rng) {
    const double u = rng.next_double();
    double p = std::exp(-lambda);
    double cum = p;
    std::uint64_t k = 0;
    while (u > cum) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cum += p;
        if (k > 2000) break;  // u in the extreme tail; cum has saturated
    }
    return k;
}

// Hormann's PTRS transformed-rejection sampler; exact for lambda >= 10.
std::uint64_t poisson_ptrs(double lambda, Rng& rng) {
    const double slam = std::sqrt(lambda);
    const double loglam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.next_double() - 0.5;
        const double v = rng.next_double();
        const double us = 0.5 - std::fabs(u);
        const auto k = static_cast<long long>(
            std::floor((2.0 * a / us + b) * u + lambda + 0.43));
        if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
        if (k < 0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
            -lambda + static_cast<double>(k) * loglam - std::lgamma(static_cast<double>(k) + 1.0))
            return static_cast<std::uint64_t>(k);
    }
}

}  // namespace

std::uint64_t Rng::poisson(double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean))
        throw std::invalid_argument("poisson: mean must be finite and nonnegative");
    if (mean == 0.0) return 0;
    if (mean < 30.0) return poisson_inversion(mean, *this);
    return poisson_ptrs(mean, *this);
}

std::uint64_t derive_stream(std::uint64_t master, std::string_view tag,
                            std::uint64_t index) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (const char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    SplitMix64 sm{master ^ h};
    const std::uint64_t a = sm.next();
    SplitMix64 sm2{a + 0x9e3779b97f4a7c15ull * (index + 1)};
    sm2.next();
    return sm2.next();
}

}  // namespace idplab
