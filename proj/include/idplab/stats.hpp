// Statistical utilities shared by the simulation and the verification
// batteries: streaming moments, standard errors, two-sample KS tests,
// chi-square goodness of fit.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace idplab {

// Welford accumulator for mean/variance/standard error.
struct Accumulator {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }
    double variance() const {  // unbiased
        return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    }
    double se() const;
};

struct ComplexAccumulator {
    Accumulator re;
    Accumulator im;

    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    std::complex<double> mean() const { return {re.mean, im.mean}; }
    std::complex<double> se() const { return {re.se(), im.se()}; }
    double se_norm() const;
};

// Standard error of the sample variance (moment-based, large-sample).
double variance_se(const std::vector<double>& xs);

// Sample covariance of paired observations with its standard error.
struct CovarianceEstimate {
    double value = 0.0;
    double se = 0.0;
};
CovarianceEstimate sample_covariance(const std::vector<double>& xs,
                                     const std::vector<double>& ys);

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Upper-tail p-value of a chi-square statistic with dof degrees of freedom.
double chi_square_p_value(double statistic, int dof);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov test (asymptotic p-value with the usual
// effective-sample-size correction). Inputs need not be sorted.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Chi-square goodness of fit of observed counts against Poisson(lambda).
// Bins with expected count below 5 are pooled into the tail.
struct GofResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};
GofResult chi_square_poisson_gof(const std::vector<std::uint64_t>& counts,
                                 double lambda);

// Bonferroni-combined KS tests over fixed 1-d projections of paired samples.
// Used as the two-sample test for vector-valued windows.
double ks_projection_p_value(const std::vector<std::vector<double>>& a,
                             const std::vector<std::vector<double>>& b);

}  // namespace idplab
