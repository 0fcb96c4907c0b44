#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace percolab {

struct TestResult {
    double statistic = 0.0;
    double p_value = 0.0;
    double dof = 0.0;
};

/// Asymptotic Kolmogorov survival function P(K > lambda).
double kolmogorov_survival(double lambda);

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);
TestResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf);

/// Pearson goodness of fit. Cells with expected count below min_expected are pooled into the
/// last retained cell from the tail.
TestResult chi_square_gof(const std::vector<double>& observed, const std::vector<double>& probs,
                          double min_expected = 5.0);

/// Total variation distance between two laws given as key -> mass (masses are renormalised).
template <class K>
double total_variation(const std::map<K, double>& p, const std::map<K, double>& q) {
    double sp = 0.0, sq = 0.0;
    for (const auto& [k, v] : p) sp += v;
    for (const auto& [k, v] : q) sq += v;
    double tv = 0.0;
    for (const auto& [k, v] : p) {
        auto it = q.find(k);
        tv += std::abs(v / sp - (it == q.end() ? 0.0 : it->second / sq));
    }
    for (const auto& [k, v] : q) {
        if (!p.contains(k)) tv += v / sq;
    }
    return tv / 2.0;
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

double quantile(std::vector<double> x, double q);
double median(std::vector<double> x);
double mean(const std::vector<double>& x);
double sample_sd(const std::vector<double>& x);

}  // namespace percolab
