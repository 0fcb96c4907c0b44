#include "percolab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "percolab/errors.hpp"

namespace percolab {

double kolmogorov_survival(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 0.3) {
        // small-argument form, P(K <= l) = sqrt(2 pi)/l sum exp(-(2j-1)^2 pi^2 / (8 l^2))
        double s = 0.0;
        for (int j = 1; j <= 50; ++j) {
            const double a = (2 * j - 1) * std::numbers::pi / lambda;
            s += std::exp(-a * a / 8.0);
        }
        return 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s;
    }
    double s = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        s += (j % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-17) break;
    }
    return std::clamp(s, 0.0, 1.0);
}

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw DomainError("KS test needs non-empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = a.size(), nb = b.size();
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double ne = na * nb / (na + nb);
    const double sq = std::sqrt(ne);
    TestResult r;
    r.statistic = d;
    r.p_value = kolmogorov_survival((sq + 0.12 + 0.11 / sq) * d);
    return r;
}

TestResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf) {
    if (x.empty()) throw DomainError("KS test needs a non-empty sample");
    std::sort(x.begin(), x.end());
    const double n = x.size();
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    const double sq = std::sqrt(n);
    TestResult r;
    r.statistic = d;
    r.p_value = kolmogorov_survival((sq + 0.12 + 0.11 / sq) * d);
    return r;
}

TestResult chi_square_gof(const std::vector<double>& observed, const std::vector<double>& probs,
                          double min_expected) {
    if (observed.size() != probs.size() || observed.empty()) throw DomainError("chi-square needs matching cells");
    const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
    const double ptotal = std::accumulate(probs.begin(), probs.end(), 0.0);
    std::vector<double> o, e;
    double po = 0.0, pe = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        po += observed[i];
        pe += total * probs[i] / ptotal;
        if (pe >= min_expected) {
            o.push_back(po);
            e.push_back(pe);
            po = pe = 0.0;
        }
    }
    if (pe > 0.0 || po > 0.0) {
        if (e.empty()) throw DomainError("too few expected counts for a chi-square test");
        o.back() += po;
        e.back() += pe;
    }
    if (e.size() < 2) throw DomainError("chi-square test needs at least two cells");
    TestResult r;
    for (std::size_t i = 0; i < e.size(); ++i) r.statistic += (o[i] - e[i]) * (o[i] - e[i]) / e[i];
    r.dof = static_cast<double>(e.size() - 1);
    boost::math::chi_squared dist(r.dof);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw DomainError("least squares needs at least two points");
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (n > 2) {
        double rss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - f.intercept - f.slope * x[i];
            rss += r * r;
        }
        f.slope_se = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
    }
    return f;
}

double quantile(std::vector<double> x, double q) {
    if (x.empty()) throw DomainError("quantile of an empty sample");
    std::sort(x.begin(), x.end());
    const double pos = q * static_cast<double>(x.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, x.size() - 1);
    return x[lo] + (pos - lo) * (x[hi] - x[lo]);
}

double median(std::vector<double> x) { return quantile(std::move(x), 0.5); }

double mean(const std::vector<double>& x) {
    return x.empty() ? 0.0 : std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_sd(const std::vector<double>& x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double v = 0.0;
    for (double a : x) v += (a - m) * (a - m);
    return std::sqrt(v / static_cast<double>(x.size() - 1));
}

}  // namespace percolab
