#include "percolab/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "percolab/errors.hpp"

namespace percolab {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 2.0 / 3.0 && alpha < 1.0)) {
        std::ostringstream os;
        os << "alpha must lie in the open interval (2/3, 1), got " << alpha;
        throw DomainError(os.str());
    }
}

constexpr std::int64_t kMaxTable = 1 << 20;

}  // namespace

double critical_probability(double alpha) {
    check_alpha(alpha);
    return 0.5 * (1.0 - std::sqrt(3.0 - 2.0 / alpha));
}

double log_peeling_probability(double alpha, std::int64_t m) {
    check_alpha(alpha);
    if (m < 1) throw DomainError("peeling distance m must be >= 1");
    const double md = static_cast<double>(m);
    return std::log(2.0) - md * std::log(4.0) + std::lgamma(2.0 * md - 1.0) - std::lgamma(md) -
           std::lgamma(md + 2.0) + md * std::log(2.0 / alpha - 2.0) +
           std::log((3.0 * alpha - 2.0) * md + 1.0);
}

double peeling_probability(double alpha, std::int64_t m) {
    return std::exp(log_peeling_probability(alpha, m));
}

double boltzmann_weight(double alpha) {
    check_alpha(alpha);
    return alpha * alpha * (1.0 - alpha) / 2.0;
}

double c_alpha(double alpha) {
    check_alpha(alpha);
    return 2.0 / (1.0 - std::sqrt(alpha * (3.0 * alpha - 2.0)));
}

ModelParams ModelParams::from_alpha(double alpha) {
    ModelParams p;
    p.alpha = alpha;
    p.p_c = critical_probability(alpha);
    p.c_alpha = percolab::c_alpha(alpha);
    p.q = boltzmann_weight(alpha);
    return p;
}

StepLaw::StepLaw(const ModelParams& params) : params_(params) {
    check_alpha(params.alpha);
    up_ = params_.c_alpha * params_.alpha * params_.p_c;
    double cum = up_;
    for (std::int64_t m = 1; m <= kMaxTable; ++m) {
        const double t = down(m);
        cum += t;
        cum_down_.push_back(cum);
        if (t < 1e-20 * cum && m > 4) break;
    }
}

double StepLaw::down(std::int64_t m) const {
    return 0.5 * params_.c_alpha * peeling_probability(params_.alpha, m);
}

double StepLaw::prob(std::int64_t i) const {
    if (i == 1) return up_;
    if (i <= -1) return down(-i);
    return 0.0;
}

double StepLaw::log_prob(std::int64_t i) const {
    if (i == 1) return std::log(up_);
    if (i <= -1) return std::log(0.5 * params_.c_alpha) + log_peeling_probability(params_.alpha, -i);
    return -INFINITY;
}

std::int64_t StepLaw::sample(Rng& rng) const {
    const double u = rng.uniform();
    if (u < up_) return 1;
    if (u < cum_down_.back()) {
        auto it = std::upper_bound(cum_down_.begin(), cum_down_.end(), u);
        return -static_cast<std::int64_t>(it - cum_down_.begin()) - 1;
    }
    // beyond the table: continue the cumulative sum term by term
    double cum = cum_down_.back();
    std::int64_t m = static_cast<std::int64_t>(cum_down_.size());
    while (true) {
        ++m;
        const double t = down(m);
        cum += t;
        if (u < cum || t == 0.0) return -m;
    }
}

double StepLaw::total_mass(std::int64_t max_m) const {
    long double s = up_;
    for (std::int64_t m = 1; m <= max_m; ++m) s += down(m);
    return static_cast<double>(s);
}

double StepLaw::mean(std::int64_t max_m) const {
    long double s = up_;
    for (std::int64_t m = 1; m <= max_m; ++m) s -= static_cast<long double>(m) * down(m);
    return static_cast<double>(s);
}

OffspringLaws::OffspringLaws(const ModelParams& params) : params_(params) {
    check_alpha(params.alpha);
    const double r = std::sqrt(params.alpha * (3.0 * params.alpha - 2.0));
    s_ = (params.alpha - r) / (1.0 - r);
    double cum = 0.0;
    double cum_b = 0.0;
    const double mc = mean_circ();
    for (std::int64_t m = 1; m <= kMaxTable; ++m) {
        const double t = circ(m);
        cum += t;
        cum_b += static_cast<double>(m) * t / mc;
        cum_circ_.push_back(cum);
        cum_circ_biased_.push_back(cum_b);
        if (m > 4 && static_cast<double>(m) * t < 1e-20) break;
    }
}

double OffspringLaws::bullet(std::int64_t k) const {
    if (k < 0) return 0.0;
    return s_ * std::pow(1.0 - s_, static_cast<double>(k));
}

double OffspringLaws::circ(std::int64_t m) const {
    if (m < 1) return 0.0;
    return peeling_probability(params_.alpha, m) / (1.0 - params_.alpha);
}

double OffspringLaws::log_bullet(std::int64_t k) const {
    if (k < 0) return -INFINITY;
    return std::log(s_) + static_cast<double>(k) * std::log1p(-s_);
}

double OffspringLaws::log_circ(std::int64_t m) const {
    if (m < 1) return -INFINITY;
    return log_peeling_probability(params_.alpha, m) - std::log(1.0 - params_.alpha);
}

double OffspringLaws::mean_bullet() const { return (1.0 - s_) / s_; }

double OffspringLaws::var_bullet() const { return (1.0 - s_) / (s_ * s_); }

double OffspringLaws::mean_circ() const {
    return 2.0 * params_.alpha * params_.p_c / (1.0 - params_.alpha);
}

double OffspringLaws::mean_circ_series(std::int64_t max_m) const {
    long double s = 0.0L;
    for (std::int64_t m = 1; m <= max_m; ++m) s += static_cast<long double>(m) * circ(m);
    return static_cast<double>(s);
}

namespace {

std::int64_t invert(const std::vector<double>& cum, double u, const std::function<double(std::int64_t)>& term) {
    if (u < cum.back()) {
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        return static_cast<std::int64_t>(it - cum.begin()) + 1;
    }
    double c = cum.back();
    std::int64_t m = static_cast<std::int64_t>(cum.size());
    while (true) {
        ++m;
        const double t = term(m);
        c += t;
        if (u < c || t == 0.0) return m;
    }
}

}  // namespace

std::int64_t OffspringLaws::sample_bullet(Rng& rng) const {
    // geometric on {0,1,...} with success probability s
    const double u = rng.uniform_pos();
    return static_cast<std::int64_t>(std::floor(std::log(u) / std::log1p(-s_)));
}

std::int64_t OffspringLaws::sample_circ(Rng& rng) const {
    return invert(cum_circ_, rng.uniform(), [this](std::int64_t m) { return circ(m); });
}

std::int64_t OffspringLaws::sample_bullet_biased(Rng& rng) const {
    // k*s(1-s)^k/E = negative binomial(2, s) shifted: sum of two geometrics plus one
    return 1 + sample_bullet(rng) + sample_bullet(rng);
}

std::int64_t OffspringLaws::sample_circ_biased(Rng& rng) const {
    const double mc = mean_circ();
    return invert(cum_circ_biased_, rng.uniform(),
                  [this, mc](std::int64_t m) { return static_cast<double>(m) * circ(m) / mc; });
}

Estimate make_estimate(const std::vector<double>& xs) {
    Estimate e;
    e.samples = xs.size();
    if (xs.empty()) return e;
    long double s = 0.0L;
    for (double x : xs) s += x;
    const long double mean = s / static_cast<long double>(xs.size());
    long double v = 0.0L;
    for (double x : xs) v += (x - mean) * (x - mean);
    e.value = static_cast<double>(mean);
    if (xs.size() > 1) {
        e.stderr_ = static_cast<double>(std::sqrt(v / static_cast<long double>(xs.size() - 1) /
                                                  static_cast<long double>(xs.size())));
    }
    e.flagged = e.value != 0.0 && e.stderr_ / std::fabs(e.value) > 0.1;
    return e;
}

}  // namespace percolab
