#include "percolab/excursions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "percolab/errors.hpp"

namespace percolab {

namespace {

[[noreturn]] void fail_at(std::int64_t i, const std::string& what) {
    std::ostringstream os;
    os << "invalid lattice path at index " << i << ": " << what;
    throw ValidationError(os.str());
}

}  // namespace

void validate(const LatticePath& path) {
    const auto& z = path.z;
    if (z.empty()) fail_at(0, "empty path");
    if (z[0] != 1) fail_at(0, "path must start at 1");
    const std::int64_t n = path.length();
    for (std::int64_t i = 1; i <= n; ++i) {
        const std::int64_t d = z[i] - z[i - 1];
        if (path.kind == PathKind::reversed) {
            if (d == 0 || d < -1) fail_at(i, "increment must be -1 or positive");
        } else if (d == 0 || d > 1) {
            fail_at(i, "increment must be +1 or negative");
        }
        const bool last = i == n;
        if (path.kind == PathKind::peeling) {
            if (!last && z[i] < 1) fail_at(i, "peeling excursion left [1, inf) before its end");
            if (last && z[i] > 0) fail_at(i, "peeling excursion must end at or below 0");
        } else if (z[i] < 1) {
            fail_at(i, "tree excursion must stay >= 1");
        }
    }
    if (path.kind == PathKind::peeling && n == 0) fail_at(0, "peeling excursion must end at or below 0");
    if (path.kind != PathKind::peeling && z[n] != 1) fail_at(n, "tree excursion must end at 1");
}

bool is_valid(const LatticePath& path) {
    try {
        validate(path);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

LatticePath sample_excursion(const StepLaw& law, Rng& rng, std::int64_t step_cap) {
    LatticePath p;
    p.kind = PathKind::peeling;
    p.z.push_back(1);
    std::int64_t x = 1;
    while (x >= 1) {
        if (p.length() >= step_cap) {
            std::ostringstream os;
            os << "step cap " << step_cap << " exceeded while sampling an excursion";
            throw CapExceeded(os.str());
        }
        x += law.sample(rng);
        p.z.push_back(x);
    }
    return p;
}

std::int64_t sample_tau(const StepLaw& law, Rng& rng, std::int64_t censor) {
    std::int64_t x = 1;
    std::int64_t t = 0;
    while (x >= 1) {
        if (t >= censor) return censor;
        x += law.sample(rng);
        ++t;
    }
    return t;
}

ConditionedPath sample_conditioned_excursion(const StepLaw& law, std::int64_t n, Rng& rng,
                                             std::int64_t max_length, const Caps& caps) {
    if (n < 1) throw DomainError("conditioning length n must be >= 1");
    ConditionedPath out;
    out.path.kind = PathKind::peeling;
    auto& z = out.path.z;
    const std::int64_t limit = max_length > 0 ? std::min(max_length, caps.steps) : caps.steps;
    while (true) {
        z.assign(1, 1);
        std::int64_t x = 1;
        bool too_long = false;
        while (x >= 1) {
            if (out.path.length() >= limit) {
                too_long = true;
                break;
            }
            x += law.sample(rng);
            z.push_back(x);
        }
        if (too_long && (max_length <= 0 || limit < max_length)) {
            std::ostringstream os;
            os << "step cap " << caps.steps << " exceeded in conditioned sampling";
            throw CapExceeded(os.str());
        }
        if (!too_long && out.path.length() >= n) return out;
        if (++out.rejections > caps.rejections) {
            std::ostringstream os;
            os << "rejection cap " << caps.rejections << " exceeded conditioning on tau >= " << n;
            throw CapExceeded(os.str());
        }
    }
}

ConditionedPath sample_tree_excursion(const StepLaw& law, std::int64_t n, Rng& rng,
                                      std::int64_t max_length, const Caps& caps) {
    if (n < 1) throw DomainError("tree size n must be >= 1");
    ConditionedPath out;
    std::vector<std::int64_t> rz;
    const std::int64_t limit = max_length > 0 ? std::min(max_length, caps.tree_size) : caps.tree_size;
    while (true) {
        rz.assign(1, 1);
        std::int64_t x = 1;
        bool too_long = false;
        while (x > 0) {
            if (static_cast<std::int64_t>(rz.size()) > limit) {
                too_long = true;
                break;
            }
            x -= law.sample(rng);
            rz.push_back(x);
        }
        if (too_long && (max_length <= 0 || limit < max_length)) {
            throw CapExceeded("tree size cap exceeded in tree excursion sampling");
        }
        const std::int64_t tau0 = static_cast<std::int64_t>(rz.size()) - 1;
        if (!too_long && tau0 >= n) {
            out.path.kind = PathKind::tree;
            out.path.z.assign(rz.rbegin() + 1, rz.rend());
            return out;
        }
        if (++out.rejections > caps.rejections) {
            throw CapExceeded("rejection cap exceeded in tree excursion sampling");
        }
    }
}

PeelEvent sample_peel_event(const OffspringLaws& laws, Rng& rng) {
    const ModelParams& p = laws.params();
    const double u = rng.uniform();
    if (u < p.alpha * p.p_c) return {PeelEventType::internal_black, 0};
    if (u < p.alpha) return {PeelEventType::internal_white, 0};
    // boundary vertex at distance m has total probability p_m, split evenly by side
    const std::int64_t m = laws.sample_circ(rng);
    return {rng.bernoulli(0.5) ? PeelEventType::boundary_left : PeelEventType::boundary_right, m};
}

PeelingTrace simulate_peeling(const ModelParams& params, Rng& rng, std::int64_t step_cap) {
    return simulate_peeling(OffspringLaws(params), rng, step_cap);
}

PeelingTrace simulate_peeling(const OffspringLaws& laws, Rng& rng, std::int64_t step_cap,
                              std::int64_t max_changes) {
    PeelingTrace t;
    t.b.push_back(1);
    std::int64_t b = 1;
    std::int64_t changes = 0;
    while (b >= 1) {
        if (max_changes > 0 && changes >= max_changes) return t;
        if (t.t_hat() >= step_cap) throw CapExceeded("step cap exceeded in peeling simulation");
        const PeelEvent e = sample_peel_event(laws, rng);
        const std::int64_t before = b;
        if (e.type == PeelEventType::internal_black) b += 1;
        if (e.type == PeelEventType::boundary_left) b -= e.m;
        changes += b != before;
        t.events.push_back(e);
        t.b.push_back(b);
    }
    t.terminated = true;
    return t;
}

LatticePath contract_to_jumps(const PeelingTrace& trace, bool allow_prefix) {
    if (trace.b.empty() || (!allow_prefix && (!trace.terminated || trace.b.back() > 0))) {
        throw ValidationError("contract_to_jumps needs a terminated peeling trace");
    }
    LatticePath p;
    p.kind = PathKind::peeling;
    p.z.push_back(trace.b[0]);
    for (std::size_t i = 1; i < trace.b.size(); ++i) {
        if (trace.b[i] != trace.b[i - 1]) p.z.push_back(trace.b[i]);
    }
    return p;
}

LatticePath reverse(const LatticePath& path) {
    if (path.kind == PathKind::peeling) {
        throw ValidationError("reverse needs a tree excursion (Z_n = 1), got a peeling excursion");
    }
    validate(path);
    LatticePath r;
    r.kind = path.kind == PathKind::tree ? PathKind::reversed : PathKind::tree;
    r.z.assign(path.z.rbegin(), path.z.rend());
    return r;
}

std::vector<std::pair<double, double>> empirical_survival(std::vector<double> samples,
                                                          const std::vector<double>& xs) {
    std::sort(samples.begin(), samples.end());
    std::vector<std::pair<double, double>> out;
    const double n = static_cast<double>(samples.size());
    for (double x : xs) {
        const auto it = std::lower_bound(samples.begin(), samples.end(), x);
        out.emplace_back(x, static_cast<double>(samples.end() - it) / n);
    }
    return out;
}

TailFit tail_exponent_estimate(std::vector<double> samples, double censor, double x_lo,
                               std::size_t min_tail) {
    if (samples.size() < 2) throw DomainError("tail fit needs samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    if (x_lo <= 0.0) x_lo = 10.0 * std::max(samples.front(), 1e-300);
    double x_hi = samples.size() > min_tail ? samples[samples.size() - min_tail] : 0.0;
    if (censor > 0.0) x_hi = std::min(x_hi, censor);
    if (!(x_hi >= 100.0 * x_lo)) {
        std::ostringstream os;
        os << "tail fit needs two decades of support, got [" << x_lo << ", " << x_hi << "]";
        throw DomainError(os.str());
    }
    const int points = 25;
    std::vector<double> lx, ly, w;
    for (int j = 0; j < points; ++j) {
        const double x = x_lo * std::pow(x_hi / x_lo, static_cast<double>(j) / (points - 1));
        const auto it = std::lower_bound(samples.begin(), samples.end(), x);
        const double s = static_cast<double>(samples.end() - it) / n;
        if (s <= 0.0) continue;
        lx.push_back(std::log(x));
        ly.push_back(std::log(s));
        // binomial variance of log S
        w.push_back(n * s / (1.0 - s + 1e-12));
    }
    double sw = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sw += w[i];
        sx += w[i] * lx[i];
        sy += w[i] * ly[i];
    }
    const double mx = sx / sw, my = sy / sw;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += w[i] * (lx[i] - mx) * (lx[i] - mx);
        sxy += w[i] * (lx[i] - mx) * (ly[i] - my);
    }
    TailFit f;
    f.exponent = sxy / sxx;
    const double se = std::sqrt(1.0 / sxx);
    f.ci_low = f.exponent - 1.96 * se;
    f.ci_high = f.exponent + 1.96 * se;
    f.x_lo = x_lo;
    f.x_hi = x_hi;
    f.points = lx.size();
    return f;
}

}  // namespace percolab
