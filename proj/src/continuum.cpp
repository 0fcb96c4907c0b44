#include "percolab/continuum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "percolab/errors.hpp"

namespace percolab {

double sample_lifetime(Rng& rng) {
    const double u = rng.uniform_pos();
    return 1.0 / (u * u);
}

double BrownianExcursionSample::at(double t) const {
    const auto i = static_cast<std::int64_t>(std::llround(t / mesh));
    return values[std::clamp<std::int64_t>(i, 0, static_cast<std::int64_t>(values.size()) - 1)];
}

namespace {

BrownianExcursionSample bridge(double zeta, std::int64_t cells, Rng& rng) {
    BrownianExcursionSample e;
    e.zeta = zeta;
    e.mesh = zeta / static_cast<double>(cells);
    const double sd = std::sqrt(e.mesh);
    std::vector<double> w(cells + 1, 0.0);
    for (std::int64_t i = 1; i <= cells; ++i) w[i] = w[i - 1] + sd * rng.normal();
    const double end = w[cells];
    for (std::int64_t i = 0; i <= cells; ++i) w[i] -= end * static_cast<double>(i) / static_cast<double>(cells);
    // Vervaat rotation at the first minimum over [0, cells)
    const auto m = static_cast<std::int64_t>(std::min_element(w.begin(), w.end() - 1) - w.begin());
    e.min_index = m;
    e.values.resize(cells + 1);
    for (std::int64_t i = 0; i < cells; ++i) e.values[i] = w[(m + i) % cells] - w[m];
    e.values[cells] = 0.0;
    return e;
}

std::int32_t interior_zeros(const BrownianExcursionSample& e) {
    std::int32_t c = 0;
    for (std::size_t i = 1; i + 1 < e.values.size(); ++i) c += e.values[i] <= 0.0;
    return c;
}

}  // namespace

BrownianExcursionSample sample_excursion_fixed_lifetime(double zeta, double mesh, Rng& rng) {
    if (!(zeta >= 1.0)) throw DomainError("excursion lifetime must be at least 1");
    if (!(mesh > 0.0) || mesh > zeta / 100.0) throw DomainError("mesh must lie in (0, zeta/100]");
    auto cells = static_cast<std::int64_t>(std::ceil(zeta / mesh));
    BrownianExcursionSample e = bridge(zeta, cells, rng);
    std::int32_t refinements = 0;
    while (interior_zeros(e) > 0 && refinements < 3) {
        cells *= 2;
        ++refinements;
        e = bridge(zeta, cells, rng);
    }
    e.refinements = refinements;
    e.violations = interior_zeros(e);
    return e;
}

RangeMin::RangeMin(const std::vector<double>& values) {
    const std::size_t n = values.size();
    table_.push_back(values);
    for (std::size_t w = 1; 2 * w <= n; w *= 2) {
        const auto& prev = table_.back();
        std::vector<double> next(n - 2 * w + 1);
        for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::min(prev[i], prev[i + w]);
        table_.push_back(std::move(next));
    }
}

double RangeMin::query(std::int64_t i, std::int64_t j) const {
    if (i > j) std::swap(i, j);
    const auto len = static_cast<std::uint64_t>(j - i + 1);
    const int level = std::bit_width(len) - 1;
    const auto& row = table_[level];
    return std::min(row[i], row[j - (std::int64_t{1} << level) + 1]);
}

DiscretizedCrt crt_at_times(const BrownianExcursionSample& exc, const std::vector<double>& times) {
    DiscretizedCrt c;
    c.zeta = exc.zeta;
    c.times.push_back(0.0);
    c.times.insert(c.times.end(), times.begin(), times.end());
    const auto k = static_cast<std::int32_t>(times.size());
    const auto last = static_cast<std::int64_t>(exc.values.size()) - 1;
    for (double t : c.times) {
        if (t < 0.0 || t > exc.zeta) throw DomainError("CRT time outside [0, zeta]");
        c.grid.push_back(std::clamp<std::int64_t>(std::llround(t / exc.mesh), 0, last));
        c.heights.push_back(exc.values[c.grid.back()]);
    }
    c.coarse = k > 0 && static_cast<double>(last) < 10.0 * k;
    const RangeMin rmq(exc.values);
    auto& s = c.space;
    s.n = k + 1;
    s.root = 0;
    s.d.assign(static_cast<std::size_t>(s.n) * s.n, 0.0);
    s.mass.assign(s.n, k > 0 ? exc.zeta / k : 0.0);
    s.mass[0] = 0.0;
    for (std::int32_t i = 0; i < s.n; ++i) {
        for (std::int32_t j = i + 1; j < s.n; ++j) {
            const double m = rmq.query(c.grid[i], c.grid[j]);
            const double d = std::max(0.0, c.heights[i] + c.heights[j] - 2.0 * m);
            s.d[static_cast<std::size_t>(i) * s.n + j] = d;
            s.d[static_cast<std::size_t>(j) * s.n + i] = d;
        }
    }
    return c;
}

DiscretizedCrt crt_from_excursion(const BrownianExcursionSample& exc, std::int32_t k, Rng& rng) {
    if (k < 2) throw DomainError("a discretized CRT needs at least 2 points");
    std::vector<double> times(k);
    for (auto& t : times) t = rng.uniform() * exc.zeta;
    return crt_at_times(exc, times);
}

double midpoint_cdf(double x, double zeta) {
    if (x <= 0.0) return 0.0;
    const double r = 2.0 * x / std::sqrt(zeta);  // chi with three degrees of freedom
    return std::erf(r / std::numbers::sqrt2) - std::sqrt(2.0 / std::numbers::pi) * r * std::exp(-r * r / 2.0);
}

}  // namespace percolab
