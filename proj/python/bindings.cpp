#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "percolab/boltzmann.hpp"
#include "percolab/cluster.hpp"
#include "percolab/continuum.hpp"
#include "percolab/errors.hpp"
#include "percolab/excursions.hpp"
#include "percolab/geometry.hpp"
#include "percolab/model.hpp"
#include "percolab/verification.hpp"

namespace py = pybind11;
using namespace percolab;

namespace {

py::dict estimate_dict(const Estimate& e) {
    py::dict d;
    d["value"] = e.value;
    d["stderr"] = e.stderr_;
    d["samples"] = e.samples;
    d["flagged"] = e.flagged;
    return d;
}

FiniteMetricMeasureSpace to_space(const std::vector<std::vector<double>>& d, std::vector<double> mass,
                                  std::int32_t root) {
    FiniteMetricMeasureSpace s;
    s.n = static_cast<std::int32_t>(d.size());
    for (const auto& row : d) {
        if (static_cast<std::int32_t>(row.size()) != s.n) throw ValidationError("distance matrix must be square");
        s.d.insert(s.d.end(), row.begin(), row.end());
    }
    s.mass = mass.empty() ? std::vector<double>(s.n, 1.0 / std::max(1, s.n)) : std::move(mass);
    s.root = root;
    s.validate();
    return s;
}

Graph to_graph(std::int32_t n, const std::vector<std::pair<std::int32_t, std::int32_t>>& edges) {
    return Graph::from_edges(n, edges);
}

}  // namespace

PYBIND11_MODULE(_percolab, m) {
    m.doc() = "Critical percolation clusters on random planar triangulations";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

    m.def("critical_probability", &critical_probability, py::arg("alpha"));
    m.def("peeling_probability", &peeling_probability, py::arg("alpha"), py::arg("m"));
    m.def("boltzmann_weight", &boltzmann_weight, py::arg("alpha"));
    m.def("c_alpha", &c_alpha, py::arg("alpha"));

    m.def(
        "step_law",
        [](double alpha, std::int64_t max_m) {
            const StepLaw law(ModelParams::from_alpha(alpha));
            py::dict d;
            d["up"] = law.up();
            std::vector<double> down;
            for (std::int64_t k = 1; k <= max_m; ++k) down.push_back(law.down(k));
            d["down"] = down;
            return d;
        },
        py::arg("alpha"), py::arg("max_m") = 50, "mu(1) and mu(-1..-max_m)");

    m.def(
        "sample_excursion",
        [](double alpha, std::uint64_t seed, std::int64_t min_length, std::int64_t max_length) {
            const StepLaw law(ModelParams::from_alpha(alpha));
            Rng rng(seed);
            return sample_conditioned_excursion(law, min_length, rng, max_length).path.z;
        },
        py::arg("alpha"), py::arg("seed"), py::arg("min_length") = 1, py::arg("max_length") = 0,
        "peeling excursion conditioned on min_length <= tau (<= max_length when positive)");

    m.def(
        "sample_taus",
        [](double alpha, std::uint64_t seed, std::int64_t count, std::int64_t censor) {
            const StepLaw law(ModelParams::from_alpha(alpha));
            Rng rng(seed);
            std::vector<std::int64_t> out(static_cast<std::size_t>(count));
            for (auto& t : out) t = sample_tau(law, rng, censor);
            return out;
        },
        py::arg("alpha"), py::arg("seed"), py::arg("count"), py::arg("censor"));

    m.def(
        "scaling_constants",
        [](double alpha, std::uint64_t seed, std::size_t beta_samples, std::size_t chi_samples,
           std::size_t sigma_trees, std::int64_t sigma_tree_size) {
            ScalingBudget b{beta_samples, chi_samples, sigma_trees, sigma_tree_size};
            const ScalingConstants c = estimate_scaling_constants(ModelParams::from_alpha(alpha), b, seed);
            py::dict d;
            d["beta"] = estimate_dict(c.beta);
            d["beta_degree"] = estimate_dict(c.beta_degree);
            d["chi_d"] = estimate_dict(c.chi_d);
            d["chi_R"] = estimate_dict(c.chi_R);
            d["sigma"] = estimate_dict(c.sigma);
            d["gamma"] = estimate_dict(c.gamma);
            d["delta"] = estimate_dict(c.delta);
            d["kappa"] = estimate_dict(c.kappa);
            d["theta"] = estimate_dict(c.theta);
            return d;
        },
        py::arg("alpha") = 0.8, py::arg("seed") = 1, py::arg("beta_samples") = 20000,
        py::arg("chi_samples") = 20000, py::arg("sigma_trees") = 2000, py::arg("sigma_tree_size") = 2000);

    m.def(
        "build_cluster",
        [](const std::vector<std::int64_t>& z, double alpha, std::uint64_t seed) {
            const ModelParams p = ModelParams::from_alpha(alpha);
            const PartitionFunction pf(p.q);
            Rng rng(seed);
            LatticePath path{z, PathKind::peeling};
            validate(path);
            return cluster_to_json(build_cluster(path, p, pf, rng));
        },
        py::arg("path"), py::arg("alpha") = 0.8, py::arg("seed") = 1, "cluster of a peeling excursion as JSON text");

    m.def(
        "effective_resistance",
        [](std::int32_t n, const std::vector<std::pair<std::int32_t, std::int32_t>>& edges,
           const std::vector<std::pair<std::int32_t, std::int32_t>>& pairs) {
            return effective_resistance(to_graph(n, edges), pairs);
        },
        py::arg("n"), py::arg("edges"), py::arg("pairs"));

    m.def(
        "gh_bounds",
        [](const std::vector<std::vector<double>>& dx, const std::vector<std::vector<double>>& dy, bool exact) {
            const GhBounds b = gh_bounds(to_space(dx, {}, 0), to_space(dy, {}, 0), exact);
            py::dict d;
            d["upper"] = b.upper;
            d["lower"] = b.lower;
            d["exact"] = b.exact ? py::cast(*b.exact) : py::none();
            d["correspondence"] = b.best.pairs;
            return d;
        },
        py::arg("dx"), py::arg("dy"), py::arg("exact") = false, "pointed GH bounds with root 0 in both spaces");

    m.def(
        "sample_crt",
        [](double zeta, std::int32_t points, std::uint64_t seed, std::int64_t mesh_divisions) {
            Rng rng(seed);
            const auto exc = sample_excursion_fixed_lifetime(zeta, zeta / static_cast<double>(mesh_divisions), rng);
            const DiscretizedCrt crt = crt_from_excursion(exc, points, rng);
            std::vector<std::vector<double>> d(crt.space.n, std::vector<double>(crt.space.n));
            for (std::int32_t i = 0; i < crt.space.n; ++i)
                for (std::int32_t j = 0; j < crt.space.n; ++j) d[i][j] = crt.space.dist(i, j);
            py::dict out;
            out["times"] = crt.times;
            out["distances"] = d;
            out["mass"] = crt.space.mass;
            return out;
        },
        py::arg("zeta"), py::arg("points"), py::arg("seed") = 1, py::arg("mesh_divisions") = default_mesh_divisions);

    m.def(
        "verify",
        [](const std::string& id, double scale, std::uint64_t seed) {
            VerifyOptions o;
            o.scale = scale;
            o.seed = seed;
            const CriterionResult r = run_criterion(id, o);
            py::dict d;
            d["id"] = r.id;
            d["passed"] = r.passed();
            d["seconds"] = r.seconds;
            py::list checks;
            for (const auto& c : r.checks) {
                py::dict k;
                k["name"] = c.name;
                k["value"] = c.value;
                k["tolerance"] = c.tolerance;
                k["passed"] = c.passed;
                checks.append(k);
            }
            d["checks"] = checks;
            return d;
        },
        py::arg("criterion"), py::arg("scale") = 1.0, py::arg("seed") = 20240601);
}
