#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "percolab/model.hpp"

namespace percolab {

struct Check {
    std::string name;
    double value = 0.0;
    std::string tolerance;  // human-readable bound, e.g. "< 1e-10"
    bool passed = false;
};

struct CriterionResult {
    std::string id;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;
    bool passed() const;
};

struct VerifyOptions {
    double scale = 1.0;  // multiplies every sample budget
    std::uint64_t seed = 20240601;
    double alpha = 0.8;
    std::function<void(const std::string&)> progress;  // optional log sink
};

/// Criterion ids of a suite: "unit", "oracle", "statistical" or "all".
std::vector<std::string> suite_criteria(const std::string& suite);
CriterionResult run_criterion(const std::string& id, const VerifyOptions& opts);
std::vector<CriterionResult> run_suite(const std::string& suite, const VerifyOptions& opts);

/// Scaling constants at opts.alpha with the default budget (scaled), cached per options.
const ScalingConstants& reference_constants(const VerifyOptions& opts);

std::string format_result(const CriterionResult& r);
std::string report_json(const std::string& suite, const std::vector<CriterionResult>& results);

}  // namespace percolab
