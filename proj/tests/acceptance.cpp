#include <cstdlib>
#include <iostream>
#include <string>

#include "percolab/verification.hpp"

// Runs every criterion at full budget and prints one verdict line per criterion.
int main(int argc, char** argv) {
    percolab::VerifyOptions opts;
    if (const char* s = std::getenv("PERCOLAB_ACCEPTANCE_SCALE")) opts.scale = std::stod(s);
    opts.progress = [](const std::string& m) { std::cerr << "  .. " << m << std::endl; };
    std::string only = argc > 1 ? argv[1] : "";
    bool all = true;
    for (const auto& id : percolab::suite_criteria("all")) {
        if (!only.empty() && only.find(id) == std::string::npos) continue;
        const auto r = percolab::run_criterion(id, opts);
        std::cout << format_result(r) << std::flush;
        all = all && r.passed();
    }
    std::cout << (all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << std::endl;
    return all ? 0 : 1;
}
