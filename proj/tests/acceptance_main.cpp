// Acceptance runner: executes the numbered end-to-end checks and prints
// one pass/fail line per criterion.  Exit status is zero exactly when
// every requested criterion passes.
//
//   acceptance [--criterion N] [--seed S] [--depth D]
//
// Without --criterion all fifteen run in order.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "lpa/core.hpp"
#include "lpa/suite.hpp"

int main(int argc, char** argv) {
    int criterion = 0;  // 0 = all
    std::uint64_t seed = 0;
    lpa::json options = lpa::json::object();

    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        const bool has_value = i + 1 < argc;
        if (arg == "--criterion" && has_value) {
            criterion = std::atoi(argv[++i]);
            if (criterion < 1 || criterion > 15) {
                std::fprintf(stderr, "criterion must be in 1..15\n");
                return 2;
            }
        } else if (arg == "--seed" && has_value) {
            seed = std::strtoull(argv[++i], nullptr, 10);
        } else if (arg == "--depth" && has_value) {
            options["depth"] = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "unknown argument: %s\n", arg.c_str());
            return 2;
        }
    }

    std::vector<int> ids;
    if (criterion != 0) ids.push_back(criterion);

    lpa::SuiteReport report;
    try {
        report = lpa::run_suite(ids, seed, options);
    } catch (const lpa::Error& e) {
        std::fprintf(stderr, "suite aborted: %s\n", e.what());
        return 2;
    }

    for (const lpa::CriterionResult& r : report.results) {
        std::printf("[%s] %2d %-18s %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.details.dump().c_str());
    }
    std::printf("%s (seed %llu)\n", report.all_pass ? "ALL PASS" : "FAILURES",
                static_cast<unsigned long long>(seed));
    return report.all_pass ? 0 : 1;
}
