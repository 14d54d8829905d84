#pragma once

// Acceptance scenarios: fifteen seeded, deterministic checks exercising
// the whole toolkit, from estimator/oracle agreement through Cantor
// dynamics.  Each criterion reports pass/fail plus the measured values
// it based the verdict on; the determinism criterion reruns everything
// and compares serialized reports byte for byte.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpa/io.hpp"

namespace lpa {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    json details;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    std::vector<CriterionResult> results;
    bool all_pass = false;
};

// Criterion names in id order (ids are 1-based).
const std::vector<std::string>& criterion_names();

// Resolves a name or decimal id string; "all" -> 0 meaning every
// criterion. Unknown names come back empty.
std::optional<int> criterion_id(const std::string& name);

// options may carry scenario knobs (currently only "depth", consumed by
// the cantor-order criterion); unknown keys are ignored.
CriterionResult run_criterion(int id, std::uint64_t seed,
                              const json& options = json::object());

// ids may be empty meaning 1..15. The determinism criterion, when
// present, reruns the other requested criteria and byte-compares.
SuiteReport run_suite(std::vector<int> ids, std::uint64_t seed,
                      const json& options = json::object());

json criterion_json(const CriterionResult& r);
json suite_report_json(const SuiteReport& report);

}  // namespace lpa
