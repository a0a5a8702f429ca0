#pragma once

#include <json.hpp>

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace abelim {

inline constexpr std::uint64_t default_suite_seed = 20240611;

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::size_t instances = 0;
    std::size_t failures = 0;
    std::string first_failure;
    double seconds = 0;
    double time_limit = 0; // 0 when the criterion has no time bound
};

struct SuiteOptions {
    std::uint64_t seed = default_suite_seed;
    std::set<int> only; // empty runs all nine
    std::uint64_t bar_budget = 200000;
};

CriterionResult run_criterion(int id, const SuiteOptions& opts = {});
std::vector<CriterionResult> run_acceptance(const SuiteOptions& opts = {});

/// "[PASS] 1 h2-lambda2-oracle: 14 instances, 0 failures (0.41 s)"
std::string summary_line(const CriterionResult& r);
/// Timing is left out so repeated runs serialize identically.
nlohmann::json to_json(const CriterionResult& r);

} // namespace abelim
