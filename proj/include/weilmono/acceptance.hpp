#pragma once

#include <array>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "weilmono/arith.hpp"

namespace wm {

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string status;  // PASS, FAIL or N/A
    double seconds = 0;
    double budget = 0;
    std::string detail;
};

struct AcceptanceConfig {
    std::set<u64> qs{2, 3, 4};  // grid restriction on q
    std::set<int> criteria;     // empty runs all
    // (q, n, m, b, c) tuples audited by criterion 9; invalid tuples are reported N/A
    std::vector<std::array<i64, 5>> audit_cases{{2, 3, 1, 1, 2}, {3, 3, 1, 1, 3}, {3, 3, 1, 2, 7}};
    bool wants(int id) const { return criteria.empty() || criteria.count(id); }
    bool has_q(u64 q) const { return qs.count(q) != 0; }
};

// Runs the criteria in id order; each result is passed to on_result as soon as it is known.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result(const CriterionResult& r);

}  // namespace wm
