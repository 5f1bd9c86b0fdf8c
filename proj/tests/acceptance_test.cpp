#include <iostream>

#include "weilmono/acceptance.hpp"

int main() {
    int failed = 0;
    wm::run_acceptance(wm::AcceptanceConfig{}, [&](const wm::CriterionResult& r) {
        std::cout << wm::format_result(r) << std::endl;
        failed += r.status == "FAIL";
    });
    std::cout << (failed ? std::to_string(failed) + " criterion(s) FAILED" : std::string("all criteria PASS")) << "\n";
    return failed ? 1 : 0;
}
