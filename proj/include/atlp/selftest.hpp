#pragma once

#include <string>
#include <vector>

#include "atlp/cgm.hpp"

namespace atlp {

struct SelfTestResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Golden corpus of worked examples.
std::vector<SelfTestResult> run_selftest();

// Two-agent model where <<1>>(F p & F q) needs memory at S0.
CGM recall_model();

}  // namespace atlp
