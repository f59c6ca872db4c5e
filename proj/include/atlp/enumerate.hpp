#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "atlp/cgm.hpp"
#include "atlp/oracle.hpp"

namespace atlp {

struct CgmFamily {
    int agents = 1;
    int states = 2;       // models with 1..states states
    int max_actions = 2;  // per agent and state
    std::vector<std::string> props;
};

// Visits every model of the family; returns the number visited. Stops early
// when f returns false.
std::size_t for_each_cgm(const CgmFamily& fam, const std::function<bool(const CGM&)>& f);

// A model with exactly fam.states states.
CGM random_cgm(std::mt19937_64& rng, const CgmFamily& fam);

// One state per subset of props, a single action, self loops.
CGM label_model(const std::vector<std::string>& props);

// Every lasso over states 0..n-1 with prefix length <= max_prefix and
// loop length 1..max_loop.
std::size_t for_each_lasso(int n, int max_prefix, int max_loop, const std::function<void(const Lasso&)>& f);

}  // namespace atlp
