#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace atlp {

// Deterministic concurrent game model. Profiles are indexed in mixed radix
// over the per-agent action counts of the state, agent 0 most significant.
struct CGM {
    struct State {
        std::string id;
        std::vector<std::string> props;
        std::vector<int> actions;          // one count per agent
        std::vector<int> out;              // profile index -> state
        std::vector<std::string> formulas; // optional Hintikka label
    };

    int agents = 1;
    std::vector<int> agent_names;  // optional, defaults to 1..k
    std::vector<State> states;
    int initial = 0;

    int profiles(int s) const;
    int profile_index(int s, const std::vector<int>& sigma) const;
    std::vector<int> profile(int s, int index) const;
    int successor(int s, const std::vector<int>& sigma) const { return states[s].out[profile_index(s, sigma)]; }
    int find(const std::string& id) const;
};

// Throws std::invalid_argument on a malformed model.
void validate(const CGM& m);

nlohmann::json to_json(const CGM& m);
CGM cgm_from_json(const nlohmann::json& j);
std::string cgm_dot(const CGM& m);

}  // namespace atlp
