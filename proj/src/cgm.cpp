#include "atlp/cgm.hpp"

#include <sstream>
#include <stdexcept>

namespace atlp {

using nlohmann::json;

int CGM::profiles(int s) const {
    int n = 1;
    for (int a : states[s].actions) n *= a;
    return n;
}

int CGM::profile_index(int s, const std::vector<int>& sigma) const {
    const auto& act = states[s].actions;
    int idx = 0;
    for (std::size_t i = 0; i < act.size(); ++i) idx = idx * act[i] + sigma[i];
    return idx;
}

std::vector<int> CGM::profile(int s, int index) const {
    const auto& act = states[s].actions;
    std::vector<int> sigma(act.size());
    for (int i = static_cast<int>(act.size()) - 1; i >= 0; --i) {
        sigma[i] = index % act[i];
        index /= act[i];
    }
    return sigma;
}

int CGM::find(const std::string& id) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].id == id) return static_cast<int>(i);
    return -1;
}

void validate(const CGM& m) {
    if (m.agents < 1) throw std::invalid_argument("model needs at least one agent");
    if (m.states.empty()) throw std::invalid_argument("model has no states");
    if (m.initial < 0 || m.initial >= static_cast<int>(m.states.size()))
        throw std::invalid_argument("initial state out of range");
    int n = static_cast<int>(m.states.size());
    for (int s = 0; s < n; ++s) {
        const auto& st = m.states[s];
        if (static_cast<int>(st.actions.size()) != m.agents)
            throw std::invalid_argument("state " + st.id + ": action counts do not match the agents");
        for (int a : st.actions)
            if (a < 1) throw std::invalid_argument("state " + st.id + ": an agent has no action");
        if (static_cast<int>(st.out.size()) != m.profiles(s))
            throw std::invalid_argument("state " + st.id + ": transition function is not total");
        for (int t : st.out)
            if (t < 0 || t >= n) throw std::invalid_argument("state " + st.id + ": transition target out of range");
    }
}

json to_json(const CGM& m) {
    json j;
    j["agents"] = m.agents;
    if (!m.agent_names.empty()) j["agent_names"] = m.agent_names;
    j["initial"] = m.states[m.initial].id;
    json states = json::array();
    json actions = json::object();
    json trans = json::array();
    for (int s = 0; s < static_cast<int>(m.states.size()); ++s) {
        const auto& st = m.states[s];
        json e = {{"id", st.id}, {"props", st.props}};
        if (!st.formulas.empty()) e["formulas"] = st.formulas;
        states.push_back(e);
        actions[st.id] = st.actions;
        for (int i = 0; i < m.profiles(s); ++i)
            trans.push_back({{"from", st.id}, {"profile", m.profile(s, i)}, {"to", m.states[st.out[i]].id}});
    }
    j["states"] = states;
    j["actions"] = actions;
    j["transitions"] = trans;
    return j;
}

CGM cgm_from_json(const json& j) {
    CGM m;
    m.agents = j.at("agents").get<int>();
    if (j.contains("agent_names")) m.agent_names = j.at("agent_names").get<std::vector<int>>();
    for (const auto& e : j.at("states")) {
        CGM::State s;
        s.id = e.at("id").get<std::string>();
        s.props = e.value("props", std::vector<std::string>{});
        s.formulas = e.value("formulas", std::vector<std::string>{});
        m.states.push_back(std::move(s));
    }
    for (auto& s : m.states) {
        if (!j.at("actions").contains(s.id)) throw std::invalid_argument("no actions for state " + s.id);
        s.actions = j.at("actions").at(s.id).get<std::vector<int>>();
        if (static_cast<int>(s.actions.size()) != m.agents)
            throw std::invalid_argument("state " + s.id + ": action counts do not match the agents");
    }
    for (std::size_t i = 0; i < m.states.size(); ++i) m.states[i].out.assign(m.profiles(static_cast<int>(i)), -1);
    for (const auto& t : j.at("transitions")) {
        int from = m.find(t.at("from").get<std::string>());
        int to = m.find(t.at("to").get<std::string>());
        if (from < 0 || to < 0) throw std::invalid_argument("transition mentions an unknown state");
        auto sigma = t.at("profile").get<std::vector<int>>();
        const auto& act = m.states[from].actions;
        if (sigma.size() != act.size()) throw std::invalid_argument("profile length mismatch");
        for (std::size_t a = 0; a < sigma.size(); ++a)
            if (sigma[a] < 0 || sigma[a] >= act[a]) throw std::invalid_argument("profile outside the action box");
        int& slot = m.states[from].out[m.profile_index(from, sigma)];
        if (slot >= 0 && slot != to) throw std::invalid_argument("non-deterministic transition");
        slot = to;
    }
    m.initial = m.find(j.at("initial").get<std::string>());
    validate(m);
    return m;
}

std::string cgm_dot(const CGM& m) {
    std::ostringstream o;
    o << "digraph cgm {\n";
    for (int s = 0; s < static_cast<int>(m.states.size()); ++s) {
        const auto& st = m.states[s];
        std::string props;
        for (std::size_t i = 0; i < st.props.size(); ++i) props += (i ? "," : "") + st.props[i];
        o << "  " << st.id << " [label=\"" << st.id << "\\n{" << props << "}\""
          << (s == m.initial ? ", shape=doublecircle" : "") << "];\n";
    }
    for (int s = 0; s < static_cast<int>(m.states.size()); ++s) {
        std::vector<std::pair<int, std::string>> edges;
        for (int i = 0; i < m.profiles(s); ++i) {
            auto sig = m.profile(s, i);
            std::string t;
            for (std::size_t a = 0; a < sig.size(); ++a) t += (a ? "," : "") + std::to_string(sig[a]);
            int to = m.states[s].out[i];
            bool merged = false;
            for (auto& e : edges)
                if (e.first == to) {
                    e.second += "\\n" + t;
                    merged = true;
                }
            if (!merged) edges.push_back({to, t});
        }
        for (auto& [to, lab] : edges)
            o << "  " << m.states[s].id << " -> " << m.states[to].id << " [label=\"" << lab << "\"];\n";
    }
    o << "}\n";
    return o.str();
}

}  // namespace atlp
