#include "atlp/enumerate.hpp"

namespace atlp {

namespace {

struct StateChoice {
    std::vector<std::string> props;
    std::vector<int> actions;
    std::vector<int> out;
};

std::vector<std::vector<std::string>> label_sets(const std::vector<std::string>& props) {
    std::vector<std::vector<std::string>> out;
    for (unsigned mask = 0; mask < (1u << props.size()); ++mask) {
        std::vector<std::string> l;
        for (std::size_t i = 0; i < props.size(); ++i)
            if (mask >> i & 1u) l.push_back(props[i]);
        out.push_back(l);
    }
    return out;
}

std::vector<std::vector<int>> action_boxes(int agents, int max_actions) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(agents, 1);
    while (true) {
        out.push_back(a);
        int i = agents - 1;
        while (i >= 0 && a[i] == max_actions) a[i--] = 1;
        if (i < 0) break;
        ++a[i];
    }
    return out;
}

std::vector<StateChoice> state_choices(const CgmFamily& fam, int n) {
    std::vector<StateChoice> out;
    for (const auto& l : label_sets(fam.props))
        for (const auto& box : action_boxes(fam.agents, fam.max_actions)) {
            int prof = 1;
            for (int a : box) prof *= a;
            std::vector<int> o(prof, 0);
            while (true) {
                out.push_back({l, box, o});
                int i = prof - 1;
                while (i >= 0 && o[i] == n - 1) o[i--] = 0;
                if (i < 0) break;
                ++o[i];
            }
        }
    return out;
}

CGM make_model(int agents, const std::vector<const StateChoice*>& pick) {
    CGM m;
    m.agents = agents;
    for (int a = 1; a <= agents; ++a) m.agent_names.push_back(a);
    for (std::size_t i = 0; i < pick.size(); ++i)
        m.states.push_back({"S" + std::to_string(i + 1), pick[i]->props, pick[i]->actions, pick[i]->out, {}});
    return m;
}

}  // namespace

std::size_t for_each_cgm(const CgmFamily& fam, const std::function<bool(const CGM&)>& f) {
    std::size_t count = 0;
    for (int n = 1; n <= fam.states; ++n) {
        auto choices = state_choices(fam, n);
        std::vector<std::size_t> idx(n, 0);
        while (true) {
            std::vector<const StateChoice*> pick;
            for (int i = 0; i < n; ++i) pick.push_back(&choices[idx[i]]);
            ++count;
            if (!f(make_model(fam.agents, pick))) return count;
            int i = n - 1;
            while (i >= 0 && idx[i] == choices.size() - 1) idx[i--] = 0;
            if (i < 0) break;
            ++idx[i];
        }
    }
    return count;
}

CGM random_cgm(std::mt19937_64& rng, const CgmFamily& fam) {
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    CGM m;
    m.agents = fam.agents;
    for (int a = 1; a <= fam.agents; ++a) m.agent_names.push_back(a);
    for (int s = 0; s < fam.states; ++s) {
        CGM::State st;
        st.id = "S" + std::to_string(s + 1);
        for (const auto& p : fam.props)
            if (pick(2)) st.props.push_back(p);
        int prof = 1;
        for (int a = 0; a < fam.agents; ++a) {
            st.actions.push_back(1 + pick(fam.max_actions));
            prof *= st.actions.back();
        }
        for (int i = 0; i < prof; ++i) st.out.push_back(pick(fam.states));
        m.states.push_back(std::move(st));
    }
    return m;
}

CGM label_model(const std::vector<std::string>& props) {
    CGM m;
    m.agents = 1;
    m.agent_names = {1};
    auto sets = label_sets(props);
    for (std::size_t i = 0; i < sets.size(); ++i)
        m.states.push_back({"S" + std::to_string(i + 1), sets[i], {1}, {static_cast<int>(i)}, {}});
    return m;
}

std::size_t for_each_lasso(int n, int max_prefix, int max_loop, const std::function<void(const Lasso&)>& f) {
    std::size_t count = 0;
    for (int P = 0; P <= max_prefix; ++P)
        for (int L = 1; L <= max_loop; ++L) {
            std::vector<int> seq(P + L, 0);
            while (true) {
                Lasso l{std::vector<int>(seq.begin(), seq.begin() + P), std::vector<int>(seq.begin() + P, seq.end())};
                f(l);
                ++count;
                int i = P + L - 1;
                while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
                if (i < 0) break;
                ++seq[i];
            }
        }
    return count;
}

}  // namespace atlp
