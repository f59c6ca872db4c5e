#pragma once

#include <map>
#include <string>
#include <vector>

#include "atlp/decomposition.hpp"

namespace atlp {

// Action profiles over r actions per agent, agent 0 most significant.
int profile_count(int r, int k);
std::vector<int> decode_profile(int index, int r, int k);
int encode_profile(const std::vector<int>& sigma, int r);
std::string profile_text(const std::vector<int>& sigma);

Coalition n_of(const std::vector<int>& sigma, int m);
int co_of(const std::vector<int>& sigma, int m, int l);

struct SuccessorList {
    std::vector<F> enf;   // <<A_p>> X phi_p
    std::vector<F> unav;  // [[A'_q]] X psi_q
    int m() const { return static_cast<int>(enf.size()); }
    int l() const { return static_cast<int>(unav.size()); }
};

SuccessorList successor_list(const std::vector<F>& label);

// Next rule for one profile; result sorted, {true} when empty.
std::vector<F> next_prestate(Store& st, const SuccessorList& sl, const std::vector<int>& sigma);

// sigma in D(state, succ) for a successor formula of the list.
bool in_move_set(const SuccessorList& sl, F succ, const std::vector<int>& sigma, Coalition all);

struct TabState {
    int id = 0;
    std::vector<F> label;
    std::map<std::size_t, int> linked;
    SuccessorList succ;
    int r = 0;
    std::vector<int> next;  // profile index -> prestate id
};

struct Prestate {
    int id = 0;
    std::vector<F> label;
    std::vector<int> states;
};

struct TraceEntry {
    int state;
    std::string rule;
    std::string detail;
};

enum class Phase { Pretableau, Initial, Final };

class Tableau {
public:
    Tableau(Decomposer& d, F eta, std::size_t max_closure = std::size_t(1) << 20);

    void build();
    void eliminate();

    Decomposer& decomposer() { return d_; }
    Store& store() { return d_.store(); }
    F eta() const { return eta_; }
    int agents() const { return k_; }

    const std::vector<Prestate>& prestates() const { return pre_; }
    const std::vector<TabState>& states() const { return states_; }
    bool alive(int s) const { return alive_[s] != 0; }
    int alive_count() const;
    const std::vector<TraceEntry>& trace() const { return trace_; }

    // Realization ranks for the current alive set, -1 if unrealized.
    int rank(int s, F gamma) const;
    std::vector<F> eventualities(int s) const;

    bool open() const { return witness() >= 0; }
    int witness() const;

    struct Cell {
        int prestate;
        std::vector<int> profiles;
        std::vector<int> targets;  // alive states of the prestate
    };
    // Moves partition of D(s), cells in order of their first profile.
    std::vector<Cell> cells(int s) const;
    int cell_of(int s, int profile) const;
    // D(s, succ): profile indices of s selected by a successor formula.
    std::vector<int> move_set(int s, F succ) const;
    // The linked gamma component of an eventuality in a state.
    const GammaComponent& linked(int s, F gamma) const;

    std::string dot(Phase ph) const;
    std::string state_name(int s) const { return "D" + std::to_string(s + 1); }
    std::string prestate_name(int g) const { return "G" + std::to_string(g); }

    std::size_t closure_size() const { return closure_size_; }

private:
    int add_prestate(std::vector<F> label, std::vector<int>& queue);
    void expand_prestate(int g, std::vector<std::pair<bool, int>>& work);
    void expand_state(int s, std::vector<std::pair<bool, int>>& work);
    void realize();

    Decomposer& d_;
    F eta_;
    int k_;
    std::size_t cap_;
    std::size_t closure_size_ = 0;
    std::vector<Prestate> pre_;
    std::vector<TabState> states_;
    std::map<std::vector<std::size_t>, int> pre_index_, state_index_;
    std::vector<char> alive_;
    std::vector<std::map<std::size_t, int>> rank_;
    std::vector<TraceEntry> trace_;
};

struct Stats {
    int pretableau_states = 0;
    int pretableau_prestates = 0;
    int initial_states = 0;
    int final_states = 0;
};

Stats stats(const Tableau& t);

}  // namespace atlp
