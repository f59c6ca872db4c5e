#pragma once

#include <map>
#include <string>
#include <vector>

#include "atlp/formula.hpp"

namespace atlp {

struct DecPair {
    std::vector<F> now;  // conjunct set, sorted, no true
    F next;              // path formula, St(true) stands for ⊤
    bool operator==(const DecPair& o) const { return now == o.now && next == o.next; }
};

using DecSet = std::vector<DecPair>;

bool next_is_top(F next);

DecSet dec(Store& st, F path);
std::string dump(const DecSet& d);
std::string dump(const DecPair& p);

struct GammaComponent {
    F source;
    DecPair pair;
    F rendered;
    F successor = nullptr;   // Q X Q Psi, or null when Psi is ⊤
    F eventuality = nullptr; // Q Psi, or null when Psi is ⊤
};

// Cached per store.
class Decomposer {
public:
    explicit Decomposer(Store& st) : st_(st) {}
    Store& store() { return st_; }
    const std::vector<GammaComponent>& components(F gamma);
    int component_index(F gamma, F rendered);
    const DecSet& dec_of(F path);

private:
    Store& st_;
    std::map<std::size_t, DecSet> dec_;
    std::map<std::size_t, std::vector<GammaComponent>> comps_;
};

std::vector<GammaComponent> gamma_components(Store& st, F gamma);

// Least set containing the seed, true, false and closed under components.
std::vector<F> closure(Decomposer& d, F seed, std::size_t cap = std::size_t(1) << 20);

// Label membership, looking through and/or (a flattened conjunct counts).
bool holds_in(F f, const std::vector<F>& sorted_label);
bool real(F path, const std::vector<F>& sorted_label);

struct FullExpansion {
    std::vector<F> label;              // sorted by CanonLess
    std::map<std::size_t, int> linked; // gamma node id -> component index
};

std::vector<FullExpansion> full_expansions(Decomposer& d, const std::vector<F>& gamma);

bool label_contains(const std::vector<F>& sorted_label, F f);
bool patently_inconsistent(const std::vector<F>& label);

}  // namespace atlp
