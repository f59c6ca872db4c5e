#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "atlp/formula.hpp"

namespace atlp {

struct RandomSpec {
    int agents = 2;
    int props = 3;               // propositions p, q, r, ...
    std::size_t max_size = 12;   // formula_size with the store's agent count
    int max_depth = 1;           // boolean_depth bound
};

// One NNF state formula within the limits. The store's universe should
// have spec.agents agents.
F random_formula(Store& st, std::mt19937_64& rng, const RandomSpec& spec);

// Distinct printed formulas, deterministic for a seed.
std::vector<std::string> random_corpus(std::uint64_t seed, int count, const RandomSpec& spec);

// Path formulas with propositional arguments over p and q, at most
// max_atoms temporal atoms, distinct, deterministic for a seed.
std::vector<F> flat_corpus(Store& st, std::uint64_t seed, int count, int max_atoms = 4);

}  // namespace atlp
