#include "atlp/random_formula.hpp"

#include <functional>
#include <set>

namespace atlp {

namespace {

class Gen {
public:
    Gen(Store& st, std::mt19937_64& rng, int props) : st_(st), rng_(rng), props_(props) {}

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    F literal() {
        int i = pick(props_);
        return st_.lit(std::string(1, static_cast<char>('p' + i)), pick(2) == 0);
    }

    F leaf() {
        int c = pick(12);
        if (c == 0) return st_.top();
        if (c == 1) return st_.bot();
        return literal();
    }

    Coalition coalition() { return static_cast<Coalition>(pick(static_cast<int>(st_.all()) + 1)); }

    F state(int budget, int depth_left) {
        if (budget <= 1) return leaf();
        int c = pick(10);
        if (c < 2) return leaf();
        if (c < 4) {
            int left = 1 + pick(std::max(1, budget - 2));
            F a = state(left, depth_left);
            F b = state(std::max(1, budget - 1 - left), depth_left);
            return c == 2 ? st_.mk_and(a, b) : st_.mk_or(a, b);
        }
        Kind q = pick(2) == 0 ? Kind::Enf : Kind::Unav;
        Coalition co = coalition();
        if (q == Kind::Unav && co == st_.all()) q = Kind::Enf;
        return st_.quant(q, co, path(std::max(1, budget - 1 - st_.agents()), depth_left, depth_left));
    }

    F atom(int budget, int depth_left) {
        int c = pick(5);
        switch (c) {
            case 0: return st_.next(state(budget - 1, depth_left));
            case 1: return st_.always(state(budget - 1, depth_left));
            case 2: return st_.eventually(state(budget - 2, depth_left));
            case 3: {
                int left = 1 + pick(std::max(1, budget - 2));
                return st_.until(state(left, depth_left), state(std::max(1, budget - 1 - left), depth_left));
            }
            default: return st_.st(state(budget, depth_left));
        }
    }

    F path(int budget, int depth_left, int bool_left) {
        if (bool_left > 0 && budget >= 5 && pick(3) == 0) {
            int left = 2 + pick(std::max(1, budget - 4));
            F a = atom(left, depth_left);
            F b = atom(std::max(2, budget - 1 - left), depth_left);
            return pick(2) == 0 ? st_.pand(a, b) : st_.por(a, b);
        }
        return atom(budget, depth_left);
    }

private:
    Store& st_;
    std::mt19937_64& rng_;
    int props_;
};

Universe universe_of(int agents) {
    Universe u;
    for (int a = 1; a <= agents; ++a) u.names.push_back(a);
    return u;
}

}  // namespace

F random_formula(Store& st, std::mt19937_64& rng, const RandomSpec& spec) {
    Gen g(st, rng, spec.props);
    while (true) {
        int budget = 1 + g.pick(static_cast<int>(spec.max_size));
        F f = g.state(budget, spec.max_depth);
        if (formula_size(f, st.agents()) <= spec.max_size && boolean_depth(f) <= spec.max_depth) return f;
    }
}

std::vector<std::string> random_corpus(std::uint64_t seed, int count, const RandomSpec& spec) {
    Store st(universe_of(spec.agents));
    std::mt19937_64 rng(seed);
    std::vector<std::string> out;
    std::set<std::string> seen;
    int tries = 0;
    while (static_cast<int>(out.size()) < count && tries < count * 1000) {
        ++tries;
        F f = random_formula(st, rng, spec);
        if (seen.insert(f->text).second) out.push_back(f->text);
    }
    return out;
}

std::vector<F> flat_corpus(Store& st, std::uint64_t seed, int count, int max_atoms) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    auto arg = [&]() -> F {
        int c = pick(8);
        if (c == 0) return st.top();
        F a = st.lit(pick(2) ? "p" : "q", pick(2) == 0);
        if (c < 6) return a;
        F b = st.lit(pick(2) ? "p" : "q", pick(2) == 0);
        return c == 6 ? st.mk_and(a, b) : st.mk_or(a, b);
    };
    auto atom = [&]() -> F {
        switch (pick(5)) {
            case 0: return st.st(arg());
            case 1: return st.next(arg());
            case 2: return st.always(arg());
            case 3: return st.eventually(arg());
            default: return st.until(arg(), arg());
        }
    };
    std::function<F(int)> build = [&](int atoms) -> F {
        if (atoms <= 1) return atom();
        int left = 1 + pick(atoms - 1);
        F a = build(left), b = build(atoms - left);
        return pick(2) == 0 ? st.pand(a, b) : st.por(a, b);
    };
    std::vector<F> out;
    std::set<F> seen;
    int tries = 0;
    while (static_cast<int>(out.size()) < count && tries < count * 1000) {
        ++tries;
        F p = build(1 + pick(max_atoms));
        if (p->kind == Kind::St) continue;
        if (seen.insert(p).second) out.push_back(p);
    }
    return out;
}

}  // namespace atlp
