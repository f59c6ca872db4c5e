#pragma once

#include <map>
#include <string>
#include <vector>

#include "atlp/cgm.hpp"
#include "atlp/formula.hpp"

namespace atlp {

// Model checker for NNF formulas over a CGM, perfect-recall semantics.
// Quantified objectives are solved on a product with a status vector
// (pending/true/false per temporal atom).
class Oracle {
public:
    Oracle(const Store& st, const CGM& m);
    Oracle(const Store&, CGM&&) = delete;

    // Truth value of a state formula at every state.
    const std::vector<char>& eval(F f);
    bool eval_state(int s, F f) { return eval(f)[s] != 0; }

    std::vector<char> solve_strategic(Coalition a, F path, Kind mode);

    // One line per quantified subformula, in evaluation order.
    const std::vector<std::string>& log() const { return log_; }
    void keep_log(bool on) { logging_ = on; }

    const CGM& model() const { return m_; }

private:
    const Store& st_;
    const CGM& m_;
    std::map<std::size_t, std::vector<char>> memo_;
    std::vector<std::string> log_;
    bool logging_ = false;
};

struct Lasso {
    std::vector<int> prefix;
    std::vector<int> loop;  // non-empty
};

bool eval_path(Oracle& o, F path, const Lasso& play, std::size_t pos = 0);

struct ModelReport {
    bool pass = false;
    std::string text;
};

ModelReport check_model(const Store& st, const CGM& m, int s, F eta);

}  // namespace atlp
