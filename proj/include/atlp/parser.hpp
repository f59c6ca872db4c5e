#pragma once

#include <memory>
#include <string>
#include <vector>

#include "atlp/formula.hpp"

namespace atlp {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col);
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

// Surface syntax, before NNF.
struct Surface {
    enum Op { True, False, Atom, Not, And, Or, Imp, Enf, Unav, X, G, Fut, U, R } op;
    std::string name;
    std::vector<int> agents;
    std::shared_ptr<Surface> a, b;
    int line = 1;
    int col = 1;
};
using SurfacePtr = std::shared_ptr<Surface>;

SurfacePtr parse(const std::string& text);

// Agent numbers mentioned anywhere in the formula, sorted.
std::vector<int> mentioned_agents(const Surface& s);

// Tight universe: mentioned agents, or {1} when none is mentioned.
// extra adds that many fresh agents above the largest one.
Universe infer_universe(const Surface& s, int extra = 0);

F to_nnf(Store& st, const Surface& s);

// Parse + NNF; for extra agents the formula is conjoined with <<a>>X true.
struct Problem {
    std::unique_ptr<Store> store;
    F eta = nullptr;
};
Problem make_problem(const std::string& text, int extra_agents = 0);

// Parse a formula into an existing store (agents must be in its universe).
F parse_into(Store& st, const std::string& text);

}  // namespace atlp
