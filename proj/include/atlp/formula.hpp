#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace atlp {

// Agents are 0-based indices into Universe::names.
using Coalition = std::uint32_t;

enum class Kind : std::uint8_t {
    True, False, Lit, And, Or, Enf, Unav,      // state formulas
    St, Next, Always, Until, PAnd, POr          // path formulas
};

struct Node {
    Kind kind;
    bool pos = true;
    int prop = -1;
    Coalition coal = 0;
    const Node* a = nullptr;
    const Node* b = nullptr;
    std::size_t id = 0;
    std::string text;
};

using F = const Node*;

inline bool is_path(F f) { return f->kind >= Kind::St; }
inline bool is_quant(F f) { return f->kind == Kind::Enf || f->kind == Kind::Unav; }

// Canonical total order: rendered text, then kind.
bool canon_less(F x, F y);
struct CanonLess {
    bool operator()(F x, F y) const { return canon_less(x, y); }
};

struct Universe {
    std::vector<int> names;   // sorted agent numbers as written by the user
    int k() const { return static_cast<int>(names.size()); }
    Coalition all() const { return k() >= 32 ? ~Coalition(0) : ((Coalition(1) << k()) - 1); }
};

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Hash-consing table. One per solver run; interning is mutex-guarded.
class Store {
public:
    explicit Store(Universe u);
    Store(const Store&) = delete;
    Store& operator=(const Store&) = delete;

    const Universe& universe() const { return uni_; }
    int agents() const { return uni_.k(); }
    Coalition all() const { return uni_.all(); }

    int prop(const std::string& name);
    const std::string& prop_name(int id) const { return props_[id]; }
    int num_props() const { return static_cast<int>(props_.size()); }
    int find_prop(const std::string& name) const;

    F top();
    F bot();
    F lit(int prop, bool pos);
    F lit(const std::string& name, bool pos) { return lit(prop(name), pos); }
    F neg_lit(F l) { return lit(l->prop, !l->pos); }
    F mk_and(F x, F y);
    F mk_or(F x, F y);
    // Unav with the full coalition is turned into Enf with the empty one.
    F enf(Coalition c, F path);
    F unav(Coalition c, F path);
    F quant(Kind k, Coalition c, F path) { return k == Kind::Enf ? enf(c, path) : unav(c, path); }

    F st(F s);
    F next(F s);
    F always(F s);
    F until(F s1, F s2);
    F eventually(F s) { return until(top(), s); }
    F pand(F x, F y);
    F por(F x, F y);
    F ptop() { return st(top()); }

    // Flattened, deduplicated, sorted chains.
    F and_chain(std::vector<F> items);
    F pand_flat(F x, F y);
    F por_flat(F x, F y);

    std::string coalition_text(Coalition c) const;
    std::size_t size() const { return nodes_.size(); }

private:
    F intern(Kind k, bool pos, int prop, Coalition c, F a, F b);
    std::string render(Kind k, bool pos, int prop, Coalition c, F a, F b) const;
    F path_chain(Kind k, F x, F y);

    using Key = std::tuple<int, bool, int, Coalition, std::size_t, std::size_t>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };

    Universe uni_;
    std::vector<std::string> props_;
    std::unordered_map<std::string, int> prop_ids_;
    std::deque<Node> nodes_;
    std::unordered_map<Key, F, KeyHash> table_;
    mutable std::mutex mu_;
};

std::string to_string(F f);

// Formula classification for the tableau rules.
struct FormulaClass {
    enum Type { Literal, TopBot, Successor, Alpha, Beta, Gamma } type;
    F c1 = nullptr;
    F c2 = nullptr;
};

FormulaClass classify(F f);
const char* class_name(FormulaClass::Type t);

// Symbol count; quantifiers add one unit per agent of the universe.
std::size_t formula_size(F f, int agents);
int boolean_depth(F f);
// Depth of a single path formula: nestings of path-level and/or.
int path_boolean_depth(F path);

// Collect subformulas (state and path) in post-order, deduplicated.
std::vector<F> subformulas(F f);

}  // namespace atlp
