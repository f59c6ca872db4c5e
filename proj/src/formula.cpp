#include "atlp/formula.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_set>

namespace atlp {

bool canon_less(F x, F y) {
    if (x == y) return false;
    int c = x->text.compare(y->text);
    if (c != 0) return c < 0;
    return x->kind < y->kind;
}

std::size_t Store::KeyHash::operator()(const Key& k) const {
    std::size_t h = std::hash<int>()(std::get<0>(k));
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(std::get<1>(k));
    mix(static_cast<std::size_t>(std::get<2>(k)));
    mix(std::get<3>(k));
    mix(std::get<4>(k));
    mix(std::get<5>(k));
    return h;
}

Store::Store(Universe u) : uni_(std::move(u)) {
    if (uni_.k() == 0) throw std::invalid_argument("agent universe must be non-empty");
    if (uni_.k() > 16) throw std::invalid_argument("at most 16 agents are supported");
}

int Store::prop(const std::string& name) {
    std::lock_guard<std::mutex> g(mu_);
    auto it = prop_ids_.find(name);
    if (it != prop_ids_.end()) return it->second;
    int id = static_cast<int>(props_.size());
    props_.push_back(name);
    prop_ids_.emplace(name, id);
    return id;
}

int Store::find_prop(const std::string& name) const {
    std::lock_guard<std::mutex> g(mu_);
    auto it = prop_ids_.find(name);
    return it == prop_ids_.end() ? -1 : it->second;
}

std::string Store::coalition_text(Coalition c) const {
    std::string s;
    for (int i = 0; i < uni_.k(); ++i) {
        if (!(c >> i & 1u)) continue;
        if (!s.empty()) s += ',';
        s += std::to_string(uni_.names[i]);
    }
    return s;
}

std::string Store::render(Kind k, bool pos, int prop, Coalition c, F a, F b) const {
    switch (k) {
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::Lit: return (pos ? "" : "~") + props_[prop];
        case Kind::And: return "(" + a->text + " & " + b->text + ")";
        case Kind::Or: return "(" + a->text + " | " + b->text + ")";
        case Kind::Enf: return "<<" + coalition_text(c) + ">>" + a->text;
        case Kind::Unav: return "[[" + coalition_text(c) + "]]" + a->text;
        case Kind::St: return a->text;
        case Kind::Next: return "X " + a->text;
        case Kind::Always: return "G " + a->text;
        case Kind::Until:
            if (a->kind == Kind::True) return "F " + b->text;
            return "(" + a->text + " U " + b->text + ")";
        case Kind::PAnd: return "(" + a->text + " & " + b->text + ")";
        case Kind::POr: return "(" + a->text + " | " + b->text + ")";
    }
    return "?";
}

F Store::intern(Kind k, bool pos, int prop, Coalition c, F a, F b) {
    Key key{static_cast<int>(k), pos, prop, c, a ? a->id + 1 : 0, b ? b->id + 1 : 0};
    std::lock_guard<std::mutex> g(mu_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    Node n;
    n.kind = k;
    n.pos = pos;
    n.prop = prop;
    n.coal = c;
    n.a = a;
    n.b = b;
    n.id = nodes_.size();
    n.text = render(k, pos, prop, c, a, b);
    nodes_.push_back(std::move(n));
    F f = &nodes_.back();
    table_.emplace(key, f);
    return f;
}

F Store::top() { return intern(Kind::True, true, -1, 0, nullptr, nullptr); }
F Store::bot() { return intern(Kind::False, true, -1, 0, nullptr, nullptr); }
F Store::lit(int p, bool pos) { return intern(Kind::Lit, pos, p, 0, nullptr, nullptr); }

F Store::mk_and(F x, F y) {
    if (canon_less(y, x)) std::swap(x, y);
    return intern(Kind::And, true, -1, 0, x, y);
}

F Store::mk_or(F x, F y) {
    if (canon_less(y, x)) std::swap(x, y);
    return intern(Kind::Or, true, -1, 0, x, y);
}

F Store::enf(Coalition c, F path) {
    if (!is_path(path)) throw std::invalid_argument("quantifier argument must be a path formula");
    return intern(Kind::Enf, true, -1, c & all(), path, nullptr);
}

F Store::unav(Coalition c, F path) {
    if (!is_path(path)) throw std::invalid_argument("quantifier argument must be a path formula");
    c &= all();
    if (c == all()) return enf(0, path);
    return intern(Kind::Unav, true, -1, c, path, nullptr);
}

F Store::st(F s) {
    if (is_path(s)) throw std::invalid_argument("St expects a state formula");
    return intern(Kind::St, true, -1, 0, s, nullptr);
}

F Store::next(F s) {
    if (is_path(s)) throw std::invalid_argument("temporal operand must be a state formula");
    return intern(Kind::Next, true, -1, 0, s, nullptr);
}

F Store::always(F s) {
    if (is_path(s)) throw std::invalid_argument("temporal operand must be a state formula");
    return intern(Kind::Always, true, -1, 0, s, nullptr);
}

F Store::until(F s1, F s2) {
    if (is_path(s1) || is_path(s2)) throw std::invalid_argument("temporal operand must be a state formula");
    return intern(Kind::Until, true, -1, 0, s1, s2);
}

F Store::pand(F x, F y) {
    if (x->kind == Kind::St && y->kind == Kind::St) return st(mk_and(x->a, y->a));
    if (canon_less(y, x)) std::swap(x, y);
    return intern(Kind::PAnd, true, -1, 0, x, y);
}

F Store::por(F x, F y) {
    if (x->kind == Kind::St && y->kind == Kind::St) return st(mk_or(x->a, y->a));
    if (canon_less(y, x)) std::swap(x, y);
    return intern(Kind::POr, true, -1, 0, x, y);
}

namespace {

void sort_unique(std::vector<F>& v) {
    std::sort(v.begin(), v.end(), CanonLess());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void collect(F f, Kind k, std::vector<F>& out) {
    if (f->kind == k) {
        collect(f->a, k, out);
        collect(f->b, k, out);
    } else {
        out.push_back(f);
    }
}

}  // namespace

F Store::and_chain(std::vector<F> items) {
    std::vector<F> flat;
    for (F f : items) collect(f, Kind::And, flat);
    std::erase_if(flat, [](F f) { return f->kind == Kind::True; });
    sort_unique(flat);
    if (flat.empty()) return top();
    F acc = flat.back();
    for (std::size_t i = flat.size() - 1; i-- > 0;) acc = intern(Kind::And, true, -1, 0, flat[i], acc);
    return acc;
}

F Store::path_chain(Kind k, F x, F y) {
    Kind sk = k == Kind::PAnd ? Kind::And : Kind::Or;
    std::vector<F> items;
    collect(x, k, items);
    collect(y, k, items);
    std::vector<F> states, paths;
    for (F f : items) {
        if (f->kind == Kind::St) {
            collect(f->a, sk, states);
        } else {
            paths.push_back(f);
        }
    }
    if (k == Kind::PAnd) {
        std::erase_if(states, [](F f) { return f->kind == Kind::True; });
    } else {
        for (F f : states)
            if (f->kind == Kind::True) return ptop();
    }
    sort_unique(states);
    sort_unique(paths);
    if (!states.empty()) {
        F acc = states.back();
        for (std::size_t i = states.size() - 1; i-- > 0;) acc = intern(sk, true, -1, 0, states[i], acc);
        paths.push_back(st(acc));
        sort_unique(paths);
    }
    if (paths.empty()) return ptop();
    F acc = paths.back();
    for (std::size_t i = paths.size() - 1; i-- > 0;) acc = intern(k, true, -1, 0, paths[i], acc);
    return acc;
}

F Store::pand_flat(F x, F y) { return path_chain(Kind::PAnd, x, y); }
F Store::por_flat(F x, F y) { return path_chain(Kind::POr, x, y); }

std::string to_string(F f) { return f->text; }

FormulaClass classify(F f) {
    switch (f->kind) {
        case Kind::True:
        case Kind::False: return {FormulaClass::TopBot};
        case Kind::Lit: return {FormulaClass::Literal};
        case Kind::And: return {FormulaClass::Alpha, f->a, f->b};
        case Kind::Or: return {FormulaClass::Beta, f->a, f->b};
        case Kind::Enf:
        case Kind::Unav:
            if (f->a->kind == Kind::Next) return {FormulaClass::Successor, f->a->a};
            return {FormulaClass::Gamma};
        default: break;
    }
    throw std::invalid_argument("classify: not a state formula: " + f->text);
}

const char* class_name(FormulaClass::Type t) {
    switch (t) {
        case FormulaClass::Literal: return "literal";
        case FormulaClass::TopBot: return "constant";
        case FormulaClass::Successor: return "successor";
        case FormulaClass::Alpha: return "alpha";
        case FormulaClass::Beta: return "beta";
        case FormulaClass::Gamma: return "gamma";
    }
    return "?";
}

std::size_t formula_size(F f, int agents) {
    switch (f->kind) {
        case Kind::True:
        case Kind::False: return 1;
        case Kind::Lit: return f->pos ? 1 : 2;
        case Kind::St: return formula_size(f->a, agents);
        case Kind::Enf:
        case Kind::Unav: return 1 + static_cast<std::size_t>(agents) + formula_size(f->a, agents);
        case Kind::Next:
        case Kind::Always: return 1 + formula_size(f->a, agents);
        default: return 1 + formula_size(f->a, agents) + formula_size(f->b, agents);
    }
}

int path_boolean_depth(F p) {
    if (p->kind == Kind::PAnd || p->kind == Kind::POr)
        return 1 + std::max(path_boolean_depth(p->a), path_boolean_depth(p->b));
    return 0;
}

int boolean_depth(F f) {
    int best = 0;
    for (F g : subformulas(f))
        if (is_quant(g)) best = std::max(best, path_boolean_depth(g->a));
    return best;
}

std::vector<F> subformulas(F f) {
    std::vector<F> out;
    std::unordered_set<F> seen;
    std::function<void(F)> go = [&](F g) {
        if (!g || !seen.insert(g).second) return;
        go(g->a);
        go(g->b);
        out.push_back(g);
    };
    go(f);
    return out;
}

}  // namespace atlp
