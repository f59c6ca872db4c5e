#include "atlp/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace atlp {

namespace {

void conjuncts(F f, std::vector<F>& out) {
    if (f->kind == Kind::And) {
        conjuncts(f->a, out);
        conjuncts(f->b, out);
    } else if (f->kind != Kind::True) {
        out.push_back(f);
    }
}

std::vector<F> now_set(F f) {
    std::vector<F> v;
    conjuncts(f, v);
    std::sort(v.begin(), v.end(), CanonLess());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<F> merge(const std::vector<F>& x, const std::vector<F>& y) {
    std::vector<F> out;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out), CanonLess());
    return out;
}

void push_unique(DecSet& d, DecPair p) {
    if (std::find(d.begin(), d.end(), p) == d.end()) d.push_back(std::move(p));
}

}  // namespace

bool next_is_top(F next) { return next->kind == Kind::St && next->a->kind == Kind::True; }

DecSet dec(Store& st, F p) {
    DecSet out;
    switch (p->kind) {
        case Kind::St: out.push_back({now_set(p->a), st.ptop()}); break;
        case Kind::Next: out.push_back({{}, st.st(p->a)}); break;
        case Kind::Always: out.push_back({now_set(p->a), p}); break;
        case Kind::Until:
            out.push_back({now_set(p->a), p});
            push_unique(out, {now_set(p->b), st.ptop()});
            break;
        case Kind::PAnd: {
            DecSet d1 = dec(st, p->a), d2 = dec(st, p->b);
            for (const auto& x : d1)
                for (const auto& y : d2) push_unique(out, {merge(x.now, y.now), st.pand_flat(x.next, y.next)});
            break;
        }
        case Kind::POr: {
            DecSet d1 = dec(st, p->a), d2 = dec(st, p->b);
            for (const auto& x : d1) push_unique(out, x);
            for (const auto& y : d2) push_unique(out, y);
            for (const auto& x : d1)
                for (const auto& y : d2) {
                    if (next_is_top(x.next) || next_is_top(y.next)) continue;
                    push_unique(out, {merge(x.now, y.now), st.por_flat(x.next, y.next)});
                }
            break;
        }
        default: throw std::invalid_argument("dec expects a path formula: " + p->text);
    }
    return out;
}

std::string dump(const DecPair& p) {
    std::string s = "now={";
    for (std::size_t i = 0; i < p.now.size(); ++i) s += (i ? ", " : "") + p.now[i]->text;
    s += "} next={";
    if (!next_is_top(p.next)) s += p.next->text;
    s += "}";
    return s;
}

std::string dump(const DecSet& d) {
    std::string s;
    for (const auto& p : d) s += dump(p) + "\n";
    return s;
}

std::vector<GammaComponent> gamma_components(Store& st, F g) {
    if (classify(g).type != FormulaClass::Gamma) throw std::invalid_argument("not a gamma formula: " + g->text);
    std::vector<GammaComponent> out;
    for (auto& pr : dec(st, g->a)) {
        GammaComponent c;
        c.source = g;
        c.pair = pr;
        if (next_is_top(pr.next)) {
            c.rendered = st.and_chain(pr.now);
        } else {
            c.eventuality = st.quant(g->kind, g->coal, pr.next);
            c.successor = st.quant(g->kind, g->coal, st.next(c.eventuality));
            std::vector<F> parts = pr.now;
            parts.push_back(c.successor);
            c.rendered = st.and_chain(parts);
        }
        out.push_back(std::move(c));
    }
    return out;
}

const DecSet& Decomposer::dec_of(F path) {
    auto it = dec_.find(path->id);
    if (it == dec_.end()) it = dec_.emplace(path->id, dec(st_, path)).first;
    return it->second;
}

const std::vector<GammaComponent>& Decomposer::components(F g) {
    auto it = comps_.find(g->id);
    if (it == comps_.end()) it = comps_.emplace(g->id, gamma_components(st_, g)).first;
    return it->second;
}

int Decomposer::component_index(F g, F rendered) {
    const auto& cs = components(g);
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (cs[i].rendered == rendered) return static_cast<int>(i);
    return -1;
}

std::vector<F> closure(Decomposer& d, F seed, std::size_t cap) {
    Store& st = d.store();
    std::unordered_set<F> seen;
    std::deque<F> work;
    auto add = [&](F f) {
        if (seen.insert(f).second) {
            if (seen.size() > cap)
                throw ResourceError("closure exceeds " + std::to_string(cap) + " formulas");
            work.push_back(f);
        }
    };
    add(seed);
    add(st.top());
    add(st.bot());
    while (!work.empty()) {
        F f = work.front();
        work.pop_front();
        auto c = classify(f);
        switch (c.type) {
            case FormulaClass::Alpha:
            case FormulaClass::Beta:
                add(c.c1);
                add(c.c2);
                break;
            case FormulaClass::Successor: add(c.c1); break;
            case FormulaClass::Gamma:
                for (const auto& g : d.components(f)) add(g.rendered);
                break;
            default: break;
        }
    }
    std::vector<F> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), CanonLess());
    return out;
}

bool label_contains(const std::vector<F>& label, F f) {
    return std::binary_search(label.begin(), label.end(), f, CanonLess());
}

bool holds_in(F f, const std::vector<F>& label) {
    if (f->kind == Kind::True || label_contains(label, f)) return true;
    if (f->kind == Kind::And) return holds_in(f->a, label) && holds_in(f->b, label);
    if (f->kind == Kind::Or) return holds_in(f->a, label) || holds_in(f->b, label);
    return false;
}

bool real(F p, const std::vector<F>& label) {
    switch (p->kind) {
        case Kind::St: return holds_in(p->a, label);
        case Kind::Next: return false;
        case Kind::Always: return holds_in(p->a, label);
        case Kind::Until: return holds_in(p->b, label);
        case Kind::PAnd: return real(p->a, label) && real(p->b, label);
        case Kind::POr: return real(p->a, label) || real(p->b, label);
        default: throw std::invalid_argument("real expects a path formula");
    }
}

bool patently_inconsistent(const std::vector<F>& label) {
    std::set<std::pair<int, bool>> lits;
    for (F f : label) {
        if (f->kind == Kind::False) return true;
        if (f->kind == Kind::Lit) {
            if (lits.count({f->prop, !f->pos})) return true;
            lits.insert({f->prop, f->pos});
        }
    }
    return false;
}

namespace {

struct Branch {
    std::vector<F> items;
    std::unordered_set<F> in;
    std::deque<F> work;
    std::map<std::size_t, int> linked;

    bool add(Store& st, F f) {
        if (in.count(f)) return true;
        if (f->kind == Kind::False) return false;
        if (f->kind == Kind::Lit && in.count(st.neg_lit(f))) return false;
        in.insert(f);
        items.push_back(f);
        work.push_back(f);
        return true;
    }
};

class Expander {
public:
    explicit Expander(Decomposer& d) : d_(d), st_(d.store()) {}

    void run(Branch b) {
        while (!b.work.empty()) {
            F f = b.work.front();
            b.work.pop_front();
            auto c = classify(f);
            switch (c.type) {
                case FormulaClass::Alpha:
                    if (!b.add(st_, c.c1) || !b.add(st_, c.c2)) return;
                    break;
                case FormulaClass::Beta:
                    for (F x : {c.c1, c.c2}) {
                        Branch nb = b;
                        if (nb.add(st_, x)) run(std::move(nb));
                    }
                    return;
                case FormulaClass::Gamma: {
                    const auto& comps = d_.components(f);
                    for (std::size_t i = 0; i < comps.size(); ++i) {
                        Branch nb = b;
                        nb.linked[f->id] = static_cast<int>(i);
                        if (nb.add(st_, comps[i].rendered)) run(std::move(nb));
                    }
                    return;
                }
                default: break;
            }
        }
        emit(b);
    }

    std::vector<FullExpansion> out;

private:
    void emit(const Branch& b) {
        FullExpansion e;
        e.label = b.items;
        std::sort(e.label.begin(), e.label.end(), CanonLess());
        e.linked = b.linked;
        std::vector<std::size_t> key;
        for (F f : e.label) key.push_back(f->id);
        auto it = index_.find(key);
        if (it == index_.end()) {
            index_.emplace(std::move(key), out.size());
            out.push_back(std::move(e));
            return;
        }
        auto& old = out[it->second].linked;
        for (auto& [g, i] : e.linked) old[g] = std::min(old[g], i);
    }

    Decomposer& d_;
    Store& st_;
    std::map<std::vector<std::size_t>, std::size_t> index_;
};

}  // namespace

std::vector<FullExpansion> full_expansions(Decomposer& d, const std::vector<F>& gamma) {
    Expander ex(d);
    Branch b;
    for (F f : gamma)
        if (!b.add(d.store(), f)) return {};
    ex.run(std::move(b));
    return std::move(ex.out);
}

}  // namespace atlp
