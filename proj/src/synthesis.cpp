#include "atlp/synthesis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "atlp/parser.hpp"

namespace atlp {

TabTree simple_tree(const Tableau& t, int s) {
    TabTree tr;
    tr.nodes.push_back({s, -1, -1, {}, {}});
    auto cells = t.cells(s);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].targets.empty()) throw std::logic_error("state without successor in a cell");
        tr.nodes[0].kids.push_back(static_cast<int>(tr.nodes.size()));
        tr.nodes.push_back({cells[c].targets.front(), 0, static_cast<int>(c), cells[c].profiles, {}});
    }
    return tr;
}

namespace {

void grow_witness(const Tableau& t, TabTree& tr, int node, F xi) {
    int s = tr.nodes[node].state;
    int r = t.rank(s, xi);
    if (r < 0) throw std::logic_error("eventuality " + xi->text + " is not realized at " + t.state_name(s));
    if (r == 0) return;
    const auto& comp = t.linked(s, xi);
    auto moves = t.move_set(s, comp.successor);
    auto cells = t.cells(s);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        std::vector<int> inter;
        std::set_intersection(cells[c].profiles.begin(), cells[c].profiles.end(), moves.begin(), moves.end(),
                              std::back_inserter(inter));
        if (inter.empty()) continue;
        int best = -1, best_rank = 0;
        for (int cand : cells[c].targets) {
            int cr = t.rank(cand, comp.eventuality);
            if (cr >= 0 && (best < 0 || cr < best_rank)) {
                best = cand;
                best_rank = cr;
            }
        }
        if (best < 0 || best_rank >= r) throw std::logic_error("rank invariant broken at " + t.state_name(s));
        int child = static_cast<int>(tr.nodes.size());
        tr.nodes.push_back({best, node, static_cast<int>(c), inter, {}});
        tr.nodes[node].kids.push_back(child);
        grow_witness(t, tr, child, comp.eventuality);
    }
}

}  // namespace

TabTree witness_tree(const Tableau& t, F xi, int s) {
    TabTree tr;
    tr.nodes.push_back({s, -1, -1, {}, {}});
    grow_witness(t, tr, 0, xi);
    return tr;
}

TabTree realizing_tree(const Tableau& t, F xi, int s) {
    TabTree tr = witness_tree(t, xi, s);
    std::size_t n = tr.nodes.size();
    for (std::size_t v = 0; v < n; ++v) {
        if (v != 0 && tr.nodes[v].kids.empty()) continue;
        auto cells = t.cells(tr.nodes[v].state);
        std::vector<char> covered(cells.size(), 0);
        for (int kid : tr.nodes[v].kids) {
            covered[tr.nodes[kid].cell] = 1;
            tr.nodes[kid].profiles = cells[tr.nodes[kid].cell].profiles;
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (covered[c]) continue;
            int child = static_cast<int>(tr.nodes.size());
            tr.nodes.push_back({cells[c].targets.front(), static_cast<int>(v), static_cast<int>(c), cells[c].profiles, {}});
            tr.nodes[v].kids.push_back(child);
        }
        auto& kids = tr.nodes[v].kids;
        std::sort(kids.begin(), kids.end(), [&](int a, int b) { return tr.nodes[a].cell < tr.nodes[b].cell; });
    }
    return tr;
}

std::vector<F> grid_rows(const Tableau& t) {
    std::vector<F> rows;
    for (int s = 0; s < static_cast<int>(t.states().size()); ++s) {
        if (!t.alive(s)) continue;
        for (F g : t.eventualities(s))
            if (std::find(rows.begin(), rows.end(), g) == rows.end()) rows.push_back(g);
    }
    return rows;
}

namespace {

class Assembler {
public:
    Assembler(Tableau& t, Closing mode) : t_(t), mode_(mode) {}

    HintikkaStructure run() {
        int root_state = t_.witness();
        if (root_state < 0) throw std::logic_error("assemble needs an open tableau");
        rows_ = grid_rows(t_);
        int m = std::max<int>(1, static_cast<int>(rows_.size()));
        int start = 0;
        for (int i = 0; i < static_cast<int>(rows_.size()); ++i)
            if (rows_[i] == t_.eta()) start = i;
        std::vector<int> queue;
        for (int i = 0; i < m; ++i) queue.push_back((start + i) % m);

        nodes_.push_back({root_state, -1, -1, {}, -1, false});
        glue(0, queue[0]);
        for (std::size_t qi = 1; qi < queue.size(); ++qi) {
            std::vector<int> dead;
            for (int v = 0; v < static_cast<int>(nodes_.size()); ++v)
                if (!nodes_[v].gone && nodes_[v].kids.empty()) dead.push_back(v);
            for (int v : dead) glue(v, queue[qi]);
        }
        while (true) {
            int w = -1;
            for (int v = 0; v < static_cast<int>(nodes_.size()) && w < 0; ++v)
                if (!nodes_[v].gone && nodes_[v].kids.empty()) w = v;
            if (w < 0) break;
            int s = nodes_[w].state;
            int row = (nodes_[w].row + 1) % m;
            int target = -1;
            if (mode_ == Closing::Cyclic) {
                auto it = roots_.find({row, s});
                if (it != roots_.end()) target = it->second;
            } else {
                for (int i = 0; i < m && target < 0; ++i) {
                    auto it = roots_.find({i, s});
                    if (it != roots_.end()) target = it->second;
                }
                row = 0;
            }
            if (target >= 0) {
                Node& par = nodes_[nodes_[w].parent];
                par.kids[nodes_[w].slot] = target;
                nodes_[w].gone = true;
            } else {
                glue(w, row);
            }
        }
        return finish();
    }

private:
    struct Node {
        int state;
        int parent;
        int slot;               // index in the parent's kids (cell index)
        std::vector<int> kids;  // one per cell of the state's Moves partition
        int row;                // row of the component this node was added with
        bool gone;
    };

    const TabTree& cell(int row, int s) {
        auto key = std::make_pair(row, s);
        auto it = grid_.find(key);
        if (it != grid_.end()) return it->second;
        TabTree tr;
        if (row < static_cast<int>(rows_.size()) && label_contains(t_.states()[s].label, rows_[row])) {
            tr = realizing_tree(t_, rows_[row], s);
        } else {
            tr = simple_tree(t_, s);
        }
        return grid_.emplace(key, std::move(tr)).first->second;
    }

    void glue(int w, int row) {
        int s = nodes_[w].state;
        const TabTree& tr = cell(row, s);
        roots_.emplace(std::make_pair(row, s), w);
        std::vector<int> map(tr.nodes.size(), -1);
        map[0] = w;
        for (std::size_t i = 0; i < tr.nodes.size(); ++i) {
            const auto& tn = tr.nodes[i];
            if (tn.kids.empty()) continue;
            int v = map[i];
            nodes_[v].kids.assign(tn.kids.size(), -1);
            for (int kid : tn.kids) {
                int id = static_cast<int>(nodes_.size());
                nodes_.push_back({tr.nodes[kid].state, v, tr.nodes[kid].cell, {}, row, false});
                map[kid] = id;
                nodes_[v].kids[tr.nodes[kid].cell] = id;
            }
        }
    }

    HintikkaStructure finish() {
        HintikkaStructure h;
        h.agents = t_.agents();
        std::vector<int> order, index(nodes_.size(), -1);
        std::deque<int> bfs{0};
        index[0] = 0;
        order.push_back(0);
        while (!bfs.empty()) {
            int v = bfs.front();
            bfs.pop_front();
            for (int kid : nodes_[v].kids)
                if (index[kid] < 0) {
                    index[kid] = static_cast<int>(order.size());
                    order.push_back(kid);
                    bfs.push_back(kid);
                }
        }
        for (int v : order) {
            const Node& n = nodes_[v];
            const TabState& ts = t_.states()[n.state];
            HintikkaStructure::Node hn;
            hn.label = ts.label;
            hn.actions.assign(t_.agents(), ts.r);
            hn.origin = n.state;
            for (int i = 0; i < static_cast<int>(ts.next.size()); ++i)
                hn.out.push_back(index[n.kids[t_.cell_of(n.state, i)]]);
            h.nodes.push_back(std::move(hn));
        }
        h.root = 0;
        return h;
    }

    Tableau& t_;
    Closing mode_;
    std::vector<F> rows_;
    std::vector<Node> nodes_;
    std::map<std::pair<int, int>, TabTree> grid_;
    std::map<std::pair<int, int>, int> roots_;
};

}  // namespace

HintikkaStructure assemble(Tableau& t, Closing mode) {
    if (mode != Closing::Auto) return Assembler(t, mode).run();
    HintikkaStructure h = Assembler(t, Closing::Paper).run();
    if (validate_hintikka(h, t.decomposer()).ok) return h;
    return Assembler(t, Closing::Cyclic).run();
}

CGM extract_cgm(const HintikkaStructure& h, const Store& st, bool keep_formulas) {
    CGM m;
    m.agents = h.agents;
    m.agent_names = st.universe().names;
    for (std::size_t i = 0; i < h.nodes.size(); ++i) {
        CGM::State s;
        s.id = "S" + std::to_string(i + 1);
        for (F f : h.nodes[i].label)
            if (f->kind == Kind::Lit && f->pos) s.props.push_back(st.prop_name(f->prop));
        std::sort(s.props.begin(), s.props.end());
        s.actions = h.nodes[i].actions;
        s.out = h.nodes[i].out;
        if (keep_formulas)
            for (F f : h.nodes[i].label) s.formulas.push_back(f->text);
        m.states.push_back(std::move(s));
    }
    m.initial = h.root;
    return m;
}

HintikkaStructure hintikka_from_cgm(Store& st, const CGM& m, const std::vector<F>& known) {
    validate(m);
    std::map<std::string, F> by_text;
    for (F f : known) by_text.emplace(f->text, f);
    HintikkaStructure h;
    h.agents = m.agents;
    h.root = m.initial;
    for (const auto& s : m.states) {
        HintikkaStructure::Node n;
        for (const auto& txt : s.formulas) {
            auto it = by_text.find(txt);
            n.label.push_back(it != by_text.end() ? it->second : parse_into(st, txt));
        }
        std::sort(n.label.begin(), n.label.end(), CanonLess());
        n.label.erase(std::unique(n.label.begin(), n.label.end()), n.label.end());
        n.actions = s.actions;
        n.out = s.out;
        h.nodes.push_back(std::move(n));
    }
    return h;
}

std::vector<std::vector<int>> coalition_groups(const std::vector<int>& actions, Coalition coal) {
    int k = static_cast<int>(actions.size());
    int total = 1, na = 1;
    for (int a = 0; a < k; ++a) {
        total *= actions[a];
        if (coal >> a & 1u) na *= actions[a];
    }
    std::vector<std::vector<int>> groups(na);
    for (int idx = 0; idx < total; ++idx) {
        int rest = idx, key = 0, mul = 1;
        for (int a = k - 1; a >= 0; --a) {
            int v = rest % actions[a];
            rest /= actions[a];
            if (coal >> a & 1u) {
                key += v * mul;
                mul *= actions[a];
            }
        }
        groups[key].push_back(idx);
    }
    return groups;
}

namespace {

// Some coalition choice (Enf) or every one (Unav) such that all (resp. some)
// completions satisfy pred.
template <class P>
bool quantified_step(const HintikkaStructure::Node& n, F q, P pred) {
    auto groups = coalition_groups(n.actions, q->coal);
    if (q->kind == Kind::Enf) {
        for (const auto& g : groups)
            if (std::all_of(g.begin(), g.end(), [&](int i) { return pred(n.out[i]); })) return true;
        return false;
    }
    for (const auto& g : groups)
        if (std::none_of(g.begin(), g.end(), [&](int i) { return pred(n.out[i]); })) return false;
    return true;
}

}  // namespace

HintikkaReport validate_hintikka(const HintikkaStructure& h, Decomposer& d) {
    HintikkaReport rep;
    auto fail = [&](const char* cond, int v, const std::string& msg) {
        rep.ok = false;
        rep.condition = cond;
        rep.node = v;
        rep.message = std::string(cond) + " violated at state S" + std::to_string(v + 1) + ": " + msg;
        return rep;
    };
    int n = static_cast<int>(h.nodes.size());
    for (int v = 0; v < n; ++v) {
        const auto& nd = h.nodes[v];
        int prof = 1;
        for (int a : nd.actions) prof *= a;
        if (static_cast<int>(nd.actions.size()) != h.agents || static_cast<int>(nd.out.size()) != prof)
            return fail("H5", v, "transition function is not total");
    }
    for (int v = 0; v < n; ++v) {
        const auto& L = h.nodes[v].label;
        if (patently_inconsistent(L)) return fail("H1", v, "label is patently inconsistent");
        for (F f : L) {
            auto c = classify(f);
            switch (c.type) {
                case FormulaClass::Alpha:
                    if (!label_contains(L, c.c1) || !label_contains(L, c.c2))
                        return fail("H2", v, "missing a conjunct of " + f->text);
                    break;
                case FormulaClass::Beta:
                    if (!label_contains(L, c.c1) && !label_contains(L, c.c2))
                        return fail("H3", v, "no disjunct of " + f->text);
                    break;
                case FormulaClass::Gamma: {
                    bool any = false;
                    for (const auto& comp : d.components(f)) any = any || label_contains(L, comp.rendered);
                    if (!any) return fail("H4", v, "no gamma component of " + f->text);
                    break;
                }
                case FormulaClass::Successor: {
                    F psi = c.c1;
                    bool ok = quantified_step(h.nodes[v], f, [&](int t) { return label_contains(h.nodes[t].label, psi); });
                    if (!ok) return fail("H5", v, "no (co-)action enforcing " + f->text);
                    break;
                }
                default: break;
            }
        }
    }
    // H6: least fixpoint of realized (node, eventuality) pairs.
    std::vector<std::set<std::size_t>> done(n);
    struct Item {
        int v;
        F g;
    };
    std::vector<Item> pending;
    for (int v = 0; v < n; ++v) {
        const auto& L = h.nodes[v].label;
        for (F f : L) {
            if (classify(f).type != FormulaClass::Gamma) continue;
            bool now = real(f->a, L);
            for (const auto& comp : d.components(f))
                if (!comp.successor && label_contains(L, comp.rendered)) now = true;
            if (now) {
                done[v].insert(f->id);
            } else {
                pending.push_back({v, f});
            }
        }
    }
    for (bool changed = true; changed && !pending.empty();) {
        changed = false;
        std::vector<Item> rest;
        std::vector<Item> fresh;
        for (const auto& it : pending) {
            const auto& L = h.nodes[it.v].label;
            bool ok = false;
            for (const auto& comp : d.components(it.g)) {
                if (!comp.successor || !label_contains(L, comp.rendered)) continue;
                ok = quantified_step(h.nodes[it.v], comp.successor,
                                     [&](int t) { return done[t].count(comp.eventuality->id) > 0; });
                if (ok) break;
            }
            (ok ? fresh : rest).push_back(it);
        }
        for (const auto& it : fresh) done[it.v].insert(it.g->id);
        changed = !fresh.empty();
        pending = std::move(rest);
    }
    if (!pending.empty()) return fail("H6", pending.front().v, "eventuality " + pending.front().g->text + " is not realized");
    return rep;
}

}  // namespace atlp
