#include "atlp/tableau.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace atlp {

int profile_count(int r, int k) {
    long long n = 1;
    for (int i = 0; i < k; ++i) {
        n *= r;
        if (n > (1 << 24)) throw ResourceError("too many action profiles at a state");
    }
    return static_cast<int>(n);
}

std::vector<int> decode_profile(int index, int r, int k) {
    std::vector<int> s(k);
    for (int i = k - 1; i >= 0; --i) {
        s[i] = index % r;
        index /= r;
    }
    return s;
}

int encode_profile(const std::vector<int>& sigma, int r) {
    int idx = 0;
    for (int v : sigma) idx = idx * r + v;
    return idx;
}

std::string profile_text(const std::vector<int>& sigma) {
    std::string s;
    for (std::size_t i = 0; i < sigma.size(); ++i) s += (i ? "," : "") + std::to_string(sigma[i]);
    return s;
}

Coalition n_of(const std::vector<int>& sigma, int m) {
    Coalition n = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (sigma[i] >= m) n |= Coalition(1) << i;
    return n;
}

int co_of(const std::vector<int>& sigma, int m, int l) {
    if (l <= 0) throw std::invalid_argument("co_of requires l >= 1");
    int sum = 0;
    for (int v : sigma)
        if (v >= m) sum += v - m;
    return sum % l;
}

SuccessorList successor_list(const std::vector<F>& label) {
    SuccessorList sl;
    for (F f : label) {
        if (!is_quant(f) || f->a->kind != Kind::Next) continue;
        (f->kind == Kind::Enf ? sl.enf : sl.unav).push_back(f);
    }
    std::sort(sl.enf.begin(), sl.enf.end(), CanonLess());
    std::sort(sl.unav.begin(), sl.unav.end(), CanonLess());
    return sl;
}

namespace {

bool enf_applies(F f, int p, const std::vector<int>& sigma) {
    for (std::size_t a = 0; a < sigma.size(); ++a)
        if ((f->coal >> a & 1u) && sigma[a] != p) return false;
    return true;
}

bool unav_applies(F f, int q, const std::vector<int>& sigma, int m, int l, Coalition all) {
    if (co_of(sigma, m, l) != q) return false;
    Coalition need = all & ~f->coal;
    return (need & ~n_of(sigma, m)) == 0;
}

}  // namespace

std::vector<F> next_prestate(Store& st, const SuccessorList& sl, const std::vector<int>& sigma) {
    std::vector<F> out;
    int m = sl.m(), l = sl.l();
    for (int p = 0; p < m; ++p)
        if (enf_applies(sl.enf[p], p, sigma)) out.push_back(sl.enf[p]->a->a);
    if (l > 0) {
        int q = co_of(sigma, m, l);
        if (unav_applies(sl.unav[q], q, sigma, m, l, st.all())) out.push_back(sl.unav[q]->a->a);
    }
    if (out.empty()) out.push_back(st.top());
    std::sort(out.begin(), out.end(), CanonLess());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool in_move_set(const SuccessorList& sl, F succ, const std::vector<int>& sigma, Coalition all) {
    int m = sl.m(), l = sl.l();
    for (int p = 0; p < m; ++p)
        if (sl.enf[p] == succ) return enf_applies(succ, p, sigma);
    for (int q = 0; q < l; ++q)
        if (sl.unav[q] == succ) return unav_applies(succ, q, sigma, m, l, all);
    throw std::invalid_argument("not a successor formula of the state: " + succ->text);
}

namespace {

std::vector<std::size_t> key_of(const std::vector<F>& label) {
    std::vector<std::size_t> k;
    k.reserve(label.size());
    for (F f : label) k.push_back(f->id);
    return k;
}

}  // namespace

Tableau::Tableau(Decomposer& d, F eta, std::size_t max_closure)
    : d_(d), eta_(eta), k_(d.store().agents()), cap_(max_closure) {}

int Tableau::add_prestate(std::vector<F> label, std::vector<int>& fresh) {
    auto key = key_of(label);
    auto it = pre_index_.find(key);
    if (it != pre_index_.end()) return it->second;
    int id = static_cast<int>(pre_.size());
    pre_.push_back({id, std::move(label), {}});
    pre_index_.emplace(std::move(key), id);
    fresh.push_back(id);
    return id;
}

void Tableau::expand_prestate(int g, std::vector<std::pair<bool, int>>& work) {
    Store& st = d_.store();
    F idle = st.enf(st.all(), st.next(st.top()));
    auto exps = full_expansions(d_, pre_[g].label);
    for (auto& e : exps) {
        if (successor_list(e.label).enf.empty() && successor_list(e.label).unav.empty()) {
            e.label.push_back(idle);
            std::sort(e.label.begin(), e.label.end(), CanonLess());
        }
        auto key = key_of(e.label);
        auto it = state_index_.find(key);
        int sid;
        if (it == state_index_.end()) {
            sid = static_cast<int>(states_.size());
            TabState s;
            s.id = sid;
            s.label = std::move(e.label);
            s.linked = std::move(e.linked);
            states_.push_back(std::move(s));
            state_index_.emplace(std::move(key), sid);
            work.push_back({true, sid});
        } else {
            sid = it->second;
            auto& old = states_[sid].linked;
            for (auto& [f, i] : e.linked) old[f] = std::min(old[f], i);
        }
        auto& v = pre_[g].states;
        if (std::find(v.begin(), v.end(), sid) == v.end()) v.push_back(sid);
    }
}

void Tableau::expand_state(int s, std::vector<std::pair<bool, int>>& work) {
    Store& st = d_.store();
    TabState& ts = states_[s];
    ts.succ = successor_list(ts.label);
    ts.r = ts.succ.m() + ts.succ.l();
    int n = profile_count(ts.r, k_);
    std::vector<int> next(n);
    for (int i = 0; i < n; ++i) {
        auto sigma = decode_profile(i, ts.r, k_);
        std::vector<int> fresh;
        next[i] = add_prestate(next_prestate(st, states_[s].succ, sigma), fresh);
        for (int g : fresh) work.push_back({false, g});
    }
    states_[s].next = std::move(next);
}

void Tableau::build() {
    closure_size_ = closure(d_, eta_, cap_).size();
    std::vector<std::pair<bool, int>> work;  // (is_state, id)
    std::vector<int> fresh;
    add_prestate({eta_}, fresh);
    work.push_back({false, 0});
    for (std::size_t i = 0; i < work.size(); ++i) {
        auto [is_state, id] = work[i];
        if (is_state) {
            expand_state(id, work);
        } else {
            expand_prestate(id, work);
        }
    }
    alive_.assign(states_.size(), 1);
    rank_.assign(states_.size(), {});
    realize();
}

int Tableau::alive_count() const { return static_cast<int>(std::count(alive_.begin(), alive_.end(), 1)); }

std::vector<F> Tableau::eventualities(int s) const {
    std::vector<F> out;
    for (F f : states_[s].label)
        if (is_quant(f) && f->a->kind != Kind::Next) out.push_back(f);
    return out;
}

std::vector<int> Tableau::move_set(int s, F succ) const {
    const TabState& ts = states_[s];
    std::vector<int> out;
    int n = static_cast<int>(ts.next.size());
    for (int i = 0; i < n; ++i)
        if (in_move_set(ts.succ, succ, decode_profile(i, ts.r, k_), d_.store().all())) out.push_back(i);
    return out;
}

const GammaComponent& Tableau::linked(int s, F g) const {
    return d_.components(g)[states_[s].linked.at(g->id)];
}

int Tableau::rank(int s, F g) const {
    auto it = rank_[s].find(g->id);
    return it == rank_[s].end() ? -1 : it->second;
}

void Tableau::realize() {
    struct Pending {
        int s;
        F g;
        F next_ev;
        std::vector<int> moves;
    };
    std::vector<Pending> pending;
    for (int s = 0; s < static_cast<int>(states_.size()); ++s) {
        rank_[s].clear();
        if (!alive_[s]) continue;
        for (F g : eventualities(s)) {
            const auto& comp = d_.components(g)[states_[s].linked.at(g->id)];
            if (real(g->a, states_[s].label) || !comp.successor) {
                rank_[s][g->id] = 0;
            } else {
                pending.push_back({s, g, comp.eventuality, move_set(s, comp.successor)});
            }
        }
    }
    for (int n = 1; !pending.empty(); ++n) {
        std::vector<std::pair<int, std::size_t>> done;
        std::vector<Pending> rest;
        for (auto& p : pending) {
            bool ok = true;
            for (int sigma : p.moves) {
                bool found = false;
                for (int t : pre_[states_[p.s].next[sigma]].states) {
                    if (!alive_[t]) continue;
                    auto it = rank_[t].find(p.next_ev->id);
                    if (it != rank_[t].end() && it->second < n) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                done.push_back({p.s, p.g->id});
            } else {
                rest.push_back(std::move(p));
            }
        }
        if (done.empty()) break;
        for (auto& [s, g] : done) rank_[s][g] = n;
        pending = std::move(rest);
    }
}

void Tableau::eliminate() {
    int n = static_cast<int>(states_.size());
    while (true) {
        while (true) {
            realize();
            std::vector<int> gone;
            for (int s = 0; s < n; ++s) {
                if (!alive_[s]) continue;
                for (F g : eventualities(s)) {
                    if (rank(s, g) < 0) {
                        trace_.push_back({s, "ER2", "unrealized " + g->text});
                        gone.push_back(s);
                        break;
                    }
                }
            }
            if (gone.empty()) break;
            for (int s : gone) alive_[s] = 0;
        }
        bool removed = false;
        for (int s = 0; s < n; ++s) {
            if (!alive_[s]) continue;
            const TabState& ts = states_[s];
            for (std::size_t i = 0; i < ts.next.size(); ++i) {
                const auto& tg = pre_[ts.next[i]].states;
                bool any = std::any_of(tg.begin(), tg.end(), [&](int t) { return alive_[t] != 0; });
                if (!any) {
                    trace_.push_back({s, "ER1", "no successor for " +
                                                    profile_text(decode_profile(static_cast<int>(i), ts.r, k_))});
                    alive_[s] = 0;
                    removed = true;
                    break;
                }
            }
        }
        if (!removed) break;
    }
    realize();
}

int Tableau::witness() const {
    for (int s = 0; s < static_cast<int>(states_.size()); ++s)
        if (alive_[s] && label_contains(states_[s].label, eta_)) return s;
    return -1;
}

std::vector<Tableau::Cell> Tableau::cells(int s) const {
    std::vector<Cell> out;
    std::map<int, std::size_t> at;
    const TabState& ts = states_[s];
    for (int i = 0; i < static_cast<int>(ts.next.size()); ++i) {
        int g = ts.next[i];
        auto it = at.find(g);
        if (it == at.end()) {
            Cell c;
            c.prestate = g;
            for (int t : pre_[g].states)
                if (alive_[t]) c.targets.push_back(t);
            at.emplace(g, out.size());
            out.push_back(std::move(c));
            it = at.find(g);
        }
        out[it->second].profiles.push_back(i);
    }
    return out;
}

int Tableau::cell_of(int s, int profile) const {
    const TabState& ts = states_[s];
    int g = ts.next[profile];
    std::vector<int> seen;
    for (int i = 0; i <= profile; ++i)
        if (std::find(seen.begin(), seen.end(), ts.next[i]) == seen.end()) seen.push_back(ts.next[i]);
    return static_cast<int>(std::find(seen.begin(), seen.end(), g) - seen.begin());
}

namespace {

std::string label_text(const std::vector<F>& label) {
    std::string s = "{";
    for (std::size_t i = 0; i < label.size(); ++i) s += (i ? ", " : "") + label[i]->text;
    return s + "}";
}

std::string esc(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '"' || c == '\\') o += '\\';
        o += c;
    }
    return o;
}

}  // namespace

std::string Tableau::dot(Phase ph) const {
    std::ostringstream o;
    const char* names[] = {"pretableau", "initial", "final"};
    o << "digraph " << names[static_cast<int>(ph)] << " {\n  node [shape=box];\n";
    auto show = [&](int s) { return ph != Phase::Final || alive_[s]; };
    if (ph == Phase::Pretableau) {
        for (const auto& g : pre_)
            o << "  " << prestate_name(g.id) << " [style=dashed, label=\"" << prestate_name(g.id) << " "
              << esc(label_text(g.label)) << "\"];\n";
    }
    for (const auto& s : states_)
        if (show(s.id))
            o << "  " << state_name(s.id) << " [label=\"" << state_name(s.id) << " " << esc(label_text(s.label))
              << "\"];\n";
    if (ph == Phase::Pretableau) {
        for (const auto& g : pre_)
            for (int t : g.states)
                o << "  " << prestate_name(g.id) << " -> " << state_name(t) << " [color=\"black:invis:black\"];\n";
    }
    for (const auto& s : states_) {
        if (!show(s.id)) continue;
        std::map<int, std::vector<std::string>> by_target;
        for (int i = 0; i < static_cast<int>(s.next.size()); ++i) {
            std::string sig = profile_text(decode_profile(i, s.r, k_));
            if (ph == Phase::Pretableau) {
                by_target[s.next[i]].push_back(sig);
            } else {
                for (int t : pre_[s.next[i]].states)
                    if (show(t)) by_target[t].push_back(sig);
            }
        }
        for (auto& [t, sigs] : by_target) {
            std::string lab;
            for (std::size_t i = 0; i < sigs.size(); ++i) lab += (i ? "\\n" : "") + sigs[i];
            o << "  " << state_name(s.id) << " -> " << (ph == Phase::Pretableau ? prestate_name(t) : state_name(t))
              << " [label=\"" << lab << "\"];\n";
        }
    }
    o << "}\n";
    return o.str();
}

Stats stats(const Tableau& t) {
    Stats s;
    s.pretableau_states = static_cast<int>(t.states().size());
    s.pretableau_prestates = static_cast<int>(t.prestates().size());
    s.initial_states = s.pretableau_states;
    s.final_states = t.alive_count();
    return s;
}

}  // namespace atlp
