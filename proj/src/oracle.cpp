#include "atlp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace atlp {

Oracle::Oracle(const Store& st, const CGM& m) : st_(st), m_(m) {
    validate(m);
    if (m.agents != st.agents())
        throw std::invalid_argument("model has " + std::to_string(m.agents) + " agents, formula universe has " +
                                    std::to_string(st.agents()));
}

const std::vector<char>& Oracle::eval(F f) {
    auto it = memo_.find(f->id);
    if (it != memo_.end()) return it->second;
    std::size_t n = m_.states.size();
    std::vector<char> r(n, 0);
    switch (f->kind) {
        case Kind::True: r.assign(n, 1); break;
        case Kind::False: break;
        case Kind::Lit: {
            const auto& name = st_.prop_name(f->prop);
            for (std::size_t s = 0; s < n; ++s) {
                const auto& ps = m_.states[s].props;
                bool in = std::find(ps.begin(), ps.end(), name) != ps.end();
                r[s] = in == f->pos;
            }
            break;
        }
        case Kind::And: {
            const auto& x = eval(f->a);
            const auto& y = eval(f->b);
            for (std::size_t s = 0; s < n; ++s) r[s] = x[s] && y[s];
            break;
        }
        case Kind::Or: {
            const auto& x = eval(f->a);
            const auto& y = eval(f->b);
            for (std::size_t s = 0; s < n; ++s) r[s] = x[s] || y[s];
            break;
        }
        case Kind::Enf:
        case Kind::Unav:
            r = solve_strategic(f->coal, f->a, f->kind);
            if (logging_) {
                std::string set;
                for (std::size_t s = 0; s < n; ++s)
                    if (r[s]) set += (set.empty() ? "" : ",") + m_.states[s].id;
                log_.push_back(f->text + " holds at {" + set + "}");
            }
            break;
        default: throw std::invalid_argument("eval expects a state formula");
    }
    return memo_.emplace(f->id, std::move(r)).first->second;
}

std::vector<char> Oracle::solve_strategic(Coalition coal, F path, Kind mode) {
    const int n = static_cast<int>(m_.states.size());
    const int k = m_.agents;

    std::vector<F> atoms;
    std::unordered_map<std::size_t, int> aidx;
    std::function<void(F)> gather = [&](F p) {
        if (p->kind == Kind::PAnd || p->kind == Kind::POr) {
            gather(p->a);
            gather(p->b);
        } else if (!aidx.count(p->id)) {
            aidx.emplace(p->id, static_cast<int>(atoms.size()));
            atoms.push_back(p);
        }
    };
    gather(path);
    const int na = static_cast<int>(atoms.size());
    if (na > 12) throw ResourceError("too many temporal atoms for the oracle");
    std::vector<const std::vector<char>*> p1(na), p2(na, nullptr);
    for (int i = 0; i < na; ++i) {
        p1[i] = &eval(atoms[i]->a);
        if (atoms[i]->kind == Kind::Until) p2[i] = &eval(atoms[i]->b);
    }
    std::vector<int> pw(na + 1, 1);
    for (int i = 1; i <= na; ++i) pw[i] = pw[i - 1] * 3;
    auto get = [&](int code, int i) { return code / pw[i] % 3; };

    // 0 pending, 1 true, 2 false
    auto enter = [&](int code, int s, bool initial) {
        for (int i = 0; i < na; ++i) {
            if (get(code, i) != 0) continue;
            int v = 0;
            switch (atoms[i]->kind) {
                case Kind::St:
                    if (initial) v = (*p1[i])[s] ? 1 : 2;
                    break;
                case Kind::Next:
                    if (!initial) v = (*p1[i])[s] ? 1 : 2;
                    break;
                case Kind::Always:
                    if (!(*p1[i])[s]) v = 2;
                    break;
                case Kind::Until:
                    if ((*p2[i])[s]) {
                        v = 1;
                    } else if (!(*p1[i])[s]) {
                        v = 2;
                    }
                    break;
                default: break;
            }
            code += v * pw[i];
        }
        return code;
    };

    // how: 0 limit value, 1 pending as false, 2 pending as true
    std::function<bool(F, int, int)> skel = [&](F p, int code, int how) -> bool {
        if (p->kind == Kind::PAnd) return skel(p->a, code, how) && skel(p->b, code, how);
        if (p->kind == Kind::POr) return skel(p->a, code, how) || skel(p->b, code, how);
        int v = get(code, aidx.at(p->id));
        if (v != 0) return v == 1;
        if (how == 0) return p->kind == Kind::Always;
        return how == 2;
    };

    // Per state: profile index for (coalition choice, counter choice).
    struct Box {
        int na = 1, nr = 1;
        std::vector<int> prof;
    };
    std::vector<Box> boxes(n);
    for (int s = 0; s < n; ++s) {
        const auto& act = m_.states[s].actions;
        std::vector<int> ina, inr;
        for (int a = 0; a < k; ++a) (coal >> a & 1u ? ina : inr).push_back(a);
        Box& b = boxes[s];
        for (int a : ina) b.na *= act[a];
        for (int a : inr) b.nr *= act[a];
        b.prof.resize(b.na * b.nr);
        std::vector<int> sigma(k);
        for (int x = 0; x < b.na; ++x)
            for (int y = 0; y < b.nr; ++y) {
                int cx = x, cy = y;
                for (int i = static_cast<int>(ina.size()) - 1; i >= 0; --i) {
                    sigma[ina[i]] = cx % act[ina[i]];
                    cx /= act[ina[i]];
                }
                for (int i = static_cast<int>(inr.size()) - 1; i >= 0; --i) {
                    sigma[inr[i]] = cy % act[inr[i]];
                    cy /= act[inr[i]];
                }
                b.prof[x * b.nr + y] = m_.profile_index(s, sigma);
            }
    }

    std::unordered_map<int, std::vector<char>> memo;
    std::function<const std::vector<char>&(int)> value = [&](int code) -> const std::vector<char>& {
        auto it = memo.find(code);
        if (it != memo.end()) return it->second;
        std::vector<char> res(n, 0);
        if (skel(path, code, 1)) {
            res.assign(n, 1);
            return memo.emplace(code, std::move(res)).first->second;
        }
        if (!skel(path, code, 2)) return memo.emplace(code, std::move(res)).first->second;
        const bool good = skel(path, code, 0);
        // outcome per (state, profile): -1 lost, -2 won, else internal target
        std::vector<std::vector<int>> outc(n);
        for (int s = 0; s < n; ++s) {
            const auto& out = m_.states[s].out;
            outc[s].resize(out.size());
            for (std::size_t i = 0; i < out.size(); ++i) {
                int t = out[i];
                int c2 = enter(code, t, false);
                if (c2 == code) {
                    outc[s][i] = t;
                } else {
                    outc[s][i] = value(c2)[t] ? -2 : -1;
                }
            }
        }
        std::vector<char> x(n, good ? 1 : 0);
        auto ok = [&](int s, int i) {
            int o = outc[s][i];
            return o == -2 || (o >= 0 && x[o]);
        };
        auto step = [&](int s) {
            const Box& b = boxes[s];
            if (mode == Kind::Enf) {
                for (int a = 0; a < b.na; ++a) {
                    bool all = true;
                    for (int r = 0; r < b.nr && all; ++r) all = ok(s, b.prof[a * b.nr + r]);
                    if (all) return true;
                }
                return false;
            }
            for (int a = 0; a < b.na; ++a) {
                bool any = false;
                for (int r = 0; r < b.nr && !any; ++r) any = ok(s, b.prof[a * b.nr + r]);
                if (!any) return false;
            }
            return true;
        };
        for (bool changed = true; changed;) {
            changed = false;
            for (int s = 0; s < n; ++s) {
                bool v = step(s);
                if (good && x[s] && !v) {
                    x[s] = 0;
                    changed = true;
                } else if (!good && !x[s] && v) {
                    x[s] = 1;
                    changed = true;
                }
            }
        }
        return memo.emplace(code, std::move(x)).first->second;
    };

    std::vector<char> r(n);
    for (int s = 0; s < n; ++s) r[s] = value(enter(0, s, true))[s];
    return r;
}

bool eval_path(Oracle& o, F p, const Lasso& play, std::size_t i) {
    const std::size_t P = play.prefix.size(), L = play.loop.size();
    if (L == 0) throw std::invalid_argument("lasso loop must be non-empty");
    auto at = [&](std::size_t j) { return j < P ? play.prefix[j] : play.loop[(j - P) % L]; };
    auto norm = [&](std::size_t j) { return j < P ? j : P + (j - P) % L; };
    i = norm(i);
    switch (p->kind) {
        case Kind::St: return o.eval(p->a)[at(i)];
        case Kind::Next: return o.eval(p->a)[at(i + 1)];
        case Kind::Always: {
            const auto& v = o.eval(p->a);
            for (std::size_t j = i; j < i + P + L; ++j)
                if (!v[at(j)]) return false;
            return true;
        }
        case Kind::Until: {
            const auto& a = o.eval(p->a);
            const auto& b = o.eval(p->b);
            for (std::size_t j = i; j < i + P + L; ++j) {
                if (b[at(j)]) return true;
                if (!a[at(j)]) return false;
            }
            return false;
        }
        case Kind::PAnd: return eval_path(o, p->a, play, i) && eval_path(o, p->b, play, i);
        case Kind::POr: return eval_path(o, p->a, play, i) || eval_path(o, p->b, play, i);
        default: throw std::invalid_argument("eval_path expects a path formula");
    }
}

ModelReport check_model(const Store& st, const CGM& m, int s, F eta) {
    ModelReport rep;
    Oracle o(st, m);
    o.keep_log(true);
    rep.pass = o.eval_state(s, eta);
    for (const auto& line : o.log()) rep.text += line + "\n";
    rep.text += std::string(rep.pass ? "pass" : "fail") + ": " + eta->text + " at " + m.states[s].id + "\n";
    return rep;
}

}  // namespace atlp
