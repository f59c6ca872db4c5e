#include "atlp/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace atlp {

ParseError::ParseError(const std::string& msg, int line, int col)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}

namespace {

enum class Tok { End, Ident, Nat, True, False, Not, And, Or, Imp, LParen, RParen, LEnf, REnf, LUnav, RUnav, Comma, X, G, Fut, U, R };

struct Token {
    Tok t;
    std::string s;
    int line, col;
};

std::vector<Token> lex(const std::string& in) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto adv = [&](std::size_t n) {
        for (std::size_t j = 0; j < n; ++j) {
            if (in[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < in.size()) {
        char c = in[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            adv(1);
            continue;
        }
        int l = line, cl = col;
        auto two = [&](const char* s) { return in.compare(i, 2, s) == 0; };
        if (two("<<")) { out.push_back({Tok::LEnf, "<<", l, cl}); adv(2); continue; }
        if (two(">>")) { out.push_back({Tok::REnf, ">>", l, cl}); adv(2); continue; }
        if (two("[[")) { out.push_back({Tok::LUnav, "[[", l, cl}); adv(2); continue; }
        if (two("]]")) { out.push_back({Tok::RUnav, "]]", l, cl}); adv(2); continue; }
        if (two("->")) { out.push_back({Tok::Imp, "->", l, cl}); adv(2); continue; }
        switch (c) {
            case '~':
            case '!': out.push_back({Tok::Not, "~", l, cl}); adv(1); continue;
            case '&': out.push_back({Tok::And, "&", l, cl}); adv(1); continue;
            case '|': out.push_back({Tok::Or, "|", l, cl}); adv(1); continue;
            case '(': out.push_back({Tok::LParen, "(", l, cl}); adv(1); continue;
            case ')': out.push_back({Tok::RParen, ")", l, cl}); adv(1); continue;
            case ',': out.push_back({Tok::Comma, ",", l, cl}); adv(1); continue;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < in.size() && std::isdigit(static_cast<unsigned char>(in[j]))) ++j;
            out.push_back({Tok::Nat, in.substr(i, j - i), l, cl});
            adv(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < in.size() && (std::isalnum(static_cast<unsigned char>(in[j])) || in[j] == '_')) ++j;
            std::string w = in.substr(i, j - i);
            Tok t = Tok::Ident;
            if (w == "true") t = Tok::True;
            else if (w == "false") t = Tok::False;
            else if (w == "X") t = Tok::X;
            else if (w == "G") t = Tok::G;
            else if (w == "F") t = Tok::Fut;
            else if (w == "U") t = Tok::U;
            else if (w == "R") t = Tok::R;
            out.push_back({t, w, l, cl});
            adv(j - i);
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    SurfacePtr parse_all() {
        if (peek().t == Tok::End) throw ParseError("empty input", peek().line, peek().col);
        auto f = imp();
        if (peek().t != Tok::End) throw ParseError("unexpected '" + peek().s + "'", peek().line, peek().col);
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }
    void expect(Tok t, const char* what) {
        if (peek().t != t) throw ParseError(std::string("expected ") + what, peek().line, peek().col);
        ++pos_;
    }

    static SurfacePtr node(Surface::Op op, const Token& at, SurfacePtr a = nullptr, SurfacePtr b = nullptr) {
        auto n = std::make_shared<Surface>();
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        n->line = at.line;
        n->col = at.col;
        return n;
    }

    SurfacePtr imp() {
        auto l = disj();
        if (peek().t == Tok::Imp) {
            Token t = take();
            return node(Surface::Imp, t, l, imp());
        }
        return l;
    }

    SurfacePtr disj() {
        auto l = conj();
        while (peek().t == Tok::Or) {
            Token t = take();
            l = node(Surface::Or, t, l, conj());
        }
        return l;
    }

    SurfacePtr conj() {
        auto l = temporal();
        while (peek().t == Tok::And) {
            Token t = take();
            l = node(Surface::And, t, l, temporal());
        }
        return l;
    }

    SurfacePtr temporal() {
        auto l = unary();
        if (peek().t == Tok::U || peek().t == Tok::R) {
            Token t = take();
            l = node(t.t == Tok::U ? Surface::U : Surface::R, t, l, unary());
            if (peek().t == Tok::U || peek().t == Tok::R)
                throw ParseError("chained temporal operators need parentheses", peek().line, peek().col);
        }
        return l;
    }

    std::vector<int> agents(Tok close, const char* what) {
        std::vector<int> ags;
        if (peek().t == close) {
            ++pos_;
            return ags;
        }
        while (true) {
            if (peek().t != Tok::Nat) throw ParseError("expected agent number", peek().line, peek().col);
            ags.push_back(std::stoi(take().s));
            if (peek().t == Tok::Comma) {
                ++pos_;
                continue;
            }
            expect(close, what);
            return ags;
        }
    }

    SurfacePtr unary() {
        Token t = peek();
        switch (t.t) {
            case Tok::Not: ++pos_; return node(Surface::Not, t, unary());
            case Tok::X: ++pos_; return node(Surface::X, t, unary());
            case Tok::G: ++pos_; return node(Surface::G, t, unary());
            case Tok::Fut: ++pos_; return node(Surface::Fut, t, unary());
            case Tok::LEnf:
            case Tok::LUnav: {
                ++pos_;
                bool enf = t.t == Tok::LEnf;
                auto ags = agents(enf ? Tok::REnf : Tok::RUnav, enf ? "'>>'" : "']]'");
                auto n = node(enf ? Surface::Enf : Surface::Unav, t, unary());
                n->agents = std::move(ags);
                return n;
            }
            case Tok::LParen: {
                ++pos_;
                auto f = imp();
                expect(Tok::RParen, "')'");
                return f;
            }
            case Tok::True: ++pos_; return node(Surface::True, t);
            case Tok::False: ++pos_; return node(Surface::False, t);
            case Tok::Ident: {
                ++pos_;
                auto n = node(Surface::Atom, t);
                n->name = t.s;
                return n;
            }
            case Tok::End: throw ParseError("unexpected end of input", t.line, t.col);
            default: throw ParseError("unexpected '" + t.s + "'", t.line, t.col);
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// true = state formula, false = path formula. Throws on ATL+ violations.
bool check(const Surface& s) {
    auto err = [&](const std::string& m) { return ParseError(m, s.line, s.col); };
    switch (s.op) {
        case Surface::True:
        case Surface::False:
        case Surface::Atom: return true;
        case Surface::Not:
            if (!check(*s.a)) throw err("negation of a path formula is not allowed");
            return true;
        case Surface::Imp:
            if (!check(*s.a) || !check(*s.b)) throw err("implication between path formulas is not allowed");
            return true;
        case Surface::And:
        case Surface::Or: {
            bool x = check(*s.a);
            bool y = check(*s.b);
            return x && y;
        }
        case Surface::Enf:
        case Surface::Unav:
            check(*s.a);
            return true;
        case Surface::X:
        case Surface::G:
        case Surface::Fut:
            if (!check(*s.a)) throw err("temporal operator applied to a path formula (not ATL+)");
            return false;
        case Surface::U:
        case Surface::R:
            if (!check(*s.a) || !check(*s.b)) throw err("temporal operator applied to a path formula (not ATL+)");
            return false;
    }
    return true;
}

void collect_agents(const Surface& s, std::set<int>& out) {
    for (int a : s.agents) out.insert(a);
    if (s.a) collect_agents(*s.a, out);
    if (s.b) collect_agents(*s.b, out);
}

bool is_state(const Surface& s) {
    switch (s.op) {
        case Surface::X:
        case Surface::G:
        case Surface::Fut:
        case Surface::U:
        case Surface::R: return false;
        case Surface::And:
        case Surface::Or: return is_state(*s.a) && is_state(*s.b);
        default: return true;
    }
}

class Nnf {
public:
    explicit Nnf(Store& st) : st_(st) {}

    F state(const Surface& s, bool neg) {
        switch (s.op) {
            case Surface::True: return neg ? st_.bot() : st_.top();
            case Surface::False: return neg ? st_.top() : st_.bot();
            case Surface::Atom: return st_.lit(s.name, !neg);
            case Surface::Not: return state(*s.a, !neg);
            case Surface::And:
                return neg ? st_.mk_or(state(*s.a, true), state(*s.b, true))
                           : st_.mk_and(state(*s.a, false), state(*s.b, false));
            case Surface::Or:
                return neg ? st_.mk_and(state(*s.a, true), state(*s.b, true))
                           : st_.mk_or(state(*s.a, false), state(*s.b, false));
            case Surface::Imp:
                return neg ? st_.mk_and(state(*s.a, false), state(*s.b, true))
                           : st_.mk_or(state(*s.a, true), state(*s.b, false));
            case Surface::Enf:
            case Surface::Unav: {
                Coalition c = coalition(s);
                bool enf = (s.op == Surface::Enf) != neg;
                F p = path(*s.a, neg);
                return enf ? st_.enf(c, p) : st_.unav(c, p);
            }
            default: break;
        }
        throw ParseError("path formula where a state formula is required", s.line, s.col);
    }

    F path(const Surface& s, bool neg) {
        if (is_state(s)) return st_.st(state(s, neg));
        switch (s.op) {
            case Surface::X: return st_.next(state(*s.a, neg));
            case Surface::G:
                return neg ? st_.until(st_.top(), state(*s.a, true)) : st_.always(state(*s.a, false));
            case Surface::Fut:
                return neg ? st_.always(state(*s.a, true)) : st_.until(st_.top(), state(*s.a, false));
            case Surface::U:
                if (!neg) return st_.until(state(*s.a, false), state(*s.b, false));
                // not (a U b) == (~a) R (~b)
                return release(state(*s.a, true), state(*s.b, true));
            case Surface::R:
                if (!neg) return release(state(*s.a, false), state(*s.b, false));
                return st_.until(state(*s.a, true), state(*s.b, true));
            case Surface::And:
                return neg ? st_.por(path(*s.a, true), path(*s.b, true))
                           : st_.pand(path(*s.a, false), path(*s.b, false));
            case Surface::Or:
                return neg ? st_.pand(path(*s.a, true), path(*s.b, true))
                           : st_.por(path(*s.a, false), path(*s.b, false));
            default: break;
        }
        throw ParseError("malformed path formula", s.line, s.col);
    }

private:
    // psi R phi  :=  G phi | phi U (phi & psi)
    F release(F psi, F phi) { return st_.por(st_.always(phi), st_.until(phi, st_.mk_and(phi, psi))); }

    Coalition coalition(const Surface& s) {
        const auto& names = st_.universe().names;
        Coalition c = 0;
        for (int a : s.agents) {
            auto it = std::find(names.begin(), names.end(), a);
            if (it == names.end()) throw ParseError("agent " + std::to_string(a) + " is not in the universe", s.line, s.col);
            c |= Coalition(1) << (it - names.begin());
        }
        return c;
    }

    Store& st_;
};

}  // namespace

SurfacePtr parse(const std::string& text) {
    Parser p(lex(text));
    auto f = p.parse_all();
    if (!check(*f)) throw ParseError("top-level formula must be a state formula", f->line, f->col);
    return f;
}

std::vector<int> mentioned_agents(const Surface& s) {
    std::set<int> ags;
    collect_agents(s, ags);
    return {ags.begin(), ags.end()};
}

Universe infer_universe(const Surface& s, int extra) {
    Universe u;
    u.names = mentioned_agents(s);
    if (u.names.empty()) u.names.push_back(1);
    int top = u.names.back();
    for (int i = 1; i <= extra; ++i) u.names.push_back(top + i);
    return u;
}

F to_nnf(Store& st, const Surface& s) { return Nnf(st).state(s, false); }

Problem make_problem(const std::string& text, int extra_agents) {
    auto s = parse(text);
    Problem p;
    Universe u = infer_universe(*s, extra_agents);
    int base = u.k() - extra_agents;
    p.store = std::make_unique<Store>(u);
    F eta = to_nnf(*p.store, *s);
    for (int i = base; i < u.k(); ++i)
        eta = p.store->mk_and(eta, p.store->enf(Coalition(1) << i, p.store->next(p.store->top())));
    p.eta = eta;
    return p;
}

F parse_into(Store& st, const std::string& text) {
    auto s = parse(text);
    return to_nnf(st, *s);
}

}  // namespace atlp
