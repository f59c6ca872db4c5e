#include "atlp/selftest.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "atlp/oracle.hpp"
#include "atlp/parser.hpp"
#include "atlp/synthesis.hpp"

namespace atlp {

namespace {

const char* kTheta = "<<1>>(p U q | G q) & <<2>>(F p & G ~q)";
const char* kVartheta = "<<1>>(p U q | G q) & [[2]](F p & G ~q)";

Universe two_agents() { return Universe{{1, 2}}; }

struct Runner {
    std::vector<SelfTestResult> out;

    void run(const std::string& name, const std::function<std::string()>& body) {
        SelfTestResult r{name, false, ""};
        try {
            r.detail = body();
            r.pass = r.detail.empty();
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        out.push_back(std::move(r));
    }
};

std::string expect(bool ok, const std::string& what) { return ok ? "" : what; }

template <class T>
std::string expect_eq(const T& got, const T& want) {
    if (got == want) return "";
    std::ostringstream os;
    os << "got " << got << ", want " << want;
    return os.str();
}

std::string decide_case(const char* text, bool sat, int states, int prestates, int final_states,
                        std::vector<int> removed) {
    auto p = make_problem(text);
    Decomposer d(*p.store);
    Tableau t(d, p.eta);
    t.build();
    t.eliminate();
    Stats s = stats(t);
    std::ostringstream err;
    if (t.open() != sat) err << "verdict " << (t.open() ? "SAT" : "UNSAT") << "; ";
    if (s.pretableau_states != states) err << "states " << s.pretableau_states << "; ";
    if (s.pretableau_prestates != prestates) err << "prestates " << s.pretableau_prestates << "; ";
    if (s.final_states != final_states) err << "final " << s.final_states << "; ";
    std::vector<int> gone;
    for (const auto& e : t.trace()) gone.push_back(e.state + 1);
    std::sort(gone.begin(), gone.end());
    std::sort(removed.begin(), removed.end());
    if (gone != removed) err << "removed set differs; ";
    return err.str();
}

}  // namespace

CGM recall_model() {
    CGM m;
    m.agents = 2;
    m.agent_names = {1, 2};
    m.states = {
        {"S0", {}, {2, 2}, {1, 2, 3, 3}, {}},
        {"S1", {"p"}, {1, 1}, {0}, {}},
        {"S2", {"p"}, {1, 1}, {3}, {}},
        {"S3", {"q"}, {1, 1}, {3}, {}},
    };
    m.initial = 0;
    return m;
}

std::vector<SelfTestResult> run_selftest() {
    Runner r;

    r.run("parse and print theta", [] {
        auto p = make_problem(kTheta);
        return expect_eq<std::string>(p.eta->text, "(<<1>>((p U q) | G q) & <<2>>(F p & G ~q))");
    });

    r.run("nnf of full-coalition unavoidability", [] {
        Store st(two_agents());
        return expect_eq<std::string>(parse_into(st, "[[1,2]]G p")->text, "<<>>G p");
    });

    r.run("nnf of the recall implication", [] {
        Store st(two_agents());
        F f = parse_into(st, "~(<<1>>F (p & <<1>>F q) -> <<1>>(F p & F q))");
        return expect_eq<std::string>(f->text, "(<<1>>F (<<1>>F q & p) & [[1]](G ~p | G ~q))");
    });

    r.run("boolean depth", [] {
        Store st(two_agents());
        std::string e;
        e += expect_eq(boolean_depth(parse_into(st, "<<1>>X <<1>>(p U ~q)")), 0);
        e += expect_eq(boolean_depth(parse_into(st, "<<1>>(G p | ((q & p) U ~q))")), 1);
        e += expect_eq(boolean_depth(parse_into(st, "<<1>>(F q & (G p & (q U ~q)))")), 2);
        return e;
    });

    r.run("dec of theta1", [] {
        Store st(two_agents());
        F f = parse_into(st, "<<1>>(p U q | G q)");
        return expect_eq<std::string>(dump(dec(st, f->a)),
                                      "now={p} next={(p U q)}\n"
                                      "now={q} next={}\n"
                                      "now={q} next={G q}\n"
                                      "now={p, q} next={((p U q) | G q)}\n");
    });

    r.run("dec of theta2", [] {
        Store st(two_agents());
        F f = parse_into(st, "<<2>>(F p & G ~q)");
        return expect_eq<std::string>(dump(dec(st, f->a)),
                                      "now={~q} next={(F p & G ~q)}\n"
                                      "now={p, ~q} next={G ~q}\n");
    });

    r.run("gamma components of vartheta2", [] {
        Store st(two_agents());
        std::string got;
        for (const auto& c : gamma_components(st, parse_into(st, "[[2]](F p & G ~q)"))) got += c.rendered->text + "\n";
        return expect_eq<std::string>(got,
                                      "([[2]]X [[2]](F p & G ~q) & ~q)\n"
                                      "([[2]]X [[2]]G ~q & (p & ~q))\n");
    });

    r.run("full expansions of theta", [] {
        auto p = make_problem(kTheta);
        Decomposer d(*p.store);
        return expect_eq<std::size_t>(full_expansions(d, {p.eta}).size(), 2);
    });

    r.run("non-minimal expansions kept", [] {
        Store st(two_agents());
        Decomposer d(st);
        auto fe = full_expansions(d, {parse_into(st, "<<1>>(p U q)"), parse_into(st, "p & <<1>>X <<1>>(p U q)")});
        F q = st.lit("q", true);
        std::string e = expect_eq<std::size_t>(fe.size(), 2);
        int with_q = 0;
        for (const auto& x : fe) with_q += label_contains(x.label, q);
        return e + expect_eq(with_q, 1);
    });

    r.run("next rule table", [] {
        Store st(two_agents());
        SuccessorList sl;
        sl.enf = {parse_into(st, "<<1>>X a"), parse_into(st, "<<1,2>>X b")};
        sl.unav = {parse_into(st, "[[2]]X c"), parse_into(st, "[[1]]X d")};
        const char* want[16] = {"a", "a", "a", "a,d", "true", "b", "true", "d",
                                "c", "c", "c", "d",   "true", "true", "d", "c"};
        const int want_n[16] = {0, 0, 2, 2, 0, 0, 2, 2, 1, 1, 3, 3, 1, 1, 3, 3};
        const int want_co[16] = {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1, 0};
        std::string e;
        for (int i = 0; i < 16; ++i) {
            auto sigma = decode_profile(i, 4, 2);
            std::string got;
            for (F f : next_prestate(st, sl, sigma)) got += (got.empty() ? "" : ",") + f->text;
            if (got != want[i] || static_cast<int>(n_of(sigma, 2)) != want_n[i] || co_of(sigma, 2, 2) != want_co[i])
                e += "row " + profile_text(sigma) + " gives " + got + "; ";
        }
        return e;
    });

    r.run("theta is unsatisfiable", [] { return decide_case(kTheta, false, 11, 7, 6, {1, 2, 5, 6, 10}); });
    r.run("vartheta is satisfiable", [] { return decide_case(kVartheta, true, 8, 5, 8, {}); });

    r.run("vartheta model", [] {
        auto p = make_problem(kVartheta);
        Decomposer d(*p.store);
        Tableau t(d, p.eta);
        t.build();
        t.eliminate();
        auto h = assemble(t);
        auto rep = validate_hintikka(h, d);
        CGM m = extract_cgm(h, *p.store);
        auto mr = check_model(*p.store, m, m.initial, p.eta);
        return expect_eq<std::size_t>(m.states.size(), 7) + expect(rep.ok, rep.message) + expect(mr.pass, "oracle fails");
    });

    r.run("recall implication is valid", [] {
        auto p = make_problem("~(<<1>>F (p & <<1>>F q) -> <<1>>(F p & F q))", 1);
        Decomposer d(*p.store);
        Tableau t(d, p.eta);
        t.build();
        t.eliminate();
        return expect(!t.open(), "negation reported SAT");
    });

    r.run("recall model", [] {
        Store st(two_agents());
        CGM m = recall_model();
        Oracle o(st, m);
        F ante = parse_into(st, "<<1>>F (p & <<1>>F q)");
        F cons = parse_into(st, "<<1>>(F p & F q)");
        return expect(o.eval_state(0, ante), "antecedent false at S0") + expect(o.eval_state(0, cons), "consequent false at S0");
    });

    r.run("closure blow-up", [] {
        Store st(Universe{{1}});
        F f = parse_into(st, "<<1>>(p1 U q1 & (p2 U q2 & (p3 U q3 & p4 U q4)))");
        return expect_eq<std::size_t>(gamma_components(st, f).size(), 16);
    });

    r.run("atomic prestate", [] {
        auto p = make_problem("p");
        Decomposer d(*p.store);
        Tableau t(d, p.eta);
        t.build();
        return expect_eq<std::size_t>(t.states().size(), 2) + expect_eq<std::size_t>(t.prestates().size(), 2);
    });

    return r.out;
}

}  // namespace atlp
