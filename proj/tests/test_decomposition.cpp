#include <doctest.h>

#include "atlp/decomposition.hpp"
#include "atlp/enumerate.hpp"
#include "atlp/parser.hpp"
#include "atlp/random_formula.hpp"

using namespace atlp;

namespace {

Universe two() { return Universe{{1, 2}}; }

F path_of(Store& st, const std::string& text) { return parse_into(st, "<<1>>(" + text + ")")->a; }

bool holds_all(Oracle& o, const std::vector<F>& fs, int s) {
    for (F f : fs)
        if (!o.eval_state(s, f)) return false;
    return true;
}

}  // namespace

TEST_CASE("dec base cases") {
    Store st(two());
    F p = st.lit("p", true), q = st.lit("q", true);
    auto d = dec(st, st.st(p));
    REQUIRE(d.size() == 1);
    CHECK(d[0].now == std::vector<F>{p});
    CHECK(next_is_top(d[0].next));

    d = dec(st, st.next(p));
    REQUIRE(d.size() == 1);
    CHECK(d[0].now.empty());
    CHECK(d[0].next == st.st(p));

    d = dec(st, st.always(p));
    REQUIRE(d.size() == 1);
    CHECK(d[0].next == st.always(p));

    CHECK(dump(dec(st, st.until(p, q))) == "now={p} next={(p U q)}\nnow={q} next={}\n");
}

TEST_CASE("dec goldens") {
    Store st(two());
    CHECK(dump(dec(st, path_of(st, "p U q | G q"))) ==
          "now={p} next={(p U q)}\n"
          "now={q} next={}\n"
          "now={q} next={G q}\n"
          "now={p, q} next={((p U q) | G q)}\n");
    CHECK(dump(dec(st, path_of(st, "F p & G ~q"))) ==
          "now={~q} next={(F p & G ~q)}\n"
          "now={p, ~q} next={G ~q}\n");
}

TEST_CASE("oplus drops pairs with a true next") {
    Store st(two());
    for (const auto& pair : dec(st, path_of(st, "p | G q"))) {
        if (pair.now.size() == 2) FAIL("combined pair from a top next: " << dump(pair));
    }
    CHECK(dec(st, path_of(st, "p | G q")).size() == 2);
}

TEST_CASE("associativity") {
    Store st(two());
    auto same = [&](const char* a, const char* b) {
        auto x = dec(st, path_of(st, a)), y = dec(st, path_of(st, b));
        auto key = [](const DecSet& s) {
            std::vector<std::string> v;
            for (const auto& p : s) v.push_back(dump(p));
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK_MESSAGE(key(x) == key(y), a << " vs " << b);
    };
    same("(p U q & G r) & X s", "p U q & (G r & X s)");
    same("(p U q | G r) | X s", "p U q | (G r | X s)");
    same("(F p & G q) & F r", "F p & (G q & F r)");
}

TEST_CASE("gamma components") {
    Store st(two());
    std::vector<std::string> got;
    for (const auto& c : gamma_components(st, parse_into(st, "<<1>>(p U q | G q)"))) got.push_back(c.rendered->text);
    CHECK(got == std::vector<std::string>{"(<<1>>X <<1>>(p U q) & p)", "q", "(<<1>>X <<1>>G q & q)",
                                          "(<<1>>X <<1>>((p U q) | G q) & (p & q))"});
    got.clear();
    for (const auto& c : gamma_components(st, parse_into(st, "[[2]](F p & G ~q)"))) {
        got.push_back(c.rendered->text);
        CHECK(classify(c.rendered).type == FormulaClass::Alpha);
        CHECK(classify(c.successor).c1 == c.eventuality);
    }
    CHECK(got == std::vector<std::string>{"([[2]]X [[2]](F p & G ~q) & ~q)", "([[2]]X [[2]]G ~q & (p & ~q))"});
    auto box = gamma_components(st, parse_into(st, "<<1>>G q"));
    REQUIRE(box.size() == 1);
    CHECK(box[0].rendered->text == "(<<1>>X <<1>>G q & q)");
}

TEST_CASE("full expansions") {
    Store st(two());
    Decomposer d(st);
    F theta = parse_into(st, "<<1>>(p U q | G q) & <<2>>(F p & G ~q)");
    auto fe = full_expansions(d, {theta});
    REQUIRE(fe.size() == 2);
    F p = st.lit("p", true), nq = st.lit("q", false);
    CHECK(label_contains(fe[0].label, p));
    CHECK(label_contains(fe[0].label, nq));
    CHECK(label_contains(fe[0].label, parse_into(st, "<<1>>X <<1>>(p U q)")));
    CHECK(label_contains(fe[0].label, parse_into(st, "<<2>>X <<2>>(F p & G ~q)")));
    for (const auto& e : fe) {
        CHECK_FALSE(patently_inconsistent(e.label));
        for (F f : e.label)
            if (classify(f).type == FormulaClass::Gamma) {
                REQUIRE(e.linked.count(f->id));
                CHECK(label_contains(e.label, d.components(f)[e.linked.at(f->id)].rendered));
            }
    }

    SUBCASE("real") {
        CHECK(real(parse_into(st, "<<2>>(F p & G ~q)")->a, fe[0].label));
        CHECK_FALSE(real(parse_into(st, "<<1>>(p U q | G q)")->a, fe[0].label));
        CHECK_FALSE(real(st.next(p), fe[0].label));
    }

    auto two_fe = full_expansions(d, {parse_into(st, "<<1>>(p U q)"), parse_into(st, "p & <<1>>X <<1>>(p U q)")});
    CHECK(two_fe.size() == 2);
    CHECK(full_expansions(d, {p, st.lit("p", false)}).empty());
}

TEST_CASE("dec semantics on lassos") {
    Store st(Universe{{1}});
    CGM lm = label_model({"p", "q"});
    Oracle o(st, lm);
    int checked = 0;
    for (F phi : flat_corpus(st, 5, 10, 3)) {
        auto d = dec(st, phi);
        for_each_lasso(static_cast<int>(lm.states.size()), 2, 2, [&](const Lasso& l) {
            bool lhs = eval_path(o, phi, l);
            bool rhs = false;
            int first = l.prefix.empty() ? l.loop[0] : l.prefix[0];
            for (const auto& pair : d)
                rhs = rhs || (holds_all(o, pair.now, first) && (next_is_top(pair.next) || eval_path(o, pair.next, l, 1)));
            if (lhs != rhs) FAIL(phi->text);
            ++checked;
        });
    }
    CHECK(checked > 0);
}

TEST_CASE("full expansions preserve truth on small models") {
    int checked = 0;
    for (const auto& text : random_corpus(21, 25, RandomSpec{})) {
        auto p = make_problem(text);
        Decomposer d(*p.store);
        auto fe = full_expansions(d, {p.eta});
        CgmFamily fam;
        fam.agents = p.store->agents();
        fam.states = 2;
        fam.max_actions = 2;
        for (int i = 0; i < p.store->num_props(); ++i) fam.props.push_back(p.store->prop_name(i));
        std::size_t n = 0;
        for_each_cgm(fam, [&](const CGM& m) {
            if (++n % 7) return true;
            Oracle o(*p.store, m);
            for (int s = 0; s < static_cast<int>(m.states.size()); ++s) {
                bool any = false;
                for (const auto& e : fe) any = any || holds_all(o, e.label, s);
                if (o.eval_state(s, p.eta) != any) FAIL(text);
                ++checked;
            }
            return true;
        });
    }
    CHECK(checked > 0);
}
