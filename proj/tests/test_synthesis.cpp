#include <doctest.h>

#include "atlp/oracle.hpp"
#include "atlp/parser.hpp"
#include "atlp/random_formula.hpp"
#include "atlp/synthesis.hpp"

using namespace atlp;

namespace {

const char* kVartheta = "<<1>>(p U q | G q) & [[2]](F p & G ~q)";

struct Solved {
    Problem p;
    std::unique_ptr<Decomposer> d;
    std::unique_ptr<Tableau> t;
    explicit Solved(const std::string& text) : p(make_problem(text)) {
        d = std::make_unique<Decomposer>(*p.store);
        t = std::make_unique<Tableau>(*d, p.eta);
        t->build();
        t->eliminate();
    }
    F f(const char* text) { return parse_into(*p.store, text); }
};

// (state number, edge profiles) per child of the root.
std::vector<std::pair<int, std::vector<int>>> children(const TabTree& tr, int v = 0) {
    std::vector<std::pair<int, std::vector<int>>> out;
    for (int k : tr.nodes[v].kids) out.push_back({tr.nodes[k].state + 1, tr.nodes[k].profiles});
    return out;
}

using Kids = std::vector<std::pair<int, std::vector<int>>>;

}  // namespace

TEST_CASE("simple trees") {
    Solved s(kVartheta);
    CHECK(children(simple_tree(*s.t, 0)) == Kids{{3, {0, 1}}, {5, {2, 3}}});
    CHECK(children(simple_tree(*s.t, 7)) == Kids{{8, {0}}});
}

TEST_CASE("witness trees") {
    Solved s(kVartheta);
    F xi1 = s.f("<<1>>(p U q | G q)");
    F xi2 = s.f("[[2]](F p & G ~q)");
    auto w1 = witness_tree(*s.t, xi1, 0);
    CHECK(children(w1) == Kids{{4, {0, 1}}});
    CHECK(w1.nodes[1].kids.empty());
    CHECK(witness_tree(*s.t, s.f("<<1>>(p U q)"), 3).nodes.size() == 1);
    CHECK(witness_tree(*s.t, s.f("[[2]]G ~q"), 6).nodes.size() == 1);
    CHECK_THROWS_AS(witness_tree(*s.t, xi2, 3), std::logic_error);
}

TEST_CASE("realizing trees") {
    Solved s(kVartheta);
    CHECK(children(realizing_tree(*s.t, s.f("<<1>>(p U q | G q)"), 0)) == Kids{{4, {0, 1}}, {5, {2, 3}}});
    // p and ~q are both in D1, so xi2 has rank 0 there
    CHECK(s.t->rank(0, s.f("[[2]](F p & G ~q)")) == 0);
    CHECK(children(realizing_tree(*s.t, s.f("[[2]](F p & G ~q)"), 0)) == Kids{{3, {0, 1}}, {5, {2, 3}}});
    auto r0 = realizing_tree(*s.t, s.f("<<1>>(p U q)"), 3);
    auto simple = simple_tree(*s.t, 3);
    CHECK(children(r0) == children(simple));
}

TEST_CASE("grid rows") {
    Solved s(kVartheta);
    std::vector<std::string> rows;
    for (F r : grid_rows(*s.t)) rows.push_back(r->text);
    CHECK(rows == std::vector<std::string>{"<<1>>((p U q) | G q)", "[[2]](F p & G ~q)", "<<1>>(p U q)", "[[2]]G ~q"});
}

TEST_CASE("vartheta structure") {
    Solved s(kVartheta);
    auto h = assemble(*s.t);
    REQUIRE(h.nodes.size() == 7);
    std::vector<int> origin;
    for (const auto& n : h.nodes) origin.push_back(n.origin + 1);
    CHECK(origin == std::vector<int>{1, 4, 5, 8, 6, 8, 7});
    CHECK(h.nodes[0].out == std::vector<int>{1, 1, 2, 2});
    CHECK(h.nodes[3].out == std::vector<int>{5});
    CHECK(h.nodes[5].out == std::vector<int>{3});
    CHECK(h.nodes[6].out == std::vector<int>{6});
    auto rep = validate_hintikka(h, *s.d);
    CHECK_MESSAGE(rep.ok, rep.message);
    CGM m = extract_cgm(h, *s.p.store);
    CHECK(m.states[0].props == std::vector<std::string>{"p"});
    CHECK(m.states[1].props == std::vector<std::string>{"q"});
    CHECK(check_model(*s.p.store, m, m.initial, s.p.eta).pass);
}

TEST_CASE("closing modes") {
    Solved s("(<<>>G <<2>>(p U ~p) & ~p)");
    auto paper = assemble(*s.t, Closing::Paper);
    CHECK_FALSE(validate_hintikka(paper, *s.d).ok);
    CHECK(validate_hintikka(paper, *s.d).condition == "H6");
    auto cyclic = assemble(*s.t, Closing::Cyclic);
    CHECK(validate_hintikka(cyclic, *s.d).ok);
    auto h = assemble(*s.t);
    CHECK(validate_hintikka(h, *s.d).ok);
    CGM m = extract_cgm(h, *s.p.store);
    CHECK(check_model(*s.p.store, m, 0, s.p.eta).pass);
}

TEST_CASE("single state structure") {
    Solved s("<<1>>G true");
    auto h = assemble(*s.t);
    REQUIRE(h.nodes.size() == 1);
    CHECK(h.nodes[0].out == std::vector<int>{0});
    CGM m = extract_cgm(h, *s.p.store);
    CHECK(m.states[0].props.empty());
}

TEST_CASE("hintikka violations") {
    Store st(Universe{{1}});
    Decomposer d(st);
    auto node = [&](std::vector<F> label) {
        std::sort(label.begin(), label.end(), CanonLess());
        return HintikkaStructure::Node{label, {1}, {0}, -1};
    };
    F p = st.lit("p", true), np = st.lit("p", false);
    HintikkaStructure h;
    h.nodes = {node({p, np})};
    auto r = validate_hintikka(h, d);
    CHECK(r.condition == "H1");
    CHECK(r.message.rfind("H1 violated at state S1", 0) == 0);

    F fp = parse_into(st, "<<1>>F p");
    h.nodes = {node({fp, np})};
    CHECK(validate_hintikka(h, d).condition == "H4");

    F xfp = parse_into(st, "<<1>>X <<1>>F p");
    F comp = d.components(fp)[0].rendered;
    h.nodes = {node({fp, comp, xfp, np})};
    CHECK(validate_hintikka(h, d).condition == "H6");

    h.nodes = {node({parse_into(st, "<<1>>X p"), np})};
    CHECK(validate_hintikka(h, d).condition == "H5");

    h.nodes = {node({parse_into(st, "p & q"), p})};
    CHECK(validate_hintikka(h, d).condition == "H2");
    h.nodes = {node({parse_into(st, "p | q")})};
    CHECK(validate_hintikka(h, d).condition == "H3");

    h.nodes = {node({p})};
    h.nodes[0].out = {0, 0};
    CHECK(validate_hintikka(h, d).condition == "H5");
}

TEST_CASE("coalition groups") {
    auto g = coalition_groups({2, 2}, 0b01u);
    CHECK(g == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
    g = coalition_groups({2, 2}, 0b10u);
    CHECK(g == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
    g = coalition_groups({2, 3}, 0u);
    CHECK(g.size() == 1);
    CHECK(g[0].size() == 6);
}

TEST_CASE("cgm json round trip") {
    Solved s(kVartheta);
    CGM m = extract_cgm(assemble(*s.t), *s.p.store, true);
    auto j = to_json(m);
    CHECK(j["initial"] == "S1");
    CHECK(j["actions"]["S1"] == nlohmann::json::array({2, 2}));
    CHECK(j["transitions"].size() == 10);
    CGM back = cgm_from_json(j);
    CHECK(to_json(back) == j);
    Decomposer d(*s.p.store);
    auto h = hintikka_from_cgm(*s.p.store, back, closure(d, s.p.eta));
    CHECK(validate_hintikka(h, d).ok);
    std::string dot = cgm_dot(m);
    auto line = dot.substr(dot.find("  S1 ["));
    CHECK(line.substr(0, line.find('\n')).find("shape=doublecircle") != std::string::npos);
}

TEST_CASE("random satisfiable formulas yield certified models") {
    int sat = 0;
    for (const auto& text : random_corpus(41, 150, RandomSpec{})) {
        Solved s(text);
        if (!s.t->open()) continue;
        ++sat;
        auto h = assemble(*s.t);
        auto rep = validate_hintikka(h, *s.d);
        CHECK_MESSAGE(rep.ok, text << ": " << rep.message);
        CGM m = extract_cgm(h, *s.p.store);
        CHECK_MESSAGE(check_model(*s.p.store, m, m.initial, s.p.eta).pass, text);
    }
    CHECK(sat > 0);
}
