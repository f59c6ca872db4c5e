#include <doctest.h>

#include <algorithm>
#include <set>

#include "atlp/parser.hpp"
#include "atlp/random_formula.hpp"
#include "atlp/tableau.hpp"

using namespace atlp;

namespace {

const char* kTheta = "<<1>>(p U q | G q) & <<2>>(F p & G ~q)";
const char* kVartheta = "<<1>>(p U q | G q) & [[2]](F p & G ~q)";

struct Solved {
    Problem p;
    std::unique_ptr<Decomposer> d;
    std::unique_ptr<Tableau> t;
    explicit Solved(const std::string& text, bool elim = true) : p(make_problem(text)) {
        d = std::make_unique<Decomposer>(*p.store);
        t = std::make_unique<Tableau>(*d, p.eta);
        t->build();
        if (elim) t->eliminate();
    }
};

std::string label_of(const std::vector<F>& l) {
    std::string s;
    for (F f : l) s += (s.empty() ? "" : "; ") + f->text;
    return s;
}

}  // namespace

TEST_CASE("profiles") {
    CHECK(profile_count(4, 2) == 16);
    CHECK(decode_profile(3, 4, 2) == std::vector<int>{0, 3});
    CHECK(encode_profile({3, 1}, 4) == 13);
    CHECK(profile_text({2, 0}) == "2,0");
    CHECK_THROWS(profile_count(100, 5));
}

TEST_CASE("N and co") {
    CHECK(n_of({0, 3}, 2) == 0b10u);
    CHECK(co_of({0, 3}, 2, 2) == 1);
    CHECK(n_of({3, 3}, 2) == 0b11u);
    CHECK(co_of({3, 3}, 2, 2) == 0);
    CHECK(n_of({0, 0}, 2) == 0u);
    CHECK(co_of({0, 0}, 2, 2) == 0);
    CHECK_THROWS(co_of({0, 0}, 2, 0));
}

TEST_CASE("next rule on the four-formula state") {
    Store st(Universe{{1, 2}});
    SuccessorList sl;
    sl.enf = {parse_into(st, "<<1>>X a"), parse_into(st, "<<1,2>>X b")};
    sl.unav = {parse_into(st, "[[2]]X c"), parse_into(st, "[[1]]X d")};
    auto row = [&](std::vector<int> sigma) { return label_of(next_prestate(st, sl, sigma)); };
    CHECK(row({0, 3}) == "a; d");
    CHECK(row({1, 0}) == "true");
    CHECK(row({1, 1}) == "b");
    CHECK(row({2, 0}) == "c");
    CHECK(row({2, 1}) == "c");
    CHECK(row({3, 3}) == "c");
    CHECK(row({3, 2}) == "d");
}

TEST_CASE("theta pretableau") {
    Solved s(kTheta, false);
    CHECK(s.t->states().size() == 11);
    CHECK(s.t->prestates().size() == 7);
    const TabState& d1 = s.t->states()[0];
    CHECK(d1.succ.m() == 2);
    CHECK(d1.succ.l() == 0);
    int g = d1.next[encode_profile({0, 1}, d1.r)];
    CHECK(label_of(s.t->prestates()[g].label) == "<<1>>(p U q); <<2>>(F p & G ~q)");
    CHECK(g == 2);
    auto dot = s.t->dot(Phase::Pretableau);
    CHECK(dot.find("G0 [style=dashed") != std::string::npos);
    CHECK(dot.find("G0 -> D1 [color=\"black:invis:black\"]") != std::string::npos);
}

TEST_CASE("theta elimination") {
    Solved s(kTheta);
    CHECK_FALSE(s.t->open());
    CHECK(s.t->alive_count() == 6);
    std::set<int> removed;
    for (const auto& e : s.t->trace()) removed.insert(e.state + 1);
    CHECK(removed == std::set<int>{1, 2, 5, 6, 10});
    for (int k : {3, 4, 7, 8, 9, 11}) CHECK(s.t->alive(k - 1));
    bool d5 = false;
    for (const auto& e : s.t->trace())
        if (e.state == 4) d5 = e.rule == "ER2" && e.detail == "unrealized <<1>>(p U q)";
    CHECK(d5);
}

TEST_CASE("vartheta tableau") {
    Solved s(kVartheta);
    CHECK(s.t->open());
    CHECK(s.t->states().size() == 8);
    CHECK(s.t->prestates().size() == 5);
    CHECK(s.t->alive_count() == 8);
    CHECK(s.t->trace().empty());
    CHECK(s.t->witness() == 0);
    F xi3 = parse_into(s.t->store(), "<<1>>(p U q)");
    CHECK(s.t->rank(3, xi3) == 0);
    F xi1 = parse_into(s.t->store(), "<<1>>(p U q | G q)");
    CHECK(s.t->rank(0, xi1) == 1);
    std::string init = s.t->dot(Phase::Initial), fin = s.t->dot(Phase::Final);
    CHECK(init.substr(init.find('\n')) == fin.substr(fin.find('\n')));
}

TEST_CASE("atomic formula") {
    Solved s("p", false);
    REQUIRE(s.t->states().size() == 2);
    REQUIRE(s.t->prestates().size() == 2);
    CHECK(label_of(s.t->states()[0].label) == "<<1>>X true; p");
    CHECK(label_of(s.t->prestates()[1].label) == "true");
    CHECK(label_of(s.t->states()[1].label) == "<<1>>X true; true");
    CHECK(s.t->states()[1].next == std::vector<int>{1});
    s.t->eliminate();
    CHECK(s.t->open());
}

TEST_CASE("inconsistent input") {
    Solved s("p & ~p");
    CHECK(s.t->states().empty());
    CHECK_FALSE(s.t->open());
}

TEST_CASE("structural invariants on random formulas") {
    for (const auto& text : random_corpus(31, 150, RandomSpec{})) {
        Solved s(text);
        const Tableau& t = *s.t;
        Coalition all = s.p.store->all();
        for (int i = 0; i < static_cast<int>(t.states().size()); ++i) {
            const TabState& ts = t.states()[i];
            REQUIRE(ts.succ.m() + ts.succ.l() >= 1);
            std::vector<int> seen;
            for (const auto& c : t.cells(i)) seen.insert(seen.end(), c.profiles.begin(), c.profiles.end());
            std::sort(seen.begin(), seen.end());
            std::vector<int> all_profiles(ts.next.size());
            for (std::size_t k = 0; k < all_profiles.size(); ++k) all_profiles[k] = static_cast<int>(k);
            CHECK(seen == all_profiles);
            for (int k = 0; k < static_cast<int>(ts.next.size()); ++k) {
                auto sigma = decode_profile(k, ts.r, t.agents());
                std::vector<F> enf, unav;
                for (F f : ts.succ.enf)
                    if (in_move_set(ts.succ, f, sigma, all)) enf.push_back(f);
                for (F f : ts.succ.unav)
                    if (in_move_set(ts.succ, f, sigma, all)) unav.push_back(f);
                CHECK(unav.size() <= 1);
                for (std::size_t a = 0; a < enf.size(); ++a) {
                    for (std::size_t b = a + 1; b < enf.size(); ++b) CHECK((enf[a]->coal & enf[b]->coal) == 0u);
                    for (F u : unav) CHECK((enf[a]->coal & ~u->coal) == 0u);
                }
            }
            if (!t.alive(i)) continue;
            for (const auto& c : t.cells(i)) CHECK_FALSE(c.targets.empty());
            for (F g : t.eventualities(i)) CHECK(t.rank(i, g) >= 0);
        }
    }
}

TEST_CASE("deterministic output") {
    for (const char* text : {kTheta, kVartheta}) {
        Solved a(text), b(text);
        CHECK(a.t->dot(Phase::Pretableau) == b.t->dot(Phase::Pretableau));
        CHECK(a.t->dot(Phase::Final) == b.t->dot(Phase::Final));
    }
}
