#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "atlp/enumerate.hpp"
#include "atlp/oracle.hpp"
#include "atlp/parser.hpp"
#include "atlp/random_formula.hpp"
#include "atlp/selftest.hpp"
#include "atlp/synthesis.hpp"

using namespace atlp;

namespace {

enum Exit { kSat = 0, kUnsat = 1, kError = 2, kUncertified = 3 };

struct Input {
    std::string formula;
    std::string file;
    int extra_agents = 0;
    std::size_t max_closure = std::size_t(1) << 20;

    std::string text() const {
        if (!formula.empty() && !file.empty()) throw std::invalid_argument("give either a formula or --file, not both");
        if (file.empty()) {
            if (formula.empty()) throw std::invalid_argument("no formula given");
            return formula;
        }
        std::ifstream in(file);
        if (!in) throw std::runtime_error("cannot read " + file);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
};

void add_input(CLI::App* cmd, Input& in) {
    cmd->add_option("formula", in.formula, "ATL+ formula");
    cmd->add_option("--file", in.file, "read the formula from a file");
    cmd->add_option("--extra-agents", in.extra_agents, "agents added to the universe")->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-closure", in.max_closure, "closure size limit")->check(CLI::PositiveNumber);
}

std::string agent_list(const Store& st) {
    std::string s;
    for (int a : st.universe().names) s += (s.empty() ? "" : ",") + std::to_string(a);
    return s;
}

struct Run {
    Problem p;
    std::unique_ptr<Decomposer> d;
    std::unique_ptr<Tableau> t;

    explicit Run(const Input& in) : p(make_problem(in.text(), in.extra_agents)) {
        d = std::make_unique<Decomposer>(*p.store);
        t = std::make_unique<Tableau>(*d, p.eta, in.max_closure);
        t->build();
        t->eliminate();
    }
};

void print_report(const Run& r, bool trace, std::ostream& os) {
    Stats s = stats(*r.t);
    os << (r.t->open() ? "SAT" : "UNSAT") << "\n";
    os << "formula: " << r.p.eta->text << "\n";
    os << "agents: " << agent_list(*r.p.store) << "\n";
    os << "closure: " << r.t->closure_size() << " formulas\n";
    os << "pretableau: " << s.pretableau_states << " states, " << s.pretableau_prestates << " prestates\n";
    os << "initial tableau: " << s.initial_states << " states\n";
    os << "final tableau: " << s.final_states << " states\n";
    if (trace)
        for (const auto& e : r.t->trace())
            os << "trace: " << e.rule << " " << r.t->state_name(e.state) << ": " << e.detail << "\n";
    if (r.t->open()) os << "witness: " << r.t->state_name(r.t->witness()) << "\n";
}

int cmd_check(const Input& in, bool trace) {
    Run r(in);
    print_report(r, trace, std::cout);
    return r.t->open() ? kSat : kUnsat;
}

int cmd_synth(const Input& in, const std::string& model_path, bool labels, bool trace) {
    Run r(in);
    if (!r.t->open()) {
        std::cerr << "UNSAT: no model exists\n";
        return kUnsat;
    }
    HintikkaStructure h = assemble(*r.t);
    HintikkaReport hr = validate_hintikka(h, *r.d);
    CGM m = extract_cgm(h, *r.p.store, labels);
    ModelReport mr = check_model(*r.p.store, m, m.initial, r.p.eta);
    std::ostream& report = model_path.empty() ? std::cerr : std::cout;
    if (!hr.ok || !mr.pass) {
        report << "internal error: synthesized model is not certified\n";
        if (!hr.ok) report << hr.message << "\n";
        report << mr.text;
        return kUncertified;
    }
    std::string json = to_json(m).dump(2) + "\n";
    if (model_path.empty()) {
        std::cout << json;
    } else {
        std::ofstream out(model_path);
        if (!out) throw std::runtime_error("cannot write " + model_path);
        out << json;
    }
    report << "SAT\nmodel: " << m.states.size() << " states\nhintikka: H1-H6 hold\n";
    if (trace) report << mr.text;
    report << "oracle: pass\n";
    return kSat;
}

int cmd_export(const Input& in, const std::string& phase, const std::string& out_path) {
    Run r(in);
    std::string dot;
    if (phase == "pretableau") {
        dot = r.t->dot(Phase::Pretableau);
    } else if (phase == "initial") {
        dot = r.t->dot(Phase::Initial);
    } else if (phase == "final") {
        dot = r.t->dot(Phase::Final);
    } else {
        if (!r.t->open()) {
            std::cerr << "UNSAT: no model exists\n";
            return kUnsat;
        }
        dot = cgm_dot(extract_cgm(assemble(*r.t), *r.p.store));
    }
    if (out_path.empty()) {
        std::cout << dot;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << dot;
    }
    return kSat;
}

int cmd_verify(const Input& in, const std::string& model_path) {
    std::ifstream f(model_path);
    if (!f) throw std::runtime_error("cannot read " + model_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad model JSON: ") + e.what());
    }
    CGM m = cgm_from_json(j);
    Problem p = make_problem(in.text(), in.extra_agents);
    bool has_labels = false;
    for (const auto& s : m.states) has_labels = has_labels || !s.formulas.empty();
    if (has_labels) {
        Decomposer d(*p.store);
        HintikkaStructure h = hintikka_from_cgm(*p.store, m, closure(d, p.eta, in.max_closure));
        HintikkaReport hr = validate_hintikka(h, d);
        if (!hr.ok) {
            std::cout << hr.message << "\n";
            return kUnsat;
        }
        std::cout << "hintikka: H1-H6 hold\n";
    }
    ModelReport mr = check_model(*p.store, m, m.initial, p.eta);
    std::cout << mr.text;
    return mr.pass ? kSat : kUnsat;
}

int cmd_selftest(std::uint64_t seed, int random) {
    int failed = 0;
    for (const auto& r : run_selftest()) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.pass) std::cout << ": " << r.detail;
        std::cout << "\n";
        failed += !r.pass;
    }
    if (random > 0) {
        int bad = 0, sat = 0;
        for (const auto& text : random_corpus(seed, random, RandomSpec{})) {
            auto p = make_problem(text);
            Decomposer d(*p.store);
            Tableau t(d, p.eta);
            t.build();
            t.eliminate();
            if (t.open()) {
                ++sat;
                auto h = assemble(t);
                CGM m = extract_cgm(h, *p.store);
                if (!validate_hintikka(h, d).ok || !check_model(*p.store, m, m.initial, p.eta).pass) {
                    ++bad;
                    std::cout << "  uncertified model for " << text << "\n";
                }
            } else {
                CgmFamily fam;
                fam.agents = p.store->agents();
                for (int i = 0; i < p.store->num_props(); ++i) fam.props.push_back(p.store->prop_name(i));
                for_each_cgm(fam, [&](const CGM& m) {
                    Oracle o(*p.store, m);
                    for (char c : o.eval(p.eta))
                        if (c) {
                            ++bad;
                            std::cout << "  model found for UNSAT " << text << "\n";
                            return false;
                        }
                    return true;
                });
            }
        }
        std::cout << (bad ? "FAIL " : "PASS ") << "random end-to-end (seed " << seed << ", " << random
                  << " formulas, " << sat << " SAT)\n";
        failed += bad > 0;
    }
    return failed ? kUnsat : kSat;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ATL+ tableau satisfiability solver"};
    app.require_subcommand(1);

    Input in;
    bool trace = false;
    std::string dot_phase, out_path, model_path;
    bool labels = false;
    std::uint64_t seed = 1;
    int random = 50;

    auto* check = app.add_subcommand("check", "decide satisfiability");
    add_input(check, in);
    check->add_flag("--trace", trace, "print the elimination trace");

    auto* synth = app.add_subcommand("synth", "build and certify a model");
    add_input(synth, in);
    synth->add_option("--json-model", model_path, "write the model here instead of stdout");
    synth->add_flag("--labels", labels, "keep the Hintikka labels in the model");
    synth->add_flag("--trace", trace, "print the oracle's winning sets");

    auto* exp = app.add_subcommand("export", "write a DOT graph");
    add_input(exp, in);
    exp->add_option("--dot", dot_phase, "pretableau, initial, final or model")
        ->required()
        ->check(CLI::IsMember({"pretableau", "initial", "final", "model"}));
    exp->add_option("-o,--output", out_path, "output file");

    auto* verify = app.add_subcommand("verify", "check a stored model against a formula");
    add_input(verify, in);
    verify->add_option("--json-model", model_path, "model JSON")->required();

    auto* self = app.add_subcommand("selftest", "run the golden corpus");
    self->add_option("--seed", seed, "seed for the random end-to-end sample");
    self->add_option("--random", random, "size of the random sample")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }

    try {
        if (*check) return cmd_check(in, trace);
        if (*synth) return cmd_synth(in, model_path, labels, trace);
        if (*exp) return cmd_export(in, dot_phase, out_path);
        if (*verify) return cmd_verify(in, model_path);
        if (*self) return cmd_selftest(seed, random);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kError;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
