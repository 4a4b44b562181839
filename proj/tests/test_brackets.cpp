#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cst/bar_hillel.hpp"
#include "cst/brackets.hpp"
#include "cst/dgnf.hpp"
#include "cst/dyck.hpp"
#include "cst/grammar.hpp"
#include "cst/slt.hpp"

using namespace cst;

namespace {

// S -> "aa" S B "bb" | "aa" "aa" ; B -> "bb" "bb"  (terminals are two-letter names)
Grammar golden_grammar() {
    Grammar g;
    Symbol S = Symbol::nonterminal("S"), B = Symbol::nonterminal("B");
    Symbol aa = Symbol::terminal("aa"), bb = Symbol::terminal("bb");
    g.axiom = S;
    g.rules.push_back({S, {aa, S, B, bb}});
    g.rules.push_back({S, {aa, aa}});
    g.rules.push_back({B, {bb, bb}});
    return g;
}

DyckSpec bracket_spec() {
    DyckSpec spec;
    spec.classify = [](const std::string& s) {
        return s[0] == '[' ? 1 : s[0] == ']' ? -1 : 0;
    };
    spec.matches = [](const std::string& o, const std::string& c) {
        return o.substr(1) == c.substr(1);
    };
    return spec;
}

std::vector<std::string> names_of(const std::vector<OmegaQ>& w) {
    std::vector<std::string> out;
    for (const auto& s : w) out.push_back(s.name());
    return out;
}

std::set<std::string> flatten(const std::vector<std::set<std::string>>& by_len) {
    std::set<std::string> out;
    for (const auto& cell : by_len) out.insert(cell.begin(), cell.end());
    return out;
}

// h(D ∩ R_X) must equal the language of X, for every nonterminal X of the
// double-Greibach grammar, up to the given word length.
void check_controls(const Grammar& dgnf_in, int maxlen) {
    Grammar gd = distinct_rhs(dgnf_in);
    REQUIRE(is_cubic_dgnf(gd));
    std::set<Symbol> nts = gd.nonterminals();
    std::vector<Symbol> starts(nts.begin(), nts.end());
    BracketSystem sys = build_bracket_system(gd, starts);

    std::size_t nrules = gd.rules.size(), nnts = gd.nonterminals().size();
    CHECK((std::size_t)sys.open_count <= nrules * nrules + nnts * nrules);

    std::vector<std::string> names;
    std::map<std::string, std::vector<std::string>> him;
    for (const auto& s : sys.symbols) {
        names.push_back(s.name());
        him[s.name()] = {sys.h(s)};
    }
    Grammar dyck = dyck_grammar(names, bracket_spec());

    auto table = enumerate_table(gd, maxlen);
    for (const auto& X : starts) {
        const SltDescriptor& ctrl = sys.control.at(X);
        CHECK(ctrl.k == 2);
        Grammar prod = bar_hillel_intersect(dyck, slt_to_nfa(ctrl));
        Grammar img = grammar_hom_image(prod, him);
        CHECK(enumerate_language(img, maxlen) == flatten(table.at(X)));
    }
}

} // namespace

TEST_CASE("bracket alphabet of the running example") {
    Grammar g = golden_grammar();
    BracketSystem sys = build_bracket_system(g, {g.axiom});

    CHECK(sys.open_count == 5);
    std::vector<std::string> opens;
    for (const auto& s : sys.symbols)
        if (s.kind == OmegaQ::Kind::Open) opens.push_back(s.name());
    CHECK(opens == std::vector<std::string>{"[m0.r1", "[m0.r2", "[r1.r1", "[r1.r2", "[r1.r3"});

    // terminal-end map: first terminal on opens, last on closes
    CHECK(sys.h({OmegaQ::Kind::Open, -1, 0}) == "aa");
    CHECK(sys.h({OmegaQ::Kind::Close, -1, 0}) == "bb");
    CHECK(sys.h({OmegaQ::Kind::Open, 0, 0}) == "aa");
    CHECK(sys.h({OmegaQ::Kind::Close, 0, 0}) == "bb");
    CHECK(sys.h({OmegaQ::Kind::Open, 0, 1}) == "aa");
    CHECK(sys.h({OmegaQ::Kind::Close, 0, 1}) == "aa");
    CHECK(sys.h({OmegaQ::Kind::Open, 0, 2}) == "bb");
    CHECK(sys.h({OmegaQ::Kind::Close, 0, 2}) == "bb");
}

TEST_CASE("derivation word of the running example tree") {
    Grammar g = golden_grammar();
    BracketSystem sys = build_bracket_system(g, {g.axiom});

    // root applies rule 1, its S child rule 1 again (children rules 2, 3),
    // its B child rule 3
    ParseTree inner{0, {ParseTree{1, {}}, ParseTree{2, {}}}};
    ParseTree root{0, {inner, ParseTree{2, {}}}};

    auto gamma = derivation_to_brackets(sys, g.axiom, root);
    using K = OmegaQ::Kind;
    std::vector<OmegaQ> expect = {
        {K::Open, -1, 0},  {K::Open, 0, 0},  {K::Open, 0, 1}, {K::Close, 0, 1},
        {K::Open, 0, 2},   {K::Close, 0, 2}, {K::Close, 0, 0}, {K::Open, 0, 2},
        {K::Close, 0, 2},  {K::Close, -1, 0},
    };
    CHECK(gamma == expect);

    // the bracket word balances, passes the control, and maps back to the yield
    auto w = names_of(gamma);
    CHECK(dyck_check(bracket_spec(), w));
    CHECK(slt_membership(sys.control.at(g.axiom), w));

    std::vector<std::string> image;
    for (const auto& s : gamma) image.push_back(sys.h(s));
    CHECK(image == tree_yield(g, root));
    CHECK(tree_yield(g, root) ==
          std::vector<std::string>{"aa", "aa", "aa", "aa", "bb", "bb", "bb", "bb", "bb", "bb"});
}

TEST_CASE("controls recover the language: running example") { check_controls(golden_grammar(), 6); }

TEST_CASE("controls recover the language: derived double Greibach grammars") {
    auto build = [](const char* text) {
        Grammar g = parse_grammar(text);
        Grammar cnf = distinct_rhs(rename_nonterminals(to_cnf(g)));
        CubicDgnf dg = cnf_to_cubic_dgnf(cnf, {cnf.axiom});
        return dg.g;
    };
    check_controls(build("axiom: S\nS -> a S b | a b\n"), 8);
    check_controls(build("axiom: S\nS -> a S b | a b | a\n"), 8);
    check_controls(build("axiom: S\nS -> a S a | b S b | a a | b b\n"), 7);
}

TEST_CASE("random derivations stay inside the control languages") {
    auto run = [](const Grammar& gd, int tries, int height) {
        std::set<Symbol> nts = gd.nonterminals();
        std::vector<Symbol> starts(nts.begin(), nts.end());
        BracketSystem sys = build_bracket_system(gd, starts);
        std::mt19937 rng(12345);
        DyckSpec spec = bracket_spec();
        for (const auto& X : starts) {
            for (int i = 0; i < tries; ++i) {
                ParseTree t = random_parse_tree(gd, X, rng, height);
                auto gamma = derivation_to_brackets(sys, X, t);
                auto w = names_of(gamma);
                CHECK(dyck_check(spec, w));
                CHECK(slt_membership(sys.control.at(X), w));
                std::vector<std::string> image;
                for (const auto& s : gamma) image.push_back(sys.h(s));
                CHECK(image == tree_yield(gd, t));
            }
        }
    };
    run(golden_grammar(), 30, 7);

    Grammar g = parse_grammar("axiom: S\nS -> a S b | a b | a\n");
    Grammar cnf = distinct_rhs(rename_nonterminals(to_cnf(g)));
    run(distinct_rhs(cnf_to_cubic_dgnf(cnf, {cnf.axiom}).g), 20, 8);
}

TEST_CASE("bracket construction rejects unusable grammars") {
    Symbol S = Symbol::nonterminal("S");
    Symbol a = Symbol::terminal("a"), b = Symbol::terminal("b");

    Grammar not_greibach;
    not_greibach.axiom = S;
    not_greibach.rules.push_back({S, {a, S}});
    CHECK_THROWS_AS((void)build_bracket_system(not_greibach, {S}), PreconditionError);

    Grammar repeated;
    repeated.axiom = S;
    repeated.rules.push_back({S, {a, S, S, b}});
    repeated.rules.push_back({S, {a, b}});
    CHECK_THROWS_AS((void)build_bracket_system(repeated, {S}), PreconditionError);

    Grammar fine = golden_grammar();
    BracketSystem sys = build_bracket_system(fine, {fine.axiom});
    CHECK_THROWS_AS((void)derivation_to_brackets(sys, Symbol::nonterminal("Z"), ParseTree{1, {}}),
                    PreconditionError);
    // rule 3 derives B, not the start S
    CHECK_THROWS_AS((void)derivation_to_brackets(sys, fine.axiom, ParseTree{2, {}}),
                    PreconditionError);
}
