#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cst/grammar.hpp"

using namespace cst;

namespace {

const char* kAnBn = R"(
# a^n b^n, n >= 0
axiom: S
S -> a S b | eps
)";

const char* kEvenPal = R"(
axiom: S
S -> a S a | b S b | eps
)";

std::set<std::string> words(std::initializer_list<std::string> ws) { return {ws}; }

} // namespace

TEST_CASE("parser accepts the basic format") {
    Grammar g = parse_grammar(kAnBn);
    CHECK(g.axiom.name == "S");
    REQUIRE(g.rules.size() == 2);
    CHECK(g.rules[0].rhs.size() == 3);
    CHECK(g.rules[1].rhs.empty());
    CHECK(g.rules[0].rhs[0] == Symbol::terminal('a'));
    CHECK(g.rules[0].rhs[1] == Symbol::nonterminal("S"));
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_grammar("S -> a\n"), ParseError);                    // no axiom
    CHECK_THROWS_AS(parse_grammar("axiom: S\naxiom: S\nS -> a\n"), ParseError); // duplicate axiom
    CHECK_THROWS_AS(parse_grammar("axiom: S\n"), ParseError);                   // no rules
    CHECK_THROWS_AS(parse_grammar("axiom: S\nS -> ab\n"), ParseError);          // multi-char lowercase
    CHECK_THROWS_AS(parse_grammar("axiom: S\nS -> a eps\n"), ParseError);       // eps not alone
    CHECK_THROWS_AS(parse_grammar("axiom: S\nS -> a | | b\n"), ParseError);     // empty alternative
    CHECK_THROWS_AS(parse_grammar("axiom: S\nS -> a ->\n"), ParseError);        // stray arrow
    CHECK_THROWS_AS(parse_grammar("axiom: s\nS -> a\n"), ParseError);           // lowercase axiom
    CHECK_THROWS_AS(parse_grammar("axiom: S\n-> a\n"), ParseError);             // missing lhs

    try {
        parse_grammar("axiom: S\nS -> a $ b\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 8);
    }
}

TEST_CASE("print/parse round-trip preserves rules and labels") {
    Grammar g = parse_grammar(kEvenPal);
    Grammar h = parse_grammar(print_grammar(g));
    CHECK(g.axiom == h.axiom);
    CHECK(g.rules == h.rules);
}

TEST_CASE("rename_nonterminals starts at the axiom") {
    Grammar g = parse_grammar("axiom: S\nS -> A b\nA -> a\n");
    Grammar r = rename_nonterminals(g);
    CHECK(r.axiom.name == "N0");
    CHECK(r.rules[0].lhs.name == "N0");
    CHECK(r.rules[0].rhs[0].name == "N1");
    CHECK(r.rules[1].lhs.name == "N1");
}

TEST_CASE("reduce removes unproductive and unreachable parts") {
    Grammar g = parse_grammar("axiom: S\nS -> a | X\nX -> X\nY -> b\n");
    Grammar r = reduce(g);
    REQUIRE(r.rules.size() == 1);
    CHECK(r.rules[0].rhs == std::vector<Symbol>{Symbol::terminal('a')});

    Grammar dead = reduce(parse_grammar("axiom: S\nS -> S\n"));
    CHECK(dead.empty_language_marker());
}

TEST_CASE("nullable and derives_epsilon") {
    Grammar g = parse_grammar(kAnBn);
    CHECK(derives_epsilon(g));
    CHECK(nullable_set(g).count(Symbol::nonterminal("S")) == 1);

    Grammar h = parse_grammar("axiom: S\nS -> a S | a\n");
    CHECK_FALSE(derives_epsilon(h));
}

TEST_CASE("enumeration matches hand-computed languages") {
    Grammar anbn = parse_grammar(kAnBn);
    CHECK(enumerate_language(anbn, 6) == words({"", "ab", "aabb", "aaabbb"}));
    CHECK(enumerate_language(anbn, 7) == words({"", "ab", "aabb", "aaabbb"}));

    Grammar pal = parse_grammar(kEvenPal);
    CHECK(enumerate_language(pal, 4) == words({"", "aa", "bb", "aaaa", "abba", "baab", "bbbb"}));
}

TEST_CASE("enumerate_table exposes per-nonterminal slices") {
    Grammar anbn = parse_grammar(kAnBn);
    auto table = enumerate_table(anbn, 4);
    const auto& s = table.at(Symbol::nonterminal("S"));
    CHECK(s[0] == words({""}));
    CHECK(s[1].empty());
    CHECK(s[2] == words({"ab"}));
    CHECK(s[4] == words({"aabb"}));
}

TEST_CASE("enumeration honors the word budget") {
    Grammar pal = parse_grammar(kEvenPal);
    EnumerateOptions tiny;
    tiny.word_budget = 2;
    CHECK_THROWS_AS(enumerate_language(pal, 4, tiny), BudgetError);
}

TEST_CASE("multi-character terminals enumerate with separators") {
    Grammar g;
    g.axiom = Symbol::nonterminal("S");
    g.rules.push_back({g.axiom, {Symbol::terminal(std::string("aa")), Symbol::terminal(std::string("b"))}});
    auto lang = enumerate_language(g, 2);
    REQUIRE(lang.size() == 1);
    auto parts = split_word(*lang.begin());
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == "aa");
    CHECK(parts[1] == "b");
}

TEST_CASE("to_cnf preserves the language minus the empty word") {
    Grammar anbn = parse_grammar(kAnBn);
    Grammar cnf = to_cnf(anbn);
    CHECK(is_cnf(cnf));
    CHECK(cnf.form_tag == "cnf");
    CHECK(enumerate_language(cnf, 6) == words({"ab", "aabb", "aaabbb"}));

    Grammar pal = to_cnf(parse_grammar(kEvenPal));
    CHECK(is_cnf(pal));
    CHECK(enumerate_language(pal, 4) == words({"aa", "bb", "aaaa", "abba", "baab", "bbbb"}));

    // unit chains and useless symbols
    Grammar chain = to_cnf(parse_grammar("axiom: S\nS -> A\nA -> B\nB -> a B b | a b\n"));
    CHECK(is_cnf(chain));
    CHECK(enumerate_language(chain, 4) == words({"ab", "aabb"}));

    Grammar dead = to_cnf(parse_grammar("axiom: S\nS -> S a\n"));
    CHECK(dead.empty_language_marker());
}

TEST_CASE("cyk agrees with enumeration") {
    Grammar cnf = to_cnf(parse_grammar(kAnBn));
    CHECK(cyk_membership(cnf, "ab"));
    CHECK(cyk_membership(cnf, "aaabbb"));
    CHECK_FALSE(cyk_membership(cnf, ""));
    CHECK_FALSE(cyk_membership(cnf, "abab"));
    CHECK_FALSE(cyk_membership(cnf, "ba"));
    CHECK_FALSE(cyk_membership(cnf, "aab"));

    Grammar pal = to_cnf(parse_grammar(kEvenPal));
    auto lang = enumerate_language(pal, 6);
    for (const auto& w : lang) CHECK(cyk_membership(pal, w));
    CHECK_FALSE(cyk_membership(pal, "abab"));
}

TEST_CASE("suffix quotient emptiness") {
    Grammar cnf = to_cnf(parse_grammar(kAnBn));
    CHECK(quotient_nonempty(cnf, ""));
    CHECK(quotient_nonempty(cnf, "b"));
    CHECK(quotient_nonempty(cnf, "bb"));
    CHECK(quotient_nonempty(cnf, "ab"));
    CHECK(quotient_nonempty(cnf, "abb"));
    CHECK_FALSE(quotient_nonempty(cnf, "a"));
    CHECK_FALSE(quotient_nonempty(cnf, "ba"));
    CHECK_FALSE(quotient_nonempty(cnf, "aab"));

    Grammar dead;
    dead.axiom = Symbol::nonterminal("S");
    CHECK_FALSE(quotient_nonempty(dead, "a"));
}

TEST_CASE("gruska family generator") {
    Grammar g1 = gen_gruska(1);
    CHECK(enumerate_language(g1, 8) == words({"", "abba", "ababbaba"}));

    Grammar g2 = gen_gruska(2);
    CHECK(enumerate_language(g2, 8) == words({"", "abba", "aabbaa", "ababbaba"}));
    CHECK(enumerate_language(g2, 12).count("aabaabbaabaa") == 1);

    Grammar g3 = gen_gruska(3);
    CHECK(enumerate_language(g3, 6).count("aaabbaaa") == 0);
    CHECK(enumerate_language(g3, 8).count("aaabbaaa") == 1);

    CHECK_THROWS_AS(gen_gruska(0), PreconditionError);
}
