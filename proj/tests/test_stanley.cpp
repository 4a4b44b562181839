#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cst/stanley.hpp"

using namespace cst;

namespace {

Grammar fixture(const std::string& text) { return parse_grammar(text); }

int expected_bits(std::size_t rules) {
    int h = 0;
    while ((std::size_t(1) << h) < rules) ++h;
    return h;
}

} // namespace

TEST_CASE("single-rule grammar gives the two-letter control") {
    Grammar g = fixture("axiom: S\nS -> a\n");
    for (const std::string mode : {"unary", "binary"}) {
        StanleyDecomposition d = stanley_from_grammar(g, mode);
        CHECK(enumerate_nfa_words(d.r, 6) == std::set<std::string>{join_symbols({"a", "a'"})});
        StanleyVerification rep = stanley_verify(g, d, 4);
        CHECK(rep.equal);
        CHECK(rep.lhs_count == 1);
    }
    CHECK(stanley_from_grammar(g, "unary").width == 4);  // 2|P|+2 with one rule
    CHECK(stanley_from_grammar(g, "binary").width == 2); // no bits needed for one label
}

TEST_CASE("binary width arithmetic") {
    // five rules force three bits per label and a window of 2*3+2
    Grammar g = fixture("axiom: S\nS -> A B | A C\nA -> a\nB -> b\nC -> a\n");
    Grammar cnf = to_cnf(g);
    REQUIRE(cnf.rules.size() == 5);
    StanleyDecomposition d = stanley_build(cnf, "binary");
    CHECK(d.stats.code_bits == 3);
    CHECK(d.width == 8);
    CHECK(d.stats.omega == 2 * d.sigma.size() + 6);
    StanleyDecomposition u = stanley_build(cnf, "unary");
    CHECK(u.width == 12);
    CHECK(u.stats.omega == 2 * u.sigma.size() + 4);
}

TEST_CASE("encoded derivations are members of the intersection") {
    Grammar g = fixture("axiom: S\nS -> a S b | a b\n");
    Grammar cnf = to_cnf(g);
    for (const std::string mode : {"unary", "binary"}) {
        StanleyDecomposition d = stanley_build(cnf, mode);
        DyckSpec spec = stanley_dyck_spec(d);
        std::mt19937 rng(7);
        for (int i = 0; i < 50; ++i) {
            ParseTree t = random_parse_tree(cnf, cnf.axiom, rng, 7);
            std::vector<std::string> u = stanley_encode_tree(d, cnf, t);
            CHECK(dyck_check(spec, u));
            CHECK(d.r.accepts(u));
            // h maps the control word back to the derived sentence
            std::vector<std::string> image;
            for (const auto& s : u) {
                auto it = d.h.find(s);
                REQUIRE(it != d.h.end());
                if (!it->second.empty()) image.push_back(it->second);
            }
            CHECK(image == tree_yield(cnf, t));
            CHECK(u.size() >= 2 * image.size());
        }
    }
}

TEST_CASE("identity on the running fixtures, both code modes") {
    const char* texts[] = {
        "axiom: S\nS -> a a S b b b b b b | a a a a\n",
        "axiom: S\nS -> a S b | a b\n",
        "axiom: S\nS -> a S b | a b | a\n",
        "axiom: S\nS -> a S a | b S b | a a | b b\n",
    };
    for (const char* text : texts) {
        Grammar g = fixture(text);
        for (const std::string mode : {"unary", "binary"}) {
            StanleyDecomposition d = stanley_from_grammar(g, mode);
            CHECK(d.width ==
                  (mode == "unary" ? int(2 * d.stats.rules + 2) : 2 * d.stats.code_bits + 2));
            CHECK(d.stats.code_bits == (mode == "unary" ? 0 : expected_bits(d.stats.rules)));
            StanleyVerification rep = stanley_verify(g, d, 10);
            CHECK(rep.equal);
            CHECK(rep.max_erasure_ratio >= 2.0);
        }
    }
}

TEST_CASE("delimiters sidestep colliding terminal letters") {
    Grammar g = fixture("axiom: A\nA -> S c\nS -> a a S b b b b b b | a a a a\n");
    StanleyDecomposition d = stanley_from_grammar(g, "unary");
    CHECK(d.delim_c == "_c");
    CHECK(d.delim_d == "d");
    CHECK(d.h.at("c") == "c");
    CHECK(d.h.at("_c") == "");
    StanleyVerification rep = stanley_verify(g, d, 7);
    CHECK(rep.equal);
    CHECK(rep.lhs_count == 1); // only a^4 c fits under seven letters
}

TEST_CASE("empty word travels on the epsilon flag") {
    Grammar g = gen_gruska(1);
    REQUIRE(derives_epsilon(g));
    StanleyDecomposition d = stanley_from_grammar(g, "binary");
    CHECK(d.epsilon);
    StanleyVerification rep = stanley_verify(g, d, 8);
    CHECK(rep.equal);
}

TEST_CASE("window description agrees with the control automaton") {
    const char* texts[] = {
        "axiom: S\nS -> a S b | a b\n",
        "axiom: S\nS -> a S b | a b | a\n",
    };
    for (const char* text : texts) {
        Grammar g = fixture(text);
        for (const std::string mode : {"unary", "binary"}) {
            StanleyDecomposition d = stanley_from_grammar(g, mode);
            CHECK(d.r_slt.k == d.width);
            Nfa rendered = slt_to_nfa(d.r_slt);
            auto witness = bounded_difference_witness(d.r, rendered, 4 * d.width);
            if (witness) {
                std::string w;
                for (const auto& s : *witness) w += s + " ";
                CAPTURE(w);
                CHECK(!witness);
            } else {
                CHECK(!witness);
            }
        }
    }
}

TEST_CASE("shape preconditions are enforced") {
    Grammar g = fixture("axiom: S\nS -> a S b | a b\n"); // not CNF
    CHECK_THROWS_AS((void)stanley_build(g, "unary"), PreconditionError);
    CHECK_THROWS_AS((void)stanley_build(to_cnf(g), "ternary"), PreconditionError);
}
