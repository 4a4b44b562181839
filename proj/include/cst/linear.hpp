#pragma once
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cst/dyck.hpp"
#include "cst/grammar.hpp"
#include "cst/nfa.hpp"
#include "cst/slt.hpp"

namespace cst {

// Ordered pair of terminal letters; the alphabet the outside-in reading of a
// linear derivation runs over.
struct PairSymbol {
    std::string first, second;
    auto operator<=>(const PairSymbol&) const = default;
    std::string name() const { return first + "," + second; }
};

// Letter-to-letter presentation R = f(L(T)) of a regular language: one fresh
// letter per automaton transition, T the width-2 local language of its paths.
struct MedvedevFactorization {
    std::vector<std::string> lambda;     // fresh letters t0, t1, ... (one per transition)
    std::map<std::string, PairSymbol> f; // letter image
    SltDescriptor t;                     // width 2; L(t) are the accepting paths
};

// Classical Medvedev construction over an epsilon-free automaton.
MedvedevFactorization medvedev_factor(const Nfa& a);

// The pair-language automaton of a linear grammar whose rules all read
// A -> a B b | a b | a: states are the nonterminals (sorted) plus one final
// state; A -> aBb steps (A, <a,b>, B) and A -> ab steps (A, <a,b>, final).
// Middle rules A -> a contribute no transition here.
Nfa linear_w_nfa(const Grammar& g);

// Two-sided decomposition L = g(D ∩ U) for linear grammars in the shape
// above: brackets carry the Medvedev letters of the pair language, an open
// run spells a path, the Dyck matching forces the close run to mirror it,
// and odd-length words put one neutral letter between the runs.
struct LinearDecomposition {
    std::vector<std::string> sigma;
    MedvedevFactorization fact;            // over the pair-language automaton
    std::vector<std::string> opens;        // "o." + lambda
    std::vector<std::string> closes;       // "c." + lambda
    std::vector<std::string> neutrals;     // "-." + letter
    std::map<std::string, std::string> g;  // bracket -> letter (letter-to-letter)
    SltDescriptor u_slt;                   // width 2, the control's definition
    Nfa u;                                 // its automaton rendering
    struct Stats {
        std::size_t n = 0;        // non-neutral Dyck letters: 2 |lambda|
        std::size_t l = 0;        // neutral letters
        std::size_t w_states = 0; // pair-language automaton states: |N| + 1
        std::size_t lambda = 0;
        std::size_t u_states = 0, u_transitions = 0;
    } stats;
    // what the pluggable provider leaves on the table (quantitative claims of
    // the extended construction); surfaced verbatim by the CLI reports
    std::string provider_note;
};

LinearDecomposition linear_cst_build(const Grammar& g);

DyckSpec linear_dyck_spec(const LinearDecomposition& d);

struct LinearVerification {
    int maxlen = 0;
    std::size_t lhs_count = 0, rhs_count = 0; // g(D ∩ U) vs. L(g)
    bool equal = false;
    std::vector<std::string> witnesses;
};

LinearVerification linear_verify(const Grammar& g, const LinearDecomposition& d, int maxlen);

} // namespace cst
