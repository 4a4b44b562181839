#pragma once
#include <map>
#include <string>
#include "cst/grammar.hpp"

namespace cst {

struct QuotientedGrammar {
    Grammar g;
    int order = 1;
};

// Block form of order r: the axiom derives A·w with |w| < r, every other rule
// is A -> BC, A -> x (|x| = r), or A -> eps, and the axiom is not on any
// right-hand side. Words split as (full r-blocks)·(short tail).
QuotientedGrammar to_q_cnf(const Grammar& g, int r);
bool is_q_cnf(const Grammar& g, int r);

// Like to_q_cnf but with the block rules in double Greibach form:
// A -> x α y (x, y ∈ Σ^r), A -> x, or A -> eps.
QuotientedGrammar to_q_dgnf(const Grammar& g, int r);
bool is_q_dgnf(const Grammar& g, int r);

// Intermediate stages of the block double-Greibach pipeline, kept at the level
// where each length-r block is one condensed terminal symbol. Used by the
// bracket construction, which needs per-tail start symbols over that alphabet.
struct QDgnfStages {
    int order = 1;
    // Cubic double Greibach grammar over condensed block terminals (the block's
    // letters, concatenated, serve as the terminal name). Start symbols never
    // occur in right-hand sides.
    Grammar tuple_dgnf;
    // tail word w (plain letters, |w| < r) -> start nonterminal of the block
    // language {x : x·w ∈ L, |x| ≡ 0 mod r}, minus the empty word
    std::map<std::string, Symbol> start_for;
    // tails w with w ∈ L itself (the start also derives the empty block word)
    std::set<std::string> nullable_tails;
    bool derives_empty_word = false; // eps ∈ L
};
QDgnfStages to_q_dgnf_stages(const Grammar& g, int r);

} // namespace cst
