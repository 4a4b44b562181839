#pragma once
#include <map>
#include <vector>
#include "cst/grammar.hpp"

namespace cst {

// Relabel repeated right-hand-side nonterminal occurrences (and clone their
// rules) so that within every rule the nonterminal occurrences are pairwise
// distinct. Language-preserving.
Grammar distinct_rhs(const Grammar& g);

struct CubicDgnf {
    // Shared-universe grammar; the axiom is the image of the first surviving start.
    Grammar g;
    // Requested start -> its nonterminal in g. Starts whose language is empty
    // (ignoring the empty word) are absent. Start nonterminals never occur in
    // any right-hand side.
    std::map<Symbol, Symbol> start_of;
};

// Double Greibach normal form with at most three nonterminals per rule:
// every rule reads A -> t α u (α ∈ N^{≤3}) or A -> t. Produces, for each
// requested start, a grammar for its language minus the empty word. The input
// must be in CNF (or the empty-language marker).
CubicDgnf cnf_to_cubic_dgnf(const Grammar& cnf, const std::vector<Symbol>& starts,
                            std::size_t nt_budget = 200'000);

bool is_cubic_dgnf(const Grammar& g);

} // namespace cst
