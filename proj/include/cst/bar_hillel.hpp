#pragma once
#include <map>
#include <string>
#include <vector>
#include "cst/grammar.hpp"
#include "cst/nfa.hpp"

namespace cst {

// Product grammar for L(cnf) intersected with L(a), built bottom-up so only
// productive (state, nonterminal, state) triples materialize.
Grammar bar_hillel_intersect(const Grammar& cnf, const Nfa& a, std::size_t triple_budget = 8'000'000);

// Apply a terminal-to-word substitution; an empty image erases the terminal.
Grammar grammar_hom_image(const Grammar& g, const std::map<std::string, std::vector<std::string>>& image);

} // namespace cst
