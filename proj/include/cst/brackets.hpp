#pragma once
#include <map>
#include <random>
#include <string>
#include <vector>
#include "cst/grammar.hpp"
#include "cst/slt.hpp"

namespace cst {

// A labeled bracket for a double-Greibach grammar: `cur` is the applied rule,
// `prev` the rule of the enclosing node (or a start mark at the root). Rules
// with two terminal ends get an open/close pair; one-terminal rules get a
// single neutral symbol.
struct OmegaQ {
    enum class Kind : std::uint8_t { Open, Close, Neutral };
    Kind kind = Kind::Open;
    int prev = 0; // rule index, or -(1+k) for the k-th start's mark
    int cur = 0;  // rule index
    auto operator<=>(const OmegaQ&) const = default;
    bool is_mark_context() const { return prev < 0; }
    int mark_index() const { return -prev - 1; }
    std::string name() const;
};

struct BracketSystem {
    Grammar g;                  // cubic double Greibach, pairwise-distinct rhs nonterminals
    std::vector<Symbol> starts; // mark k belongs to starts[k]

    std::vector<OmegaQ> symbols; // all bracket symbols, canonically sorted
    int open_count = 0;          // number of open brackets (= matched pairs)

    // per start: the window-2 control language over bracket names
    std::map<Symbol, SltDescriptor> control;

    // image of a bracket under the terminal-end map: first terminal for opens,
    // last terminal for closes, the single terminal for neutrals
    std::string h(const OmegaQ& s) const;
};

// Requires: every rule of `dgnf` is A -> t α u or A -> t, and within each rule
// the right-hand-side nonterminals are pairwise distinct.
BracketSystem build_bracket_system(const Grammar& dgnf, const std::vector<Symbol>& starts);

// Rule-labeled parse tree: children follow the right-hand-side nonterminals in order.
struct ParseTree {
    int rule = 0;
    std::vector<ParseTree> children;
};

// The tree's bracket word, with contexts threaded from `start`'s mark downwards.
std::vector<OmegaQ> derivation_to_brackets(const BracketSystem& sys, const Symbol& start,
                                           const ParseTree& t);

// Terminal word of the tree (sequence of terminal names).
std::vector<std::string> tree_yield(const Grammar& g, const ParseTree& t);

// Uniform-ish random tree for `start`, bounded by height.
ParseTree random_parse_tree(const Grammar& g, const Symbol& start, std::mt19937& rng, int max_height);

} // namespace cst
