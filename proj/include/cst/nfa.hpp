#pragma once
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>
#include "cst/error.hpp"

namespace cst {

// Nondeterministic finite automaton over string-named symbols (no epsilon moves).
struct Nfa {
    int num_states = 0;
    std::set<int> initial;
    std::set<int> finals;
    struct Transition {
        int from;
        std::string symbol;
        int to;
        auto operator<=>(const Transition&) const = default;
    };
    std::vector<Transition> transitions;

    int add_state() { return num_states++; }
    void add_transition(int from, const std::string& symbol, int to) {
        transitions.push_back({from, symbol, to});
    }
    std::set<std::string> alphabet() const;
    bool accepts(const std::vector<std::string>& word) const;
};

// Drop states that are not both reachable and co-reachable.
Nfa trim(const Nfa& a);

// Keep only states lying on some accepting path of length <= max_symbols.
// Preserves the sub-language of words with <= max_symbols symbols.
Nfa prune_bounded(const Nfa& a, int max_symbols);

Nfa nfa_from_word(const std::vector<std::string>& word);
Nfa nfa_union(const Nfa& a, const Nfa& b);
Nfa nfa_concat(const Nfa& a, const Nfa& b);
Nfa nfa_plus(const Nfa& a);

// Replace every transition symbol by a nonempty sequence of symbols.
Nfa expand_symbols(const Nfa& a, const std::function<std::vector<std::string>(const std::string&)>& image);

// All accepted words with at most max_symbols symbols, joined with the same
// separator convention the grammar enumerator uses.
std::set<std::string> enumerate_nfa_words(const Nfa& a, int max_symbols,
                                          std::size_t word_budget = 2'000'000);

// Shortest word of at most max_symbols symbols accepted by exactly one of the
// two automata, or nothing when they agree on all of them. Breadth-first
// search over determinized state-set pairs; `budget` caps the visited pairs.
std::optional<std::vector<std::string>> bounded_difference_witness(const Nfa& a, const Nfa& b,
                                                                   int max_symbols,
                                                                   std::size_t budget = 1'000'000);

std::string join_symbols(const std::vector<std::string>& symbols, bool force_sep = false);

} // namespace cst
