#pragma once
#include <set>
#include <string>
#include <vector>
#include "cst/nfa.hpp"

namespace cst {

// A strictly locally testable language of window width k, given by
//   x in L  iff  x in whole  or  (prefix_{k-1}(x) in prefixes and
//                                 suffix_{k-1}(x) in suffixes and
//                                 every k-factor of x is in factors).
// Words shorter than k-1 symbols are only reachable through `whole`.
struct SltDescriptor {
    int k = 2;
    std::set<std::vector<std::string>> whole;
    std::set<std::vector<std::string>> prefixes; // length k-1
    std::set<std::vector<std::string>> suffixes; // length k-1
    std::set<std::vector<std::string>> factors;  // length k
};

bool slt_membership(const SltDescriptor& d, const std::vector<std::string>& word);

// Automaton accepting exactly the described language.
Nfa slt_to_nfa(const SltDescriptor& d);

// Read a width-k descriptor off an automaton: prefixes/suffixes/factors are the
// short path labels of the trimmed automaton, `whole` its short accepted words.
// The result's language includes the automaton's; equality holds exactly when
// that language is k-testable in the strict sense.
SltDescriptor slt_from_nfa(const Nfa& a, int k, std::size_t budget = 4'000'000);

} // namespace cst
