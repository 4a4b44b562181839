#pragma once
#include <functional>
#include <string>
#include <vector>
#include "cst/grammar.hpp"

namespace cst {

// Classification of a bracket alphabet: +1 open, -1 close, 0 neutral.
struct DyckSpec {
    std::function<int(const std::string&)> classify;
    std::function<bool(const std::string&, const std::string&)> matches; // (open, close)
};

// Does the word balance? Neutral symbols are skipped; every close must match
// the nearest unmatched open.
bool dyck_check(const DyckSpec& spec, const std::vector<std::string>& word);

// CNF grammar for the nonempty balanced words over `symbols` (the empty word is
// left to callers). Rule shape: S -> S S | O C | O X, X -> S C, S -> neutral.
Grammar dyck_grammar(const std::vector<std::string>& symbols, const DyckSpec& spec);

} // namespace cst
