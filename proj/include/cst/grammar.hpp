#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cst/error.hpp"

namespace cst {

// A grammar symbol. Terminals read from files are single characters; internally
// constructed grammars (tuple alphabets, bracket alphabets) may use longer
// terminal names, which the word machinery keeps unambiguous via separators.
struct Symbol {
    enum class Kind : std::uint8_t { Terminal, Nonterminal };
    Kind kind = Kind::Terminal;
    std::string name;

    Symbol() = default;
    Symbol(Kind k, std::string n) : kind(k), name(std::move(n)) {}

    static Symbol terminal(std::string n) { return {Kind::Terminal, std::move(n)}; }
    static Symbol terminal(char c) { return {Kind::Terminal, std::string(1, c)}; }
    static Symbol nonterminal(std::string n) { return {Kind::Nonterminal, std::move(n)}; }

    bool is_terminal() const { return kind == Kind::Terminal; }
    bool is_nonterminal() const { return kind == Kind::Nonterminal; }

    auto operator<=>(const Symbol&) const = default;
};

struct Rule {
    Symbol lhs;
    std::vector<Symbol> rhs; // empty = epsilon rule

    auto operator<=>(const Rule&) const = default;
};

// Context-free grammar with ordered rules. Rule labels are 1-based positions
// in `rules` (stable across printing; renumbered only by explicit passes).
struct Grammar {
    Symbol axiom;
    std::vector<Rule> rules;
    std::string form_tag; // "", "cnf", "dgnf", "cubic-dgnf", "even-dgnf", "q-cnf(r)", "q-dgnf(r)", "linear-dgnf"

    std::set<Symbol> nonterminals() const;
    std::set<Symbol> terminals() const;
    std::set<char> sigma_chars() const; // single-char terminal alphabet; throws if any terminal is longer
    std::vector<int> rules_for(const Symbol& nt) const; // 0-based rule indexes, in label order
    bool empty_language_marker() const { return rules.empty(); }
};

// --- parsing and printing ------------------------------------------------

// Parses the line-oriented grammar format:
//   # comment
//   axiom: S
//   S -> a S b | eps
// Tokens are whitespace-separated. [a-z0-9] single characters are terminals,
// tokens starting with an uppercase letter are nonterminals, `eps` is the
// empty word. Nonterminals are declared by use.
Grammar parse_grammar(const std::string& text);

// Canonical text form of a grammar (re-parseable when all terminals are
// single characters and nonterminal names are plain tokens).
std::string print_grammar(const Grammar& g);

// Renames nonterminals to file-safe names N0, N1, ... (axiom first, then
// first-use order); keeps terminals. Used before printing internal grammars.
Grammar rename_nonterminals(const Grammar& g);

// --- structural helpers ---------------------------------------------------

bool is_cnf(const Grammar& g);

// Nonterminals that derive the empty word.
std::set<Symbol> nullable_set(const Grammar& g);

// True iff the axiom derives the empty word.
bool derives_epsilon(const Grammar& g);

// Removes unproductive and unreachable symbols. If the axiom itself becomes
// unproductive the result is the empty-language marker (axiom, no rules).
Grammar reduce(const Grammar& g);

// Collapses nonterminals whose rule sets are indistinguishable under
// partition refinement (two symbols end in one class only when their rules
// coincide after replacing every nonterminal by its class). Each surviving
// class keeps its lexicographically smallest member as the name; duplicate
// rules are dropped. Language-preserving for every nonterminal, and the rhs
// *shapes* are untouched, so normal-form properties survive. When `rep` is
// given it receives the old-name -> representative map.
Grammar merge_equivalent_nonterminals(const Grammar& g, std::map<Symbol, Symbol>* rep = nullptr);

// Chomsky normal form of L(g) \ {eps}. Callers that need the empty word
// record derives_epsilon(g) beforehand and reattach it downstream.
Grammar to_cnf(const Grammar& g);

// --- language operations ---------------------------------------------------

// A "word" is a sequence of terminal occurrences. When every terminal of the
// grammar is a single character, words are plain strings; otherwise symbol
// names are joined with WordSep so multi-character terminals stay unambiguous.
inline constexpr char WordSep = '\x1f';

std::vector<std::string> split_word(const std::string& w); // inverse of the join, for either convention

struct EnumerateOptions {
    std::size_t word_budget = 2'000'000; // total stored words across all table cells
};

// All words of L(g) with at most max_symbols terminal occurrences.
std::set<std::string> enumerate_language(const Grammar& g, int max_symbols,
                                         const EnumerateOptions& opts = {});

// Same table for every nonterminal: table[X][len] = words of length len derivable from X.
std::map<Symbol, std::vector<std::set<std::string>>>
enumerate_table(const Grammar& g, int max_symbols, const EnumerateOptions& opts = {});

// CYK membership for CNF grammars over single-character terminals.
bool cyk_membership(const Grammar& cnf, const std::string& word);

// True iff some word of L(g) ends with w, i.e. the right quotient L(g)/w is
// nonempty. g must be in CNF; the empty suffix asks for plain nonemptiness.
bool quotient_nonempty(const Grammar& cnf, const std::string& w);

// --- generators -------------------------------------------------------------

// Grammar for { w w^R : w in (ab)* u (aab)* u ... u (a^k b)* } over {a,b}:
// one palindrome-wrapped subgrammar per block shape. Used by the alphabet
// trade-off report.
Grammar gen_gruska(int k);

} // namespace cst
