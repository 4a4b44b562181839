#pragma once
#include <map>
#include <string>
#include <vector>

#include "cst/brackets.hpp"
#include "cst/dyck.hpp"
#include "cst/grammar.hpp"
#include "cst/nfa.hpp"
#include "cst/slt.hpp"

namespace cst {

// Erasing decomposition L = h(D ∩ R) over a fixed-size Dyck alphabet: the
// terminal letters, a primed copy closing them, and a few delimiter pairs.
// Rule labels of the source grammar travel between the delimiters as unary
// runs or as fixed-width bit strings, so the control R is ruled by a short
// sliding window while h simply erases everything that is not a base letter.
struct StanleyDecomposition {
    std::string mode;               // "unary" | "binary"
    std::vector<std::string> sigma; // base letters (unprimed, kept by h)

    // Dyck pairs (open, close). Opens are the base letters, the count/digit
    // symbols and the delimiter; closes are their primed copies.
    std::vector<std::pair<std::string, std::string>> pairs;

    // Delimiter and digit names; "_"-prefixed when a base letter collides.
    std::string delim_c, delim_d;   // unary count symbol / code fence
    std::string digit0, digit1;     // binary mode only

    std::map<std::string, std::string> h; // symbol -> letter, "" = erased

    Nfa r;                 // control: right-linear label-code automaton
    SltDescriptor r_slt;   // window description of the same control
    bool r_slt_ok = true;  // false when the window sets were too large to list
    int width = 0;         // r_slt.k
    bool epsilon = false;  // the source language contained the empty word

    struct Stats {
        std::size_t rules = 0;        // source CNF rule count
        std::size_t binary_rules = 0; // rules X -> A B among them
        std::size_t omega = 0;        // Dyck alphabet size
        int code_bits = 0;            // binary mode: bits per label
        std::size_t r_states = 0;
        std::size_t r_transitions = 0;
    } stats;
};

// Builds the decomposition for a reduced CNF grammar (empty word handled via
// the epsilon flag by callers that normalized it away). code: unary | binary.
StanleyDecomposition stanley_build(const Grammar& cnf, const std::string& code);

// Convenience: normalize any grammar to CNF, build, and set the epsilon flag.
StanleyDecomposition stanley_from_grammar(const Grammar& g, const std::string& code);

DyckSpec stanley_dyck_spec(const StanleyDecomposition& d);

// Canonical member of D ∩ R for a rule-labeled derivation tree of the CNF:
//   encode(X -> a)        = a a'
//   encode(E -> [i] A B)  = d code(i) d  encode(A)  d' code'(i) d'  encode(B)
std::vector<std::string> stanley_encode_tree(const StanleyDecomposition& d, const Grammar& cnf,
                                             const ParseTree& t);

struct StanleyVerification {
    int maxlen = 0;
    std::size_t lhs_count = 0, rhs_count = 0; // h(D ∩ R) vs. L(g), both cut at maxlen
    bool equal = false;
    std::vector<std::string> witnesses;       // up to 10 words of the symmetric difference
    double max_erasure_ratio = 0;             // max |u| / |h(u)| over sampled derivations
};

// Enumerates h(D ∩ L(R)) and L(g) up to maxlen letters and compares; also
// samples derivation trees to log how much longer the preimages run.
StanleyVerification stanley_verify(const Grammar& g, const StanleyDecomposition& d, int maxlen);

} // namespace cst
