#pragma once
#include <string>
#include <vector>

#include "cst/encode.hpp"
#include "cst/linear.hpp"
#include "cst/stanley.hpp"

namespace cst {

// All serializers emit deterministic JSON: object keys sorted, set-valued
// arrays sorted, and code-base/alphabet counts that may exceed 64 bits
// rendered as decimal strings. Identical inputs give byte-identical text.

std::string cst_to_json(const CstDecomposition& d);

// Inverse of cst_to_json, reconstructing everything verification and word
// mapping need. Throws ParseError on malformed or differently-versioned input.
CstDecomposition cst_from_json(const std::string& text);

std::string stanley_to_json(const StanleyDecomposition& d);
std::string linear_to_json(const LinearDecomposition& d);

std::string verification_to_json(const VerificationReport& r);

// A bracket word in its external form: an array of [polarity, x, y, digit]
// entries, e.g. [["[","a","b",0], ["]]","b","a","17"]]. Digits may arrive as
// numbers or as decimal strings. Returns internal symbol names.
std::vector<std::string> word_from_tuple_json(const std::string& text);

// Size report around one decomposition, including the alphabet/state trade-off
// |Omega| * states(T)^2 against the source grammar's nonterminal count.
struct MetricsReport {
    std::size_t grammar_nts = 0, grammar_rules = 0;
    std::size_t cnf_nts = 0, cnf_rules = 0;
    std::size_t tuple_nts = 0, tuple_rules = 0;
    std::size_t q = 0;
    int m = 0;
    BigInt j = 0, n = 0, l = 0;
    int slt_width = 0;
    std::size_t t_states = 0, t_transitions = 0;
    std::size_t omega_materialized = 0;
    BigInt tradeoff_product = 0; // omega_materialized * t_states^2
    bool tradeoff_holds = false; // product >= grammar_nts
    std::string caveat;
};

MetricsReport metrics_for(const Grammar& g, const CstDecomposition& d);
std::string metrics_to_json(const MetricsReport& r);

} // namespace cst
