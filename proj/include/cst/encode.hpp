#pragma once
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cst/brackets.hpp"
#include "cst/dyck.hpp"
#include "cst/grammar.hpp"
#include "cst/nfa.hpp"
#include "cst/quotient.hpp"
#include "cst/slt.hpp"

namespace cst {

// Code bases can exceed 64 bits (|Σ|-driven mode uses j = 2·|Σ|^44).
using BigInt = unsigned __int128;

std::string bigint_to_string(BigInt v);
BigInt bigint_from_string(const std::string& s); // decimal digits only

// A symbol of the grammar-independent bracket alphabet: polarity, the letter
// the projection keeps, the matching partner's letter, and one code digit.
// The window-testable variant marks block boundaries with bold polarity.
struct OmegaN {
    enum class Kind : std::uint8_t { Open, Close, Neutral };
    Kind kind = Kind::Open;
    bool bold = false;
    char x = 'a';
    char y = 'a';
    BigInt digit = 0;

    auto operator<=>(const OmegaN&) const = default;
    std::string name() const; // "[a.b.0"; bold "[[a.b.0"; neutral "-c.c.0"
};

// Inverse of OmegaN::name; empty when the string is not a symbol name.
std::optional<OmegaN> parse_omega_n(const std::string& name);

// Matching rule on symbol names: ⟨[,x,y,o⟩ pairs with ⟨],y,x,o⟩, bold with bold.
DyckSpec omega_n_dyck_spec();

struct EncodingParams {
    std::string mode = "minimal"; // or "paper"
    int m = 2;                    // code length = block order, even
    BigInt j = 2;                 // digit base, j^m >= coded
    std::size_t q = 0;            // open-bracket pairs in the inner alphabet
    std::size_t coded = 0;        // symbols carrying codes (opens and neutrals)
    bool cap_hit = false;         // minimal mode stopped at the m cap
    BigInt sigma_bound = 0;       // |Σ|^44 (letter-driven mode)
    BigInt nu = 0;                // p^16 over the CNF nonterminal count
};

// Smallest j ≥ 2 with j^m ≥ q.
BigInt pick_base(BigInt q, int m);

// The m-digit base-j numeral of ι−1, most significant digit first.
std::vector<BigInt> bracket_code(std::size_t iota, int m, BigInt j);

// Position-wise tupling of four equal-length words.
std::vector<std::array<std::string, 4>>
combinator(const std::vector<std::string>& x1, const std::vector<std::string>& x2,
           const std::vector<std::string>& x3, const std::vector<std::string>& x4);

// Per-symbol code images. `hopen`/`hclose` are the m-letter terminal blocks at
// the two ends of the bracket's rule; the close carries the reversed code.
std::vector<OmegaN> tau_open(const std::string& hopen, const std::string& hclose,
                             const std::vector<BigInt>& code, bool bold_marks);
std::vector<OmegaN> tau_close(const std::string& hopen, const std::string& hclose,
                              const std::vector<BigInt>& code, bool bold_marks);
std::vector<OmegaN> tau_neutral(const std::string& block, const std::vector<BigInt>& code,
                                bool bold_marks = false);

// Code assignment and symbol images for a whole bracket system. Codes go to
// opens and neutrals in (mark-first, prev, cur) order; each close shares its
// open's number.
struct TauMap {
    std::map<OmegaQ, std::size_t> iota;            // 1-based
    std::map<OmegaQ, std::vector<OmegaN>> image;   // every inner symbol, |image| = m
};
TauMap build_tau(const BracketSystem& sys, const EncodingParams& params, bool slt_variant);

// The decomposition L = ρ(D ∩ L(T)).
struct CstDecomposition {
    EncodingParams params;
    bool slt_variant = false;
    bool eps = false;                // ε ∈ L, and then ε ∈ L(T)
    std::vector<char> sigma;         // sorted terminal alphabet
    std::vector<OmegaN> omega;       // symbols materialized in T, sorted by name
    std::map<std::string, char> rho; // symbol name -> projected letter
    Nfa t;                           // control language over symbol names
    std::optional<SltDescriptor> t_slt; // window descriptor (variant only)

    struct Stats {
        std::size_t cnf_nts = 0, cnf_rules = 0;
        std::size_t tuple_nts = 0, tuple_rules = 0;
        std::size_t q = 0, coded = 0;
        std::size_t omega_materialized = 0, neutrals_materialized = 0;
        BigInt n_conceptual = 0; // 2·j·|Σ|²
        std::size_t t_states = 0, t_transitions = 0;
        int slt_width = 0; // m+1 when the variant is on
    } stats;
};

// Full pipeline: normalize to block double Greibach form of order m, build the
// inner bracket system, encode it, and assemble T. Minimal mode grows m in
// steps of two until 2^m covers the coded symbols (then j = 2), falling back
// to a larger base at the cap; letter-driven ("paper") mode fixes j = 2·|Σ|^44
// so the alphabet parameters depend on Σ alone.
CstDecomposition build_cst(const Grammar& g, const std::string& mode, bool slt_variant,
                           int m_cap = 8);

// Product grammar of the materialized-symbol Dyck restriction with T, bounded
// to witnesses of at most maxlen symbols. Terminals are symbol names.
Grammar dyck_t_product(const CstDecomposition& d, int maxlen);

struct VerificationReport {
    int maxlen = 0;
    std::size_t lhs_count = 0, rhs_count = 0;
    bool equal = false;
    std::vector<std::string> witnesses; // up to 10 words of the symmetric difference
    long long runtime_ms = 0;
};

// Enumerates ρ(D ∩ L(T)) and L(g) up to maxlen letters and compares.
VerificationReport verify_cst(const Grammar& g, const CstDecomposition& d, int maxlen);

} // namespace cst
