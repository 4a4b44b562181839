#include "cst/stanley.hpp"

#include <algorithm>
#include <random>

#include "cst/bar_hillel.hpp"

namespace cst {

namespace {

int bits_for(std::size_t n) { // smallest h with 2^h >= n (0 for n <= 1)
    int h = 0;
    while ((std::size_t(1) << h) < n) ++h;
    return h;
}

// label-1 written MSB-first in exactly `h` bits
std::vector<int> label_bits(std::size_t label, int h) {
    std::vector<int> v(h, 0);
    std::size_t x = label - 1;
    for (int i = h - 1; i >= 0 && x; --i) {
        v[i] = int(x & 1);
        x >>= 1;
    }
    return v;
}

// the symbols spelled between the delimiters for rule label i.
// open side: unary run, or the bits reversed; close side: primed, bits forward
// -- so the Dyck matching pairs digits innermost-first.
std::vector<std::string> code_symbols(const StanleyDecomposition& d, std::size_t label,
                                      bool close_side) {
    std::vector<std::string> out;
    if (d.mode == "unary") {
        std::string c = close_side ? d.delim_c + "'" : d.delim_c;
        out.assign(label, c);
        return out;
    }
    std::vector<int> bits = label_bits(label, d.stats.code_bits);
    if (!close_side) std::reverse(bits.begin(), bits.end());
    for (int b : bits) {
        std::string s = b ? d.digit1 : d.digit0;
        out.push_back(close_side ? s + "'" : s);
    }
    return out;
}

void encode_rec(const StanleyDecomposition& d, const Grammar& cnf, const ParseTree& t,
                std::vector<std::string>& out) {
    const Rule& r = cnf.rules.at((std::size_t)t.rule);
    if (r.rhs.size() == 1 && r.rhs[0].is_terminal()) {
        out.push_back(r.rhs[0].name);
        out.push_back(r.rhs[0].name + "'");
        return;
    }
    if (r.rhs.size() != 2 || t.children.size() != 2)
        throw PreconditionError("derivation tree does not follow a CNF rule");
    std::size_t label = (std::size_t)t.rule + 1;
    auto open = code_symbols(d, label, false);
    auto close = code_symbols(d, label, true);
    out.push_back(d.delim_d);
    out.insert(out.end(), open.begin(), open.end());
    out.push_back(d.delim_d);
    encode_rec(d, cnf, t.children[0], out);
    out.push_back(d.delim_d + "'");
    out.insert(out.end(), close.begin(), close.end());
    out.push_back(d.delim_d + "'");
    encode_rec(d, cnf, t.children[1], out);
}

} // namespace

StanleyDecomposition stanley_build(const Grammar& cnf, const std::string& code) {
    if (code != "unary" && code != "binary")
        throw PreconditionError("code must be 'unary' or 'binary'");
    if (!is_cnf(cnf)) throw PreconditionError("the erasing construction needs a CNF grammar");

    StanleyDecomposition d;
    d.mode = code;
    std::set<std::string> base;
    for (const auto& t : cnf.terminals()) base.insert(t.name);
    d.sigma.assign(base.begin(), base.end());

    // delimiters must stay distinct from the terminal letters
    auto fresh = [&base](const char* want) {
        std::string s = want;
        while (base.count(s)) s.insert(s.begin(), '_');
        return s;
    };
    d.delim_c = fresh("c");
    d.delim_d = fresh("d");

    d.stats.rules = cnf.rules.size();
    for (const auto& r : cnf.rules)
        if (r.rhs.size() == 2) ++d.stats.binary_rules;
    if (code == "binary") {
        d.digit0 = fresh("0");
        d.digit1 = fresh("1");
        d.stats.code_bits = bits_for(d.stats.rules);
    }

    for (const auto& a : d.sigma) {
        d.pairs.emplace_back(a, a + "'");
        d.h[a] = a;
        d.h[a + "'"] = "";
    }
    auto structural_pair = [&d](const std::string& s) {
        d.pairs.emplace_back(s, s + "'");
        d.h[s] = "";
        d.h[s + "'"] = "";
    };
    structural_pair(d.delim_d);
    if (code == "unary")
        structural_pair(d.delim_c);
    else {
        structural_pair(d.digit0);
        structural_pair(d.digit1);
    }
    d.stats.omega = 2 * d.pairs.size();

    // control automaton: one entry state per nonterminal, one shared state
    // after every terminal pair, and one code chain per binary rule and side
    Nfa r;
    std::map<Symbol, int> entry;
    for (const auto& x : cnf.nonterminals()) entry[x] = r.add_state();
    if (!entry.count(cnf.axiom)) entry[cnf.axiom] = r.add_state();
    int after_pair = r.add_state();
    r.initial = {entry.at(cnf.axiom)};
    r.finals = {after_pair};

    auto chain = [&r](int from, const std::vector<std::string>& syms, int to) {
        int cur = from;
        for (std::size_t k = 0; k < syms.size(); ++k) {
            int nxt = k + 1 == syms.size() ? to : r.add_state();
            r.add_transition(cur, syms[k], nxt);
            cur = nxt;
        }
    };

    std::map<std::string, int> pair_head; // letter -> state between a and a'
    for (const auto& rule : cnf.rules) {
        if (rule.rhs.size() != 1) continue;
        const std::string& a = rule.rhs[0].name;
        auto [it, fresh_head] = pair_head.emplace(a, 0);
        if (fresh_head) {
            it->second = r.add_state();
            r.add_transition(it->second, a + "'", after_pair);
        }
        r.add_transition(entry.at(rule.lhs), a, it->second);
    }
    for (std::size_t idx = 0; idx < cnf.rules.size(); ++idx) {
        const Rule& rule = cnf.rules[idx];
        if (rule.rhs.size() != 2) continue;
        std::size_t label = idx + 1;
        std::vector<std::string> open{d.delim_d};
        auto oc = code_symbols(d, label, false);
        open.insert(open.end(), oc.begin(), oc.end());
        open.push_back(d.delim_d);
        chain(entry.at(rule.lhs), open, entry.at(rule.rhs[0]));

        std::vector<std::string> close{d.delim_d + "'"};
        auto cc = code_symbols(d, label, true);
        close.insert(close.end(), cc.begin(), cc.end());
        close.push_back(d.delim_d + "'");
        chain(after_pair, close, entry.at(rule.rhs[1]));
    }
    d.r = trim(r);
    d.stats.r_states = (std::size_t)d.r.num_states;
    d.stats.r_transitions = d.r.transitions.size();

    d.width = code == "unary" ? int(2 * d.stats.rules + 2) : 2 * d.stats.code_bits + 2;
    // The window sets grow exponentially with the width; unary codes on large
    // grammars overrun any listing budget. The automaton stays exact either way.
    try {
        d.r_slt = slt_from_nfa(d.r, d.width);
    } catch (const BudgetError&) {
        d.r_slt = SltDescriptor{};
        d.r_slt.k = d.width;
        d.r_slt_ok = false;
    }
    return d;
}

StanleyDecomposition stanley_from_grammar(const Grammar& g, const std::string& code) {
    bool eps = derives_epsilon(g);
    StanleyDecomposition d = stanley_build(to_cnf(g), code);
    d.epsilon = eps;
    return d;
}

DyckSpec stanley_dyck_spec(const StanleyDecomposition&) {
    DyckSpec spec;
    spec.classify = [](const std::string& s) { return !s.empty() && s.back() == '\'' ? -1 : +1; };
    spec.matches = [](const std::string& o, const std::string& c) { return c == o + "'"; };
    return spec;
}

std::vector<std::string> stanley_encode_tree(const StanleyDecomposition& d, const Grammar& cnf,
                                             const ParseTree& t) {
    std::vector<std::string> out;
    encode_rec(d, cnf, t, out);
    return out;
}

StanleyVerification stanley_verify(const Grammar& g, const StanleyDecomposition& d, int maxlen) {
    StanleyVerification rep;
    rep.maxlen = maxlen;

    std::vector<std::string> omega;
    for (const auto& [o, c] : d.pairs) {
        omega.push_back(o);
        omega.push_back(c);
    }
    Grammar dy = dyck_grammar(omega, stanley_dyck_spec(d));
    Grammar prod = bar_hillel_intersect(dy, d.r);
    std::map<std::string, std::vector<std::string>> img;
    for (const auto& [s, to] : d.h)
        img[s] = to.empty() ? std::vector<std::string>{} : std::vector<std::string>{to};
    std::set<std::string> lhs = enumerate_language(grammar_hom_image(prod, img), maxlen);
    if (d.epsilon) lhs.insert("");
    std::set<std::string> rhs = enumerate_language(g, maxlen);
    rep.lhs_count = lhs.size();
    rep.rhs_count = rhs.size();
    rep.equal = lhs == rhs;
    if (!rep.equal) {
        std::vector<std::string> diff;
        std::set_symmetric_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                                      std::back_inserter(diff));
        for (std::size_t i = 0; i < diff.size() && i < 10; ++i) rep.witnesses.push_back(diff[i]);
    }

    // how much longer do the preimages run? sample derivations for the log
    Grammar cnf = to_cnf(g);
    if (!cnf.rules.empty()) {
        std::mt19937 rng(424242);
        for (int it = 0; it < 200; ++it) {
            ParseTree t = random_parse_tree(cnf, cnf.axiom, rng, 8);
            auto u = stanley_encode_tree(d, cnf, t);
            auto w = tree_yield(cnf, t);
            if (!w.empty())
                rep.max_erasure_ratio =
                    std::max(rep.max_erasure_ratio, double(u.size()) / double(w.size()));
        }
    }
    return rep;
}

} // namespace cst
