#include "cst/linear.hpp"

#include <algorithm>
#include <optional>

#include "cst/bar_hillel.hpp"
#include "cst/error.hpp"

namespace cst {

namespace {

// Rules must read A -> a B b, A -> a b, or A -> a. The single-terminal rules
// supply the middle letters of odd-length words; everything else is rejected.
struct LinearShape {
    std::vector<Symbol> nts;          // sorted; state i of the pair automaton
    std::map<Symbol, int> state_of;
    int final_state = 0;
    struct Step {
        Symbol lhs;
        std::string a, b;
        std::optional<Symbol> mid;    // empty = step to the final state
    };
    std::vector<Step> steps;
    std::map<int, std::set<std::string>> odd; // state -> middle letters
};

LinearShape probe_shape(const Grammar& g) {
    LinearShape s;
    auto set = g.nonterminals();
    set.insert(g.axiom);
    s.nts.assign(set.begin(), set.end());
    for (int i = 0; i < (int)s.nts.size(); ++i) s.state_of[s.nts[i]] = i;
    s.final_state = (int)s.nts.size();
    for (const auto& r : g.rules) {
        if (r.rhs.size() == 3 && r.rhs[0].is_terminal() && r.rhs[1].is_nonterminal() &&
            r.rhs[2].is_terminal()) {
            s.steps.push_back({r.lhs, r.rhs[0].name, r.rhs[2].name, r.rhs[1]});
        } else if (r.rhs.size() == 2 && r.rhs[0].is_terminal() && r.rhs[1].is_terminal()) {
            s.steps.push_back({r.lhs, r.rhs[0].name, r.rhs[1].name, std::nullopt});
        } else if (r.rhs.size() == 1 && r.rhs[0].is_terminal()) {
            s.odd[s.state_of.at(r.lhs)].insert(r.rhs[0].name);
        } else {
            throw PreconditionError(
                "linear decomposition needs rules of shape A -> a B b, A -> a b, or A -> a");
        }
    }
    return s;
}

// Deterministic transition order shared by the factorization and the bracket
// construction, so "t<i>" means the same transition everywhere.
std::vector<Nfa::Transition> sorted_transitions(const Nfa& a) {
    std::vector<Nfa::Transition> tr = a.transitions;
    std::sort(tr.begin(), tr.end());
    tr.erase(std::unique(tr.begin(), tr.end()), tr.end());
    return tr;
}

PairSymbol split_pair(const std::string& sym) {
    auto pos = sym.find(',');
    if (pos == std::string::npos)
        throw PreconditionError("factorization expects pair-named symbols like \"a,b\"");
    return {sym.substr(0, pos), sym.substr(pos + 1)};
}

} // namespace

Nfa linear_w_nfa(const Grammar& g) {
    LinearShape s = probe_shape(g);
    Nfa w;
    for (int i = 0; i <= s.final_state; ++i) w.add_state();
    w.initial.insert(s.state_of.at(g.axiom));
    w.finals.insert(s.final_state);
    for (const auto& st : s.steps) {
        int to = st.mid ? s.state_of.at(*st.mid) : s.final_state;
        w.add_transition(s.state_of.at(st.lhs), PairSymbol{st.a, st.b}.name(), to);
    }
    return w;
}

MedvedevFactorization medvedev_factor(const Nfa& a) {
    MedvedevFactorization m;
    auto tr = sorted_transitions(a);
    for (std::size_t i = 0; i < tr.size(); ++i) {
        std::string name = "t" + std::to_string(i);
        m.lambda.push_back(name);
        m.f.emplace(name, split_pair(tr[i].symbol));
    }
    m.t.k = 2;
    for (int q : a.initial)
        if (a.finals.count(q)) m.t.whole.insert(std::vector<std::string>{}); // empty path
    for (std::size_t i = 0; i < tr.size(); ++i) {
        if (a.initial.count(tr[i].from)) m.t.prefixes.insert({m.lambda[i]});
        if (a.finals.count(tr[i].to)) m.t.suffixes.insert({m.lambda[i]});
        for (std::size_t j = 0; j < tr.size(); ++j)
            if (tr[i].to == tr[j].from) m.t.factors.insert({m.lambda[i], m.lambda[j]});
    }
    return m;
}

LinearDecomposition linear_cst_build(const Grammar& g0) {
    probe_shape(g0); // validate the input as given, before dead rules drop out
    Grammar g = reduce(g0);
    LinearShape shape = probe_shape(g);
    Nfa w = linear_w_nfa(g);

    LinearDecomposition d;
    for (const auto& t : g.terminals()) d.sigma.push_back(t.name);
    std::sort(d.sigma.begin(), d.sigma.end());
    d.fact = medvedev_factor(w);

    auto tr = sorted_transitions(w);
    for (const auto& l : d.fact.lambda) {
        d.opens.push_back("o." + l);
        d.closes.push_back("c." + l);
        d.g["o." + l] = d.fact.f.at(l).first;
        d.g["c." + l] = d.fact.f.at(l).second;
    }
    std::set<std::string> middle_letters;
    for (const auto& [state, letters] : shape.odd)
        middle_letters.insert(letters.begin(), letters.end());
    for (const auto& a : middle_letters) {
        d.neutrals.push_back("-." + a);
        d.g["-." + a] = a;
    }

    // The control language: an open run spelling an accepting path of the pair
    // automaton, then any nonempty close run (the Dyck matching will force it
    // to mirror the opens); odd words carry one neutral letter in between.
    // All of it is checkable in a two-symbol window.
    d.u_slt.k = 2;
    int axiom_state = shape.state_of.at(g.axiom);
    auto axiom_odd = shape.odd.find(axiom_state);
    if (axiom_odd != shape.odd.end())
        for (const auto& a : axiom_odd->second) {
            d.u_slt.prefixes.insert({"-." + a});
            d.u_slt.suffixes.insert({"-." + a}); // the one-letter word
        }
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const std::string oi = "o." + d.fact.lambda[i];
        if (w.initial.count(tr[i].from)) d.u_slt.prefixes.insert({oi});
        d.u_slt.suffixes.insert({"c." + d.fact.lambda[i]});
        for (std::size_t j = 0; j < tr.size(); ++j) {
            const std::string lj = d.fact.lambda[j];
            if (tr[i].to == tr[j].from) d.u_slt.factors.insert({oi, "o." + lj});
            if (w.finals.count(tr[i].to)) d.u_slt.factors.insert({oi, "c." + lj});
            d.u_slt.factors.insert({"c." + d.fact.lambda[i], "c." + lj});
        }
        auto it = shape.odd.find(tr[i].to);
        if (it != shape.odd.end())
            for (const auto& a : it->second) d.u_slt.factors.insert({oi, "-." + a});
    }
    for (const auto& a : middle_letters)
        for (const auto& l : d.fact.lambda) d.u_slt.factors.insert({"-." + a, "c." + l});

    d.u = trim(slt_to_nfa(d.u_slt));

    d.stats.n = 2 * d.fact.lambda.size();
    d.stats.l = d.neutrals.size();
    d.stats.w_states = (std::size_t)w.num_states;
    d.stats.lambda = d.fact.lambda.size();
    d.stats.u_states = (std::size_t)d.u.num_states;
    d.stats.u_transitions = d.u.transitions.size();

    d.provider_note =
        "classical one-letter-per-transition factorization: bracket alphabet size "
        "2*|lambda| grows with the grammar and the control window stays at width 2; "
        "the sharper bounds (a bracket alphabet of size 2*|Sigma|^2 independent of "
        "the grammar, and a window logarithmic in the automaton size) need a "
        "different factorization provider and are NOT reproduced here";
    return d;
}

DyckSpec linear_dyck_spec(const LinearDecomposition&) {
    DyckSpec spec;
    spec.classify = [](const std::string& s) -> int {
        if (s.rfind("o.", 0) == 0) return 1;
        if (s.rfind("c.", 0) == 0) return -1;
        return 0;
    };
    spec.matches = [](const std::string& open, const std::string& close) {
        return open.substr(2) == close.substr(2);
    };
    return spec;
}

LinearVerification linear_verify(const Grammar& g, const LinearDecomposition& d, int maxlen) {
    LinearVerification v;
    v.maxlen = maxlen;

    std::set<std::string> lhs;
    Nfa bounded = prune_bounded(d.u, maxlen);
    if (bounded.num_states > 0 && !bounded.finals.empty()) {
        std::vector<std::string> omega;
        omega.insert(omega.end(), d.opens.begin(), d.opens.end());
        omega.insert(omega.end(), d.closes.begin(), d.closes.end());
        omega.insert(omega.end(), d.neutrals.begin(), d.neutrals.end());
        std::sort(omega.begin(), omega.end());
        Grammar dy = dyck_grammar(omega, linear_dyck_spec(d));
        Grammar prod = bar_hillel_intersect(dy, bounded);
        std::map<std::string, std::vector<std::string>> img;
        for (const auto& [bracket, letter] : d.g) img[bracket] = {letter};
        // letter-to-letter, so image lengths equal bracket-word lengths
        lhs = enumerate_language(grammar_hom_image(prod, img), maxlen);
    }
    std::set<std::string> rhs = enumerate_language(g, maxlen);

    v.lhs_count = lhs.size();
    v.rhs_count = rhs.size();
    v.equal = lhs == rhs;
    std::vector<std::string> diff;
    std::set_symmetric_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                                  std::back_inserter(diff));
    for (const auto& wdiff : diff) {
        if (v.witnesses.size() >= 10) break;
        v.witnesses.push_back(wdiff);
    }
    return v;
}

} // namespace cst
