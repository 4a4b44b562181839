#include "cst/bar_hillel.hpp"

#include <deque>
#include <tuple>

namespace cst {

Grammar bar_hillel_intersect(const Grammar& cnf, const Nfa& a, std::size_t triple_budget) {
    if (!cnf.empty_language_marker() && !is_cnf(cnf))
        throw PreconditionError("bar_hillel_intersect needs a CNF grammar");

    std::map<Symbol, int> idx;
    for (const auto& nt : cnf.nonterminals()) idx.emplace(nt, (int)idx.size());
    int m = (int)idx.size();
    int n = a.num_states;

    std::map<std::string, std::vector<int>> term_rules; // terminal -> lhs ids
    std::vector<std::vector<std::pair<int, int>>> with_left(m), with_right(m); // B -> (A, other)
    for (const auto& r : cnf.rules) {
        int A = idx.at(r.lhs);
        if (r.rhs.size() == 1) {
            term_rules[r.rhs[0].name].push_back(A);
        } else {
            int B = idx.at(r.rhs[0]), C = idx.at(r.rhs[1]);
            with_left[B].push_back({A, C});
            with_right[C].push_back({A, B});
        }
    }

    std::vector<std::set<std::pair<int, int>>> have(m);
    std::vector<std::map<int, std::vector<int>>> by_from(m), by_to(m);
    std::deque<std::tuple<int, int, int>> work; // (nt, p, q)
    std::size_t count = 0;
    auto add = [&](int A, int p, int q) {
        if (!have[A].insert({p, q}).second) return;
        if (++count > triple_budget)
            throw BudgetError("intersection produced too many product nonterminals");
        by_from[A][p].push_back(q);
        by_to[A][q].push_back(p);
        work.push_back({A, p, q});
    };

    for (const auto& t : a.transitions) {
        auto it = term_rules.find(t.symbol);
        if (it == term_rules.end()) continue;
        for (int A : it->second) add(A, t.from, t.to);
    }
    while (!work.empty()) {
        auto [B, p, q] = work.front();
        work.pop_front();
        for (auto [A, C] : with_left[B]) {
            auto it = by_from[C].find(q);
            if (it == by_from[C].end()) continue;
            // copy: add() may grow the indexed vector we are walking
            std::vector<int> rs = it->second;
            for (int r : rs) add(A, p, r);
        }
        for (auto [A, Bl] : with_right[B]) {
            auto it = by_to[Bl].find(p);
            if (it == by_to[Bl].end()) continue;
            std::vector<int> ss = it->second;
            for (int s : ss) add(A, s, q);
        }
    }

    std::vector<Symbol> nt_of(m);
    for (const auto& [sym, i] : idx) nt_of[i] = sym;
    auto trip_name = [&](int A, int p, int q) {
        return Symbol::nonterminal("P" + std::to_string(p) + "_" + std::to_string(q) + "_" + nt_of[A].name);
    };

    Grammar out;
    out.axiom = Symbol::nonterminal("S0");
    (void)n;
    if (!cnf.empty_language_marker()) {
        int S = idx.at(cnf.axiom);
        for (int i : a.initial)
            for (int f : a.finals)
                if (have[S].count({i, f})) out.rules.push_back({out.axiom, {trip_name(S, i, f)}});
    }
    for (const auto& r : cnf.rules) {
        int A = idx.at(r.lhs);
        if (r.rhs.size() == 1) {
            for (const auto& t : a.transitions)
                if (t.symbol == r.rhs[0].name && have[A].count({t.from, t.to}))
                    out.rules.push_back({trip_name(A, t.from, t.to), {r.rhs[0]}});
        } else {
            int B = idx.at(r.rhs[0]), C = idx.at(r.rhs[1]);
            for (const auto& [p, q] : have[B]) {
                auto it = by_from[C].find(q);
                if (it == by_from[C].end()) continue;
                for (int s : it->second)
                    if (have[A].count({p, s}))
                        out.rules.push_back(
                            {trip_name(A, p, s), {trip_name(B, p, q), trip_name(C, q, s)}});
            }
        }
    }
    return reduce(out);
}

Grammar grammar_hom_image(const Grammar& g, const std::map<std::string, std::vector<std::string>>& image) {
    Grammar out;
    out.axiom = g.axiom;
    for (const auto& r : g.rules) {
        Rule nr{r.lhs, {}};
        for (const auto& s : r.rhs) {
            if (s.is_nonterminal()) {
                nr.rhs.push_back(s);
                continue;
            }
            auto it = image.find(s.name);
            if (it == image.end())
                throw PreconditionError("no homomorphic image for terminal '" + s.name + "'");
            for (const auto& t : it->second) nr.rhs.push_back(Symbol::terminal(t));
        }
        out.rules.push_back(std::move(nr));
    }
    return out;
}

} // namespace cst
