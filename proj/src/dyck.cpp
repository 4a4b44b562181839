#include "cst/dyck.hpp"

#include <map>

namespace cst {

bool dyck_check(const DyckSpec& spec, const std::vector<std::string>& word) {
    std::vector<const std::string*> stack;
    for (const auto& s : word) {
        int c = spec.classify(s);
        if (c == 0) continue;
        if (c > 0) {
            stack.push_back(&s);
        } else {
            if (stack.empty() || !spec.matches(*stack.back(), s)) return false;
            stack.pop_back();
        }
    }
    return stack.empty();
}

Grammar dyck_grammar(const std::vector<std::string>& symbols, const DyckSpec& spec) {
    Grammar g;
    g.axiom = Symbol::nonterminal("S");
    g.form_tag = "cnf";

    std::vector<int> opens, closes;
    for (int i = 0; i < (int)symbols.size(); ++i) {
        int c = spec.classify(symbols[i]);
        if (c > 0) opens.push_back(i);
        else if (c < 0) closes.push_back(i);
        else g.rules.push_back({g.axiom, {Symbol::terminal(symbols[i])}});
    }

    g.rules.push_back({g.axiom, {g.axiom, g.axiom}});
    std::map<int, Symbol> open_nt, close_nt, inner_nt;
    auto need = [&](std::map<int, Symbol>& m, int i, const char* prefix) {
        auto it = m.find(i);
        if (it == m.end())
            it = m.emplace(i, Symbol::nonterminal(prefix + std::to_string(i))).first;
        return it->second;
    };
    for (int o : opens)
        for (int c : closes) {
            if (!spec.matches(symbols[o], symbols[c])) continue;
            Symbol O = need(open_nt, o, "O");
            Symbol C = need(close_nt, c, "C");
            Symbol X = need(inner_nt, c, "X");
            g.rules.push_back({g.axiom, {O, C}});
            g.rules.push_back({g.axiom, {O, X}});
        }
    for (auto& [i, nt] : open_nt) g.rules.push_back({nt, {Symbol::terminal(symbols[i])}});
    for (auto& [i, nt] : close_nt) g.rules.push_back({nt, {Symbol::terminal(symbols[i])}});
    for (auto& [i, nt] : inner_nt) g.rules.push_back({nt, {g.axiom, close_nt.at(i)}});
    return g;
}

} // namespace cst
