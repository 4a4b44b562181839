#include "cst/slt.hpp"

#include <map>

namespace cst {

bool slt_membership(const SltDescriptor& d, const std::vector<std::string>& word) {
    if (d.whole.count(word)) return true;
    int n = (int)word.size();
    if (n < d.k - 1) return false;
    std::vector<std::string> pre(word.begin(), word.begin() + (d.k - 1));
    std::vector<std::string> suf(word.end() - (d.k - 1), word.end());
    if (!d.prefixes.count(pre) || !d.suffixes.count(suf)) return false;
    for (int i = 0; i + d.k <= n; ++i) {
        std::vector<std::string> f(word.begin() + i, word.begin() + i + d.k);
        if (!d.factors.count(f)) return false;
    }
    return true;
}

Nfa slt_to_nfa(const SltDescriptor& d) {
    std::set<std::string> alpha;
    auto feed = [&](const std::set<std::vector<std::string>>& ws) {
        for (const auto& w : ws)
            for (const auto& s : w) alpha.insert(s);
    };
    feed(d.whole);
    feed(d.prefixes);
    feed(d.suffixes);
    feed(d.factors);

    // sliding-window part; short histories may only walk the prefix trie,
    // anything else is dead weight that trim would drop much too late
    std::set<std::vector<std::string>> viable_short;
    for (const auto& w : d.prefixes)
        for (std::size_t len = 0; len + 1 < w.size(); ++len)
            viable_short.insert(std::vector<std::string>(w.begin(), w.begin() + len + 1));

    Nfa win;
    std::map<std::vector<std::string>, int> state_of; // history of length <= k-1
    std::vector<std::vector<std::string>> todo;
    auto intern = [&](const std::vector<std::string>& h) {
        auto it = state_of.find(h);
        if (it != state_of.end()) return it->second;
        int s = win.add_state();
        state_of.emplace(h, s);
        todo.push_back(h);
        return s;
    };
    std::vector<std::string> empty_hist;
    win.initial.insert(intern(empty_hist));
    while (!todo.empty()) {
        auto h = todo.back();
        todo.pop_back();
        int from = state_of.at(h);
        for (const auto& a : alpha) {
            auto next = h;
            next.push_back(a);
            if ((int)next.size() < d.k - 1) {
                if (viable_short.count(next)) win.add_transition(from, a, intern(next));
            } else if ((int)next.size() == d.k - 1) {
                // entering the window regime checks the prefix condition
                if ((int)h.size() == d.k - 2 && !d.prefixes.count(next)) continue;
                win.add_transition(from, a, intern(next));
            } else {
                if (!d.factors.count(next)) continue;
                next.erase(next.begin());
                win.add_transition(from, a, intern(next));
            }
        }
    }
    for (const auto& [h, s] : state_of)
        if ((int)h.size() == d.k - 1 && d.suffixes.count(h)) win.finals.insert(s);

    // finite part for `whole`
    Nfa fin;
    int root = fin.add_state();
    fin.initial.insert(root);
    for (const auto& w : d.whole) {
        int prev = root;
        for (std::size_t i = 0; i < w.size(); ++i) {
            int nxt = fin.add_state();
            fin.add_transition(prev, w[i], nxt);
            prev = nxt;
        }
        fin.finals.insert(prev);
    }
    if (d.whole.count({})) fin.finals.insert(root);

    return trim(nfa_union(win, fin));
}

namespace {

// Labels of all length-n paths starting in `starts`, mapped to their end states.
std::map<std::vector<std::string>, std::set<int>>
paths_of_length(const Nfa& a, const std::set<int>& starts, int n, std::size_t budget) {
    std::vector<std::vector<std::pair<std::string, int>>> adj(a.num_states);
    for (const auto& t : a.transitions) adj[t.from].push_back({t.symbol, t.to});

    std::map<std::vector<std::string>, std::set<int>> cur;
    cur[{}] = starts;
    std::size_t cells = 0;
    for (int step = 0; step < n; ++step) {
        std::map<std::vector<std::string>, std::set<int>> next;
        for (const auto& [w, states] : cur)
            for (int v : states)
                for (const auto& [sym, u] : adj[v]) {
                    auto nw = w;
                    nw.push_back(sym);
                    if (next[nw].insert(u).second && ++cells > budget)
                        throw BudgetError("path collection exceeded its budget");
                }
        cur = std::move(next);
        if (cur.empty()) break;
    }
    return cur;
}

} // namespace

SltDescriptor slt_from_nfa(const Nfa& a0, int k, std::size_t budget) {
    if (k < 2) throw PreconditionError("slt_from_nfa needs window width k >= 2");
    Nfa a = trim(a0);
    SltDescriptor d;
    d.k = k;

    std::set<int> all_states;
    for (int s = 0; s < a.num_states; ++s) all_states.insert(s);

    for (const auto& [w, ends] : paths_of_length(a, a.initial, k - 1, budget))
        if ((int)w.size() == k - 1) d.prefixes.insert(w);
    for (const auto& [w, ends] : paths_of_length(a, all_states, k - 1, budget)) {
        if ((int)w.size() != k - 1) continue;
        for (int e : ends)
            if (a.finals.count(e)) {
                d.suffixes.insert(w);
                break;
            }
    }
    for (const auto& [w, ends] : paths_of_length(a, all_states, k, budget)) {
        (void)ends;
        if ((int)w.size() == k) d.factors.insert(w);
    }
    for (int len = 0; len <= k - 1; ++len)
        for (const auto& [w, ends] : paths_of_length(a, a.initial, len, budget))
            for (int e : ends)
                if (a.finals.count(e)) {
                    d.whole.insert(w);
                    break;
                }
    return d;
}

} // namespace cst
