#include "cst/nfa.hpp"

#include <algorithm>
#include <queue>

#include "cst/grammar.hpp"

namespace cst {

std::set<std::string> Nfa::alphabet() const {
    std::set<std::string> out;
    for (const auto& t : transitions) out.insert(t.symbol);
    return out;
}

bool Nfa::accepts(const std::vector<std::string>& word) const {
    std::set<int> cur = initial;
    for (const auto& s : word) {
        std::set<int> next;
        for (const auto& t : transitions)
            if (t.symbol == s && cur.count(t.from)) next.insert(t.to);
        cur = std::move(next);
        if (cur.empty()) return false;
    }
    for (int f : finals)
        if (cur.count(f)) return true;
    return false;
}

namespace {

std::vector<std::vector<std::pair<int, int>>> adjacency(const Nfa& a, bool reverse) {
    // state -> list of (transition index, neighbor)
    std::vector<std::vector<std::pair<int, int>>> out(a.num_states);
    for (int i = 0; i < (int)a.transitions.size(); ++i) {
        const auto& t = a.transitions[i];
        if (reverse)
            out[t.to].push_back({i, t.from});
        else
            out[t.from].push_back({i, t.to});
    }
    return out;
}

std::vector<int> bfs_distance(const Nfa& a, const std::set<int>& sources, bool reverse) {
    std::vector<int> dist(a.num_states, -1);
    std::queue<int> q;
    for (int s : sources) {
        if (s >= 0 && s < a.num_states && dist[s] < 0) {
            dist[s] = 0;
            q.push(s);
        }
    }
    auto adj = adjacency(a, reverse);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [ti, u] : adj[v]) {
            (void)ti;
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
        }
    }
    return dist;
}

Nfa filter_states(const Nfa& a, const std::vector<bool>& keep) {
    Nfa out;
    std::vector<int> ren(a.num_states, -1);
    for (int s = 0; s < a.num_states; ++s)
        if (keep[s]) ren[s] = out.add_state();
    for (int s : a.initial)
        if (keep[s]) out.initial.insert(ren[s]);
    for (int s : a.finals)
        if (keep[s]) out.finals.insert(ren[s]);
    for (const auto& t : a.transitions)
        if (keep[t.from] && keep[t.to]) out.add_transition(ren[t.from], t.symbol, ren[t.to]);
    return out;
}

} // namespace

Nfa trim(const Nfa& a) {
    auto fwd = bfs_distance(a, a.initial, false);
    auto bwd = bfs_distance(a, a.finals, true);
    std::vector<bool> keep(a.num_states, false);
    for (int s = 0; s < a.num_states; ++s) keep[s] = fwd[s] >= 0 && bwd[s] >= 0;
    return filter_states(a, keep);
}

Nfa prune_bounded(const Nfa& a, int max_symbols) {
    auto fwd = bfs_distance(a, a.initial, false);
    auto bwd = bfs_distance(a, a.finals, true);
    std::vector<bool> keep(a.num_states, false);
    for (int s = 0; s < a.num_states; ++s)
        keep[s] = fwd[s] >= 0 && bwd[s] >= 0 && fwd[s] + bwd[s] <= max_symbols;
    Nfa out = filter_states(a, keep);
    // transitions that cannot sit on any short-enough accepting path go too
    auto f2 = bfs_distance(out, out.initial, false);
    auto b2 = bfs_distance(out, out.finals, true);
    Nfa res = out;
    res.transitions.clear();
    for (const auto& t : out.transitions)
        if (f2[t.from] + 1 + b2[t.to] <= max_symbols) res.transitions.push_back(t);
    return res;
}

Nfa nfa_from_word(const std::vector<std::string>& word) {
    Nfa a;
    int prev = a.add_state();
    a.initial.insert(prev);
    for (const auto& s : word) {
        int next = a.add_state();
        a.add_transition(prev, s, next);
        prev = next;
    }
    a.finals.insert(prev);
    return a;
}

namespace {

// Copy b's states into a with an offset; returns the offset.
int splice(Nfa& a, const Nfa& b) {
    int off = a.num_states;
    a.num_states += b.num_states;
    for (const auto& t : b.transitions) a.add_transition(t.from + off, t.symbol, t.to + off);
    return off;
}

} // namespace

Nfa nfa_union(const Nfa& a, const Nfa& b) {
    Nfa out = a;
    int off = splice(out, b);
    for (int s : b.initial) out.initial.insert(s + off);
    for (int s : b.finals) out.finals.insert(s + off);
    return out;
}

Nfa nfa_concat(const Nfa& a, const Nfa& b) {
    // no epsilon moves: bridge every a-final into b by duplicating b's initial moves
    Nfa out = a;
    out.finals.clear();
    int off = splice(out, b);
    for (const auto& t : b.transitions) {
        if (!b.initial.count(t.from)) continue;
        for (int f : a.finals) out.add_transition(f, t.symbol, t.to + off);
    }
    for (int s : b.finals) out.finals.insert(s + off);
    bool b_accepts_empty = false;
    for (int s : b.initial)
        if (b.finals.count(s)) b_accepts_empty = true;
    if (b_accepts_empty)
        for (int f : a.finals) out.finals.insert(f);
    bool a_accepts_empty = false;
    for (int s : a.initial)
        if (a.finals.count(s)) a_accepts_empty = true;
    if (a_accepts_empty)
        for (int s : b.initial) out.initial.insert(s + off);
    return out;
}

Nfa nfa_plus(const Nfa& a) {
    Nfa out = a;
    // loop back: from finals, re-enter via copies of initial moves
    for (const auto& t : a.transitions) {
        if (!a.initial.count(t.from)) continue;
        for (int f : a.finals) out.add_transition(f, t.symbol, t.to);
    }
    return out;
}

Nfa expand_symbols(const Nfa& a, const std::function<std::vector<std::string>(const std::string&)>& image) {
    Nfa out;
    out.num_states = a.num_states;
    out.initial = a.initial;
    out.finals = a.finals;
    for (const auto& t : a.transitions) {
        auto seq = image(t.symbol);
        if (seq.empty())
            throw PreconditionError("expand_symbols got an empty image for '" + t.symbol + "'");
        int prev = t.from;
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            int mid = out.add_state();
            out.add_transition(prev, seq[i], mid);
            prev = mid;
        }
        out.add_transition(prev, seq.back(), t.to);
    }
    return out;
}

std::string join_symbols(const std::vector<std::string>& symbols, bool force_sep) {
    bool sep = force_sep;
    for (const auto& s : symbols)
        if (s.size() != 1) sep = true;
    std::string out;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (sep && i) out += WordSep;
        out += symbols[i];
    }
    return out;
}

std::set<std::string> enumerate_nfa_words(const Nfa& a0, int max_symbols, std::size_t word_budget) {
    Nfa a = prune_bounded(a0, max_symbols);
    bool sep = false;
    for (const auto& s : a0.alphabet())
        if (s.size() != 1) sep = true;

    std::set<std::string> out;
    bool accepts_empty = false;
    for (int s : a.initial)
        if (a.finals.count(s)) accepts_empty = true;
    if (accepts_empty) out.insert("");

    // frontier: word -> reachable end states
    std::map<std::string, std::set<int>> frontier;
    std::string init_key;
    frontier[init_key] = a.initial;
    std::size_t stored = out.size();
    auto adj = adjacency(a, false);
    for (int len = 1; len <= max_symbols; ++len) {
        std::map<std::string, std::set<int>> next;
        for (const auto& [w, states] : frontier) {
            for (int v : states) {
                for (auto [ti, u] : adj[v]) {
                    const auto& sym = a.transitions[ti].symbol;
                    std::string nw = w;
                    if (sep && len > 1) nw += WordSep;
                    nw += sym;
                    next[nw].insert(u);
                    if (++stored > word_budget * 4)
                        throw BudgetError("automaton enumeration exceeded its budget");
                }
            }
        }
        for (const auto& [w, states] : next)
            for (int v : states)
                if (a.finals.count(v)) {
                    out.insert(w);
                    if (out.size() > word_budget)
                        throw BudgetError("automaton enumeration exceeded the word budget");
                    break;
                }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return out;
}

std::optional<std::vector<std::string>> bounded_difference_witness(const Nfa& a, const Nfa& b,
                                                                   int max_symbols,
                                                                   std::size_t budget) {
    std::set<std::string> alpha = a.alphabet();
    for (const auto& s : b.alphabet()) alpha.insert(s);
    auto table = [](const Nfa& n) {
        std::map<int, std::map<std::string, std::set<int>>> t;
        for (const auto& tr : n.transitions) t[tr.from][tr.symbol].insert(tr.to);
        return t;
    };
    auto ta = table(a), tb = table(b);
    auto accepts_set = [](const Nfa& n, const std::set<int>& s) {
        for (int q : s)
            if (n.finals.count(q)) return true;
        return false;
    };
    auto step = [](const std::map<int, std::map<std::string, std::set<int>>>& t,
                   const std::set<int>& from, const std::string& sym) {
        std::set<int> to;
        for (int q : from) {
            auto it = t.find(q);
            if (it == t.end()) continue;
            auto jt = it->second.find(sym);
            if (jt == it->second.end()) continue;
            to.insert(jt->second.begin(), jt->second.end());
        }
        return to;
    };

    using Pair = std::pair<std::set<int>, std::set<int>>;
    struct Node {
        Pair p;
        int parent;
        std::string via;
        int depth;
    };
    std::vector<Node> nodes;
    std::set<Pair> seen;
    nodes.push_back({{a.initial, b.initial}, -1, "", 0});
    seen.insert(nodes[0].p);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (accepts_set(a, nodes[i].p.first) != accepts_set(b, nodes[i].p.second)) {
            std::vector<std::string> w;
            for (int j = (int)i; nodes[j].parent >= 0; j = nodes[j].parent) w.push_back(nodes[j].via);
            std::reverse(w.begin(), w.end());
            return w;
        }
        if (nodes[i].depth == max_symbols) continue;
        for (const auto& sym : alpha) {
            Pair np{step(ta, nodes[i].p.first, sym), step(tb, nodes[i].p.second, sym)};
            if (np.first.empty() && np.second.empty()) continue; // rejects forever on both sides
            if (!seen.insert(np).second) continue;
            if (seen.size() > budget) throw BudgetError("difference search exceeded its budget");
            nodes.push_back({std::move(np), (int)i, sym, nodes[i].depth + 1});
        }
    }
    return std::nullopt;
}

} // namespace cst
