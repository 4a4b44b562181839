#include "cst/dgnf.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace cst {

Grammar distinct_rhs(const Grammar& g0) {
    Grammar g = g0;
    std::set<std::string> used;
    for (const auto& nt : g.nonterminals()) used.insert(nt.name);

    // pass 1: relabel repeated occurrences within each right-hand side
    std::map<std::pair<Symbol, int>, Symbol> copy_of; // (base, occurrence#>=2) -> copy
    for (auto& r : g.rules) {
        std::map<Symbol, int> seen;
        for (auto& s : r.rhs) {
            if (!s.is_nonterminal()) continue;
            int n = ++seen[s];
            if (n == 1) continue;
            auto key = std::make_pair(s, n);
            auto it = copy_of.find(key);
            if (it == copy_of.end()) {
                std::string name = s.name + "_c" + std::to_string(n);
                while (used.count(name)) name += '\'';
                used.insert(name);
                it = copy_of.emplace(key, Symbol::nonterminal(name)).first;
            }
            s = it->second;
        }
    }

    // pass 2: copies behave exactly like their base nonterminal
    std::vector<Rule> extra;
    for (const auto& [key, copy] : copy_of) {
        for (const auto& r : g.rules)
            if (r.lhs == key.first) extra.push_back({copy, r.rhs});
    }
    for (auto& r : extra) g.rules.push_back(std::move(r));
    return g;
}

bool is_cubic_dgnf(const Grammar& g) {
    for (const auto& r : g.rules) {
        if (r.rhs.empty()) return false;
        if (r.rhs.size() == 1) {
            if (!r.rhs[0].is_terminal()) return false;
            continue;
        }
        if (!r.rhs.front().is_terminal() || !r.rhs.back().is_terminal()) return false;
        if (r.rhs.size() > 5) return false;
        for (std::size_t i = 1; i + 1 < r.rhs.size(); ++i)
            if (!r.rhs[i].is_nonterminal()) return false;
    }
    return !g.rules.empty();
}

namespace {

// The construction tracks regular sets of nonterminal strings. Two labeled
// graphs over the CNF nonterminals are fixed once:
//   spine-up   (kind L): X --B--> U  for each rule U -> X B
//   spine-down (kind R): U --B--> X  for each rule U -> B X
// Then {m : A =>*_leftmost  a m} is the path language a-starts -> {A} in L,
// and  {m : A =>*_rightmost m b} is the path language {A} -> b-enders in R.
// Every set nonterminal is either a literal one-symbol start {X} or a pair
// (initial states, final states) over one of the graphs; first/last-symbol
// quotients move the frontier sets, so the universe stays finite.
struct Builder {
    const Grammar& cnf;
    std::size_t nt_budget;

    std::vector<Symbol> nts;
    std::map<Symbol, int> id;
    std::map<std::string, std::vector<int>> nt_of_letter; // a -> sorted {X : X -> a}
    std::vector<std::vector<std::string>> letters_of;     // X -> sorted letters

    struct Graph {
        // adj[x][label] = targets, radj[y][label] = sources
        std::vector<std::map<int, std::vector<int>>> adj, radj;
        std::vector<std::vector<bool>> closure; // reachability incl. self
    };
    Graph graphs[2]; // 0 = L, 1 = R

    struct Key {
        int kind; // 0 = singleton, 1 = pair over L, 2 = pair over R
        std::vector<int> inits, finals;
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, int> interned;
    std::vector<Key> keys;
    std::deque<int> work;

    std::vector<Rule> rules;

    explicit Builder(const Grammar& cnf_, std::size_t budget) : cnf(cnf_), nt_budget(budget) {
        for (const auto& nt : cnf.nonterminals()) {
            id.emplace(nt, (int)nts.size());
            nts.push_back(nt);
        }
        int n = (int)nts.size();
        letters_of.assign(n, {});
        for (auto& gr : graphs) {
            gr.adj.assign(n, {});
            gr.radj.assign(n, {});
        }
        for (const auto& r : cnf.rules) {
            int u = id.at(r.lhs);
            if (r.rhs.size() == 1) {
                nt_of_letter[r.rhs[0].name].push_back(u);
                letters_of[u].push_back(r.rhs[0].name);
            } else {
                int b = id.at(r.rhs[0]), c = id.at(r.rhs[1]);
                graphs[0].adj[b][c].push_back(u);
                graphs[0].radj[u][c].push_back(b);
                graphs[1].adj[u][b].push_back(c);
                graphs[1].radj[c][b].push_back(u);
            }
        }
        for (auto& [a, v] : nt_of_letter) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        for (auto& v : letters_of) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        for (auto& gr : graphs) {
            gr.closure.assign(n, std::vector<bool>(n, false));
            for (int s = 0; s < n; ++s) {
                std::queue<int> q;
                gr.closure[s][s] = true;
                q.push(s);
                while (!q.empty()) {
                    int v = q.front();
                    q.pop();
                    for (const auto& [lab, outs] : gr.adj[v])
                        for (int u : outs)
                            if (!gr.closure[s][u]) {
                                gr.closure[s][u] = true;
                                q.push(u);
                            }
                }
            }
        }
    }

    const Graph& graph_of(const Key& k) const { return graphs[k.kind - 1]; }

    static std::vector<int> canon(std::vector<int> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }

    int intern(Key k) {
        k.inits = canon(std::move(k.inits));
        k.finals = canon(std::move(k.finals));
        auto it = interned.find(k);
        if (it != interned.end()) return it->second;
        int i = (int)keys.size();
        if ((std::size_t)i >= nt_budget)
            throw BudgetError("double Greibach conversion needed too many set nonterminals");
        interned.emplace(k, i);
        keys.push_back(std::move(k));
        work.push_back(i);
        return i;
    }

    Symbol name_of(int i) const { return Symbol::nonterminal("D" + std::to_string(i)); }

    std::vector<int> step(const Key& k, int label) const {
        const Graph& gr = graph_of(k);
        std::vector<int> out;
        for (int s : k.inits) {
            auto it = gr.adj[s].find(label);
            if (it != gr.adj[s].end()) out.insert(out.end(), it->second.begin(), it->second.end());
        }
        return canon(std::move(out));
    }

    std::vector<int> rstep(const Key& k, int label) const {
        const Graph& gr = graph_of(k);
        std::vector<int> out;
        for (int s : k.finals) {
            auto it = gr.radj[s].find(label);
            if (it != gr.radj[s].end()) out.insert(out.end(), it->second.begin(), it->second.end());
        }
        return canon(std::move(out));
    }

    bool connected(const Key& k, const std::vector<int>& from, const std::vector<int>& to) const {
        const Graph& gr = graph_of(k);
        for (int s : from)
            for (int t : to)
                if (gr.closure[s][t]) return true;
        return false;
    }

    bool has_eps(const Key& k) const {
        if (k.kind == 0) return false;
        for (int s : k.inits)
            if (std::binary_search(k.finals.begin(), k.finals.end(), s)) return true;
        return false;
    }

    std::vector<int> out_labels(const Key& k) const {
        const Graph& gr = graph_of(k);
        std::vector<int> out;
        for (int s : k.inits)
            for (const auto& [lab, tgt] : gr.adj[s]) out.push_back(lab);
        return canon(std::move(out));
    }

    std::vector<int> in_labels(const Key& k) const {
        const Graph& gr = graph_of(k);
        std::vector<int> out;
        for (int s : k.finals)
            for (const auto& [lab, src] : gr.radj[s]) out.push_back(lab);
        return canon(std::move(out));
    }

    // single-symbol members of the set
    std::vector<int> members1(const Key& k) const {
        if (k.kind == 0) return k.inits;
        std::vector<int> out;
        for (int y : out_labels(k)) {
            auto tgt = step(k, y);
            for (int s : tgt)
                if (std::binary_search(k.finals.begin(), k.finals.end(), s)) {
                    out.push_back(y);
                    break;
                }
        }
        return out;
    }

    // does the set contain a string of length >= 1?
    bool nonempty_positive(const Key& k) const {
        if (k.kind == 0) return true;
        for (int y : out_labels(k)) {
            auto nxt = step(k, y);
            if (!nxt.empty() && connected(k, nxt, k.finals)) return true;
        }
        return false;
    }

    // {m : Y =>*_lm a m}
    Key left_set(const std::string& a, int y) const {
        auto it = nt_of_letter.find(a);
        return Key{1, it == nt_of_letter.end() ? std::vector<int>{} : it->second, {y}};
    }

    // {m : Z =>*_rm m b}
    Key right_set(int z, const std::string& b) const {
        auto it = nt_of_letter.find(b);
        return Key{2, {z}, it == nt_of_letter.end() ? std::vector<int>{} : it->second};
    }

    bool key_viable(const Key& k) const {
        if (k.inits.empty() || (k.kind != 0 && k.finals.empty())) return false;
        return has_eps(k) || nonempty_positive(k);
    }

    // Emit `lhs -> a [comps...] b`, once per droppable-component subset.
    void emit_expanded(const Symbol& lhs, const std::string& a,
                       const std::vector<std::pair<Key, bool>>& comps, const std::string& b) {
        int n = (int)comps.size();
        for (int mask = 0; mask < (1 << n); ++mask) {
            bool ok = true;
            Rule r{lhs, {Symbol::terminal(a)}};
            for (int i = 0; i < n && ok; ++i) {
                bool drop = (mask >> i) & 1;
                if (drop) {
                    if (!comps[i].second) ok = false; // not nullable
                } else {
                    if (!nonempty_positive(comps[i].first)) ok = false;
                }
            }
            if (!ok) continue;
            for (int i = 0; i < n; ++i)
                if (!((mask >> i) & 1)) r.rhs.push_back(name_of(intern(comps[i].first)));
            r.rhs.push_back(Symbol::terminal(b));
            rules.push_back(std::move(r));
            if (rules.size() > 600'000)
                throw BudgetError("double Greibach conversion emitted too many rules");
        }
    }

    void process(int ki) {
        Key k = keys[ki];
        Symbol lhs = name_of(ki);

        // single symbols of K: one-letter words and first-letter expansions
        for (int y : members1(k)) {
            for (const auto& a : letters_of[y]) rules.push_back({lhs, {Symbol::terminal(a)}});
            // words a ... b coming from Y alone (length >= 2)
            for (const auto& [a, a_inits] : nt_of_letter) {
                (void)a_inits;
                Key K1all = left_set(a, y);
                if (!nonempty_positive(K1all)) continue;
                // last symbol Z of a member of L(a,Y)
                for (int z : in_labels(K1all)) {
                    auto f2 = rstep(K1all, z);
                    if (f2.empty()) continue;
                    Key K1{1, K1all.inits, f2};
                    if (!connected(K1, K1.inits, K1.finals) && !has_eps(K1)) continue;
                    bool k1_null = has_eps(K1);
                    for (const auto& b : letters_of_reaching(z)) {
                        Key K2 = right_set(z, b);
                        bool k2_null = z_has_letter(z, b);
                        if (!k2_null && !nonempty_positive(K2)) continue;
                        emit_expanded(lhs, a, {{K1, k1_null}, {K2, k2_null}}, b);
                    }
                }
            }
        }

        if (k.kind == 0) return;

        // members of length >= 2: split off first symbol Y and last symbol Z
        for (int y : out_labels(k)) {
            auto i2 = step(k, y);
            if (i2.empty()) continue;
            for (int z : in_labels(k)) {
                auto f2 = rstep(k, z);
                if (f2.empty()) continue;
                if (!connected(k, i2, f2)) continue;
                Key kmid{k.kind, i2, f2};
                bool mid_null = has_eps(kmid);
                for (const auto& [a, ainits] : nt_of_letter) {
                    Key K1 = left_set(a, y);
                    bool k1_null = y_has_letter(y, a);
                    if (!k1_null && !nonempty_positive(K1)) continue;
                    for (const auto& b : letters_of_reaching(z)) {
                        Key K3 = right_set(z, b);
                        bool k3_null = z_has_letter(z, b);
                        if (!k3_null && !nonempty_positive(K3)) continue;
                        emit_expanded(lhs, a, {{K1, k1_null}, {kmid, mid_null}, {K3, k3_null}}, b);
                    }
                }
            }
        }
    }

    bool y_has_letter(int y, const std::string& a) const {
        return std::binary_search(letters_of[y].begin(), letters_of[y].end(), a);
    }
    bool z_has_letter(int z, const std::string& b) const { return y_has_letter(z, b); }

    // letters b such that R(Z, b) is nonempty (some X with X -> b reachable from Z downwards)
    std::vector<std::string> letters_of_reaching(int z) const {
        std::vector<std::string> out;
        const Graph& gr = graphs[1];
        for (const auto& [b, ends] : nt_of_letter) {
            for (int e : ends)
                if (gr.closure[z][e]) {
                    out.push_back(b);
                    break;
                }
        }
        return out;
    }
};

} // namespace

CubicDgnf cnf_to_cubic_dgnf(const Grammar& cnf, const std::vector<Symbol>& starts, std::size_t nt_budget) {
    CubicDgnf out;
    if (cnf.empty_language_marker()) {
        out.g = Grammar{Symbol::nonterminal("D0"), {}, "cubic-dgnf"};
        return out;
    }
    if (!is_cnf(cnf)) throw PreconditionError("cnf_to_cubic_dgnf needs a CNF grammar");

    Builder b(cnf, nt_budget);
    auto nt_set = cnf.nonterminals();
    std::vector<std::pair<Symbol, int>> start_ids;
    for (const auto& s : starts) {
        if (!nt_set.count(s)) continue;
        start_ids.push_back({s, b.intern(Builder::Key{0, {b.id.at(s)}, {}})});
    }
    while (!b.work.empty()) {
        int ki = b.work.front();
        b.work.pop_front();
        b.process(ki);
    }

    Grammar g;
    g.form_tag = "cubic-dgnf";
    g.rules = std::move(b.rules);
    bool first = true;
    for (auto& [s, ki] : start_ids) {
        Symbol nt = b.name_of(ki);
        if (first) {
            g.axiom = nt;
            first = false;
        }
        out.start_of.emplace(s, nt);
    }
    if (first) {
        out.g = Grammar{Symbol::nonterminal("D0"), {}, "cubic-dgnf"};
        out.start_of.clear();
        return out;
    }

    // drop starts whose positive language is empty, and unusable rules
    for (auto it = out.start_of.begin(); it != out.start_of.end();) {
        Grammar probe = g;
        probe.axiom = it->second;
        if (reduce(probe).empty_language_marker())
            it = out.start_of.erase(it);
        else
            ++it;
    }
    if (out.start_of.empty()) {
        out.g = Grammar{Symbol::nonterminal("D0"), {}, "cubic-dgnf"};
        return out;
    }
    g.axiom = out.start_of.begin()->second;

    // keep exactly the rules reachable from some surviving start
    std::set<Symbol> keep;
    {
        std::deque<Symbol> q;
        for (auto& [s, nt] : out.start_of) {
            if (keep.insert(nt).second) q.push_back(nt);
        }
        std::multimap<Symbol, const Rule*> by_lhs;
        for (const auto& r : g.rules) by_lhs.emplace(r.lhs, &r);
        while (!q.empty()) {
            Symbol v = q.front();
            q.pop_front();
            auto [lo, hi] = by_lhs.equal_range(v);
            for (auto it = lo; it != hi; ++it)
                for (const auto& s : it->second->rhs)
                    if (s.is_nonterminal() && keep.insert(s).second) q.push_back(s);
        }
    }
    Grammar pruned;
    pruned.axiom = g.axiom;
    pruned.form_tag = g.form_tag;
    for (auto& r : g.rules)
        if (keep.count(r.lhs)) pruned.rules.push_back(std::move(r));
    out.g = std::move(pruned);
    return out;
}

} // namespace cst
