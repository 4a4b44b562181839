#include "cst/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cst {

std::set<Symbol> Grammar::nonterminals() const {
    std::set<Symbol> out;
    out.insert(axiom);
    for (const auto& r : rules) {
        out.insert(r.lhs);
        for (const auto& s : r.rhs)
            if (s.is_nonterminal()) out.insert(s);
    }
    return out;
}

std::set<Symbol> Grammar::terminals() const {
    std::set<Symbol> out;
    for (const auto& r : rules)
        for (const auto& s : r.rhs)
            if (s.is_terminal()) out.insert(s);
    return out;
}

std::set<char> Grammar::sigma_chars() const {
    std::set<char> out;
    for (const auto& t : terminals()) {
        if (t.name.size() != 1)
            throw PreconditionError("terminal '" + t.name + "' is not a single character");
        out.insert(t.name[0]);
    }
    return out;
}

std::vector<int> Grammar::rules_for(const Symbol& nt) const {
    std::vector<int> out;
    for (int i = 0; i < (int)rules.size(); ++i)
        if (rules[i].lhs == nt) out.push_back(i);
    return out;
}

// --- parsing -----------------------------------------------------------------

namespace {

struct Token {
    std::string text;
    int line;
    int col;
};

bool is_terminal_token(const std::string& t) {
    return t.size() == 1 && (std::islower((unsigned char)t[0]) || std::isdigit((unsigned char)t[0]));
}

bool is_nonterminal_token(const std::string& t) {
    if (t.empty() || !std::isupper((unsigned char)t[0])) return false;
    for (char c : t)
        if (!std::isalnum((unsigned char)c) && c != '_' && c != '\'') return false;
    return true;
}

std::vector<Token> tokenize_line(const std::string& line, int lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace((unsigned char)line[i])) { ++i; continue; }
        std::size_t start = i;
        while (i < line.size() && !std::isspace((unsigned char)line[i]) && line[i] != '#') ++i;
        out.push_back({line.substr(start, i - start), lineno, (int)start + 1});
    }
    return out;
}

} // namespace

Grammar parse_grammar(const std::string& text) {
    Grammar g;
    bool have_axiom = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize_line(line, lineno);
        if (toks.empty()) continue;

        if (toks[0].text == "axiom:" || (toks[0].text == "axiom" && toks.size() > 1 && toks[1].text == ":")) {
            std::size_t at = (toks[0].text == "axiom:") ? 1 : 2;
            if (toks.size() != at + 1)
                throw ParseError("axiom line must name exactly one nonterminal", lineno, toks[0].col);
            if (!is_nonterminal_token(toks[at].text))
                throw ParseError("axiom '" + toks[at].text + "' is not a nonterminal", toks[at].line, toks[at].col);
            if (have_axiom)
                throw ParseError("duplicate axiom line", lineno, toks[0].col);
            g.axiom = Symbol::nonterminal(toks[at].text);
            have_axiom = true;
            continue;
        }

        // rule line: LHS -> alt | alt
        if (!is_nonterminal_token(toks[0].text))
            throw ParseError("rule must start with a nonterminal, got '" + toks[0].text + "'",
                             toks[0].line, toks[0].col);
        if (toks.size() < 2 || toks[1].text != "->")
            throw ParseError("expected '->' after '" + toks[0].text + "'", toks[0].line, toks[0].col);

        Symbol lhs = Symbol::nonterminal(toks[0].text);
        std::vector<std::vector<Symbol>> alts;
        std::vector<Symbol> cur;
        bool cur_is_eps = false;
        bool cur_any = false;
        auto flush = [&](int l, int c) {
            if (!cur_any)
                throw ParseError("empty alternative", l, c);
            alts.push_back(cur);
            cur.clear();
            cur_is_eps = false;
            cur_any = false;
        };
        for (std::size_t i = 2; i < toks.size(); ++i) {
            const Token& t = toks[i];
            if (t.text == "|") { flush(t.line, t.col); continue; }
            if (t.text == "eps") {
                if (cur_any)
                    throw ParseError("'eps' must stand alone in an alternative", t.line, t.col);
                cur_is_eps = true;
                cur_any = true;
                continue;
            }
            if (cur_is_eps)
                throw ParseError("'eps' must stand alone in an alternative", t.line, t.col);
            if (is_terminal_token(t.text)) cur.push_back(Symbol::terminal(t.text));
            else if (is_nonterminal_token(t.text)) cur.push_back(Symbol::nonterminal(t.text));
            else
                throw ParseError("bad token '" + t.text + "' (terminals are single [a-z0-9] characters)",
                                 t.line, t.col);
            cur_any = true;
        }
        flush(lineno, (int)line.size());
        for (auto& a : alts) g.rules.push_back({lhs, a});
    }

    if (!have_axiom) throw ParseError("missing axiom line", lineno, 1);
    if (g.rules.empty()) throw ParseError("grammar has no rules", lineno, 1);
    return g;
}

std::string print_grammar(const Grammar& g) {
    std::ostringstream out;
    out << "axiom: " << g.axiom.name << "\n";
    for (const auto& r : g.rules) {
        out << r.lhs.name << " ->";
        if (r.rhs.empty()) {
            out << " eps";
        } else {
            for (const auto& s : r.rhs) out << ' ' << s.name;
        }
        out << "\n";
    }
    return out.str();
}

Grammar rename_nonterminals(const Grammar& g) {
    std::map<Symbol, Symbol> ren;
    int next = 0;
    auto intern = [&](const Symbol& s) -> Symbol {
        auto it = ren.find(s);
        if (it != ren.end()) return it->second;
        Symbol fresh = Symbol::nonterminal("N" + std::to_string(next++));
        ren.emplace(s, fresh);
        return fresh;
    };
    Grammar out;
    out.form_tag = g.form_tag;
    out.axiom = intern(g.axiom);
    for (const auto& r : g.rules) {
        Rule nr;
        nr.lhs = intern(r.lhs);
        for (const auto& s : r.rhs)
            nr.rhs.push_back(s.is_nonterminal() ? intern(s) : s);
        out.rules.push_back(std::move(nr));
    }
    return out;
}

// --- structure -----------------------------------------------------------------

bool is_cnf(const Grammar& g) {
    for (const auto& r : g.rules) {
        if (r.rhs.size() == 1 && r.rhs[0].is_terminal()) continue;
        if (r.rhs.size() == 2 && r.rhs[0].is_nonterminal() && r.rhs[1].is_nonterminal()) continue;
        return false;
    }
    return !g.rules.empty();
}

std::set<Symbol> nullable_set(const Grammar& g) {
    std::set<Symbol> nullable;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : g.rules) {
            if (nullable.count(r.lhs)) continue;
            bool all = true;
            for (const auto& s : r.rhs)
                if (s.is_terminal() || !nullable.count(s)) { all = false; break; }
            if (all) {
                nullable.insert(r.lhs);
                changed = true;
            }
        }
    }
    return nullable;
}

bool derives_epsilon(const Grammar& g) { return nullable_set(g).count(g.axiom) > 0; }

Grammar reduce(const Grammar& g) {
    // productive symbols
    std::set<Symbol> productive;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : g.rules) {
            if (productive.count(r.lhs)) continue;
            bool ok = true;
            for (const auto& s : r.rhs)
                if (s.is_nonterminal() && !productive.count(s)) { ok = false; break; }
            if (ok) {
                productive.insert(r.lhs);
                changed = true;
            }
        }
    }
    if (!productive.count(g.axiom)) return Grammar{g.axiom, {}, g.form_tag};

    // reachable symbols, through productive rules only
    std::set<Symbol> reachable{g.axiom};
    changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : g.rules) {
            if (!reachable.count(r.lhs)) continue;
            bool ok = true;
            for (const auto& s : r.rhs)
                if (s.is_nonterminal() && !productive.count(s)) { ok = false; break; }
            if (!ok) continue;
            for (const auto& s : r.rhs)
                if (s.is_nonterminal() && reachable.insert(s).second) changed = true;
        }
    }

    Grammar out;
    out.axiom = g.axiom;
    out.form_tag = g.form_tag;
    for (const auto& r : g.rules) {
        if (!reachable.count(r.lhs) || !productive.count(r.lhs)) continue;
        bool ok = true;
        for (const auto& s : r.rhs)
            if (s.is_nonterminal() && (!productive.count(s) || !reachable.count(s))) { ok = false; break; }
        if (ok) out.rules.push_back(r);
    }
    if (out.rules.empty()) return Grammar{g.axiom, {}, g.form_tag};
    return out;
}

Grammar merge_equivalent_nonterminals(const Grammar& g, std::map<Symbol, Symbol>* rep) {
    std::vector<Symbol> nts;
    std::map<Symbol, int> id;
    for (const auto& nt : g.nonterminals()) {
        id.emplace(nt, (int)nts.size());
        nts.push_back(nt);
    }
    if (!id.count(g.axiom)) {
        id.emplace(g.axiom, (int)nts.size());
        nts.push_back(g.axiom);
    }
    int n = (int)nts.size();

    // rules indexed by lhs, with nonterminal rhs positions pre-resolved
    struct Template {
        std::vector<int> shape; // -1-terminal-index for terminals, nt id otherwise
    };
    std::vector<std::string> terminals;
    std::map<std::string, int> term_id;
    std::vector<std::vector<Template>> rules_of(n);
    for (const auto& r : g.rules) {
        Template t;
        for (const auto& s : r.rhs) {
            if (s.is_nonterminal()) {
                t.shape.push_back(id.at(s));
            } else {
                auto [it, fresh] = term_id.emplace(s.name, (int)terminals.size());
                if (fresh) terminals.push_back(s.name);
                t.shape.push_back(-1 - it->second);
            }
        }
        rules_of[id.at(r.lhs)].push_back(std::move(t));
    }

    // partition refinement on rule signatures; splitting stays inside the
    // current class, so the partition refines monotonically and stabilizes
    std::vector<int> cls(n, 0);
    for (std::size_t classes = 1;;) {
        std::map<std::pair<int, std::set<std::vector<int>>>, int> buckets;
        std::vector<int> next(n);
        for (int x = 0; x < n; ++x) {
            std::set<std::vector<int>> sig;
            for (const auto& t : rules_of[x]) {
                std::vector<int> row;
                row.reserve(t.shape.size());
                for (int v : t.shape) row.push_back(v < 0 ? v : n + cls[v]);
                sig.insert(std::move(row));
            }
            auto [it, fresh] =
                buckets.emplace(std::make_pair(cls[x], std::move(sig)), (int)buckets.size());
            next[x] = it->second;
        }
        cls = std::move(next);
        if (buckets.size() == classes) break;
        classes = buckets.size();
    }

    // representative per class: lexicographically smallest member name
    std::map<int, Symbol> head;
    for (int x = 0; x < n; ++x) {
        auto it = head.find(cls[x]);
        if (it == head.end() || nts[x].name < it->second.name) head[cls[x]] = nts[x];
    }
    if (rep) {
        rep->clear();
        for (int x = 0; x < n; ++x) (*rep)[nts[x]] = head.at(cls[x]);
    }

    Grammar out;
    out.axiom = head.at(cls[id.at(g.axiom)]);
    out.form_tag = g.form_tag;
    std::set<std::pair<int, std::vector<int>>> emitted;
    for (int x = 0; x < n; ++x) {
        if (!(head.at(cls[x]) == nts[x])) continue;
        for (const auto& t : rules_of[x]) {
            std::vector<int> row;
            for (int v : t.shape) row.push_back(v < 0 ? v : n + cls[v]);
            if (!emitted.insert({cls[x], row}).second) continue;
            Rule r{nts[x], {}};
            for (int v : t.shape)
                r.rhs.push_back(v < 0 ? Symbol::terminal(terminals[-1 - v])
                                      : head.at(cls[v]));
            out.rules.push_back(std::move(r));
        }
    }
    return out;
}

// --- to_cnf ---------------------------------------------------------------------

namespace {

// Fresh nonterminal name based on `base`, avoiding `used`; registers the result.
Symbol fresh_nt(const std::string& base, std::set<std::string>& used) {
    std::string name = base;
    while (used.count(name)) name += '\'';
    used.insert(name);
    return Symbol::nonterminal(name);
}

} // namespace

Grammar to_cnf(const Grammar& g0) {
    Grammar g = reduce(g0);
    if (g.empty_language_marker()) return Grammar{g.axiom, {}, "cnf"};

    // epsilon elimination (drops eps from the language; callers track the flag)
    {
        auto nullable = nullable_set(g);
        std::vector<Rule> out;
        std::set<Rule> seen;
        for (const auto& r : g.rules) {
            std::vector<int> opt; // positions that may be dropped
            for (int i = 0; i < (int)r.rhs.size(); ++i)
                if (r.rhs[i].is_nonterminal() && nullable.count(r.rhs[i])) opt.push_back(i);
            if (opt.size() > 20)
                throw BudgetError("epsilon elimination on a rule with " + std::to_string(opt.size()) +
                                  " nullable positions");
            for (std::uint64_t mask = 0; mask < (1ull << opt.size()); ++mask) {
                Rule nr{r.lhs, {}};
                std::size_t oi = 0;
                for (int i = 0; i < (int)r.rhs.size(); ++i) {
                    bool drop = false;
                    if (oi < opt.size() && opt[oi] == i) {
                        drop = (mask >> oi) & 1;
                        ++oi;
                    }
                    if (!drop) nr.rhs.push_back(r.rhs[i]);
                }
                if (nr.rhs.empty()) continue;
                if (seen.insert(nr).second) out.push_back(nr);
            }
        }
        g.rules = std::move(out);
    }

    // unit elimination
    {
        std::set<Symbol> nts = g.nonterminals();
        std::map<Symbol, std::set<Symbol>> unit; // A -> reachable via unit chains (incl. A)
        for (const auto& a : nts) unit[a].insert(a);
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& r : g.rules) {
                if (r.rhs.size() != 1 || !r.rhs[0].is_nonterminal()) continue;
                for (auto& [a, reach] : unit) {
                    if (!reach.count(r.lhs)) continue;
                    if (reach.insert(r.rhs[0]).second) changed = true;
                }
            }
        }
        std::vector<Rule> out;
        std::set<Rule> seen;
        // keep a stable order: lhs by first occurrence in the old rule list
        std::vector<Symbol> order;
        std::set<Symbol> in_order;
        for (const auto& r : g.rules)
            if (in_order.insert(r.lhs).second) order.push_back(r.lhs);
        for (const auto& a : order) {
            for (const auto& b : unit[a]) {
                for (const auto& r : g.rules) {
                    if (!(r.lhs == b)) continue;
                    if (r.rhs.size() == 1 && r.rhs[0].is_nonterminal()) continue;
                    Rule nr{a, r.rhs};
                    if (seen.insert(nr).second) out.push_back(nr);
                }
            }
        }
        g.rules = std::move(out);
    }

    g = reduce(g);
    if (g.empty_language_marker()) return Grammar{g.axiom, {}, "cnf"};

    std::set<std::string> used;
    for (const auto& nt : g.nonterminals()) used.insert(nt.name);

    // lift terminals out of long right-hand sides
    {
        std::map<Symbol, Symbol> lift;
        std::vector<Rule> out = g.rules;
        std::vector<Rule> lift_rules;
        for (auto& r : out) {
            if (r.rhs.size() < 2) continue;
            for (auto& s : r.rhs) {
                if (!s.is_terminal()) continue;
                auto it = lift.find(s);
                if (it == lift.end()) {
                    Symbol nt = fresh_nt("T_" + s.name, used);
                    it = lift.emplace(s, nt).first;
                    lift_rules.push_back({nt, {s}});
                }
                s = it->second;
            }
        }
        for (auto& r : lift_rules) out.push_back(std::move(r));
        g.rules = std::move(out);
    }

    // binarize
    {
        std::vector<Rule> out;
        int idx = 0;
        for (const auto& r : g.rules) {
            ++idx;
            if (r.rhs.size() <= 2) { out.push_back(r); continue; }
            Symbol prev = r.lhs;
            for (std::size_t i = 0; i + 2 < r.rhs.size(); ++i) {
                Symbol next = fresh_nt("B" + std::to_string(idx) + "_" + std::to_string(i), used);
                out.push_back({prev, {r.rhs[i], next}});
                prev = next;
            }
            out.push_back({prev, {r.rhs[r.rhs.size() - 2], r.rhs[r.rhs.size() - 1]}});
        }
        g.rules = std::move(out);
    }

    g = reduce(g);
    g.form_tag = "cnf";
    return g;
}

// --- enumeration -----------------------------------------------------------------

std::vector<std::string> split_word(const std::string& w) {
    std::vector<std::string> out;
    if (w.find(WordSep) != std::string::npos) {
        std::size_t start = 0;
        for (std::size_t i = 0; i <= w.size(); ++i) {
            if (i == w.size() || w[i] == WordSep) {
                out.push_back(w.substr(start, i - start));
                start = i + 1;
            }
        }
    } else {
        for (char c : w) out.emplace_back(1, c);
    }
    return out;
}

namespace {

struct Enumerator {
    const Grammar& g;
    int maxlen;
    bool sep_mode = false;
    std::size_t budget;
    std::size_t stored = 0;

    std::map<Symbol, int> nt_index;
    std::vector<std::vector<std::set<std::string>>> table; // [nt][len] -> words
    std::vector<int> stamp;                                // last pass in which nt's table grew
    int pass = 0;

    Enumerator(const Grammar& g_, int maxlen_, std::size_t budget_)
        : g(g_), maxlen(maxlen_), budget(budget_) {
        for (const auto& t : g.terminals())
            if (t.name.size() != 1) sep_mode = true;
        for (const auto& nt : g.nonterminals()) {
            int id = (int)nt_index.size();
            nt_index.emplace(nt, id);
        }
        table.assign(nt_index.size(), std::vector<std::set<std::string>>(maxlen + 1));
        stamp.assign(nt_index.size(), 0);
    }

    std::string join(const std::string& a, const std::string& b) const {
        if (!sep_mode) return a + b;
        if (a.empty()) return b;
        if (b.empty()) return a;
        return a + WordSep + b;
    }

    void insert(int nt, int len, const std::string& w) {
        if (table[nt][len].insert(w).second) {
            if (++stored > budget) throw BudgetError("language enumeration exceeded the word budget");
            stamp[nt] = pass;
        }
    }

    void run() {
        std::vector<int> rule_stamp(g.rules.size(), -1);
        bool changed = true;
        while (changed) {
            changed = false;
            ++pass;
            for (std::size_t ri = 0; ri < g.rules.size(); ++ri) {
                const Rule& r = g.rules[ri];
                bool dirty = rule_stamp[ri] < 0;
                for (const auto& s : r.rhs)
                    if (s.is_nonterminal() && stamp[nt_index.at(s)] >= rule_stamp[ri]) dirty = true;
                if (!dirty) continue;
                std::size_t before = stored;
                apply_rule(r);
                rule_stamp[ri] = pass;
                if (stored != before) changed = true;
            }
        }
    }

    void apply_rule(const Rule& r) {
        // DP across the right-hand side: parts[len] = words of the processed prefix
        std::vector<std::set<std::string>> parts(maxlen + 1);
        parts[0].insert("");
        for (const auto& s : r.rhs) {
            std::vector<std::set<std::string>> next(maxlen + 1);
            if (s.is_terminal()) {
                for (int l = 0; l + 1 <= maxlen; ++l)
                    for (const auto& w : parts[l]) next[l + 1].insert(join(w, s.name));
            } else {
                const auto& sub = table[nt_index.at(s)];
                for (int l = 0; l <= maxlen; ++l) {
                    if (parts[l].empty()) continue;
                    for (int d = 0; l + d <= maxlen; ++d) {
                        if (sub[d].empty()) continue;
                        for (const auto& w1 : parts[l])
                            for (const auto& w2 : sub[d]) next[l + d].insert(join(w1, w2));
                    }
                }
            }
            parts = std::move(next);
        }
        int lhs = nt_index.at(r.lhs);
        for (int l = 0; l <= maxlen; ++l)
            for (const auto& w : parts[l]) insert(lhs, l, w);
    }
};

} // namespace

std::set<std::string> enumerate_language(const Grammar& g, int max_symbols, const EnumerateOptions& opts) {
    Enumerator e(g, max_symbols, opts.word_budget);
    e.run();
    std::set<std::string> out;
    int ax = e.nt_index.at(g.axiom);
    for (int l = 0; l <= max_symbols; ++l)
        out.insert(e.table[ax][l].begin(), e.table[ax][l].end());
    return out;
}

std::map<Symbol, std::vector<std::set<std::string>>>
enumerate_table(const Grammar& g, int max_symbols, const EnumerateOptions& opts) {
    Enumerator e(g, max_symbols, opts.word_budget);
    e.run();
    std::map<Symbol, std::vector<std::set<std::string>>> out;
    for (const auto& [nt, id] : e.nt_index) out[nt] = e.table[id];
    return out;
}

// --- CYK --------------------------------------------------------------------------

bool cyk_membership(const Grammar& cnf, const std::string& word) {
    if (!is_cnf(cnf)) {
        if (cnf.empty_language_marker()) return false;
        throw PreconditionError("cyk_membership needs a CNF grammar");
    }
    int n = (int)word.size();
    if (n == 0) return false; // CNF languages never contain the empty word

    std::map<Symbol, int> idx;
    for (const auto& nt : cnf.nonterminals()) idx.emplace(nt, (int)idx.size());
    int m = (int)idx.size();

    // sets[i][j] = nonterminals deriving word[i, i+j)
    std::vector<std::vector<std::vector<bool>>> sets(
        n, std::vector<std::vector<bool>>(n + 1, std::vector<bool>(m, false)));
    for (int i = 0; i < n; ++i)
        for (const auto& r : cnf.rules)
            if (r.rhs.size() == 1 && r.rhs[0].name.size() == 1 && r.rhs[0].name[0] == word[i])
                sets[i][1][idx.at(r.lhs)] = true;
    for (int len = 2; len <= n; ++len)
        for (int i = 0; i + len <= n; ++i)
            for (int split = 1; split < len; ++split)
                for (const auto& r : cnf.rules) {
                    if (r.rhs.size() != 2) continue;
                    if (sets[i][split][idx.at(r.rhs[0])] && sets[i + split][len - split][idx.at(r.rhs[1])])
                        sets[i][len][idx.at(r.lhs)] = true;
                }
    return sets[0][n][idx.at(cnf.axiom)];
}

// --- quotient ------------------------------------------------------------------------

bool quotient_nonempty(const Grammar& cnf, const std::string& w) {
    if (cnf.empty_language_marker()) return false;
    if (!is_cnf(cnf)) throw PreconditionError("quotient_nonempty needs a CNF grammar");

    // Product with the |w|+1-state automaton for Sigma* w, checked for emptiness
    // by a boolean fixpoint over (state, nonterminal, state) triples.
    int n = (int)w.size();
    auto sigma = cnf.sigma_chars();

    std::map<Symbol, int> idx;
    for (const auto& nt : cnf.nonterminals()) idx.emplace(nt, (int)idx.size());
    int m = (int)idx.size();

    auto edge = [&](int p, char c) {
        std::vector<int> out;
        if (p == 0) out.push_back(0);
        if (p < n && w[p] == c) out.push_back(p + 1);
        return out;
    };
    (void)sigma;

    std::vector<std::vector<std::vector<bool>>> prod(
        n + 1, std::vector<std::vector<bool>>(m, std::vector<bool>(n + 1, false)));
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : cnf.rules) {
            int a = idx.at(r.lhs);
            if (r.rhs.size() == 1) {
                char c = r.rhs[0].name[0];
                for (int p = 0; p <= n; ++p)
                    for (int q : edge(p, c))
                        if (!prod[p][a][q]) { prod[p][a][q] = true; changed = true; }
            } else {
                int b = idx.at(r.rhs[0]), c2 = idx.at(r.rhs[1]);
                for (int p = 0; p <= n; ++p)
                    for (int q = 0; q <= n; ++q) {
                        if (!prod[p][b][q]) continue;
                        for (int s = 0; s <= n; ++s)
                            if (prod[q][c2][s] && !prod[p][a][s]) { prod[p][a][s] = true; changed = true; }
                    }
            }
        }
    }
    return prod[0][idx.at(cnf.axiom)][n];
}

// --- generators ------------------------------------------------------------------------

Grammar gen_gruska(int k) {
    if (k < 1) throw PreconditionError("gen_gruska needs k >= 1");
    Grammar g;
    g.axiom = Symbol::nonterminal("S");
    for (int i = 1; i <= k; ++i)
        g.rules.push_back({g.axiom, {Symbol::nonterminal("T" + std::to_string(i))}});
    for (int i = 1; i <= k; ++i) {
        Symbol t = Symbol::nonterminal("T" + std::to_string(i));
        Rule wrap{t, {}};
        for (int x = 0; x < i; ++x) wrap.rhs.push_back(Symbol::terminal('a'));
        wrap.rhs.push_back(Symbol::terminal('b'));
        wrap.rhs.push_back(t);
        wrap.rhs.push_back(Symbol::terminal('b'));
        for (int x = 0; x < i; ++x) wrap.rhs.push_back(Symbol::terminal('a'));
        g.rules.push_back(std::move(wrap));
        g.rules.push_back({t, {}}); // eps
    }
    return g;
}

} // namespace cst
