#include "cst/quotient.hpp"

#include <algorithm>
#include <deque>

#include "cst/dgnf.hpp"

namespace cst {

namespace {

struct Triple {
    Symbol nt;
    std::string u, v;
    bool mark;
    auto operator<=>(const Triple&) const = default;
};

std::vector<std::string> short_words(const std::set<char>& sigma, int below) {
    std::vector<std::string> out{""};
    std::size_t lo = 0;
    for (int len = 1; len < below; ++len) {
        std::size_t hi = out.size();
        for (std::size_t i = lo; i < hi; ++i)
            for (char c : sigma) out.push_back(out[i] + c);
        lo = hi;
    }
    return out;
}

} // namespace

QuotientedGrammar to_q_cnf(const Grammar& g0, int r) {
    if (r < 1) throw PreconditionError("block order must be at least 1");
    bool eps_flag = derives_epsilon(g0);
    Grammar cnf = rename_nonterminals(to_cnf(g0));
    std::string tag = "q-cnf(" + std::to_string(r) + ")";

    // residues mod r of the derivable lengths, per nonterminal
    std::map<Symbol, std::set<int>> res;
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& rule : cnf.rules) {
                auto& dst = res[rule.lhs];
                std::size_t before = dst.size();
                if (rule.rhs.size() == 1) {
                    dst.insert(1 % r);
                } else {
                    for (int x : res[rule.rhs[0]])
                        for (int y : res[rule.rhs[1]]) dst.insert((x + y) % r);
                }
                if (dst.size() != before) changed = true;
            }
        }
    }
    auto viable = [&](const Symbol& nt, const std::string& u, const std::string& v) {
        for (int l : res[nt])
            if (((int)u.size() + l) % r == (int)v.size() % r) return true;
        return false;
    };

    auto trip_name = [](const Triple& t) {
        return Symbol::nonterminal("Q" + t.nt.name + "_" + t.u + "_" + t.v + (t.mark ? "M" : ""));
    };

    std::map<Triple, bool> seen;
    std::deque<Triple> work;
    auto intern = [&](const Triple& t) {
        if (seen.emplace(t, true).second) {
            if (seen.size() > 200'000)
                throw BudgetError("block-form construction produced too many quotient symbols");
            work.push_back(t);
        }
        return trip_name(t);
    };

    Grammar out;
    out.axiom = Symbol::nonterminal("S0");
    out.form_tag = tag;

    std::vector<std::string> tails;
    if (!cnf.empty_language_marker()) tails = short_words(cnf.sigma_chars(), r);

    for (const auto& w : tails) {
        if (!viable(cnf.axiom, "", w) || !quotient_nonempty(cnf, w)) continue;
        Triple root{cnf.axiom, "", w, true};
        Rule ax{out.axiom, {intern(root)}};
        for (char c : w) ax.rhs.push_back(Symbol::terminal(c));
        out.rules.push_back(std::move(ax));
    }
    if (eps_flag) {
        Triple root{cnf.axiom, "", "", true};
        if (seen.emplace(root, true).second) {
            out.rules.push_back({out.axiom, {trip_name(root)}});
            // the root never enters `work`: the empty word needs no block clauses
        }
        out.rules.push_back({trip_name(root), {}});
    }

    while (!work.empty()) {
        Triple t = work.front();
        work.pop_front();
        Symbol lhs = trip_name(t);
        if (out.rules.size() > 400'000)
            throw BudgetError("block-form construction produced too many quotient rules");
        for (int ri : cnf.rules_for(t.nt)) {
            const Rule& rule = cnf.rules[ri];
            if (rule.rhs.size() == 1) {
                std::string ua = t.u + rule.rhs[0].name;
                if (t.v.empty() && (int)ua.size() == r) {
                    Rule nr{lhs, {}};
                    for (char c : ua) nr.rhs.push_back(Symbol::terminal(c));
                    out.rules.push_back(std::move(nr));
                } else if ((int)ua.size() < r && t.v == ua) {
                    out.rules.push_back({lhs, {}});
                }
            } else {
                for (const auto& mid : tails) {
                    if (!viable(rule.rhs[0], t.u, mid) || !viable(rule.rhs[1], mid, t.v)) continue;
                    Triple left{rule.rhs[0], t.u, mid, false};
                    Triple right{rule.rhs[1], mid, t.v, t.mark};
                    out.rules.push_back({lhs, {intern(left), intern(right)}});
                }
            }
        }
    }

    out = reduce(out);
    out.form_tag = tag;
    return {out, r};
}

bool is_q_cnf(const Grammar& g, int r) {
    if (g.rules.empty()) return false;
    for (const auto& rule : g.rules)
        for (const auto& s : rule.rhs)
            if (s == g.axiom) return false;
    for (const auto& rule : g.rules) {
        if (rule.lhs == g.axiom) {
            if (rule.rhs.empty() || !rule.rhs[0].is_nonterminal()) return false;
            if ((int)rule.rhs.size() - 1 >= r) return false;
            for (std::size_t i = 1; i < rule.rhs.size(); ++i)
                if (!rule.rhs[i].is_terminal() || rule.rhs[i].name.size() != 1) return false;
        } else {
            if (rule.rhs.empty()) continue; // eps
            if (rule.rhs.size() == 2 && rule.rhs[0].is_nonterminal() && rule.rhs[1].is_nonterminal())
                continue;
            if ((int)rule.rhs.size() != r) return false;
            for (const auto& s : rule.rhs)
                if (!s.is_terminal() || s.name.size() != 1) return false;
        }
    }
    return true;
}

QDgnfStages to_q_dgnf_stages(const Grammar& g, int r) {
    QuotientedGrammar qc = to_q_cnf(g, r);
    QDgnfStages st;
    st.order = r;
    st.derives_empty_word = derives_epsilon(g);

    // condense r-letter emissions into one block terminal; collect per-tail starts
    Grammar tg;
    tg.axiom = Symbol::nonterminal("Z0");
    std::map<std::string, Symbol> raw_start;
    for (const auto& rule : qc.g.rules) {
        if (rule.lhs == qc.g.axiom) {
            std::string w;
            for (std::size_t i = 1; i < rule.rhs.size(); ++i) w += rule.rhs[i].name;
            raw_start.emplace(w, rule.rhs[0]);
            continue;
        }
        if (rule.rhs.empty() || rule.rhs[0].is_nonterminal()) {
            tg.rules.push_back(rule);
            continue;
        }
        std::string block;
        for (const auto& s : rule.rhs) block += s.name;
        tg.rules.push_back({rule.lhs, {Symbol::terminal(block)}});
    }
    for (const auto& [w, nt] : raw_start) tg.rules.push_back({tg.axiom, {nt, nt}});

    auto nullable = nullable_set(tg);
    for (const auto& [w, nt] : raw_start)
        if (nullable.count(nt)) st.nullable_tails.insert(w);

    Grammar tcnf = to_cnf(tg);
    std::vector<Symbol> starts;
    for (const auto& [w, nt] : raw_start) starts.push_back(nt);
    CubicDgnf dg = cnf_to_cubic_dgnf(tcnf, starts);

    // the set construction leaves many interchangeable nonterminals behind;
    // collapsing them keeps every later stage (brackets, controls) small
    std::map<Symbol, Symbol> rep;
    st.tuple_dgnf = merge_equivalent_nonterminals(dg.g, &rep);
    for (const auto& [w, nt] : raw_start) {
        auto it = dg.start_of.find(nt);
        if (it != dg.start_of.end()) st.start_for.emplace(w, rep.at(it->second));
    }
    return st;
}

QuotientedGrammar to_q_dgnf(const Grammar& g, int r) {
    QDgnfStages st = to_q_dgnf_stages(g, r);
    std::string tag = "q-dgnf(" + std::to_string(r) + ")";

    Grammar out;
    out.axiom = Symbol::nonterminal("S0");
    out.form_tag = tag;

    std::set<std::string> tails;
    for (const auto& [w, nt] : st.start_for) tails.insert(w);
    for (const auto& w : st.nullable_tails) tails.insert(w);

    std::vector<Rule> eps_rules;
    for (const auto& w : tails) {
        Symbol start;
        auto it = st.start_for.find(w);
        if (it != st.start_for.end()) {
            start = it->second;
        } else {
            start = Symbol::nonterminal("E" + w);
        }
        Rule ax{out.axiom, {start}};
        for (char c : w) ax.rhs.push_back(Symbol::terminal(c));
        out.rules.push_back(std::move(ax));
        if (st.nullable_tails.count(w)) eps_rules.push_back({start, {}});
    }
    for (const auto& rule : st.tuple_dgnf.rules) {
        Rule nr{rule.lhs, {}};
        for (const auto& s : rule.rhs) {
            if (s.is_nonterminal()) {
                nr.rhs.push_back(s);
            } else {
                for (char c : s.name) nr.rhs.push_back(Symbol::terminal(c));
            }
        }
        out.rules.push_back(std::move(nr));
    }
    for (auto& rule : eps_rules) out.rules.push_back(std::move(rule));
    return {out, r};
}

bool is_q_dgnf(const Grammar& g, int r) {
    if (g.rules.empty()) return false;
    for (const auto& rule : g.rules)
        for (const auto& s : rule.rhs)
            if (s == g.axiom) return false;
    for (const auto& rule : g.rules) {
        if (rule.lhs == g.axiom) {
            if (rule.rhs.empty() || !rule.rhs[0].is_nonterminal()) return false;
            if ((int)rule.rhs.size() - 1 >= r) return false;
            for (std::size_t i = 1; i < rule.rhs.size(); ++i)
                if (!rule.rhs[i].is_terminal() || rule.rhs[i].name.size() != 1) return false;
            continue;
        }
        if (rule.rhs.empty()) continue; // eps
        for (const auto& s : rule.rhs)
            if (s.is_terminal() && s.name.size() != 1) return false;
        if ((int)rule.rhs.size() == r) {
            bool all_t = true;
            for (const auto& s : rule.rhs)
                if (!s.is_terminal()) all_t = false;
            if (all_t) continue;
        }
        if ((int)rule.rhs.size() < 2 * r) return false;
        for (int i = 0; i < r; ++i)
            if (!rule.rhs[i].is_terminal() || !rule.rhs[rule.rhs.size() - 1 - i].is_terminal())
                return false;
        for (std::size_t i = r; i + r < rule.rhs.size(); ++i)
            if (!rule.rhs[i].is_nonterminal()) return false;
    }
    return true;
}

} // namespace cst
