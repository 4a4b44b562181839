#include "cst/brackets.hpp"

#include <algorithm>

namespace cst {

std::string OmegaQ::name() const {
    const char* k = kind == Kind::Open ? "[" : kind == Kind::Close ? "]" : "-";
    std::string p = prev >= 0 ? "r" + std::to_string(prev + 1) : "m" + std::to_string(mark_index());
    return k + p + ".r" + std::to_string(cur + 1);
}

std::string BracketSystem::h(const OmegaQ& s) const {
    const Rule& r = g.rules[s.cur];
    if (s.kind == OmegaQ::Kind::Close) return r.rhs.back().name;
    return r.rhs.front().name;
}

namespace {

// nonterminal positions of a rule's right-hand side
std::vector<Symbol> rhs_nts(const Rule& r) {
    std::vector<Symbol> out;
    for (const auto& s : r.rhs)
        if (s.is_nonterminal()) out.push_back(s);
    return out;
}

bool is_pair_rule(const Rule& r) { return r.rhs.size() >= 2; }

} // namespace

BracketSystem build_bracket_system(const Grammar& dgnf, const std::vector<Symbol>& starts) {
    for (const auto& r : dgnf.rules) {
        if (r.rhs.empty() || !r.rhs.front().is_terminal() || !r.rhs.back().is_terminal())
            throw PreconditionError("bracket systems need double Greibach rules");
        std::set<Symbol> seen;
        for (const auto& s : r.rhs)
            if (s.is_nonterminal() && !seen.insert(s).second)
                throw PreconditionError("bracket systems need pairwise-distinct rhs nonterminals");
    }

    BracketSystem sys;
    sys.g = dgnf;
    sys.starts = starts;
    int nrules = (int)dgnf.rules.size();

    // contexts of rule r: rules whose rhs contains lhs(r), plus marks of starts equal to lhs(r)
    std::vector<std::vector<int>> contexts(nrules);
    for (int r = 0; r < nrules; ++r) {
        const Symbol& a = dgnf.rules[r].lhs;
        for (int p = 0; p < nrules; ++p)
            for (const auto& s : dgnf.rules[p].rhs)
                if (s == a) {
                    contexts[r].push_back(p);
                    break;
                }
        for (int k = 0; k < (int)starts.size(); ++k)
            if (starts[k] == a) contexts[r].push_back(-(1 + k));
    }

    for (int r = 0; r < nrules; ++r) {
        bool pair = is_pair_rule(dgnf.rules[r]);
        for (int p : contexts[r]) {
            if (pair) {
                sys.symbols.push_back({OmegaQ::Kind::Open, p, r});
                sys.symbols.push_back({OmegaQ::Kind::Close, p, r});
            } else {
                sys.symbols.push_back({OmegaQ::Kind::Neutral, p, r});
            }
        }
    }
    std::sort(sys.symbols.begin(), sys.symbols.end());
    for (const auto& s : sys.symbols)
        if (s.kind == OmegaQ::Kind::Open) ++sys.open_count;

    // the window-2 controls, one per start
    auto start_sym = [&](int p, int r) {
        OmegaQ s{is_pair_rule(dgnf.rules[r]) ? OmegaQ::Kind::Open : OmegaQ::Kind::Neutral, p, r};
        return s;
    };
    auto end_sym = [&](int p, int r) {
        OmegaQ s{is_pair_rule(dgnf.rules[r]) ? OmegaQ::Kind::Close : OmegaQ::Kind::Neutral, p, r};
        return s;
    };

    // factor digrams are shared by all starts
    std::set<std::vector<std::string>> factors;
    for (int r = 0; r < nrules; ++r) {
        if (factors.size() > 2'000'000)
            throw BudgetError("control language needs too many digrams");
        if (!is_pair_rule(dgnf.rules[r])) continue;
        auto kids = rhs_nts(dgnf.rules[r]);
        int n = (int)kids.size();
        for (int p : contexts[r]) {
            OmegaQ open{OmegaQ::Kind::Open, p, r};
            OmegaQ close{OmegaQ::Kind::Close, p, r};
            if (n == 0) {
                factors.insert({open.name(), close.name()});
                continue;
            }
            for (int r1 = 0; r1 < nrules; ++r1)
                if (dgnf.rules[r1].lhs == kids.front())
                    factors.insert({open.name(), start_sym(r, r1).name()});
            for (int rn = 0; rn < nrules; ++rn)
                if (dgnf.rules[rn].lhs == kids.back())
                    factors.insert({end_sym(r, rn).name(), close.name()});
        }
        for (int i = 0; i + 1 < n; ++i)
            for (int ra = 0; ra < nrules; ++ra) {
                if (!(dgnf.rules[ra].lhs == kids[i])) continue;
                for (int rb = 0; rb < nrules; ++rb)
                    if (dgnf.rules[rb].lhs == kids[i + 1])
                        factors.insert({end_sym(r, ra).name(), start_sym(r, rb).name()});
            }
    }

    for (int k = 0; k < (int)starts.size(); ++k) {
        SltDescriptor d;
        d.k = 2;
        d.factors = factors;
        int mark = -(1 + k);
        for (int r = 0; r < nrules; ++r) {
            if (!(dgnf.rules[r].lhs == starts[k])) continue;
            if (is_pair_rule(dgnf.rules[r])) {
                d.prefixes.insert({OmegaQ{OmegaQ::Kind::Open, mark, r}.name()});
                d.suffixes.insert({OmegaQ{OmegaQ::Kind::Close, mark, r}.name()});
            } else {
                d.whole.insert({OmegaQ{OmegaQ::Kind::Neutral, mark, r}.name()});
            }
        }
        sys.control.emplace(starts[k], std::move(d));
    }
    return sys;
}

namespace {

void walk(const BracketSystem& sys, int context, const ParseTree& t, std::vector<OmegaQ>& out) {
    const Rule& r = sys.g.rules[t.rule];
    auto kids = rhs_nts(r);
    if (kids.size() != t.children.size())
        throw PreconditionError("parse tree child count does not fit the rule");
    if (r.rhs.size() < 2) {
        out.push_back({OmegaQ::Kind::Neutral, context, t.rule});
        return;
    }
    out.push_back({OmegaQ::Kind::Open, context, t.rule});
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (!(sys.g.rules[t.children[i].rule].lhs == kids[i]))
            throw PreconditionError("parse tree child rule does not derive the expected nonterminal");
        walk(sys, t.rule, t.children[i], out);
    }
    out.push_back({OmegaQ::Kind::Close, context, t.rule});
}

} // namespace

std::vector<OmegaQ> derivation_to_brackets(const BracketSystem& sys, const Symbol& start,
                                           const ParseTree& t) {
    int mark = 0; // valid marks are negative
    for (int k = 0; k < (int)sys.starts.size(); ++k)
        if (sys.starts[k] == start) mark = -(1 + k);
    if (mark == 0) throw PreconditionError("unknown start symbol '" + start.name + "'");
    if (!(sys.g.rules[t.rule].lhs == start))
        throw PreconditionError("root rule does not derive the start symbol");
    std::vector<OmegaQ> out;
    walk(sys, mark, t, out);
    return out;
}

std::vector<std::string> tree_yield(const Grammar& g, const ParseTree& t) {
    const Rule& r = g.rules[t.rule];
    std::vector<std::string> out;
    std::size_t child = 0;
    for (const auto& s : r.rhs) {
        if (s.is_terminal()) {
            out.push_back(s.name);
        } else {
            if (child >= t.children.size())
                throw PreconditionError("parse tree child count does not fit the rule");
            auto sub = tree_yield(g, t.children[child++]);
            out.insert(out.end(), sub.begin(), sub.end());
        }
    }
    return out;
}

ParseTree random_parse_tree(const Grammar& g, const Symbol& start, std::mt19937& rng, int max_height) {
    // minimal derivation heights, for steering the tail of the recursion
    std::map<Symbol, int> minh;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : g.rules) {
            int h = 1;
            bool ok = true;
            for (const auto& s : r.rhs) {
                if (!s.is_nonterminal()) continue;
                auto it = minh.find(s);
                if (it == minh.end()) {
                    ok = false;
                    break;
                }
                h = std::max(h, it->second + 1);
            }
            if (!ok) continue;
            auto it = minh.find(r.lhs);
            if (it == minh.end() || it->second > h) {
                minh[r.lhs] = h;
                changed = true;
            }
        }
    }
    if (!minh.count(start)) throw PreconditionError("start symbol derives no word");

    struct Rec {
        const Grammar& g;
        std::map<Symbol, int>& minh;
        std::mt19937& rng;
        ParseTree build(const Symbol& nt, int budget) {
            std::vector<int> options;
            for (int i = 0; i < (int)g.rules.size(); ++i) {
                if (!(g.rules[i].lhs == nt)) continue;
                int need = 1;
                bool ok = true;
                for (const auto& s : g.rules[i].rhs) {
                    if (!s.is_nonterminal()) continue;
                    auto it = minh.find(s);
                    if (it == minh.end()) {
                        ok = false;
                        break;
                    }
                    need = std::max(need, it->second + 1);
                }
                if (ok && need <= budget) options.push_back(i);
            }
            if (options.empty()) throw PreconditionError("height budget too small for '" + nt.name + "'");
            int pick = options[std::uniform_int_distribution<int>(0, (int)options.size() - 1)(rng)];
            ParseTree t;
            t.rule = pick;
            for (const auto& s : g.rules[pick].rhs)
                if (s.is_nonterminal()) t.children.push_back(build(s, budget - 1));
            return t;
        }
    };
    Rec rec{g, minh, rng};
    return rec.build(start, std::max(max_height, minh.at(start)));
}

} // namespace cst
