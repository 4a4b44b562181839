#include "cst/encode.hpp"

#include <algorithm>
#include <chrono>
#include <tuple>

#include "cst/bar_hillel.hpp"
#include "cst/dgnf.hpp"

namespace cst {

namespace {

constexpr BigInt kBigMax = ~BigInt{0};

BigInt mul_sat(BigInt a, BigInt b) {
    if (a == 0 || b == 0) return 0;
    if (a > kBigMax / b) return kBigMax;
    return a * b;
}

BigInt pow_sat(BigInt base, int exp) {
    BigInt r = 1;
    for (int i = 0; i < exp; ++i) r = mul_sat(r, base);
    return r;
}

} // namespace

std::string bigint_to_string(BigInt v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

BigInt bigint_from_string(const std::string& s) {
    if (s.empty()) throw PreconditionError("empty numeral");
    BigInt v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw PreconditionError("bad digit in numeral '" + s + "'");
        v = mul_sat(v, 10);
        if (v > kBigMax - BigInt(c - '0')) v = kBigMax;
        else v += BigInt(c - '0');
    }
    return v;
}

std::string OmegaN::name() const {
    std::string k;
    switch (kind) {
        case Kind::Open: k = bold ? "[[" : "["; break;
        case Kind::Close: k = bold ? "]]" : "]"; break;
        case Kind::Neutral: k = bold ? "--" : "-"; break;
    }
    return k + std::string(1, x) + "." + std::string(1, y) + "." + bigint_to_string(digit);
}

std::optional<OmegaN> parse_omega_n(const std::string& name) {
    OmegaN s;
    std::size_t pos = 0;
    if (name.rfind("[[", 0) == 0) { s.kind = OmegaN::Kind::Open; s.bold = true; pos = 2; }
    else if (name.rfind("]]", 0) == 0) { s.kind = OmegaN::Kind::Close; s.bold = true; pos = 2; }
    else if (name.rfind("--", 0) == 0) { s.kind = OmegaN::Kind::Neutral; s.bold = true; pos = 2; }
    else if (name.rfind("[", 0) == 0) { s.kind = OmegaN::Kind::Open; pos = 1; }
    else if (name.rfind("]", 0) == 0) { s.kind = OmegaN::Kind::Close; pos = 1; }
    else if (name.rfind("-", 0) == 0) { s.kind = OmegaN::Kind::Neutral; pos = 1; }
    else return std::nullopt;
    if (name.size() < pos + 5) return std::nullopt;
    s.x = name[pos];
    if (name[pos + 1] != '.') return std::nullopt;
    s.y = name[pos + 2];
    if (name[pos + 3] != '.') return std::nullopt;
    std::string digits = name.substr(pos + 4);
    for (char c : digits)
        if (c < '0' || c > '9') return std::nullopt;
    s.digit = bigint_from_string(digits);
    if (s.kind == OmegaN::Kind::Neutral && s.x != s.y) return std::nullopt;
    return s;
}

DyckSpec omega_n_dyck_spec() {
    DyckSpec spec;
    spec.classify = [](const std::string& name) {
        auto p = parse_omega_n(name);
        if (!p) return 0;
        if (p->kind == OmegaN::Kind::Open) return 1;
        if (p->kind == OmegaN::Kind::Close) return -1;
        return 0;
    };
    spec.matches = [](const std::string& open, const std::string& close) {
        auto o = parse_omega_n(open), c = parse_omega_n(close);
        return o && c && o->kind == OmegaN::Kind::Open && c->kind == OmegaN::Kind::Close &&
               o->bold == c->bold && o->x == c->y && o->y == c->x && o->digit == c->digit;
    };
    return spec;
}

BigInt pick_base(BigInt q, int m) {
    if (q < 1 || m < 1) throw PreconditionError("pick_base needs q >= 1 and m >= 1");
    BigInt j = 2;
    while (pow_sat(j, m) < q) ++j;
    return j;
}

std::vector<BigInt> bracket_code(std::size_t iota, int m, BigInt j) {
    if (iota < 1 || BigInt(iota) > pow_sat(j, m))
        throw PreconditionError("bracket number " + std::to_string(iota) + " out of code range");
    std::vector<BigInt> digits(m, 0);
    BigInt v = BigInt(iota) - 1;
    for (int i = m - 1; i >= 0; --i) {
        digits[i] = v % j;
        v /= j;
    }
    return digits;
}

std::vector<std::array<std::string, 4>>
combinator(const std::vector<std::string>& x1, const std::vector<std::string>& x2,
           const std::vector<std::string>& x3, const std::vector<std::string>& x4) {
    if (x1.size() != x2.size() || x1.size() != x3.size() || x1.size() != x4.size())
        throw PreconditionError("the combinator needs four words of equal length");
    std::vector<std::array<std::string, 4>> out(x1.size());
    for (std::size_t i = 0; i < x1.size(); ++i) out[i] = {x1[i], x2[i], x3[i], x4[i]};
    return out;
}

namespace {

std::vector<std::string> letters_of(const std::string& block) {
    std::vector<std::string> out;
    for (char c : block) out.emplace_back(1, c);
    return out;
}

std::vector<std::string> digit_words(const std::vector<BigInt>& code, bool reversed) {
    std::vector<std::string> out;
    for (BigInt d : code) out.push_back(bigint_to_string(d));
    if (reversed) std::reverse(out.begin(), out.end());
    return out;
}

std::vector<OmegaN> assemble(const std::vector<std::array<std::string, 4>>& tuples) {
    std::vector<OmegaN> out;
    for (const auto& t : tuples) {
        OmegaN s;
        if (t[0] == "[" || t[0] == "[[") s.kind = OmegaN::Kind::Open;
        else if (t[0] == "]" || t[0] == "]]") s.kind = OmegaN::Kind::Close;
        else s.kind = OmegaN::Kind::Neutral;
        s.bold = t[0].size() == 2;
        s.x = t[1][0];
        s.y = t[2][0];
        s.digit = bigint_from_string(t[3]);
        out.push_back(s);
    }
    return out;
}

} // namespace

std::vector<OmegaN> tau_open(const std::string& hopen, const std::string& hclose,
                             const std::vector<BigInt>& code, bool bold_marks) {
    int m = (int)code.size();
    if ((int)hopen.size() != m || (int)hclose.size() != m)
        throw PreconditionError("terminal block length differs from the code length");
    std::vector<std::string> pol(m, "[");
    if (bold_marks && m > 0) pol[0] = "[[";
    std::string hcr(hclose.rbegin(), hclose.rend());
    return assemble(combinator(pol, letters_of(hopen), letters_of(hcr), digit_words(code, false)));
}

std::vector<OmegaN> tau_close(const std::string& hopen, const std::string& hclose,
                              const std::vector<BigInt>& code, bool bold_marks) {
    int m = (int)code.size();
    if ((int)hopen.size() != m || (int)hclose.size() != m)
        throw PreconditionError("terminal block length differs from the code length");
    std::vector<std::string> pol(m, "]");
    if (bold_marks && m > 0) pol[m - 1] = "]]";
    std::string hor(hopen.rbegin(), hopen.rend());
    return assemble(combinator(pol, letters_of(hclose), letters_of(hor), digit_words(code, true)));
}

std::vector<OmegaN> tau_neutral(const std::string& block, const std::vector<BigInt>& code,
                                bool bold_marks) {
    int m = (int)code.size();
    if ((int)block.size() != m)
        throw PreconditionError("terminal block length differs from the code length");
    std::vector<std::string> pol(m, "-");
    if (bold_marks && m > 0) pol[0] = "--";
    return assemble(combinator(pol, letters_of(block), letters_of(block), digit_words(code, false)));
}

TauMap build_tau(const BracketSystem& sys, const EncodingParams& params, bool slt_variant) {
    std::vector<OmegaQ> coded;
    for (const auto& s : sys.symbols)
        if (s.kind != OmegaQ::Kind::Close) coded.push_back(s);
    auto key = [](const OmegaQ& s) {
        return s.prev < 0 ? std::tuple<int, int, int>{0, s.mark_index(), s.cur}
                          : std::tuple<int, int, int>{1, s.prev, s.cur};
    };
    std::sort(coded.begin(), coded.end(),
              [&](const OmegaQ& a, const OmegaQ& b) { return key(a) < key(b); });

    TauMap tm;
    std::size_t iota = 0;
    for (const auto& s : coded) {
        ++iota;
        auto code = bracket_code(iota, params.m, params.j);
        tm.iota[s] = iota;
        if (s.kind == OmegaQ::Kind::Neutral) {
            tm.image[s] = tau_neutral(sys.h(s), code, slt_variant);
        } else {
            OmegaQ close{OmegaQ::Kind::Close, s.prev, s.cur};
            tm.iota[close] = iota;
            std::string ho = sys.h(s), hc = sys.h(close);
            tm.image[s] = tau_open(ho, hc, code, slt_variant);
            tm.image[close] = tau_close(ho, hc, code, slt_variant);
        }
    }
    return tm;
}

namespace {

// the tail's fixed bracket word: zero-digit matched pairs, one trailing
// neutral when the tail length is odd
std::vector<std::string> alpha_word(const std::string& w, bool bold) {
    std::vector<std::string> out;
    std::size_t even = w.size() - w.size() % 2;
    for (std::size_t i = 0; i < even; i += 2) {
        out.push_back(OmegaN{OmegaN::Kind::Open, bold, w[i], w[i + 1], 0}.name());
        out.push_back(OmegaN{OmegaN::Kind::Close, bold, w[i + 1], w[i], 0}.name());
    }
    if (w.size() % 2)
        out.push_back(OmegaN{OmegaN::Kind::Neutral, false, w.back(), w.back(), 0}.name());
    return out;
}

// one block-order's worth of pipeline output, enough to judge the order
struct StageBundle {
    QDgnfStages stages;
    Grammar gd;
    std::vector<Symbol> starts;
    std::size_t opens = 0, coded = 0;
};

// bracket counts of build_bracket_system without materializing the symbols
void count_brackets(const Grammar& gd, const std::vector<Symbol>& starts, std::size_t& opens,
                    std::size_t& coded) {
    std::map<Symbol, std::size_t> containing;
    for (const auto& r : gd.rules) {
        std::set<Symbol> nts;
        for (const auto& s : r.rhs)
            if (s.is_nonterminal()) nts.insert(s);
        for (const auto& s : nts) ++containing[s];
    }
    std::map<Symbol, std::size_t> marks;
    for (const auto& s : starts) ++marks[s];
    opens = coded = 0;
    for (const auto& r : gd.rules) {
        std::size_t c = 0;
        if (auto it = containing.find(r.lhs); it != containing.end()) c += it->second;
        if (auto it = marks.find(r.lhs); it != marks.end()) c += it->second;
        if (r.rhs.size() >= 2) opens += c;
        coded += c;
    }
}

} // namespace

CstDecomposition build_cst(const Grammar& g, const std::string& mode, bool slt_variant, int m_cap) {
    if (mode != "minimal" && mode != "paper")
        throw PreconditionError("mode must be 'minimal' or 'paper'");
    if (m_cap < 2 || m_cap % 2 != 0)
        throw PreconditionError("the order cap must be even and at least 2");

    CstDecomposition d;
    d.slt_variant = slt_variant;
    std::set<char> sig = g.sigma_chars();
    d.sigma.assign(sig.begin(), sig.end());

    Grammar cnf = rename_nonterminals(to_cnf(g));
    d.stats.cnf_nts = cnf.nonterminals().size();
    d.stats.cnf_rules = cnf.rules.size();

    EncodingParams params;
    params.mode = mode;
    params.sigma_bound = pow_sat(BigInt(d.sigma.size()), 44);
    params.nu = pow_sat(BigInt(d.stats.cnf_nts), 16);
    BigInt jpaper = mul_sat(2, params.sigma_bound);
    if (jpaper < 2) jpaper = 2; // letterless grammars still get a valid base

    // Search the block order: smallest even m whose bracket alphabet the
    // candidate base can encode, stopping at the cap or where the quotient
    // pipeline runs out of budget; counting is done without materializing
    // the brackets, so rejected orders stay cheap.
    std::map<int, StageBundle> cache;
    auto stage = [&](int m) -> StageBundle& {
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
        StageBundle b;
        b.stages = to_q_dgnf_stages(g, m);
        b.gd = distinct_rhs(b.stages.tuple_dgnf);
        std::set<Symbol> sset;
        for (const auto& [w, X] : b.stages.start_for) sset.insert(X);
        b.starts.assign(sset.begin(), sset.end());
        count_brackets(b.gd, b.starts, b.opens, b.coded);
        return cache.emplace(m, std::move(b)).first->second;
    };

    BigInt jcand = mode == "paper" ? jpaper : 2;
    int chosen = 0;
    bool forced = false; // stopped by the cap or a budget, not by the bound
    for (int m = 2;; m += 2) {
        std::size_t coded;
        try {
            coded = stage(m).coded;
        } catch (const BudgetError&) {
            if (m == 2) throw;
            chosen = m - 2;
            forced = true;
            break;
        }
        if (pow_sat(jcand, m) >= std::max<BigInt>(coded, 1)) {
            chosen = m;
            break;
        }
        if (m >= m_cap) {
            chosen = m;
            forced = true;
            break;
        }
    }

    BracketSystem sys;
    for (;;) {
        StageBundle& b = stage(chosen); // cached: this order built before
        try {
            if (b.coded > 60'000)
                throw BudgetError("bracket alphabet too large to materialize");
            sys = build_bracket_system(b.gd, b.starts);
            break;
        } catch (const BudgetError&) {
            if (chosen <= 2) throw;
            chosen -= 2;
            forced = true;
        }
    }
    const StageBundle& fin = stage(chosen);
    QDgnfStages& stages = cache.at(chosen).stages;

    std::size_t coded = 0;
    for (const auto& s : sys.symbols) coded += s.kind != OmegaQ::Kind::Close;
    params.m = chosen;
    params.q = (std::size_t)sys.open_count;
    params.coded = coded;
    params.cap_hit = forced;
    if (pow_sat(jcand, chosen) >= std::max<BigInt>(coded, 1)) {
        params.j = jcand;
    } else if (mode == "paper") {
        throw BudgetError("letter-driven base cannot encode " + std::to_string(coded) +
                          " symbols within the order cap");
    } else {
        params.j = pick_base(std::max<BigInt>(coded, 1), chosen);
    }
    d.params = params;
    const Grammar& gd = fin.gd;
    d.eps = stages.derives_empty_word;
    d.stats.tuple_nts = gd.nonterminals().size();
    d.stats.tuple_rules = gd.rules.size();
    d.stats.q = params.q;
    d.stats.coded = params.coded;

    TauMap tau = build_tau(sys, params, slt_variant);
    std::map<std::string, std::vector<std::string>> img;
    for (const auto& [s, w] : tau.image) {
        std::vector<std::string>& names = img[s.name()];
        for (const auto& t : w) names.push_back(t.name());
    }

    std::optional<Nfa> acc;
    auto add = [&](const Nfa& b) { acc = acc ? nfa_union(*acc, b) : b; };
    for (const auto& [w, X] : stages.start_for) {
        Nfa ctrl = slt_to_nfa(sys.control.at(X));
        Nfa tn = expand_symbols(ctrl, [&](const std::string& s) { return img.at(s); });
        auto alpha = alpha_word(w, slt_variant);
        add(alpha.empty() ? tn : nfa_concat(tn, nfa_from_word(alpha)));
    }
    for (const auto& w : stages.nullable_tails)
        if (!w.empty()) add(nfa_from_word(alpha_word(w, slt_variant)));
    if (stages.derives_empty_word) add(nfa_from_word({}));
    if (acc) {
        d.t = trim(*acc);
    } else {
        d.t.num_states = 1; // empty language
        d.t.initial = {0};
    }

    if (slt_variant) {
        // the control language of this variant IS the width-(m+1) window
        // language read off the bold-marked union; the automaton is its
        // rendering, so decider and automaton agree by construction
        d.t_slt = slt_from_nfa(d.t, params.m + 1);
        d.stats.slt_width = params.m + 1;
        d.t = trim(slt_to_nfa(*d.t_slt));
    }

    for (const auto& name : d.t.alphabet()) {
        auto p = parse_omega_n(name);
        if (!p) throw PreconditionError("internal: control symbol '" + name + "' is not a 4-tuple");
        d.omega.push_back(*p);
        d.rho[name] = p->x;
    }
    std::sort(d.omega.begin(), d.omega.end(),
              [](const OmegaN& a, const OmegaN& b) { return a.name() < b.name(); });

    d.stats.omega_materialized = d.omega.size();
    for (const auto& s : d.omega)
        d.stats.neutrals_materialized += s.kind == OmegaN::Kind::Neutral;
    d.stats.n_conceptual =
        mul_sat(mul_sat(2, params.j), mul_sat(BigInt(d.sigma.size()), BigInt(d.sigma.size())));
    d.stats.t_states = (std::size_t)d.t.num_states;
    d.stats.t_transitions = d.t.transitions.size();
    return d;
}

Grammar dyck_t_product(const CstDecomposition& d, int maxlen) {
    std::vector<std::string> names;
    for (const auto& s : d.omega) names.push_back(s.name());
    Grammar dyck = dyck_grammar(names, omega_n_dyck_spec());
    return bar_hillel_intersect(dyck, prune_bounded(d.t, maxlen));
}

VerificationReport verify_cst(const Grammar& g, const CstDecomposition& d, int maxlen) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.maxlen = maxlen;

    Grammar prod = dyck_t_product(d, maxlen);
    std::map<std::string, std::vector<std::string>> image;
    for (const auto& [name, c] : d.rho) image[name] = {std::string(1, c)};
    std::set<std::string> lhs = enumerate_language(grammar_hom_image(prod, image), maxlen);
    if (d.t.accepts({})) lhs.insert("");
    std::set<std::string> rhs = enumerate_language(g, maxlen);

    rep.lhs_count = lhs.size();
    rep.rhs_count = rhs.size();
    rep.equal = lhs == rhs;
    if (!rep.equal) {
        for (const auto& w : lhs)
            if (!rhs.count(w) && rep.witnesses.size() < 10) rep.witnesses.push_back(w);
        for (const auto& w : rhs)
            if (!lhs.count(w) && rep.witnesses.size() < 10) rep.witnesses.push_back(w);
    }
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

} // namespace cst
